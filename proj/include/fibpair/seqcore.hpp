#pragma once

#include "fibpair/rational.hpp"

namespace fibpair::seqcore {

enum class SeqKind { F, L };

// F_k for any integer k. Linear recurrence from the seeds F_0 = 0, F_1 = 1;
// negative indices via F_{-r} = (-1)^{r+1} F_r.
BigInt fib(long k);

// L_k for any integer k. Seeds L_0 = 2, L_1 = 1; L_{-r} = (-1)^r L_r.
BigInt lucas(long k);

// F_k via fast doubling, k >= 0. Same values as fib(), different route.
BigInt fib_fast(long k);

}  // namespace fibpair::seqcore
