#include "fibpair/seqcore.hpp"

#include <stdexcept>
#include <utility>

namespace fibpair::seqcore {

namespace {

BigInt fib_nonneg(long k) {
    BigInt a = 0, b = 1;  // F_0, F_1
    for (long i = 0; i < k; ++i) {
        BigInt next = a + b;
        a = std::move(b);
        b = std::move(next);
    }
    return a;
}

BigInt lucas_nonneg(long k) {
    BigInt a = 2, b = 1;  // L_0, L_1
    for (long i = 0; i < k; ++i) {
        BigInt next = a + b;
        a = std::move(b);
        b = std::move(next);
    }
    return a;
}

}  // namespace

BigInt fib(long k) {
    if (k >= 0) return fib_nonneg(k);
    BigInt v = fib_nonneg(-k);
    return (-k) % 2 == 0 ? BigInt(-v) : v;  // F_{-r} = (-1)^{r+1} F_r
}

BigInt lucas(long k) {
    if (k >= 0) return lucas_nonneg(k);
    BigInt v = lucas_nonneg(-k);
    return (-k) % 2 == 0 ? v : BigInt(-v);  // L_{-r} = (-1)^r L_r
}

BigInt fib_fast(long k) {
    if (k < 0) throw std::domain_error("fib_fast: index must be nonnegative");
    // Walks the bits of k top-down keeping (F_j, F_{j+1}):
    //   F_{2j}   = F_j (2 F_{j+1} - F_j)
    //   F_{2j+1} = F_j^2 + F_{j+1}^2
    BigInt a = 0, b = 1;  // (F_0, F_1)
    if (k == 0) return a;
    int bits = 0;
    for (long t = k; t > 0; t >>= 1) ++bits;
    for (int i = bits - 1; i >= 0; --i) {
        BigInt even = a * (2 * b - a);
        BigInt odd = a * a + b * b;
        if ((k >> i) & 1) {
            a = std::move(odd);
            b = even + a;
        } else {
            a = std::move(even);
            b = std::move(odd);
        }
    }
    return a;
}

}  // namespace fibpair::seqcore
