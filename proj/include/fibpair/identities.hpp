#pragma once

#include "fibpair/fibexpr.hpp"
#include "fibpair/pairs.hpp"

#include <vector>

namespace fibpair::identities {

// The three matrix equations: (w^n)(w^m), (w^n)(x w^m), (x w^n)(x w^m).
enum class EqKind { WW, WX, XX };

const char* eqkind_str(EqKind k);

// One side of a trace pairing: M = w^e or x*w^e, where e is the named variable,
// doubled (and offset) when a parity is requested: even -> 2v, odd -> 2v+1.
struct FactorSpec {
    bool uses_x = false;
    std::string exponent_var = "n";
    expr::Constraint parity = expr::Constraint::Any;  // Any, Even or Odd

    std::string str() const;
};

// Reads one matrix equation entrywise: entry (i,j) of Template_M(n) *
// Template_N(m) = scale * Template_target(n+m). Returns one identity per
// entry, content-normalized. Requires stored templates; XX additionally
// requires x^2 to be a scalar matrix.
std::vector<expr::Identity> matrix_identities(const pairs::PairSpec& pair, EqKind kind);

// The commuting Fricke relation in determinant-cleared form:
//   t(M)^2 d(N) + t(N)^2 d(M) + t(MN)^2 = t(M) t(N) t(MN) + 4 d(M) d(N).
// Rank-2 pairs only; factors with x require trace(x) = 0 and det(x) = -5.
expr::Identity trace_fricke(const pairs::PairSpec& pair, const FactorSpec& M, const FactorSpec& N);

enum class LinearForm { SumAB, BAB };

// The linear trace relations in cleared form:
//   SumAB: t(MN) + t(adj(M) N) = t(M) t(N)
//   BAB:   t(NMN) + d(N) t(M)  = t(N) t(MN)
expr::Identity trace_linear(const pairs::PairSpec& pair, const FactorSpec& M, const FactorSpec& N,
                            LinearForm form);

// Exact check of the general (non-commuting) Fricke relation
//   t(A)^2 + t(B)^2 + t(AB)^2 = t(A) t(B) t(AB) + t(A B A^-1 B^-1) + 2
// for 2x2 determinant-1 matrices. Throws unless both inputs are unimodular.
bool fricke_general_check(const mat::QMatrix& A, const mat::QMatrix& B);

// Eigenvalue trace identities for rank-3 pairs with characteristic polynomial
// X^3-2X^2-2X+1: trace of the w^n template equals L_{2n} + (-1)^n, and, when
// the x eigenvalues are {1, 1+sqrt5, 1-sqrt5}, trace of the x*w^n template
// equals (-1)^n + L_{2n} + 5 F_{2n}.
std::vector<expr::Identity> rank3_trace_identities(const pairs::PairSpec& pair);

enum class Parity { Even, Odd };

// Substitutes v -> 2v (even) or v -> 2v+1 (odd) for each listed variable and
// renormalizes the signs.
expr::Identity parity_specialize(const expr::Identity& id,
                                 const std::map<std::string, Parity>& assignment);

// Divides both sides by the common positive rational content of all
// coefficients (no-op on 0 = 0).
expr::Identity content_normalized(expr::Identity id);

}  // namespace fibpair::identities
