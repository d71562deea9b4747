#pragma once

#include "fibpair/exactmat.hpp"
#include "fibpair/fibexpr.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fibpair::pairs {

using ExprMatrix = std::vector<std::vector<expr::FibExpr>>;

// A commuting pair (w, x) together with the scale a and the symbolic entry
// templates of a*w^n and a*x*w^n (where known). Family parameters (r, d, a, b)
// are concrete at matrix level; templates keep r symbolic.
struct PairSpec {
    std::string name;     // instance name, e.g. "rank2_fr(r=2)"
    std::string catalog;  // catalog key, e.g. "rank2_fr"
    int rank = 2;
    std::map<std::string, long> params;
    expr::FibExpr scale;
    mat::QMatrix w{2}, x{2};
    std::optional<ExprMatrix> w_template;   // entries of scale*w^n, variable n
    std::optional<ExprMatrix> xw_template;  // entries of scale*x*w^n
    Rational det_w{0}, det_x{0};
    mat::Polynomial w_char;  // declared characteristic polynomial of w
    bool singular_w = false;
};

// Catalog keys accepted by make_pair.
const std::vector<std::string>& catalog_names();

// Builds a catalog pair. Parameters: rank2_fr takes r (nonzero, default 2);
// prop21 takes d, a, b (default -2, 1, 2, the worked example). Throws on an
// unknown name or r = 0.
PairSpec make_pair(const std::string& name, const std::map<std::string, long>& params = {});

// A^n = F_n*A + F_{n-1}*I for any matrix with characteristic polynomial X^2-X-1.
mat::QMatrix closed_power_rank2(const mat::QMatrix& a, long n);

// A^n = F_n*F_{n-1}*A^2 + F_n*F_{n-2}*A - F_{n-1}*F_{n-2}*I for characteristic
// polynomial X^3-2X^2-2X+1.
mat::QMatrix closed_power_rank3(const mat::QMatrix& a, long n);

struct PolyPhi {
    long r = 1;
    mat::Polynomial poly;  // monic, degree r+1, integer coefficients
};

// prod_{i=0}^{r} (X - phi^i psi^{r-i}), expanded exactly in Q(sqrt5). The
// sqrt5 parts cancel; integrality is asserted rather than assumed.
PolyPhi phi_poly(long r);

// Companion matrix (last-column convention) of a monic polynomial.
mat::QMatrix companion(const mat::Polynomial& p);

struct CertifyReport {
    bool pass = true;
    long checks = 0;
    std::string first_failure;
};

// Checks commutation, the declared characteristic polynomial, and that the
// stored templates reproduce scale*w^n and scale*x*w^n exactly for every n in
// [n_lo, n_hi]. Singular pairs only admit positive exponents.
CertifyReport certify(const PairSpec& spec, long n_lo, long n_hi);

}  // namespace fibpair::pairs
