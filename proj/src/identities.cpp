#include "fibpair/identities.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fibpair::identities {

using expr::AffineIndex;
using expr::Constraint;
using expr::FibExpr;
using expr::Identity;
using expr::Monomial;
using expr::SeqKind;
using mat::QMatrix;
using pairs::PairSpec;

const char* eqkind_str(EqKind k) {
    switch (k) {
        case EqKind::WW: return "WW";
        case EqKind::WX: return "WX";
        case EqKind::XX: return "XX";
    }
    return "?";
}

std::string FactorSpec::str() const {
    std::string base = uses_x ? "xw" : "w";
    switch (parity) {
        case Constraint::Even: return base + "^2" + exponent_var;
        case Constraint::Odd: return base + "^2" + exponent_var + "+1";
        default: return base + "^" + exponent_var;
    }
}

namespace {

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    BigInt num = gcd(a.get_num() * b.get_den(), b.get_num() * a.get_den());
    return make_rational(num, a.get_den() * b.get_den());
}

Rational content_of(const FibExpr& e, Rational acc) {
    for (const auto& m : e.monomials()) acc = rational_gcd(acc, m.coeff);
    return acc;
}

}  // namespace

Identity content_normalized(Identity id) {
    Rational c = content_of(id.rhs, content_of(id.lhs, Rational(0)));
    if (c == 0 || c == 1) return id;
    Rational inv = 1 / c;
    id.lhs = id.lhs.scaled(inv);
    id.rhs = id.rhs.scaled(inv);
    return id;
}

std::vector<Identity> matrix_identities(const PairSpec& pair, EqKind kind) {
    if (!pair.w_template)
        throw std::invalid_argument(pair.name + ": no stored w template, cannot generate");
    if ((kind == EqKind::WX || kind == EqKind::XX) && !pair.xw_template)
        throw std::invalid_argument(pair.name + ": no stored x*w template, cannot generate");

    const pairs::ExprMatrix& tw = *pair.w_template;
    const pairs::ExprMatrix* tx = pair.xw_template ? &*pair.xw_template : nullptr;

    Rational x_square_scalar(0);
    if (kind == EqKind::XX) {
        QMatrix xx = pair.x * pair.x;
        for (int i = 0; i < xx.dim(); ++i)
            for (int j = 0; j < xx.dim(); ++j)
                if (i != j && xx.at(i, j) != 0)
                    throw std::invalid_argument(pair.name + ": x^2 is not a scalar matrix");
        for (int i = 1; i < xx.dim(); ++i)
            if (xx.at(i, i) != xx.at(0, 0))
                throw std::invalid_argument(pair.name + ": x^2 is not a scalar matrix");
        x_square_scalar = xx.at(0, 0);
    }

    const pairs::ExprMatrix& left = kind == EqKind::XX ? *tx : tw;
    const pairs::ExprMatrix& right = kind == EqKind::WW ? tw : *tx;
    const pairs::ExprMatrix& target = kind == EqKind::WX ? *tx : tw;

    const int dim = static_cast<int>(tw.size());
    AffineIndex m_var = AffineIndex::var("m");
    AffineIndex n_plus_m = AffineIndex::var("n") + m_var;

    std::map<std::string, Constraint> constraints;
    if (pair.catalog == "rank2_fr") constraints.emplace("r", Constraint::GeOne);

    std::vector<Identity> out;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            FibExpr lhs;
            for (int k = 0; k < dim; ++k)
                lhs = lhs + left[i][k] * right[k][j].substituted("n", m_var);
            FibExpr rhs = pair.scale * target[i][j].substituted("n", n_plus_m);
            if (kind == EqKind::XX) rhs = rhs.scaled(x_square_scalar);

            std::ostringstream label;
            label << pair.catalog << "." << eqkind_str(kind) << "(" << (i + 1) << "," << (j + 1)
                  << ")";
            std::map<std::string, Constraint> cs;
            auto used_lhs = lhs.variables();
            auto used_rhs = rhs.variables();
            for (const auto& [v, c] : constraints) {
                bool used = std::find(used_lhs.begin(), used_lhs.end(), v) != used_lhs.end() ||
                            std::find(used_rhs.begin(), used_rhs.end(), v) != used_rhs.end();
                if (used) cs.emplace(v, c);
            }
            Identity id = expr::make_identity(label.str(), std::move(lhs), std::move(rhs),
                                              std::move(cs), pair.name);
            out.push_back(content_normalized(std::move(id)));
        }
    }
    return out;
}

namespace {

// A member of { c * (-1)^sign * x^a * w^e } for the rank-2 trace machinery,
// with x^2 = 5I and det w = -1 assumed by construction.
struct Elem {
    Rational coeff{1};
    AffineIndex sign;
    bool has_x = false;
    AffineIndex wexp;
};

Elem elem_mul(const Elem& p, const Elem& q) {
    Elem r;
    r.coeff = p.coeff * q.coeff;
    r.sign = p.sign + q.sign;
    r.wexp = p.wexp + q.wexp;
    if (p.has_x && q.has_x) {
        r.coeff *= 5;  // x^2 = 5I
        r.has_x = false;
    } else {
        r.has_x = p.has_x || q.has_x;
    }
    return r;
}

// adj(w^e) = (-1)^e w^{-e};  adj(x w^e) = -(-1)^e x w^{-e}.
Elem elem_adj(const Elem& m) {
    Elem r;
    r.coeff = m.has_x ? -m.coeff : m.coeff;
    r.sign = m.sign + m.wexp;
    r.has_x = m.has_x;
    r.wexp = -m.wexp;
    return r;
}

// t(c (-1)^s w^e) = c (-1)^s L_e;  t(c (-1)^s x w^e) = 5 c (-1)^s F_e.
FibExpr elem_trace(const Elem& m) {
    Monomial mono;
    mono.coeff = m.has_x ? m.coeff * 5 : m.coeff;
    mono.sign = m.sign;
    mono.factors = {expr::Factor{m.has_x ? SeqKind::F : SeqKind::L, m.wexp, 1}};
    return FibExpr::from_monomials({mono});
}

// d(c (-1)^s x^a w^e) = c^2 * (-5)^a * (-1)^e.
FibExpr elem_det(const Elem& m) {
    Monomial mono;
    mono.coeff = m.coeff * m.coeff * (m.has_x ? Rational(-5) : Rational(1));
    mono.sign = m.wexp;
    return FibExpr::from_monomials({mono});
}

AffineIndex exponent_of(const FactorSpec& f) {
    switch (f.parity) {
        case Constraint::Even: return AffineIndex::var(f.exponent_var, 2);
        case Constraint::Odd: return AffineIndex::var(f.exponent_var, 2) + AffineIndex(1);
        case Constraint::Any: return AffineIndex::var(f.exponent_var);
        default:
            throw std::invalid_argument("FactorSpec: parity must be any, even or odd");
    }
}

Elem elem_of(const FactorSpec& f) {
    Elem e;
    e.has_x = f.uses_x;
    e.wexp = exponent_of(f);
    return e;
}

void require_trace_pair(const PairSpec& pair, const FactorSpec& M, const FactorSpec& N) {
    if (pair.rank != 2)
        throw std::invalid_argument(pair.name + ": trace identities require a rank-2 pair");
    if (pair.det_w == 0)
        throw std::invalid_argument(pair.name + ": trace identities require nonsingular w");
    if (!(pair.det_w == Rational(-1)))
        throw std::invalid_argument(pair.name + ": trace identities assume det(w) = -1");
    if (M.uses_x || N.uses_x) {
        if (mat::trace(pair.x) != 0 || !(pair.det_x == Rational(-5)))
            throw std::invalid_argument(pair.name +
                                        ": x factors require trace(x) = 0 and det(x) = -5");
    }
}

}  // namespace

Identity trace_fricke(const PairSpec& pair, const FactorSpec& M, const FactorSpec& N) {
    require_trace_pair(pair, M, N);
    Elem em = elem_of(M), en = elem_of(N);
    FibExpr tM = elem_trace(em), tN = elem_trace(en), tMN = elem_trace(elem_mul(em, en));
    FibExpr dM = elem_det(em), dN = elem_det(en);

    FibExpr lhs = tM * tM * dN + tN * tN * dM + tMN * tMN;
    FibExpr four = (dM * dN).scaled(Rational(4));
    FibExpr rhs = tM * tN * tMN + four;

    // Orient so the constant Fricke term reads +4: clear its sign exponent and
    // flip if the coefficient is negative.
    const Monomial& f4 = four.monomials().front();
    FibExpr orient = FibExpr::sign_factor(f4.sign).scaled(f4.coeff < 0 ? Rational(-1) : Rational(1));
    lhs = lhs * orient;
    rhs = rhs * orient;

    std::string label = "fricke(" + M.str() + ", " + N.str() + ")";
    return content_normalized(expr::make_identity(label, std::move(lhs), std::move(rhs), {}, pair.name));
}

Identity trace_linear(const PairSpec& pair, const FactorSpec& M, const FactorSpec& N,
                      LinearForm form) {
    require_trace_pair(pair, M, N);
    Elem em = elem_of(M), en = elem_of(N);
    FibExpr lhs, rhs;
    std::string label;
    if (form == LinearForm::SumAB) {
        lhs = elem_trace(elem_mul(em, en)) + elem_trace(elem_mul(elem_adj(em), en));
        rhs = elem_trace(em) * elem_trace(en);
        label = "sumAB(" + M.str() + ", " + N.str() + ")";
    } else {
        lhs = elem_trace(elem_mul(elem_mul(en, em), en)) + elem_det(en) * elem_trace(em);
        rhs = elem_trace(en) * elem_trace(elem_mul(em, en));
        label = "BAB(" + M.str() + ", " + N.str() + ")";
    }
    return content_normalized(expr::make_identity(label, std::move(lhs), std::move(rhs), {}, pair.name));
}

bool fricke_general_check(const QMatrix& A, const QMatrix& B) {
    if (A.dim() != 2 || B.dim() != 2)
        throw std::invalid_argument("fricke_general_check: matrices must be 2x2");
    if (mat::det(A) != 1 || mat::det(B) != 1)
        throw std::invalid_argument("fricke_general_check: matrices must be unimodular");
    Rational tA = mat::trace(A), tB = mat::trace(B), tAB = mat::trace(A * B);
    Rational commutator = mat::trace(A * B * mat::inverse(A) * mat::inverse(B));
    return tA * tA + tB * tB + tAB * tAB == tA * tB * tAB + commutator + 2;
}

std::vector<Identity> rank3_trace_identities(const PairSpec& pair) {
    if (!(pair.w_char == mat::Polynomial::from_high_order({1, -2, -2, 1})))
        throw std::invalid_argument(pair.name +
                                    ": rank-3 trace identities require char poly X^3-2X^2-2X+1");
    if (!pair.w_template) throw std::invalid_argument(pair.name + ": no stored w template");

    auto diag_sum = [](const pairs::ExprMatrix& t) {
        FibExpr s;
        for (std::size_t i = 0; i < t.size(); ++i) s = s + t[i][i];
        return s;
    };
    AffineIndex two_n = AffineIndex::var("n", 2);
    FibExpr l2n = FibExpr::term(SeqKind::L, two_n);
    FibExpr f2n = FibExpr::term(SeqKind::F, two_n);
    FibExpr sign_n = FibExpr::sign_factor(AffineIndex::var("n"));

    std::vector<Identity> out;
    out.push_back(expr::make_identity("trace(w^n) " + pair.catalog, diag_sum(*pair.w_template),
                                      pair.scale * (l2n + sign_n), {}, pair.name));

    // (X-1)(X^2-2X-4): x eigenvalues 1, 1+sqrt5, 1-sqrt5.
    if (pair.xw_template &&
        mat::char_poly(pair.x) == mat::Polynomial::from_high_order({1, -3, -2, 4})) {
        out.push_back(expr::make_identity(
            "trace(x*w^n) " + pair.catalog, diag_sum(*pair.xw_template),
            pair.scale * (sign_n + l2n + f2n.scaled(Rational(5))), {}, pair.name));
    }
    return out;
}

Identity parity_specialize(const Identity& id, const std::map<std::string, Parity>& assignment) {
    Identity out = id;
    for (const auto& [v, p] : assignment) {
        AffineIndex repl = AffineIndex::var(v, 2);
        if (p == Parity::Odd) repl = repl + AffineIndex(1);
        out = out.substituted(v, repl);
        out.constraints.erase(v);
    }
    return out;
}

}  // namespace fibpair::identities
