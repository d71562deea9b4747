#include "fibpair/fibexpr.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fibpair::expr {

AffineIndex AffineIndex::var(const std::string& name, long coeff) {
    AffineIndex a;
    if (coeff != 0) a.coeffs.emplace(name, coeff);
    return a;
}

long AffineIndex::eval(const std::map<std::string, long>& assignment) const {
    long v = constant;
    for (const auto& [name, c] : coeffs) {
        auto it = assignment.find(name);
        if (it == assignment.end())
            throw std::invalid_argument("AffineIndex: unbound variable '" + name + "'");
        v += c * it->second;
    }
    return v;
}

AffineIndex AffineIndex::substituted(const std::string& name, const AffineIndex& repl) const {
    auto it = coeffs.find(name);
    if (it == coeffs.end()) return *this;
    long c = it->second;
    AffineIndex out = *this;
    out.coeffs.erase(name);
    out.constant += c * repl.constant;
    for (const auto& [v, rc] : repl.coeffs) {
        long nc = (out.coeffs.count(v) ? out.coeffs[v] : 0) + c * rc;
        if (nc == 0) out.coeffs.erase(v);
        else out.coeffs[v] = nc;
    }
    return out;
}

AffineIndex AffineIndex::mod2() const {
    AffineIndex out;
    out.constant = ((constant % 2) + 2) % 2;
    for (const auto& [v, c] : coeffs) {
        long r = ((c % 2) + 2) % 2;
        if (r != 0) out.coeffs.emplace(v, r);
    }
    return out;
}

AffineIndex operator+(const AffineIndex& a, const AffineIndex& b) {
    AffineIndex out = a;
    out.constant += b.constant;
    for (const auto& [v, c] : b.coeffs) {
        long nc = (out.coeffs.count(v) ? out.coeffs[v] : 0) + c;
        if (nc == 0) out.coeffs.erase(v);
        else out.coeffs[v] = nc;
    }
    return out;
}

AffineIndex operator-(const AffineIndex& a) {
    AffineIndex out;
    out.constant = -a.constant;
    for (const auto& [v, c] : a.coeffs) out.coeffs.emplace(v, -c);
    return out;
}

AffineIndex operator-(const AffineIndex& a, const AffineIndex& b) { return a + (-b); }

std::string AffineIndex::str() const {
    if (coeffs.empty()) return std::to_string(constant);
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : coeffs) {
        if (c < 0) os << "-";
        else if (!first) os << "+";
        long a = c < 0 ? -c : c;
        if (a != 1) os << a;
        os << v;
        first = false;
    }
    if (constant != 0) {
        os << (constant < 0 ? "-" : "+");
        os << (constant < 0 ? -constant : constant);
    }
    return os.str();
}

namespace {

void canonicalize_factors(Monomial& m) {
    // Factors at constant indices are numbers; fold them into the coefficient.
    std::vector<Factor> kept;
    for (const auto& f : m.factors) {
        if (f.index.is_constant()) {
            BigInt v = f.kind == SeqKind::F ? seqcore::fib(f.index.constant)
                                            : seqcore::lucas(f.index.constant);
            for (int p = 0; p < f.power; ++p) m.coeff *= v;
        } else {
            kept.push_back(f);
        }
    }
    m.factors = std::move(kept);
    std::sort(m.factors.begin(), m.factors.end(), [](const Factor& a, const Factor& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.index < b.index;
    });
    std::vector<Factor> merged;
    for (const auto& f : m.factors) {
        if (!merged.empty() && merged.back().kind == f.kind && merged.back().index == f.index)
            merged.back().power += f.power;
        else
            merged.push_back(f);
    }
    m.factors = std::move(merged);
}

void canonicalize_sign(Monomial& m) {
    // (-1)^(e+1) = -(-1)^e: the constant part always folds into the
    // coefficient, so the canonical sign exponent is a pure parity vector.
    m.sign = m.sign.mod2();
    if (m.sign.constant != 0) m.coeff = -m.coeff;
    m.sign.constant = 0;
}

bool monomial_key_less(const Monomial& a, const Monomial& b) {
    if (!(a.factors == b.factors)) return a.factors < b.factors;
    return a.sign < b.sign;
}

}  // namespace

FibExpr FibExpr::from_monomials(std::vector<Monomial> ms) {
    for (auto& m : ms) {
        m.coeff.canonicalize();  // callers may hand in raw num/den pairs
        canonicalize_factors(m);
        canonicalize_sign(m);
    }
    std::sort(ms.begin(), ms.end(), monomial_key_less);
    FibExpr out;
    for (auto& m : ms) {
        if (m.coeff == 0) continue;
        if (!out.monomials_.empty()) {
            Monomial& last = out.monomials_.back();
            if (last.factors == m.factors && last.sign == m.sign) {
                last.coeff += m.coeff;
                if (last.coeff == 0) out.monomials_.pop_back();
                continue;
            }
        }
        out.monomials_.push_back(std::move(m));
    }
    return out;
}

FibExpr FibExpr::constant(const Rational& c) {
    return from_monomials({Monomial{c, AffineIndex{}, {}}});
}

FibExpr FibExpr::term(SeqKind kind, AffineIndex index) {
    return from_monomials({Monomial{Rational(1), AffineIndex{}, {Factor{kind, std::move(index), 1}}}});
}

FibExpr FibExpr::sign_factor(AffineIndex exponent) {
    return from_monomials({Monomial{Rational(1), std::move(exponent), {}}});
}

FibExpr operator+(const FibExpr& a, const FibExpr& b) {
    std::vector<Monomial> ms = a.monomials_;
    ms.insert(ms.end(), b.monomials_.begin(), b.monomials_.end());
    return FibExpr::from_monomials(std::move(ms));
}

FibExpr operator-(const FibExpr& a) { return a.scaled(Rational(-1)); }

FibExpr operator-(const FibExpr& a, const FibExpr& b) { return a + (-b); }

FibExpr operator*(const FibExpr& a, const FibExpr& b) {
    std::vector<Monomial> ms;
    ms.reserve(a.monomials_.size() * b.monomials_.size());
    for (const auto& ma : a.monomials_) {
        for (const auto& mb : b.monomials_) {
            Monomial m;
            m.coeff = ma.coeff * mb.coeff;
            m.sign = ma.sign + mb.sign;
            m.factors = ma.factors;
            m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
            ms.push_back(std::move(m));
        }
    }
    return FibExpr::from_monomials(std::move(ms));
}

FibExpr FibExpr::scaled(const Rational& s) const {
    if (s == 0) return {};
    FibExpr out = *this;
    for (auto& m : out.monomials_) m.coeff *= s;
    return out;
}

Rational FibExpr::eval(const std::map<std::string, long>& assignment) const {
    Rational total(0);
    for (const auto& m : monomials_) {
        Rational v = m.coeff;
        if (!m.sign.is_zero() && m.sign.eval(assignment) % 2 != 0) v = -v;
        for (const auto& f : m.factors) {
            long k = f.index.eval(assignment);
            BigInt base = f.kind == SeqKind::F ? seqcore::fib(k) : seqcore::lucas(k);
            for (int p = 0; p < f.power; ++p) v *= base;
        }
        total += v;
    }
    return total;
}

FibExpr FibExpr::substituted(const std::string& name, const AffineIndex& repl) const {
    std::vector<Monomial> ms = monomials_;
    for (auto& m : ms) {
        m.sign = m.sign.substituted(name, repl);
        for (auto& f : m.factors) f.index = f.index.substituted(name, repl);
    }
    return from_monomials(std::move(ms));
}

std::vector<std::string> FibExpr::variables() const {
    std::set<std::string> names;
    for (const auto& m : monomials_) {
        for (const auto& [v, c] : m.sign.coeffs) names.insert(v);
        for (const auto& f : m.factors)
            for (const auto& [v, c] : f.index.coeffs) names.insert(v);
    }
    return {names.begin(), names.end()};
}

namespace {

std::string monomial_body(const Monomial& m) {
    // Everything except the coefficient's sign/magnitude handling, which the
    // expression printer owns.
    std::ostringstream os;
    bool need_star = false;
    Rational a = abs(m.coeff);
    if (a != 1 || (m.sign.is_zero() && m.factors.empty())) {
        os << a.get_str();
        need_star = true;
    }
    if (!m.sign.is_zero()) {
        if (need_star) os << "*";
        os << "(-1)^(" << m.sign.str() << ")";
        need_star = true;
    }
    for (const auto& f : m.factors) {
        if (need_star) os << "*";
        os << (f.kind == SeqKind::F ? "F[" : "L[") << f.index.str() << "]";
        if (f.power > 1) os << "^" << f.power;
        need_star = true;
    }
    return os.str();
}

}  // namespace

std::string FibExpr::str() const {
    if (monomials_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& m : monomials_) {
        if (first) {
            if (m.coeff < 0) os << "-";
            first = false;
        } else {
            os << (m.coeff < 0 ? " - " : " + ");
        }
        os << monomial_body(m);
    }
    return os.str();
}

FibExpr normalize(const FibExpr& e) { return FibExpr::from_monomials(e.monomials()); }

std::string constraint_str(Constraint c) {
    switch (c) {
        case Constraint::Any: return "any";
        case Constraint::Even: return "even";
        case Constraint::Odd: return "odd";
        case Constraint::GeOne: return ">=1";
        case Constraint::NonZero: return "!=0";
    }
    return "?";
}

Identity Identity::substituted(const std::string& name, const AffineIndex& repl) const {
    Identity out = *this;
    out.lhs = lhs.substituted(name, repl);
    out.rhs = rhs.substituted(name, repl);
    std::set<std::string> used;
    for (const auto& v : out.lhs.variables()) used.insert(v);
    for (const auto& v : out.rhs.variables()) used.insert(v);
    out.variables.clear();
    for (const auto& v : variables)
        if (used.count(v)) out.variables.push_back(v);
    for (const auto& [v, c] : repl.coeffs)
        if (used.count(v) && std::find(out.variables.begin(), out.variables.end(), v) == out.variables.end())
            out.variables.push_back(v);
    out.constraints.clear();
    for (const auto& [v, c] : constraints)
        if (used.count(v)) out.constraints.emplace(v, c);
    return out;
}

std::string Identity::str() const { return lhs.str() + " = " + rhs.str(); }

Identity make_identity(std::string label, FibExpr lhs, FibExpr rhs,
                       std::map<std::string, Constraint> constraints, std::string source) {
    Identity id;
    id.label = std::move(label);
    id.lhs = std::move(lhs);
    id.rhs = std::move(rhs);
    id.source = std::move(source);
    std::set<std::string> used;
    for (const auto& v : id.lhs.variables()) used.insert(v);
    for (const auto& v : id.rhs.variables()) used.insert(v);
    id.variables.assign(used.begin(), used.end());
    for (const auto& [v, c] : constraints) {
        if (!used.count(v))
            throw std::invalid_argument("identity '" + id.label + "': constraint on unused variable '" + v + "'");
        if (c != Constraint::Any) id.constraints.emplace(v, c);
    }
    return id;
}

}  // namespace fibpair::expr
