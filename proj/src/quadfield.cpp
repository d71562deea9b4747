#include "fibpair/quadfield.hpp"

#include <sstream>

namespace fibpair::qf5 {

QF5 inverse(const QF5& x) {
    Rational n = x.norm();
    if (n == 0) throw std::domain_error("QF5: inverse of zero (singular normalization)");
    return {x.p / n, -x.q / n};
}

QF5 pow(const QF5& x, long k) {
    QF5 base = k < 0 ? inverse(x) : x;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1UL
                            : static_cast<unsigned long>(k);
    QF5 acc(1);
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

QF5 binet_fib(long k) {
    QF5 diff = pow(phi(), k) - pow(psi(), k);
    return diff * inverse(sqrt5());
}

QF5 binet_lucas(long k) { return pow(phi(), k) + pow(psi(), k); }

std::string to_string(const QF5& x) {
    std::ostringstream os;
    if (x.q == 0) return x.p.get_str();
    if (x.p != 0) os << x.p.get_str() << (x.q > 0 ? " + " : " - ");
    else if (x.q < 0) os << "-";
    Rational aq = abs(x.q);
    if (aq != 1) os << aq.get_str() << "*";
    os << "sqrt5";
    return os.str();
}

LaurentQF LaurentQF::constant(const QF5& c) { return monomial(c, {}); }

LaurentQF LaurentQF::monomial(const QF5& c, const ExpVec& exps) {
    LaurentQF r;
    if (c.is_zero()) return r;
    ExpVec clean;
    for (const auto& [v, e] : exps)
        if (e != 0) clean.emplace(v, e);
    r.terms_.emplace(std::move(clean), c);
    return r;
}

void LaurentQF::add_term(const ExpVec& e, const QF5& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

LaurentQF operator+(const LaurentQF& a, const LaurentQF& b) {
    LaurentQF r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

LaurentQF operator-(const LaurentQF& a, const LaurentQF& b) {
    LaurentQF r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

LaurentQF operator*(const LaurentQF& a, const LaurentQF& b) {
    LaurentQF r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            LaurentQF::ExpVec e = ea;
            for (const auto& [v, k] : eb) {
                long ne = (e.count(v) ? e[v] : 0) + k;
                if (ne == 0) e.erase(v);
                else e[v] = ne;
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

LaurentQF LaurentQF::scaled(const QF5& c) const {
    LaurentQF r;
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

std::string LaurentQF::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")";
        for (const auto& [v, k] : e) os << "*" << v << "^" << k;
    }
    return os.str();
}

}  // namespace fibpair::qf5
