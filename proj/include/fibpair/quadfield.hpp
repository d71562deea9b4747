#pragma once

#include "fibpair/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace fibpair::qf5 {

// An element p + q*sqrt(5) of Q(sqrt 5), exact.
struct QF5 {
    Rational p;  // rational part
    Rational q;  // coefficient of sqrt(5)

    QF5() : p(0), q(0) {}
    QF5(Rational rp, Rational rq) : p(std::move(rp)), q(std::move(rq)) {}
    explicit QF5(const Rational& rp) : p(rp), q(0) {}
    explicit QF5(long n) : p(n), q(0) {}

    bool is_zero() const { return p == 0 && q == 0; }
    bool is_rational() const { return q == 0; }

    QF5 conj() const { return {p, -q}; }
    Rational norm() const { return p * p - 5 * q * q; }  // x * conj(x)

    friend QF5 operator+(const QF5& a, const QF5& b) { return {a.p + b.p, a.q + b.q}; }
    friend QF5 operator-(const QF5& a, const QF5& b) { return {a.p - b.p, a.q - b.q}; }
    friend QF5 operator-(const QF5& a) { return {-a.p, -a.q}; }
    friend QF5 operator*(const QF5& a, const QF5& b) {
        return {a.p * b.p + 5 * a.q * b.q, a.p * b.q + a.q * b.p};
    }
    friend bool operator==(const QF5& a, const QF5& b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(const QF5& a, const QF5& b) { return !(a == b); }
};

// Multiplicative inverse; throws if the element is zero (norm 0 iff p = q = 0 here,
// since sqrt(5) is irrational).
QF5 inverse(const QF5& x);

// x^k for any integer k (negative k via inverse).
QF5 pow(const QF5& x, long k);

inline QF5 phi() { return {Rational(1, 2), Rational(1, 2)}; }    // (1+sqrt5)/2
inline QF5 psi() { return {Rational(1, 2), Rational(-1, 2)}; }   // (1-sqrt5)/2
inline QF5 sqrt5() { return {Rational(0), Rational(1)}; }

// (phi^k - psi^k)/sqrt5, exact; rational-valued and equal to F_k for every k.
QF5 binet_fib(long k);

// phi^k + psi^k = L_k.
QF5 binet_lucas(long k);

std::string to_string(const QF5& x);

// Multivariate Laurent polynomial with QF5 coefficients. Exponents may be
// negative; the variable universe is the union of whatever the terms mention.
class LaurentQF {
public:
    using ExpVec = std::map<std::string, long>;  // no zero exponents stored

    LaurentQF() = default;
    static LaurentQF constant(const QF5& c);
    // c * prod var^exp
    static LaurentQF monomial(const QF5& c, const ExpVec& exps);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<ExpVec, QF5>& terms() const { return terms_; }

    friend LaurentQF operator+(const LaurentQF& a, const LaurentQF& b);
    friend LaurentQF operator-(const LaurentQF& a, const LaurentQF& b);
    friend LaurentQF operator*(const LaurentQF& a, const LaurentQF& b);
    LaurentQF scaled(const QF5& c) const;

    friend bool operator==(const LaurentQF& a, const LaurentQF& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    void add_term(const ExpVec& e, const QF5& c);
    std::map<ExpVec, QF5> terms_;
};

}  // namespace fibpair::qf5
