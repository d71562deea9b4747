#pragma once

#include "fibpair/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace fibpair::mat {

// Univariate polynomial with exact rational coefficients, lowest degree first.
// Trailing zero coefficients are trimmed; the zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial from_high_order(std::initializer_list<long> high_to_low);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    const Rational& coeff(long k) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool integer_coeffs() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);

    std::string str() const;  // e.g. "X^3 - 2*X^2 - 2*X + 1"

private:
    void trim();
    std::vector<Rational> coeffs_;
};

// Dense square matrix over Q, any dimension >= 1. All arithmetic exact.
class QMatrix {
public:
    explicit QMatrix(int dim);  // zero matrix
    QMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static QMatrix identity(int dim);

    int dim() const { return dim_; }
    Rational& at(int i, int j) { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
    const Rational& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * dim_ + j]; }

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const Rational& s, const QMatrix& a);
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.dim_ == b.dim_ && a.e_ == b.e_;
    }

    std::string str() const;

private:
    int dim_;
    std::vector<Rational> e_;  // row-major
};

QMatrix mat_mul(const QMatrix& a, const QMatrix& b);

// A^n for any integer n; n < 0 requires det(A) != 0. A^0 = I.
QMatrix mat_pow(const QMatrix& a, long n);

Rational det(const QMatrix& a);
Rational trace(const QMatrix& a);

// 2x2 adjugate: A * adjugate2(A) = det(A) * I.
QMatrix adjugate2(const QMatrix& a);

QMatrix inverse(const QMatrix& a);  // throws on singular input

// Monic characteristic polynomial det(X*I - A), dims 2 and 3 only.
Polynomial char_poly(const QMatrix& a);

// Evaluate p at a matrix argument (for Cayley-Hamilton checks).
QMatrix eval_at(const Polynomial& p, const QMatrix& a);

bool commutes(const QMatrix& a, const QMatrix& b);

}  // namespace fibpair::mat
