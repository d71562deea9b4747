#include "fibpair/exactmat.hpp"

#include <sstream>
#include <stdexcept>

namespace fibpair::mat {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::from_high_order(std::initializer_list<long> high_to_low) {
    std::vector<Rational> c;
    c.reserve(high_to_low.size());
    for (auto it = std::rbegin(high_to_low); it != std::rend(high_to_low); ++it)
        c.emplace_back(*it);
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& Polynomial::coeff(long k) const {
    static const Rational zero(0);
    if (k < 0 || k >= static_cast<long>(coeffs_.size())) return zero;
    return coeffs_[static_cast<std::size_t>(k)];
}

bool Polynomial::integer_coeffs() const {
    for (const auto& c : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
    return Polynomial(std::move(c));
}

std::string Polynomial::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
        const Rational& c = coeff(k);
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1 || k == 0) os << a.get_str();
        if (k > 0) {
            if (a != 1) os << "*";
            os << "X";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

QMatrix::QMatrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim, Rational(0)) {
    if (dim < 1) throw std::invalid_argument("QMatrix: dimension must be positive");
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : QMatrix(static_cast<int>(rows.size())) {
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim_)
            throw std::invalid_argument("QMatrix: ragged initializer");
        int j = 0;
        for (long v : row) at(i, j++) = Rational(v);
        ++i;
    }
}

QMatrix QMatrix::identity(int dim) {
    QMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

namespace {
void check_dims(const QMatrix& a, const QMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("QMatrix: dimension mismatch");
}
}  // namespace

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    check_dims(a, b);
    QMatrix r(a.dim_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    check_dims(a, b);
    QMatrix r(a.dim_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    check_dims(a, b);
    const int n = a.dim_;
    QMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
    QMatrix r(a.dim_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = s * a.e_[k];
    return r;
}

std::string QMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < dim_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < dim_; ++j) os << (j ? ", " : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) { return a * b; }

QMatrix mat_pow(const QMatrix& a, long n) {
    QMatrix base = n < 0 ? inverse(a) : a;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL
                            : static_cast<unsigned long>(n);
    QMatrix acc = QMatrix::identity(a.dim());
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Rational det(const QMatrix& a) {
    // Gaussian elimination with exact pivoting.
    const int n = a.dim();
    QMatrix m = a;
    Rational d(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (m.at(row, col) != 0) { pivot = row; break; }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        for (int row = col + 1; row < n; ++row) {
            if (m.at(row, col) == 0) continue;
            Rational f = m.at(row, col) / m.at(col, col);
            for (int j = col; j < n; ++j) m.at(row, j) -= f * m.at(col, j);
        }
    }
    return d;
}

Rational trace(const QMatrix& a) {
    Rational t(0);
    for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
    return t;
}

QMatrix adjugate2(const QMatrix& a) {
    if (a.dim() != 2) throw std::invalid_argument("adjugate2: matrix must be 2x2");
    QMatrix r(2);
    r.at(0, 0) = a.at(1, 1);
    r.at(0, 1) = -a.at(0, 1);
    r.at(1, 0) = -a.at(1, 0);
    r.at(1, 1) = a.at(0, 0);
    return r;
}

QMatrix inverse(const QMatrix& a) {
    const int n = a.dim();
    QMatrix m = a;
    QMatrix inv = QMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (m.at(row, col) != 0) { pivot = row; break; }
        if (pivot < 0) throw std::domain_error("inverse: singular matrix");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Rational p = m.at(col, col);
        for (int j = 0; j < n; ++j) {
            m.at(col, j) /= p;
            inv.at(col, j) /= p;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col || m.at(row, col) == 0) continue;
            Rational f = m.at(row, col);
            for (int j = 0; j < n; ++j) {
                m.at(row, j) -= f * m.at(col, j);
                inv.at(row, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

Polynomial char_poly(const QMatrix& a) {
    if (a.dim() == 2) {
        // X^2 - t*X + d
        return Polynomial({det(a), -trace(a), Rational(1)});
    }
    if (a.dim() == 3) {
        // X^3 - t*X^2 + m2*X - d, with m2 the sum of principal 2x2 minors.
        Rational m2(0);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                m2 += a.at(i, i) * a.at(j, j) - a.at(i, j) * a.at(j, i);
        return Polynomial({-det(a), m2, -trace(a), Rational(1)});
    }
    throw std::invalid_argument("char_poly: only dimensions 2 and 3 supported");
}

QMatrix eval_at(const Polynomial& p, const QMatrix& a) {
    QMatrix acc(a.dim());
    // Horner from the top coefficient.
    for (long k = p.degree(); k >= 0; --k) {
        acc = acc * a;
        for (int i = 0; i < a.dim(); ++i) acc.at(i, i) += p.coeff(k);
    }
    return acc;
}

bool commutes(const QMatrix& a, const QMatrix& b) {
    check_dims(a, b);
    return a * b == b * a;
}

}  // namespace fibpair::mat
