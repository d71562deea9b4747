#include "fibpair/pairs.hpp"

#include "fibpair/quadfield.hpp"
#include "fibpair/seqcore.hpp"

#include <sstream>
#include <stdexcept>

namespace fibpair::pairs {

using expr::AffineIndex;
using expr::FibExpr;
using expr::parse_expr;
using mat::Polynomial;
using mat::QMatrix;
using seqcore::fib;
using seqcore::lucas;

namespace {

ExprMatrix parse_template(const std::vector<std::vector<std::string>>& rows) {
    ExprMatrix t;
    for (const auto& row : rows) {
        t.emplace_back();
        for (const auto& cell : row) t.back().push_back(parse_expr(cell));
    }
    return t;
}

// Template of x*w^n when x = c1*w + c0*I: c1*T(n+1) + c0*T(n).
ExprMatrix linear_in_w_template(const ExprMatrix& t, long c1, long c0) {
    AffineIndex n_plus_1 = AffineIndex::var("n") + AffineIndex(1);
    ExprMatrix out;
    for (const auto& row : t) {
        out.emplace_back();
        for (const auto& cell : row)
            out.back().push_back(cell.substituted("n", n_plus_1).scaled(Rational(c1)) +
                                 cell.scaled(Rational(c0)));
    }
    return out;
}

QMatrix scaled_rows(const Rational& s, std::initializer_list<std::initializer_list<long>> rows) {
    QMatrix m(rows);
    return s * m;
}

long param_or(const std::map<std::string, long>& params, const std::string& key, long fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void finish(PairSpec& spec) {
    spec.det_w = mat::det(spec.w);
    spec.det_x = mat::det(spec.x);
    spec.singular_w = spec.det_w == 0;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "thm11", "rank2_fr", "rank2_25", "prop21", "rank3_wx", "rank3_zv", "singular_zv"};
    return names;
}

PairSpec make_pair(const std::string& name, const std::map<std::string, long>& params) {
    PairSpec spec;
    spec.catalog = name;
    spec.name = name;
    spec.scale = FibExpr::constant(Rational(1));

    if (name == "thm11") {
        spec.rank = 2;
        spec.w = QMatrix{{1, 1}, {1, 0}};
        spec.x = QMatrix{{1, 2}, {2, -1}};
        spec.w_char = Polynomial::from_high_order({1, -1, -1});
        spec.w_template = parse_template({{"F[n+1]", "F[n]"}, {"F[n]", "F[n-1]"}});
        spec.xw_template = parse_template({{"L[n+1]", "L[n]"}, {"L[n]", "L[n-1]"}});
    } else if (name == "rank2_fr") {
        long r = param_or(params, "r", 2);
        if (r == 0) throw std::invalid_argument("rank2_fr: r = 0 leaves the 1/F_r scale undefined");
        spec.rank = 2;
        spec.params["r"] = r;
        std::ostringstream nm;
        nm << "rank2_fr(r=" << r << ")";
        spec.name = nm.str();
        Rational inv_fr = make_rational(1, fib(r));
        Rational s = r % 2 == 0 ? Rational(-1) : Rational(1);  // (-1)^{r+1}
        QMatrix w(2), x(2);
        w.at(0, 0) = Rational(fib(r + 1));
        w.at(0, 1) = Rational(fib(1));
        w.at(1, 0) = s * Rational(fib(1));
        w.at(1, 1) = s * Rational(fib(1 - r));
        x.at(0, 0) = Rational(lucas(r));
        x.at(0, 1) = Rational(lucas(0));
        x.at(1, 0) = s * Rational(lucas(0));
        x.at(1, 1) = s * Rational(lucas(-r));
        spec.w = inv_fr * w;
        spec.x = inv_fr * x;
        spec.scale = FibExpr::term(expr::SeqKind::F, AffineIndex::var("r"));
        spec.w_char = Polynomial::from_high_order({1, -1, -1});
        spec.w_template = parse_template({{"F[n+r]", "F[n]"},
                                          {"(-1)^(r+1)*F[n]", "(-1)^(r+1)*F[n-r]"}});
        spec.xw_template = parse_template({{"L[n+r]", "L[n]"},
                                           {"(-1)^(r+1)*L[n]", "(-1)^(r+1)*L[n-r]"}});
    } else if (name == "rank2_25") {
        spec.rank = 2;
        spec.w = scaled_rows(Rational(1, 2), {{1, 5}, {1, 1}});
        spec.x = scaled_rows(Rational(1, 2), {{0, 10}, {2, 0}});
        spec.scale = FibExpr::constant(Rational(2));
        spec.w_char = Polynomial::from_high_order({1, -1, -1});
        spec.w_template = parse_template({{"L[n]", "5*F[n]"}, {"F[n]", "L[n]"}});
        spec.xw_template = parse_template({{"5*F[n]", "5*L[n]"}, {"L[n]", "5*F[n]"}});
    } else if (name == "prop21") {
        long d = param_or(params, "d", -2);
        long a = param_or(params, "a", 1);
        long b = param_or(params, "b", 2);
        spec.rank = 2;
        spec.params = {{"d", d}, {"a", a}, {"b", b}};
        std::ostringstream nm;
        nm << "prop21(d=" << d << ",a=" << a << ",b=" << b << ")";
        spec.name = nm.str();
        spec.w = QMatrix{{1 - d, 1}, {1 + d - d * d, d}};
        spec.x = Rational(a) * spec.w + Rational(b) * QMatrix::identity(2);
        spec.w_char = Polynomial::from_high_order({1, -1, -1});
        if (d == -2) {
            // The one member of the family with a known closed template.
            spec.w_template = parse_template({{"L[n+1]", "F[n]"}, {"-5*F[n]", "-L[n-1]"}});
            spec.xw_template = linear_in_w_template(*spec.w_template, a, b);
        }
    } else if (name == "rank3_wx") {
        spec.rank = 3;
        spec.w = QMatrix{{0, 0, 1}, {0, 1, 2}, {1, 1, 1}};
        spec.x = QMatrix{{0, 1, 0}, {2, 1, 2}, {0, 1, 2}};
        spec.w_char = Polynomial::from_high_order({1, -2, -2, 1});
        spec.w_template = parse_template(
            {{"F[n-1]^2", "F[n-1]*F[n]", "F[n]^2"},
             {"2*F[n-1]*F[n]", "F[n-1]^2 + F[n]*F[n+1]", "2*F[n]*F[n+1]"},
             {"F[n]^2", "F[n]*F[n+1]", "F[n+1]^2"}});
        spec.xw_template = parse_template(
            {{"2*F[n-1]*F[n]", "F[n-1]^2 + F[n]*F[n+1]", "2*F[n]*F[n+1]"},
             {"F[n-1]^2 + F[n]^2 + F[n+1]^2", "F[n-1]^2 + 2*F[n-1]*F[n] + 3*F[n]*F[n+1]",
              "F[n]^2 + F[n+1]^2 + F[n+2]^2"},
             {"2*F[n]*F[n+1]", "F[n+2]^2 - F[n]*F[n+1]", "2*F[n+1]*F[n+2]"}});
    } else if (name == "rank3_zv") {
        spec.rank = 3;
        spec.w = QMatrix{{0, 0, -1}, {1, 0, 2}, {0, 1, 2}};
        spec.x = spec.w - Rational(2) * QMatrix::identity(3);  // v = z - 2I
        spec.w_char = Polynomial::from_high_order({1, -2, -2, 1});
        spec.w_template = parse_template(
            {{"-F[n-1]*F[n-2]", "-F[n]*F[n-1]", "-F[n+1]*F[n]"},
             {"F[n]*F[n-2]", "F[n+1]*F[n-1]", "F[n+2]*F[n]"},
             {"F[n]*F[n-1]", "F[n+1]*F[n]", "F[n+2]*F[n+1]"}});
        spec.xw_template = linear_in_w_template(*spec.w_template, 1, -2);
    } else if (name == "singular_zv") {
        spec.rank = 3;
        spec.w = QMatrix{{1, 0, 1}, {1, -1, 0}, {0, 1, 1}};
        spec.x = spec.w + Rational(2) * QMatrix::identity(3);  // v = 2I + z
        spec.w_char = Polynomial::from_high_order({1, -1, -1, 0});
        spec.w_template = parse_template(
            {{"F[n]", "F[n-1]", "F[n+1]"},
             {"F[n-2]", "F[n-3]", "F[n-1]"},
             {"F[n-1]", "F[n-2]", "F[n]"}});
        spec.xw_template = linear_in_w_template(*spec.w_template, 1, 2);
    } else {
        throw std::invalid_argument("make_pair: unknown catalog name '" + name + "'");
    }

    finish(spec);
    return spec;
}

QMatrix closed_power_rank2(const QMatrix& a, long n) {
    if (!(mat::char_poly(a) == Polynomial::from_high_order({1, -1, -1})))
        throw std::invalid_argument("closed_power_rank2: characteristic polynomial is not X^2-X-1");
    return Rational(fib(n)) * a + Rational(fib(n - 1)) * QMatrix::identity(a.dim());
}

QMatrix closed_power_rank3(const QMatrix& a, long n) {
    if (!(mat::char_poly(a) == Polynomial::from_high_order({1, -2, -2, 1})))
        throw std::invalid_argument(
            "closed_power_rank3: characteristic polynomial is not X^3-2X^2-2X+1");
    Rational c2(fib(n) * fib(n - 1));
    Rational c1(fib(n) * fib(n - 2));
    Rational c0(fib(n - 1) * fib(n - 2));
    return c2 * (a * a) + c1 * a - c0 * QMatrix::identity(a.dim());
}

PolyPhi phi_poly(long r) {
    if (r < 1) throw std::invalid_argument("phi_poly: r must be >= 1");
    using qf5::QF5;
    std::vector<QF5> coeffs{QF5(1)};  // lowest degree first
    for (long i = 0; i <= r; ++i) {
        QF5 root = qf5::pow(qf5::phi(), i) * qf5::pow(qf5::psi(), r - i);
        std::vector<QF5> next(coeffs.size() + 1);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] = next[k + 1] + coeffs[k];
            next[k] = next[k] - root * coeffs[k];
        }
        coeffs = std::move(next);
    }
    std::vector<Rational> rc;
    rc.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        if (c.q != 0) throw std::logic_error("phi_poly: sqrt5 part failed to cancel");
        if (c.p.get_den() != 1) throw std::logic_error("phi_poly: non-integer coefficient");
        rc.push_back(c.p);
    }
    PolyPhi out;
    out.r = r;
    out.poly = Polynomial(std::move(rc));
    return out;
}

QMatrix companion(const Polynomial& p) {
    if (!p.is_monic()) throw std::invalid_argument("companion: polynomial must be monic");
    long deg = p.degree();
    if (deg < 1) throw std::invalid_argument("companion: degree must be >= 1");
    QMatrix c(static_cast<int>(deg));
    for (long i = 1; i < deg; ++i) c.at(static_cast<int>(i), static_cast<int>(i - 1)) = 1;
    for (long i = 0; i < deg; ++i) c.at(static_cast<int>(i), static_cast<int>(deg - 1)) = -p.coeff(i);
    return c;
}

namespace {

std::string cell_failure(const PairSpec& spec, const char* which, long n, int i, int j,
                         const Rational& got, const Rational& want) {
    std::ostringstream os;
    os << spec.name << ": " << which << " template mismatch at n=" << n << ", entry (" << (i + 1)
       << "," << (j + 1) << "): power gives " << got.get_str() << ", template gives "
       << want.get_str();
    return os.str();
}

}  // namespace

CertifyReport certify(const PairSpec& spec, long n_lo, long n_hi) {
    if (spec.singular_w && n_lo < 1)
        throw std::invalid_argument("certify: singular pair admits only positive exponents");

    CertifyReport report;
    auto fail = [&](std::string msg) {
        if (report.pass) report.first_failure = std::move(msg);
        report.pass = false;
    };

    ++report.checks;
    if (!mat::commutes(spec.w, spec.x)) fail(spec.name + ": w and x do not commute");

    ++report.checks;
    if (!(mat::char_poly(spec.w) == spec.w_char))
        fail(spec.name + ": characteristic polynomial mismatch: " + mat::char_poly(spec.w).str());

    std::map<std::string, long> assignment = spec.params;
    for (long n = n_lo; n <= n_hi && report.pass; ++n) {
        assignment["n"] = n;
        Rational scale_value = spec.scale.eval(assignment);
        QMatrix wn = mat::mat_pow(spec.w, n);
        if (spec.w_template) {
            QMatrix lhs = scale_value * wn;
            for (int i = 0; i < spec.w.dim(); ++i)
                for (int j = 0; j < spec.w.dim(); ++j) {
                    ++report.checks;
                    Rational want = (*spec.w_template)[i][j].eval(assignment);
                    if (lhs.at(i, j) != want)
                        fail(cell_failure(spec, "w^n", n, i, j, lhs.at(i, j), want));
                }
        }
        if (spec.xw_template) {
            QMatrix lhs = scale_value * (spec.x * wn);
            for (int i = 0; i < spec.w.dim(); ++i)
                for (int j = 0; j < spec.w.dim(); ++j) {
                    ++report.checks;
                    Rational want = (*spec.xw_template)[i][j].eval(assignment);
                    if (lhs.at(i, j) != want)
                        fail(cell_failure(spec, "x*w^n", n, i, j, lhs.at(i, j), want));
                }
        }
    }
    return report;
}

}  // namespace fibpair::pairs
