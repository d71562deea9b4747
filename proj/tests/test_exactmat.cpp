#include "fibpair/exactmat.hpp"

#include <doctest.h>

#include <random>

using namespace fibpair;
using namespace fibpair::mat;

namespace {
const QMatrix kW{{1, 1}, {1, 0}};    // golden pair
const QMatrix kX{{1, 2}, {2, -1}};
}  // namespace

TEST_SUITE_BEGIN("exactmat");

TEST_CASE("products of the golden pair") {
    QMatrix xw = kX * kW;
    CHECK(xw == QMatrix{{3, 1}, {1, 2}});  // [[L2, L1], [L1, L0]]
    CHECK(QMatrix::identity(2) * kW == kW);
    CHECK(commutes(kW, kX));
    CHECK(kW * kX == kX * kW);
}

TEST_CASE("powers") {
    CHECK(mat_pow(kW, 3) == QMatrix{{3, 2}, {2, 1}});
    CHECK(mat_pow(kX, 0) == QMatrix::identity(2));
    QMatrix w3{{0, 0, 1}, {0, 1, 2}, {1, 1, 1}};
    QMatrix sq = mat_pow(w3, 2);
    CHECK(sq.at(0, 0) == 1);
    CHECK(sq.at(0, 1) == 1);
    CHECK(sq.at(0, 2) == 1);
    // negative powers via the exact inverse
    CHECK(mat_pow(kW, -3) * mat_pow(kW, 3) == QMatrix::identity(2));
    QMatrix singular{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(mat_pow(singular, -1), std::domain_error);
}

TEST_CASE("det, trace, adjugate, inverse") {
    CHECK(det(kX) == -5);
    QMatrix w25 = Rational(1, 2) * QMatrix{{1, 5}, {1, 1}};
    CHECK(det(w25) == -1);
    QMatrix x25 = Rational(1, 2) * QMatrix{{0, 10}, {2, 0}};
    CHECK(trace(x25 * mat_pow(w25, 2)) == 5);  // 5*F_2

    QMatrix a{{3, 7}, {-2, 5}};
    CHECK(a * adjugate2(a) == det(a) * QMatrix::identity(2));
    CHECK(a * inverse(a) == QMatrix::identity(2));
    CHECK_THROWS_AS(inverse(QMatrix{{1, 2}, {2, 4}}), std::domain_error);
    CHECK_THROWS_AS(adjugate2(QMatrix(3)), std::invalid_argument);
}

TEST_CASE("characteristic polynomials") {
    CHECK(char_poly(kW) == Polynomial::from_high_order({1, -1, -1}));
    QMatrix w3{{0, 0, 1}, {0, 1, 2}, {1, 1, 1}};
    CHECK(char_poly(w3) == Polynomial::from_high_order({1, -2, -2, 1}));
    QMatrix z7{{1, 0, 1}, {1, -1, 0}, {0, 1, 1}};
    CHECK(char_poly(z7) == Polynomial::from_high_order({1, -1, -1, 0}));
    CHECK(char_poly(z7).str() == "X^3 - X^2 - X");
    CHECK_THROWS_AS(char_poly(QMatrix(4)), std::invalid_argument);
}

TEST_CASE("commutation detects order dependence") {
    CHECK_FALSE(commutes(QMatrix{{1, 1}, {0, 1}}, QMatrix{{1, 0}, {1, 1}}));
    QMatrix z{{0, 0, -1}, {1, 0, 2}, {0, 1, 2}};
    QMatrix v = z - Rational(2) * QMatrix::identity(3);
    CHECK(commutes(z, v));
}

TEST_CASE("Cayley-Hamilton at dims 2 and 3") {
    std::vector<QMatrix> samples = {
        kW, kX,
        Rational(1, 2) * QMatrix{{1, 5}, {1, 1}},
        QMatrix{{3, 1}, {-5, -2}},
        QMatrix{{0, 0, 1}, {0, 1, 2}, {1, 1, 1}},
        QMatrix{{0, 1, 0}, {2, 1, 2}, {0, 1, 2}},
        QMatrix{{0, 0, -1}, {1, 0, 2}, {0, 1, 2}},
        QMatrix{{1, 0, 1}, {1, -1, 0}, {0, 1, 1}},
    };
    for (const auto& a : samples)
        CHECK(eval_at(char_poly(a), a) == QMatrix(a.dim()));
}

TEST_CASE("det of powers") {
    std::vector<QMatrix> samples = {kW, kX, QMatrix{{0, 0, 1}, {0, 1, 2}, {1, 1, 1}}};
    for (const auto& a : samples) {
        Rational d = det(a);
        for (long n = -6; n <= 6; ++n) {
            Rational want(1);
            for (long i = 0; i < (n < 0 ? -n : n); ++i) want *= d;
            if (n < 0) want = 1 / want;
            CHECK(det(mat_pow(a, n)) == want);
        }
    }
}

TEST_CASE("cleared linear trace relation holds for all 2x2") {
    // t(MN) + t(adj(M) N) = t(M) t(N)
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int i = 0; i < 200; ++i) {
        QMatrix m{{d(rng), d(rng)}, {d(rng), d(rng)}};
        QMatrix n{{d(rng), d(rng)}, {d(rng), d(rng)}};
        CHECK(trace(m * n) + trace(adjugate2(m) * n) == trace(m) * trace(n));
    }
}

TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(QMatrix(2) * QMatrix(3), std::invalid_argument);
    CHECK_THROWS_AS(commutes(QMatrix(2), QMatrix(3)), std::invalid_argument);
}

TEST_SUITE_END();
