#include "fibpair/identities.hpp"

#include "fibpair/corpus.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace fibpair;
using namespace fibpair::identities;
using expr::AffineIndex;
using expr::FibExpr;
using expr::Identity;
using expr::parse_identity;
using mat::QMatrix;
using pairs::PairSpec;

TEST_SUITE_BEGIN("identities");

namespace {

const Identity& corpus_entry(const std::string& label) {
    for (const auto& e : corpus::entries())
        if (e.label == label) return e.identity;
    throw std::runtime_error("missing corpus entry " + label);
}

// Same equation up to rearrangement: (lhs - rhs) - (lhs' - rhs') vanishes.
bool binet_equal(const Identity& a, const Identity& b) {
    FibExpr diff = a.difference() - b.difference();
    auto used = diff.variables();
    std::map<std::string, expr::Constraint> cs;
    for (const auto& [v, c] : a.constraints)
        if (std::find(used.begin(), used.end(), v) != used.end()) cs.emplace(v, c);
    Identity id = expr::make_identity("", std::move(diff), FibExpr(), std::move(cs));
    return expr::prove_binet(id).proven();
}

bool syntactic_equal(const Identity& a, const Identity& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
}

FactorSpec fw(const std::string& var, expr::Constraint parity = expr::Constraint::Any) {
    return FactorSpec{false, var, parity};
}
FactorSpec fxw(const std::string& var, expr::Constraint parity = expr::Constraint::Any) {
    return FactorSpec{true, var, parity};
}

}  // namespace

TEST_CASE("matrix identities of the rank2_fr family reproduce M1-M3") {
    PairSpec p = pairs::make_pair("rank2_fr", {{"r", 3}});
    auto ww = matrix_identities(p, EqKind::WW);
    REQUIRE(ww.size() == 4);
    CHECK(syntactic_equal(ww[0], corpus_entry("M1")));
    CHECK(ww[0].constraints.at("r") == expr::Constraint::GeOne);

    auto wx = matrix_identities(p, EqKind::WX);
    CHECK(syntactic_equal(wx[0], corpus_entry("M2")));

    auto xx = matrix_identities(p, EqKind::XX);
    CHECK(syntactic_equal(xx[0], corpus_entry("M3")));

    for (const auto& ids : {ww, wx, xx})
        for (const auto& id : ids) {
            INFO(id.label, ": ", id.str());
            CHECK(expr::prove_binet(id).proven());
        }
}

TEST_CASE("matrix identities of rank2_25 reproduce M4 and M5") {
    PairSpec p = pairs::make_pair("rank2_25");
    auto ww = matrix_identities(p, EqKind::WW);
    auto wx = matrix_identities(p, EqKind::WX);
    auto xx = matrix_identities(p, EqKind::XX);

    auto count_matching = [&](const std::vector<Identity>& ids, const std::string& label) {
        int k = 0;
        for (const auto& id : ids) k += syntactic_equal(id, corpus_entry(label));
        return k;
    };
    CHECK(count_matching(ww, "M4") >= 1);
    CHECK(count_matching(wx, "M5") >= 1);
    // x^2 = 5I makes XX a copy of the WW identities
    CHECK(count_matching(xx, "M4") >= 1);
    for (const auto& id : wx) CHECK(expr::prove_binet(id).proven());
}

TEST_CASE("thm11 gives the introduction identity") {
    PairSpec p = pairs::make_pair("thm11");
    auto wx = matrix_identities(p, EqKind::WX);
    CHECK(syntactic_equal(wx[0], corpus_entry("(1.7)")));
}

TEST_CASE("prop21 pair gives the final-comment identities") {
    PairSpec p = pairs::make_pair("prop21");
    auto ww = matrix_identities(p, EqKind::WW);
    CHECK(syntactic_equal(ww[0], corpus_entry("(7.1a)")));
    auto wx = matrix_identities(p, EqKind::WX);
    CHECK(binet_equal(wx[0], corpus_entry("(7.1b)")));
    for (const auto& id : wx) CHECK(expr::prove_binet(id).proven());
}

TEST_CASE("singular pair gives the introduction identity (1.3)") {
    PairSpec p = pairs::make_pair("singular_zv");
    auto wx = matrix_identities(p, EqKind::WX);
    CHECK(binet_equal(wx[0], corpus_entry("(1.3)")));
    for (const auto& id : wx) CHECK(expr::prove_binet(id).proven());
}

TEST_CASE("rank3_zv squares give (7.2)") {
    PairSpec p = pairs::make_pair("rank3_zv");
    auto ww = matrix_identities(p, EqKind::WW);
    AffineIndex n = AffineIndex::var("n");
    Identity sq11 = ww[0].substituted("m", n);   // (1,1) at m = n
    Identity sq21 = ww[3].substituted("m", n);   // (2,1)
    CHECK(binet_equal(sq11, corpus_entry("(7.2a)")));
    CHECK(binet_equal(sq21, corpus_entry("(7.2b)")));
}

TEST_CASE("rank3_wx entries reduce to Table 7") {
    PairSpec p = pairs::make_pair("rank3_wx");
    auto wx = matrix_identities(p, EqKind::WX);
    REQUIRE(wx.size() == 9);
    // (w, x*w^n): set the left exponent to 1, then call the free variable n.
    auto at_w1 = [&](int i, int j) {
        Identity id = wx[static_cast<std::size_t>(3 * (i - 1) + (j - 1))];
        id = id.substituted("n", AffineIndex(1));
        return id.substituted("m", AffineIndex::var("n"));
    };
    CHECK(binet_equal(at_w1(1, 2), corpus_entry("N1")));
    CHECK(binet_equal(at_w1(2, 1), corpus_entry("N2")));
    CHECK(binet_equal(at_w1(2, 2), corpus_entry("N3")));
    CHECK(binet_equal(at_w1(3, 2), corpus_entry("N4")));
    // (w^n, x*w^n): diagonal (1,1) with both exponents equal.
    Identity n5 = wx[0].substituted("m", AffineIndex::var("n"));
    CHECK(binet_equal(n5, corpus_entry("N5")));

    for (const auto& id : wx) CHECK(expr::prove_binet(id).proven());
}

TEST_CASE("template requirements") {
    PairSpec no_template = pairs::make_pair("prop21", {{"d", 1}, {"a", 1}, {"b", 1}});
    CHECK_THROWS_AS(matrix_identities(no_template, EqKind::WW), std::invalid_argument);
    // x^2 of the rank-3 pair is not scalar
    CHECK_THROWS_AS(matrix_identities(pairs::make_pair("rank3_wx"), EqKind::XX),
                    std::invalid_argument);
}

TEST_CASE("fricke trace identities reproduce tables 4 and 5") {
    using expr::Constraint;
    PairSpec fr = pairs::make_pair("rank2_fr", {{"r", 2}});
    PairSpec p25 = pairs::make_pair("rank2_25");

    CHECK(syntactic_equal(trace_fricke(fr, fw("n", Constraint::Even), fw("m", Constraint::Even)),
                          corpus_entry("T1")));
    CHECK(syntactic_equal(trace_fricke(fr, fxw("n", Constraint::Even), fxw("m", Constraint::Even)),
                          corpus_entry("T2")));
    CHECK(syntactic_equal(trace_fricke(fr, fxw("n", Constraint::Even), fxw("m", Constraint::Odd)),
                          corpus_entry("T3")));
    CHECK(syntactic_equal(trace_fricke(fr, fxw("n", Constraint::Odd), fxw("m", Constraint::Odd)),
                          corpus_entry("T4")));
    CHECK(syntactic_equal(trace_fricke(p25, fw("n", Constraint::Even), fxw("m", Constraint::Even)),
                          corpus_entry("T5")));
    CHECK(syntactic_equal(trace_fricke(p25, fw("n", Constraint::Even), fxw("m", Constraint::Odd)),
                          corpus_entry("T6")));
    CHECK(syntactic_equal(trace_fricke(p25, fw("n", Constraint::Odd), fxw("m", Constraint::Even)),
                          corpus_entry("T7")));
    // and the unspecialized two-variable form
    CHECK(syntactic_equal(trace_fricke(pairs::make_pair("thm11"), fw("n"), fw("m")),
                          corpus_entry("(4.4)")));
    // with both determinants +1 the cleared form is the plain commuting relation
    CHECK(syntactic_equal(trace_fricke(pairs::make_pair("thm11"), fw("n", Constraint::Even),
                                       fw("m", Constraint::Even)),
                          corpus_entry("T1")));
}

TEST_CASE("fricke with constant factors degenerates to a true triviality") {
    PairSpec p = pairs::make_pair("thm11");
    Identity general = trace_fricke(p, fw("n"), fw("m"));
    Identity at_zero = general.substituted("n", AffineIndex(0)).substituted("m", AffineIndex(0));
    CHECK(at_zero.lhs == at_zero.rhs);  // 12 = 12 before content normalization
    CHECK(expr::prove_binet(at_zero).proven());
}

TEST_CASE("parity specialization connects (4.4) to T1") {
    Identity general = corpus_entry("(4.4)");
    Identity even_even =
        parity_specialize(general, {{"n", Parity::Even}, {"m", Parity::Even}});
    CHECK(syntactic_equal(even_even, corpus_entry("T1")));
    CHECK(syntactic_equal(parity_specialize(general, {}), general));
}

TEST_CASE("linear trace identities reproduce table 6") {
    PairSpec p = pairs::make_pair("thm11");
    CHECK(syntactic_equal(trace_linear(p, fw("n"), fw("m"), LinearForm::BAB), corpus_entry("T8")));
    CHECK(syntactic_equal(trace_linear(p, fw("n"), fw("m"), LinearForm::SumAB), corpus_entry("T9")));
    CHECK(syntactic_equal(trace_linear(p, fxw("n"), fw("m"), LinearForm::BAB), corpus_entry("T10")));
    CHECK(
        syntactic_equal(trace_linear(p, fxw("n"), fw("m"), LinearForm::SumAB), corpus_entry("T11")));
    // trivial specialization: 2 + 2 = 2 * 2
    Identity sum0 = trace_linear(p, fw("n"), fw("m"), LinearForm::SumAB)
                        .substituted("n", AffineIndex(0))
                        .substituted("m", AffineIndex(0));
    CHECK(expr::prove_binet(sum0).proven());
}

TEST_CASE("trace generators reject unsuitable pairs") {
    PairSpec rank3 = pairs::make_pair("rank3_wx");
    CHECK_THROWS_AS(trace_fricke(rank3, fw("n"), fw("m")), std::invalid_argument);
    CHECK_THROWS_AS(trace_linear(rank3, fw("n"), fw("m"), LinearForm::BAB), std::invalid_argument);
    PairSpec sing = pairs::make_pair("singular_zv");
    CHECK_THROWS_AS(trace_fricke(sing, fw("n"), fw("m")), std::invalid_argument);
    // prop21's x has nonzero trace; x-factors are unavailable, w-factors fine
    PairSpec p21 = pairs::make_pair("prop21");
    CHECK_THROWS_AS(trace_fricke(p21, fxw("n"), fw("m")), std::invalid_argument);
    CHECK(syntactic_equal(trace_fricke(p21, fw("n"), fw("m")), corpus_entry("(4.4)")));
}

TEST_CASE("general fricke relation") {
    QMatrix id2 = QMatrix::identity(2);
    CHECK(fricke_general_check(id2, id2));
    QMatrix a{{1, 1}, {0, 1}}, b{{1, 0}, {1, 1}};
    CHECK(fricke_general_check(a, b));
    CHECK(mat::trace(a * b * mat::inverse(a) * mat::inverse(b)) == 3);
    CHECK_THROWS_AS(fricke_general_check(QMatrix{{2, 0}, {0, 1}}, id2), std::invalid_argument);
}

TEST_CASE("rank-3 eigenvalue traces") {
    auto wx_ids = rank3_trace_identities(pairs::make_pair("rank3_wx"));
    REQUIRE(wx_ids.size() == 2);
    CHECK(syntactic_equal(wx_ids[0], corpus_entry("(5.5)")));
    // the x*w^n trace: diag of (5.4) sums to (-1)^n + L_2n + 5 F_2n
    Identity expect = parse_identity(
        "F[n-1]^2 + 4*F[n-1]*F[n] + 3*F[n]*F[n+1] + 2*F[n+1]*F[n+2] = (-1)^(n) + L[2n] + 5*F[2n]");
    CHECK(syntactic_equal(wx_ids[1], expect));
    CHECK(expr::prove_binet(wx_ids[1]).proven());
    // its companion identity from the catalog
    CHECK(binet_equal(wx_ids[1],
                      expr::make_identity("", corpus_entry("(5.7)").lhs +
                                                  expr::parse_expr("4*F[2n]"),
                                          corpus_entry("(5.7)").rhs + expr::parse_expr("4*F[2n]"))));

    auto zv_ids = rank3_trace_identities(pairs::make_pair("rank3_zv"));
    REQUIRE(zv_ids.size() == 1);
    Identity example54 = parse_identity("2*F[n+1]^2 - F[n-1]*F[n-2] = L[2n] + (-1)^(n)");
    CHECK(binet_equal(zv_ids[0], example54));
    CHECK(expr::prove_binet(zv_ids[0]).proven());
    // n = 1 spot check of (5.5): 2F_0^2 + F_1F_2 + F_2^2 = 2 = L_2 - 1
    CHECK(corpus_entry("(5.5)").lhs.eval({{"n", 1}}) == 2);

    CHECK_THROWS_AS(rank3_trace_identities(pairs::make_pair("singular_zv")),
                    std::invalid_argument);
}

TEST_CASE("template traces recover the trace identities of the rank2_fr family") {
    PairSpec p = pairs::make_pair("rank2_fr", {{"r", 2}});
    auto diag_sum = [](const pairs::ExprMatrix& t) {
        FibExpr s;
        for (std::size_t i = 0; i < t.size(); ++i) s = s + t[i][i];
        return s;
    };
    // trace(a*w^n) = a*L_n and trace(a*x*w^n) = a*5F_n, read off the templates
    Identity w_trace = expr::make_identity(
        "", diag_sum(*p.w_template), p.scale * FibExpr::term(expr::SeqKind::L, AffineIndex::var("n")),
        {{"r", expr::Constraint::GeOne}});
    Identity xw_trace = expr::make_identity(
        "", diag_sum(*p.xw_template),
        (p.scale * FibExpr::term(expr::SeqKind::F, AffineIndex::var("n"))).scaled(Rational(5)),
        {{"r", expr::Constraint::GeOne}});
    CHECK(binet_equal(w_trace, corpus_entry("(3.3a)")));
    CHECK(binet_equal(xw_trace, corpus_entry("(3.3b)")));
    CHECK(expr::prove_binet(w_trace).proven());
    CHECK(expr::prove_binet(xw_trace).proven());
}

TEST_CASE("generation is sound numerically") {
    // Re-derive each matrix equation at random concrete exponents.
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> exp_d(-5, 5), pos_d(1, 6);
    for (const char* name : {"thm11", "rank2_fr", "rank2_25", "rank3_wx", "rank3_zv",
                             "singular_zv"}) {
        PairSpec p = pairs::make_pair(name);
        bool positive_only = p.singular_w;
        std::map<std::string, long> base = p.params;
        for (int t = 0; t < 50; ++t) {
            long n = positive_only ? pos_d(rng) : exp_d(rng);
            long m = positive_only ? pos_d(rng) : exp_d(rng);
            auto assign = base;
            assign["n"] = n;
            Rational s = p.scale.eval(assign);
            QMatrix wn = mat_pow(p.w, n), wm = mat_pow(p.w, m), wnm = mat_pow(p.w, n + m);
            CHECK((s * wn) * (s * wm) == s * (s * wnm));
            CHECK((s * wn) * (s * (p.x * wm)) == s * (s * (p.x * wnm)));
        }
    }
}

TEST_CASE("generated identities also survive grid verification") {
    PairSpec p = pairs::make_pair("rank2_fr", {{"r", 2}});
    for (auto kind : {EqKind::WW, EqKind::WX, EqKind::XX})
        for (const auto& id : matrix_identities(p, kind)) {
            auto report = expr::verify_grid(id, expr::default_ranges(id));
            INFO(id.label, ": ", id.str());
            CHECK(report.ok());
        }
}

TEST_SUITE_END();
