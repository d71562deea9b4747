#include "fibpair/cli.hpp"

#include "fibpair/corpus.hpp"
#include "fibpair/identities.hpp"
#include "fibpair/pairs.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace fibpair;

TEST_SUITE_BEGIN("cli");

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string("fibpair_test_") + std::to_string(counter++) + ".fib";
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
    static int counter;
};
int TempFile::counter = 0;

}  // namespace

TEST_CASE("compute") {
    CHECK(run({"compute", "fib", "10"}).out == "55\n");
    CHECK(run({"compute", "lucas", "0"}).out == "2\n");
    CHECK(run({"compute", "fib", "-4"}).out == "-3\n");
    CHECK(run({"compute", "lucas", "-3"}).out == "-4\n");
    CHECK(run({"compute", "fib", "xyz"}).code == 2);
    CHECK(run({"compute", "primes", "3"}).code == 2);
}

TEST_CASE("pairs subcommands") {
    auto list = run({"pairs", "list"});
    CHECK(list.code == 0);
    CHECK(list.out.find("rank2_fr") != std::string::npos);

    auto show = run({"pairs", "show", "thm11"});
    CHECK(show.code == 0);
    CHECK(show.out.find("[[1, 1], [1, 0]]") != std::string::npos);
    CHECK(show.out.find("F[n+1]") != std::string::npos);

    auto certify = run({"pairs", "certify", "rank3_zv", "--range", "1..8"});
    CHECK(certify.code == 0);
    CHECK(certify.out.find("certified") != std::string::npos);

    CHECK(run({"pairs", "certify", "nosuch"}).code == 2);
    CHECK(run({"pairs", "certify"}).code == 2);
    CHECK(run({"pairs", "certify", "thm11", "--range", "oops"}).code == 2);
}

TEST_CASE("gen matrix") {
    auto ww = run({"gen", "rank2_fr", "matrix", "WW"});
    CHECK(ww.code == 0);
    CHECK(ww.out.find("= M1") != std::string::npos);
    CHECK(ww.out.find("[proven]") != std::string::npos);

    auto wx = run({"gen", "rank2_25", "matrix", "WX", "--format", "json"});
    CHECK(wx.code == 0);
    auto j = nlohmann::json::parse(wx.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 4);
    bool saw_m5 = false;
    for (const auto& item : j) {
        CHECK(item["status"] == "proven");
        saw_m5 |= item["label"].get<std::string>().find("M5") != std::string::npos;
    }
    CHECK(saw_m5);
}

TEST_CASE("gen trace") {
    auto t6 = run({"gen", "rank2_25", "trace", "fricke", "--M", "w:even", "--N", "xw:odd"});
    CHECK(t6.code == 0);
    CHECK(t6.out.find("= T6") != std::string::npos);

    auto t8 = run({"gen", "thm11", "trace", "BAB"});
    CHECK(t8.code == 0);
    CHECK(t8.out.find("= T8") != std::string::npos);

    // (4.1)/(4.2) machinery is 2x2 only
    CHECK(run({"gen", "rank3_wx", "trace", "fricke"}).code == 2);
    CHECK(run({"gen", "thm11", "trace", "nosuchform"}).code == 2);
    CHECK(run({"gen", "thm11", "trace", "fricke", "--M", "bogus"}).code == 2);
}

TEST_CASE("gen rank3trace") {
    auto ids = run({"gen", "rank3_wx", "rank3trace"});
    CHECK(ids.code == 0);
    CHECK(ids.out.find("= (5.5)") != std::string::npos);
    CHECK(run({"gen", "singular_zv", "rank3trace"}).code == 2);
}

TEST_CASE("verify and prove files") {
    TempFile good("demo | | L[n]*L[m] + 5*F[n]*F[m] = 2*L[m+n] | test\n");
    CHECK(run({"verify", good.path}).code == 0);
    CHECK(run({"prove", good.path}).code == 0);

    TempFile mutated("demo | | L[n]*L[m] + 5*F[n]*F[m] = 3*L[m+n] | test\n");
    auto v = run({"verify", mutated.path});
    CHECK(v.code == 1);
    CHECK(v.out.find("FAILED") != std::string::npos);
    auto p = run({"prove", mutated.path});
    CHECK(p.code == 1);
    CHECK(p.out.find("refuted") != std::string::npos);

    TempFile bad_syntax("demo | | L[n]*L[m] + = 2 | test\n");
    auto b = run({"verify", bad_syntax.path});
    CHECK(b.code == 2);
    CHECK(b.err.find("line 1") != std::string::npos);

    TempFile grid_case("demo | r >= 1 | F[n]^2 - F[n+r]*F[n-r] = (-1)^(n-r)*F[r]^2 | test\n");
    CHECK(run({"verify", grid_case.path, "--grid", "n=-6..6,r=1..4"}).code == 0);
    CHECK(run({"verify", "no_such_file.fib"}).code == 2);
}

TEST_CASE("corpus commands") {
    auto listed = run({"corpus", "list"});
    CHECK(listed.code == 0);
    CHECK(listed.out.find("M1:") != std::string::npos);

    auto exported = run({"corpus", "export"});
    CHECK(exported.code == 0);
    auto reparsed = corpus::parse_corpus_text(exported.out);
    CHECK(reparsed.size() == corpus::entries().size());

    auto ran = run({"corpus", "run", "--format", "json"});
    CHECK(ran.code == 0);
    auto j = nlohmann::json::parse(ran.out);
    CHECK(j["pass"] == true);
    CHECK(j["entries"].size() == corpus::entries().size());
    for (const auto& e : j["entries"]) CHECK(e["status"] == "proven");
}

TEST_CASE("json identities round-trip through the grammar") {
    auto j = nlohmann::json::parse(run({"gen", "rank2_fr", "matrix", "WW", "--format", "json"}).out);
    auto originals = identities::matrix_identities(pairs::make_pair("rank2_fr"),
                                                   identities::EqKind::WW);
    REQUIRE(j.size() == originals.size());
    for (std::size_t i = 0; i < originals.size(); ++i) {
        CHECK(expr::parse_expr(j[i]["lhs"].get<std::string>()) == originals[i].lhs);
        CHECK(expr::parse_expr(j[i]["rhs"].get<std::string>()) == originals[i].rhs);
    }
}

TEST_CASE("verify reads stdin with -") {
    std::istringstream fake("demo | | L[n]*L[m] + 5*F[n]*F[m] = 2*L[m+n] | t\n");
    auto* old = std::cin.rdbuf(fake.rdbuf());
    auto r = run({"verify", "-"});
    std::cin.rdbuf(old);
    CHECK(r.code == 0);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_SUITE_END();
