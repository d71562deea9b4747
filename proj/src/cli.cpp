#include "fibpair/cli.hpp"

#include "fibpair/corpus.hpp"
#include "fibpair/identities.hpp"
#include "fibpair/pairs.hpp"
#include "fibpair/seqcore.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fibpair::cli {

namespace {

using json = nlohmann::json;
using namespace std::chrono;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- small parsers -----------------------------------------------------------

std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("bad range '" + text + "', expected LO..HI");
    try {
        long lo = std::stol(text.substr(0, dots));
        long hi = std::stol(text.substr(dots + 2));
        if (lo > hi) throw UsageError("bad range '" + text + "': lo > hi");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw UsageError("bad range '" + text + "'");
    } catch (const std::out_of_range&) {
        throw UsageError("bad range '" + text + "'");
    }
}

std::map<std::string, expr::Interval> parse_grid(const std::string& text) {
    std::map<std::string, expr::Interval> out;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw UsageError("bad grid component '" + part + "', expected var=LO..HI");
        auto [lo, hi] = parse_range(part.substr(eq + 1));
        out[part.substr(0, eq)] = expr::Interval{lo, hi};
    }
    return out;
}

identities::FactorSpec parse_factor(const std::string& text, const std::string& var) {
    identities::FactorSpec f;
    f.exponent_var = var;
    std::string base = text, parity;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        base = text.substr(0, colon);
        parity = text.substr(colon + 1);
    }
    if (base == "w") f.uses_x = false;
    else if (base == "xw") f.uses_x = true;
    else throw UsageError("bad factor '" + text + "', expected w or xw with optional :parity");
    if (parity.empty() || parity == "any") f.parity = expr::Constraint::Any;
    else if (parity == "even") f.parity = expr::Constraint::Even;
    else if (parity == "odd") f.parity = expr::Constraint::Odd;
    else throw UsageError("bad parity '" + parity + "', expected any, even or odd");
    return f;
}

long parse_integer(const std::string& text) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw UsageError("malformed integer '" + text + "'");
    }
    if (used != text.size()) throw UsageError("malformed integer '" + text + "'");
    return v;
}

// ---- shared helpers ----------------------------------------------------------

std::map<std::string, long> pair_params(long r, long d, long a, long b) {
    return {{"r", r}, {"d", d}, {"a", a}, {"b", b}};
}

pairs::PairSpec build_pair(const std::string& name, const std::map<std::string, long>& params) {
    const auto& names = pairs::catalog_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown pair '" + name + "'; see 'pairs list'");
    return pairs::make_pair(name, params);
}

json constraints_json(const expr::Identity& id) {
    json out = json::array();
    for (const auto& [v, c] : id.constraints) out.push_back(v + " " + expr::constraint_str(c));
    return out;
}

json identity_json(const expr::Identity& id, const std::string& status,
                   const std::string& witness = {}) {
    json j = {
        {"label", id.label},
        {"lhs", id.lhs.str()},
        {"rhs", id.rhs.str()},
        {"variables", id.variables},
        {"constraints", constraints_json(id)},
        {"status", status},
    };
    if (!witness.empty()) j["witness"] = witness;
    return j;
}

std::string witness_of(const expr::VerifyReport& report) {
    if (report.failures.empty()) return {};
    const auto& f = report.failures.front();
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, x] : f.assignment) {
        os << (first ? "" : ", ") << v << "=" << x;
        first = false;
    }
    os << ": lhs=" << f.lhs.get_str() << ", rhs=" << f.rhs.get_str();
    return os.str();
}

// Proves when the variable count allows it, otherwise grid-verifies.
// Returns {status, witness}.
std::pair<std::string, std::string> check_identity(const expr::Identity& id) {
    if (id.variables.size() <= 4) {
        auto res = expr::prove_binet(id);
        if (res.proven()) return {"proven", {}};
        return {"failed", "refuting parity case: " + res.refuting_cases.front().str()};
    }
    auto report = expr::verify_grid(id, expr::default_ranges(id), 1);
    if (report.ok()) return {"verified", {}};
    return {"failed", witness_of(report)};
}

// ---- subcommand bodies ---------------------------------------------------------

int cmd_pairs_list(bool as_json, std::ostream& out) {
    if (as_json) {
        json j = json::array();
        for (const auto& name : pairs::catalog_names()) j.push_back(name);
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "Catalog pairs:\n";
    out << "  thm11        rank 2, w = [[1,1],[1,0]], x = [[1,2],[2,-1]]\n";
    out << "  rank2_fr     rank 2 family, parameter r (nonzero, default 2), scale F[r]\n";
    out << "  rank2_25     rank 2, scale 2, entries L_n and 5F_n\n";
    out << "  prop21       rank 2 family w_d with x = a*w + b*I (defaults d=-2, a=1, b=2)\n";
    out << "  rank3_wx     rank 3, squares-of-Fibonacci entries\n";
    out << "  rank3_zv     rank 3, companion form of X^3-2X^2-2X+1\n";
    out << "  singular_zv  rank 3, singular w (positive powers only), v = 2I + w\n";
    return kOk;
}

void print_template(const pairs::ExprMatrix& t, const std::string& head, std::ostream& out) {
    out << head << "\n";
    for (const auto& row : t) {
        out << "    [ ";
        for (std::size_t j = 0; j < row.size(); ++j)
            out << row[j].str() << (j + 1 < row.size() ? " | " : "");
        out << " ]\n";
    }
}

int cmd_pairs_show(const pairs::PairSpec& spec, bool as_json, std::ostream& out) {
    if (as_json) {
        json j = {
            {"name", spec.name},
            {"catalog", spec.catalog},
            {"rank", spec.rank},
            {"scale", spec.scale.str()},
            {"w", spec.w.str()},
            {"x", spec.x.str()},
            {"det_w", spec.det_w.get_str()},
            {"det_x", spec.det_x.get_str()},
            {"char_poly_w", spec.w_char.str()},
            {"singular_w", spec.singular_w},
        };
        auto tmpl = [](const pairs::ExprMatrix& t) {
            json rows = json::array();
            for (const auto& row : t) {
                json r = json::array();
                for (const auto& cell : row) r.push_back(cell.str());
                rows.push_back(r);
            }
            return rows;
        };
        if (spec.w_template) j["w_template"] = tmpl(*spec.w_template);
        if (spec.xw_template) j["xw_template"] = tmpl(*spec.xw_template);
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << spec.name << "  (rank " << spec.rank << ")\n";
    out << "  w = " << spec.w.str() << "\n";
    out << "  x = " << spec.x.str() << "\n";
    out << "  det w = " << spec.det_w.get_str() << ", det x = " << spec.det_x.get_str() << "\n";
    out << "  char poly of w: " << spec.w_char.str() << "\n";
    out << "  scale: " << spec.scale.str() << "\n";
    if (spec.w_template) print_template(*spec.w_template, "  entries of scale*w^n:", out);
    if (spec.xw_template) print_template(*spec.xw_template, "  entries of scale*x*w^n:", out);
    if (spec.singular_w) out << "  (w singular: templates valid for n >= 1)\n";
    return kOk;
}

int cmd_pairs_certify(const pairs::PairSpec& spec, long lo, long hi, bool as_json,
                      std::ostream& out) {
    auto report = pairs::certify(spec, lo, hi);
    if (as_json) {
        json j = {{"pair", spec.name},
                  {"range", {lo, hi}},
                  {"checks", report.checks},
                  {"pass", report.pass}};
        if (!report.pass) j["first_failure"] = report.first_failure;
        out << j.dump(2) << "\n";
    } else if (report.pass) {
        out << spec.name << ": certified over n in [" << lo << ", " << hi << "] ("
            << report.checks << " checks)\n";
    } else {
        out << spec.name << ": CERTIFICATION FAILED: " << report.first_failure << "\n";
    }
    return report.pass ? kOk : kMathFailure;
}

int emit_identities(const std::vector<expr::Identity>& ids, bool as_json, std::ostream& out) {
    bool all_good = true;
    json arr = json::array();
    for (const auto& id : ids) {
        auto [status, witness] = check_identity(id);
        all_good &= status != "failed";
        auto alias = corpus::find_matching_label(id);
        if (as_json) {
            expr::Identity named = id;
            if (alias) named.label = *alias;
            arr.push_back(identity_json(named, status, witness));
            arr.back()["generator"] = id.label;
        } else {
            out << id.label << (alias ? " = " + *alias : "") << ": " << id.str() << "   ["
                << status << "]";
            if (!witness.empty()) out << " " << witness;
            out << "\n";
        }
    }
    if (as_json) out << arr.dump(2) << "\n";
    return all_good ? kOk : kMathFailure;
}

int cmd_gen(const pairs::PairSpec& spec, const std::string& mode, const std::string& submode,
            const std::string& m_text, const std::string& n_text, bool as_json, std::ostream& out) {
    std::vector<expr::Identity> ids;
    if (mode == "matrix") {
        identities::EqKind kind;
        if (submode == "WW") kind = identities::EqKind::WW;
        else if (submode == "WX") kind = identities::EqKind::WX;
        else if (submode == "XX") kind = identities::EqKind::XX;
        else throw UsageError("matrix mode expects WW, WX or XX");
        ids = identities::matrix_identities(spec, kind);
    } else if (mode == "trace") {
        auto M = parse_factor(m_text, "n");
        auto N = parse_factor(n_text, "m");
        if (submode == "fricke") ids.push_back(identities::trace_fricke(spec, M, N));
        else if (submode == "sumAB")
            ids.push_back(identities::trace_linear(spec, M, N, identities::LinearForm::SumAB));
        else if (submode == "BAB")
            ids.push_back(identities::trace_linear(spec, M, N, identities::LinearForm::BAB));
        else throw UsageError("trace mode expects fricke, sumAB or BAB");
    } else if (mode == "rank3trace") {
        ids = identities::rank3_trace_identities(spec);
    } else {
        throw UsageError("unknown generation mode '" + mode + "'");
    }
    return emit_identities(ids, as_json, out);
}

std::vector<corpus::CorpusEntry> load_entries_file(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return corpus::parse_corpus_text(text);
}

int cmd_verify(const std::vector<corpus::CorpusEntry>& entries,
               const std::map<std::string, expr::Interval>& overrides, bool as_json,
               std::ostream& out) {
    bool all_ok = true;
    json arr = json::array();
    for (const auto& e : entries) {
        auto ranges = expr::default_ranges(e.identity);
        for (const auto& [v, iv] : overrides)
            if (ranges.count(v)) ranges[v] = iv;
        auto t0 = steady_clock::now();
        auto report = expr::verify_grid(e.identity, ranges);
        auto ms = duration_cast<microseconds>(steady_clock::now() - t0).count() / 1000.0;
        bool ok = report.ok();
        all_ok &= ok;
        if (as_json) {
            arr.push_back(identity_json(e.identity, ok ? "verified" : "failed",
                                        ok ? "" : witness_of(report)));
            arr.back()["checks"] = report.total;
            arr.back()["ms"] = ms;
        } else {
            out << e.label << ": " << (ok ? "verified" : "FAILED") << " (" << report.total
                << " assignments";
            if (!ok) out << "; " << report.failures.size() << " failures; first " << witness_of(report);
            out << ")\n";
        }
    }
    if (as_json) out << arr.dump(2) << "\n";
    else out << (all_ok ? "all entries verified\n" : "SOME ENTRIES FAILED\n");
    return all_ok ? kOk : kMathFailure;
}

int cmd_prove(const std::vector<corpus::CorpusEntry>& entries, bool as_json, std::ostream& out) {
    bool all_ok = true;
    json arr = json::array();
    for (const auto& e : entries) {
        auto t0 = steady_clock::now();
        auto res = expr::prove_binet(e.identity);
        auto ms = duration_cast<microseconds>(steady_clock::now() - t0).count() / 1000.0;
        std::string status, witness;
        if (res.status == expr::ProofStatus::Proven) {
            status = "proven";
        } else if (res.status == expr::ProofStatus::Refuted) {
            status = "refuted";
            witness = "refuting parity case: " + res.refuting_cases.front().str();
            all_ok = false;
        } else {
            status = "unprovable here (more than 4 variables), use verify";
            all_ok = false;
        }
        if (as_json) {
            arr.push_back(identity_json(e.identity, status, witness));
            arr.back()["parity_cases"] = res.cases_checked;
            arr.back()["ms"] = ms;
        } else {
            out << e.label << ": " << status << " (" << res.cases_checked << " parity cases)";
            if (!witness.empty()) out << " " << witness;
            out << "\n";
        }
    }
    if (as_json) out << arr.dump(2) << "\n";
    else out << (all_ok ? "all entries proven\n" : "SOME ENTRIES FAILED\n");
    return all_ok ? kOk : kMathFailure;
}

int cmd_corpus_run(bool as_json, std::ostream& out) {
    bool all_ok = true;
    json arr = json::array();
    auto t_start = steady_clock::now();
    for (const auto& e : corpus::entries()) {
        auto t0 = steady_clock::now();
        auto [status, witness] = check_identity(e.identity);
        auto ms = duration_cast<microseconds>(steady_clock::now() - t0).count() / 1000.0;
        all_ok &= status != "failed";
        if (as_json) {
            arr.push_back(identity_json(e.identity, status, witness));
            arr.back()["ms"] = ms;
        } else {
            out << e.label << ": " << status;
            if (!witness.empty()) out << " (" << witness << ")";
            out << "\n";
        }
    }
    auto total_ms =
        duration_cast<microseconds>(steady_clock::now() - t_start).count() / 1000.0;
    if (as_json) {
        json j = {{"entries", arr}, {"total_ms", total_ms}, {"pass", all_ok}};
        out << j.dump(2) << "\n";
    } else {
        out << corpus::entries().size() << " entries, " << (all_ok ? "all good" : "FAILURES") << " ("
            << total_ms << " ms)\n";
    }
    return all_ok ? kOk : kMathFailure;
}

BigInt fib_signed(long k) {
    if (k >= 0) return seqcore::fib_fast(k);
    BigInt v = seqcore::fib_fast(-k);
    return (-k) % 2 == 0 ? BigInt(-v) : v;
}

BigInt lucas_signed(long k) {
    long a = k < 0 ? -k : k;
    BigInt v = 2 * seqcore::fib_fast(a + 1) - seqcore::fib_fast(a);  // L_a = 2F_{a+1} - F_a
    return (k < 0 && a % 2 == 1) ? BigInt(-v) : v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fibonacci pair engine: commuting matrix pairs, identity generation, "
                 "verification and proof"};
    app.require_subcommand(1);
    std::string format = "text";

    // pairs
    auto* pairs_cmd = app.add_subcommand("pairs", "catalog of commuting pairs");
    pairs_cmd->require_subcommand(1);
    auto* pairs_list = pairs_cmd->add_subcommand("list", "list catalog names");
    std::string pair_name, range_text = "-8..8";
    long p_r = 2, p_d = -2, p_a = 1, p_b = 2;
    auto add_pair_opts = [&](CLI::App* cmd, bool with_range) {
        cmd->add_option("name", pair_name, "catalog pair name")->required();
        cmd->add_option("--r", p_r, "family parameter r (rank2_fr)");
        cmd->add_option("--d", p_d, "family parameter d (prop21)");
        cmd->add_option("--a", p_a, "family parameter a (prop21)");
        cmd->add_option("--b", p_b, "family parameter b (prop21)");
        if (with_range) cmd->add_option("--range", range_text, "exponent range LO..HI");
    };
    auto* pairs_show = pairs_cmd->add_subcommand("show", "print matrices and templates");
    add_pair_opts(pairs_show, false);
    auto* pairs_certify =
        pairs_cmd->add_subcommand("certify", "check templates against exact powers");
    add_pair_opts(pairs_certify, true);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate identities from a pair");
    std::string gen_pair, gen_mode, gen_submode, m_text = "w", n_text = "w";
    gen_cmd->add_option("pair", gen_pair, "catalog pair name")->required();
    gen_cmd->add_option("mode", gen_mode, "matrix | trace | rank3trace")->required();
    gen_cmd->add_option("submode", gen_submode, "WW|WX|XX or fricke|sumAB|BAB");
    gen_cmd->add_option("--M", m_text, "left factor, e.g. w:even or xw:odd (variable n)");
    gen_cmd->add_option("--N", n_text, "right factor (variable m)");
    gen_cmd->add_option("--r", p_r, "family parameter r (rank2_fr)");
    gen_cmd->add_option("--d", p_d, "family parameter d (prop21)");
    gen_cmd->add_option("--a", p_a, "family parameter a (prop21)");
    gen_cmd->add_option("--b", p_b, "family parameter b (prop21)");

    // verify / prove
    std::string file_path, grid_text;
    auto* verify_cmd = app.add_subcommand("verify", "grid-verify identities from a file");
    verify_cmd->add_option("file", file_path, "corpus-format file, or - for stdin")->required();
    verify_cmd->add_option("--grid", grid_text, "range overrides, e.g. n=-12..12,r=1..8");
    auto* prove_cmd = app.add_subcommand("prove", "prove identities from a file");
    prove_cmd->add_option("file", file_path, "corpus-format file, or - for stdin")->required();

    // corpus
    auto* corpus_cmd = app.add_subcommand("corpus", "built-in identity catalog");
    corpus_cmd->require_subcommand(1);
    auto* corpus_run = corpus_cmd->add_subcommand("run", "prove or verify every entry");
    auto* corpus_list = corpus_cmd->add_subcommand("list", "print the catalog");
    auto* corpus_export = corpus_cmd->add_subcommand("export", "write the catalog in file form");
    std::string export_path;
    corpus_export->add_option("-o,--output", export_path, "output path (default stdout)");

    // compute
    auto* compute_cmd = app.add_subcommand("compute", "print one Fibonacci or Lucas number");
    std::string compute_kind, compute_k;
    compute_cmd->add_option("kind", compute_kind, "fib | lucas")->required();
    compute_cmd->add_option("k", compute_k, "integer index")->required();

    for (auto* cmd : {pairs_list, pairs_show, pairs_certify, gen_cmd, verify_cmd, prove_cmd,
                      corpus_run})
        cmd->add_option("--format", format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string prog = "fibpair";
    argv.push_back(prog.data());
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    bool as_json = format == "json";
    try {
        if (pairs_list->parsed()) return cmd_pairs_list(as_json, out);
        if (pairs_show->parsed())
            return cmd_pairs_show(build_pair(pair_name, pair_params(p_r, p_d, p_a, p_b)), as_json, out);
        if (pairs_certify->parsed()) {
            auto spec = build_pair(pair_name, pair_params(p_r, p_d, p_a, p_b));
            long lo, hi;
            if (pairs_certify->count("--range")) {
                std::tie(lo, hi) = parse_range(range_text);
            } else {
                lo = spec.singular_w ? 1 : -8;
                hi = spec.singular_w ? 10 : 8;
            }
            return cmd_pairs_certify(spec, lo, hi, as_json, out);
        }
        if (gen_cmd->parsed()) {
            auto spec = build_pair(gen_pair, pair_params(p_r, p_d, p_a, p_b));
            return cmd_gen(spec, gen_mode, gen_submode, m_text, n_text, as_json, out);
        }
        if (verify_cmd->parsed()) {
            auto entries = load_entries_file(file_path);
            auto overrides = grid_text.empty() ? std::map<std::string, expr::Interval>{}
                                               : parse_grid(grid_text);
            return cmd_verify(entries, overrides, as_json, out);
        }
        if (prove_cmd->parsed()) return cmd_prove(load_entries_file(file_path), as_json, out);
        if (corpus_run->parsed()) return cmd_corpus_run(as_json, out);
        if (corpus_list->parsed()) {
            for (const auto& e : corpus::entries())
                out << e.label << ": " << e.identity_text << "\n";
            return kOk;
        }
        if (corpus_export->parsed()) {
            if (export_path.empty()) {
                out << corpus::corpus_text();
            } else {
                std::ofstream f(export_path);
                if (!f) throw UsageError("cannot write '" + export_path + "'");
                f << corpus::corpus_text();
                out << "wrote " << corpus::entries().size() << " entries to " << export_path << "\n";
            }
            return kOk;
        }
        if (compute_cmd->parsed()) {
            if (compute_kind != "fib" && compute_kind != "lucas")
                throw UsageError("compute expects 'fib' or 'lucas'");
            long k = parse_integer(compute_k);
            if (k > 10000000 || k < -10000000)
                throw UsageError("index magnitude above 10^7 not supported");
            out << (compute_kind == "fib" ? fib_signed(k) : lucas_signed(k)).get_str() << "\n";
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

}  // namespace fibpair::cli
