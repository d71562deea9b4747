#include "fibpair/corpus.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace fibpair::corpus {

using expr::Constraint;
using expr::Identity;

namespace {

// One entry per line: LABEL | constraints | identity | source.
const char* kCorpus = R"corpus(# Identity catalog. Format: LABEL | constraints | identity | source
# Constraints: comma-separated "<var> >= 1", "<var> even", "<var> odd", "<var> != 0".

(1.2)  |              | L[2m]^2 + 5*F[2n+1]^2 + 5*F[2m+2n+1]^2 = 5*L[2m]*F[2n+1]*F[2m+2n+1] + 4 | fricke trace, pair rank2_25
(1.3)  |              | F[n]*L[m+1] + F[n-1]*L[m-1] + F[n+1]*L[m] = L[n+m+1]                    | singular pair, WX entry (1,1)
(1.7)  |              | F[n+1]*L[m+1] + F[n]*L[m] = L[n+m+1]                                    | pair thm11, WX entry (1,1)
(1.10) |              | L[2n]^2 + L[2m]^2 + 5*F[2m+2n]^2 = L[2n]*L[2m]*L[2m+2n]                 | combination of T1 and M4
(1.11) |              | 3*F[n-1]^3 - F[n]^3 + F[n+1]^3 + F[n+1]*F[n]*L[n-1] = 2*L[n]*F[2n-1]    | same identity as N5
(3.3a) | r >= 1       | F[n+r] + (-1)^(r+1)*F[n-r] = F[r]*L[n]                                  | trace of w^n, pair rank2_fr
(3.3b) | r >= 1       | L[n+r] + (-1)^(r+1)*L[n-r] = 5*F[r]*F[n]                                | trace of x*w^n, pair rank2_fr
(3.6a) |              | F[n]*L[m] - L[n-d]*F[m+d] = (-1)^(n+1)*L[-d]*F[m-n+d]                   | combination of M2 and M5
(3.6b) |              | L[m]*L[n] - 5*F[n-d]*F[m+d] = (-1)^(n)*L[-d]*L[m-n+d]                   | combination of M1 and M4
(4.4)  |              | (-1)^(n)*L[n]^2 + (-1)^(m)*L[m]^2 + (-1)^(m+n)*L[m+n]^2 = (-1)^(m+n)*L[n]*L[m]*L[m+n] + 4 | fricke trace for (w^n, w^m)
(4.6)  | n even, m even | -11*L[n]^2 + (L[m+1] + 5*F[m])^2 + (L[m+n+1] + 5*F[m+n])^2 = L[n]*(L[m+1] + 5*F[m])*(L[m+n+1] + 5*F[m+n]) - 44 | fricke trace for (w^n, y*w^m), y = w + x
(5.5)  |              | 2*F[n-1]^2 + F[n]*F[n+1] + F[n+1]^2 = L[2n] + (-1)^(n)                  | trace of w^n, pair rank3_wx
(5.7)  |              | F[n-1]^2 + F[n+1]*F[n+3] = (-1)^(n) + L[2n] + F[2n]                     | companion of the x*w^n trace, pair rank3_wx
(7.1a) |              | L[n+1]*L[m+1] - 5*F[n]*F[m] = L[n+m+1]                                  | pair prop21(d=-2), WW entry (1,1)
(7.1b) |              | L[n+1]*F[m+2] - F[n]*L[m+1] = F[m+n+2]                                  | pair prop21(d=-2), WX entry (1,1)
(7.2a) |              | L[n-1]*F[2n-1] = 2*F[n]^3 - F[n-1]*F[n-2]^2                             | pair rank3_zv, WW entry (1,1) at m = n
(7.2b) |              | L[n]*L[n-1] = 2*F[n-1]*F[n-2] + F[n+2]*F[n]                             | pair rank3_zv, WW entry (2,1) at m = n
M1     | r >= 1       | F[n+r]*F[m+r] + (-1)^(r+1)*F[n]*F[m] = F[r]*F[n+m+r]                    | matrix WW, pair rank2_fr
M2     | r >= 1       | F[n+r]*L[m+r] + (-1)^(r+1)*F[n]*L[m] = F[r]*L[n+m+r]                    | matrix WX, pair rank2_fr
M3     | r >= 1       | L[n+r]*L[m+r] + (-1)^(r+1)*L[n]*L[m] = 5*F[r]*F[n+m+r]                  | matrix XX, pair rank2_fr
M4     |              | L[n]*L[m] + 5*F[n]*F[m] = 2*L[m+n]                                      | matrix WW, pair rank2_25
M5     |              | L[n]*F[m] + F[n]*L[m] = 2*F[m+n]                                        | matrix WX, pair rank2_25
N1     |              | F[n+2]^2 - F[n]^2 = F[2n+2]                                             | pair rank3_wx, (w, x*w^n) entry (1,2)
N2     |              | F[n+2]^2 - F[n-1]^2 = 4*F[n]*F[n+1]                                     | pair rank3_wx, (w, x*w^n) entry (2,1)
N3     |              | F[n-1]^2 + F[n+2]^2 = F[n]*L[n-1] + F[n+2]*L[n]                         | pair rank3_wx, (w, x*w^n) entry (2,2)
N4     |              | F[n+3]^2 - F[n+2]^2 - 2*F[n-1]^2 = F[2n+2] + 2*F[2n]                    | pair rank3_wx, (w, x*w^n) entry (3,2)
N5     |              | 3*F[n-1]^3 - F[n]^3 + F[n+1]^3 + F[n+1]*F[n]*L[n-1] = 2*L[n]*F[2n-1]    | pair rank3_wx, (w^n, x*w^n) entry (1,1)
T1     |              | L[2n]^2 + L[2m]^2 + L[2m+2n]^2 = L[2n]*L[2m]*L[2m+2n] + 4               | fricke (w^2n, w^2m)
T2     |              | -5*F[2n]^2 - 5*F[2m]^2 + L[2m+2n]^2 = 5*F[2n]*F[2m]*L[2m+2n] + 4        | fricke (xw^2n, xw^2m)
T3     |              | -5*F[2n]^2 + 5*F[2m+1]^2 - L[2m+2n+1]^2 = -5*F[2n]*F[2m+1]*L[2m+2n+1] + 4 | fricke (xw^2n, xw^2m+1)
T4     |              | 5*F[2n+1]^2 + 5*F[2m+1]^2 + L[2m+2n+2]^2 = 5*F[2n+1]*F[2m+1]*L[2m+2n+2] + 4 | fricke (xw^2n+1, xw^2m+1)
T5     |              | L[2n]^2 - 5*F[2m]^2 - 5*F[2n+2m]^2 = -5*L[2n]*F[2m]*F[2n+2m] + 4        | fricke (w^2n, xw^2m), pair rank2_25
T6     |              | L[2n]^2 + 5*F[2m+1]^2 + 5*F[2n+2m+1]^2 = 5*L[2n]*F[2m+1]*F[2n+2m+1] + 4 | fricke (w^2n, xw^2m+1), pair rank2_25
T7     |              | -L[2n+1]^2 - 5*F[2m]^2 + 5*F[2n+2m+1]^2 = 5*L[2n+1]*F[2m]*F[2n+2m+1] + 4 | fricke (w^2n+1, xw^2m), pair rank2_25
T8     |              | L[2m+n] + (-1)^(m)*L[n] = L[m]*L[m+n]                                   | BAB trace for (w^n, w^m)
T9     |              | L[m+n] + (-1)^(n)*L[m-n] = L[m]*L[n]                                    | sumAB trace for (w^n, w^m)
T10    |              | F[2m+n] + (-1)^(m)*F[n] = L[m]*F[m+n]                                   | BAB trace for (xw^n, w^m)
T11    |              | F[m+n] - (-1)^(n)*F[m-n] = L[m]*F[n]                                    | sumAB trace for (xw^n, w^m)
HB     |              | F[n+3]^2 - 2*F[n+2]^2 - 2*F[n+1]^2 + F[n]^2 = 0                         | combination of N1 and N4
catalan | r >= 1      | F[n]^2 - F[n+r]*F[n-r] = (-1)^(n-r)*F[r]^2                              | determinant relation of the rank2_fr family
)corpus";

std::pair<std::string, Constraint> parse_constraint(const std::string& text, int line_no) {
    std::istringstream is(text);
    std::string var, op, rest;
    is >> var >> op;
    auto bad = [&](const std::string& why) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad constraint '" + text +
                                 "': " + why);
    };
    if (var.empty() || op.empty()) bad("expected '<var> <predicate>'");
    if (op == "even") return {var, Constraint::Even};
    if (op == "odd") return {var, Constraint::Odd};
    if (op == ">=") {
        is >> rest;
        if (rest != "1") bad("only '>= 1' is supported");
        return {var, Constraint::GeOne};
    }
    if (op == "!=") {
        is >> rest;
        if (rest != "0") bad("only '!= 0' is supported");
        return {var, Constraint::NonZero};
    }
    bad("unknown predicate");
    return {};  // unreachable
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CorpusEntry> parse_corpus_text(const std::string& text) {
    std::vector<CorpusEntry> out;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;

        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            std::size_t bar = t.find('|', start);
            if (bar == std::string::npos) {
                cols.push_back(trimmed(t.substr(start)));
                break;
            }
            cols.push_back(trimmed(t.substr(start, bar - start)));
            start = bar + 1;
        }
        if (cols.size() != 4)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 'LABEL | constraints | identity | source'");

        CorpusEntry entry;
        entry.label = cols[0];
        entry.constraints_text = cols[1];
        entry.identity_text = cols[2];
        entry.source = cols[3];
        if (entry.label.empty())
            throw std::runtime_error("line " + std::to_string(line_no) + ": empty label");
        if (!seen.insert(entry.label).second)
            throw std::runtime_error("line " + std::to_string(line_no) + ": duplicate label '" +
                                     entry.label + "'");

        Identity id;
        try {
            id = expr::parse_identity(entry.identity_text);
        } catch (const expr::ParseError& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
        id.label = entry.label;
        id.source = entry.source;

        if (!entry.constraints_text.empty()) {
            std::istringstream cs(entry.constraints_text);
            std::string one;
            while (std::getline(cs, one, ',')) {
                one = trimmed(one);
                if (one.empty()) continue;
                auto [var, c] = parse_constraint(one, line_no);
                bool declared = false;
                for (const auto& v : id.variables) declared |= v == var;
                if (!declared)
                    throw std::runtime_error("line " + std::to_string(line_no) + ": constraint on '" +
                                             var + "' which does not occur in the identity");
                id.constraints[var] = c;
            }
        }
        entry.identity = std::move(id);
        out.push_back(std::move(entry));
    }
    return out;
}

const std::string& corpus_text() {
    static const std::string text = kCorpus;
    return text;
}

const std::vector<CorpusEntry>& entries() {
    static const std::vector<CorpusEntry> parsed = parse_corpus_text(corpus_text());
    return parsed;
}

std::optional<std::string> find_matching_label(const expr::Identity& id) {
    for (const auto& e : entries())
        if (e.identity.lhs == id.lhs && e.identity.rhs == id.rhs) return e.label;
    return std::nullopt;
}

}  // namespace fibpair::corpus
