#include "fibpair/fibexpr.hpp"
#include "fibpair/quadfield.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace fibpair::expr {

namespace {

bool admissible(long value, Constraint c) {
    switch (c) {
        case Constraint::Any: return true;
        case Constraint::Even: return value % 2 == 0;
        case Constraint::Odd: return value % 2 != 0;
        case Constraint::GeOne: return value >= 1;
        case Constraint::NonZero: return value != 0;
    }
    return true;
}

Constraint constraint_of(const Identity& id, const std::string& v) {
    auto it = id.constraints.find(v);
    return it == id.constraints.end() ? Constraint::Any : it->second;
}

}  // namespace

std::map<std::string, Interval> default_ranges(const Identity& id) {
    std::map<std::string, Interval> ranges;
    for (const auto& v : id.variables)
        ranges[v] = constraint_of(id, v) == Constraint::GeOne ? Interval{1, 8} : Interval{-12, 12};
    return ranges;
}

VerifyReport verify_grid(const Identity& id, const std::map<std::string, Interval>& ranges,
                         long max_failures) {
    for (const auto& v : id.variables)
        if (!ranges.count(v))
            throw std::invalid_argument("verify_grid: no range for variable '" + v + "'");

    VerifyReport report;
    std::map<std::string, long> assignment;
    std::function<bool(std::size_t)> walk = [&](std::size_t i) -> bool {
        if (i == id.variables.size()) {
            ++report.total;
            Rational l = id.lhs.eval(assignment);
            Rational r = id.rhs.eval(assignment);
            if (l != r) {
                report.failures.push_back({assignment, l, r});
                if (max_failures >= 0 && static_cast<long>(report.failures.size()) >= max_failures)
                    return false;
            }
            return true;
        }
        const std::string& v = id.variables[i];
        Interval iv = ranges.at(v);
        Constraint c = constraint_of(id, v);
        for (long x = iv.lo; x <= iv.hi; ++x) {
            if (!admissible(x, c)) continue;
            assignment[v] = x;
            if (!walk(i + 1)) return false;
        }
        assignment.erase(v);
        return true;
    };
    walk(0);
    return report;
}

std::string ParityCase::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, p] : parity) {
        if (!first) os << ", ";
        os << v << " " << (p == 0 ? "even" : "odd");
        first = false;
    }
    return first ? "(no variables)" : os.str();
}

namespace {

using qf5::LaurentQF;
using qf5::QF5;

int parity_of(const AffineIndex& a, const std::map<std::string, int>& parity) {
    long p = a.constant;
    for (const auto& [v, c] : a.coeffs) p += c * parity.at(v);
    return static_cast<int>(((p % 2) + 2) % 2);
}

// phi^index and psi^index as Laurent monomials in X_v = phi^v, with the
// variable parities fixed. psi^v rewrites to (-1)^v X_v^{-1}.
LaurentQF phi_power(const AffineIndex& index) {
    LaurentQF::ExpVec e;
    for (const auto& [v, c] : index.coeffs) e.emplace(v, c);
    return LaurentQF::monomial(qf5::pow(qf5::phi(), index.constant), e);
}

LaurentQF psi_power(const AffineIndex& index, const std::map<std::string, int>& parity) {
    LaurentQF::ExpVec e;
    long sign_bits = 0;
    for (const auto& [v, c] : index.coeffs) {
        e.emplace(v, -c);
        sign_bits += c * parity.at(v);
    }
    QF5 coeff = qf5::pow(qf5::psi(), index.constant);
    if (((sign_bits % 2) + 2) % 2 != 0) coeff = -coeff;
    return LaurentQF::monomial(coeff, e);
}

LaurentQF expand_factor(const Factor& f, const std::map<std::string, int>& parity) {
    LaurentQF phi_part = phi_power(f.index);
    LaurentQF psi_part = psi_power(f.index, parity);
    LaurentQF base = f.kind == SeqKind::F
                         ? (phi_part - psi_part).scaled(qf5::inverse(qf5::sqrt5()))
                         : phi_part + psi_part;
    LaurentQF acc = LaurentQF::constant(QF5(1));
    for (int i = 0; i < f.power; ++i) acc = acc * base;
    return acc;
}

LaurentQF expand(const FibExpr& e, const std::map<std::string, int>& parity) {
    LaurentQF total;
    for (const auto& m : e.monomials()) {
        QF5 c{m.coeff, Rational(0)};
        if (parity_of(m.sign, parity) != 0) c = -c;
        LaurentQF prod = LaurentQF::constant(c);
        for (const auto& f : m.factors) prod = prod * expand_factor(f, parity);
        total = total + prod;
    }
    return total;
}

}  // namespace

ProveResult prove_binet(const Identity& id) {
    // The variable set must cover both sides regardless of what was declared.
    std::set<std::string> vars(id.variables.begin(), id.variables.end());
    for (const auto& v : id.lhs.variables()) vars.insert(v);
    for (const auto& v : id.rhs.variables()) vars.insert(v);
    std::vector<std::string> names(vars.begin(), vars.end());

    ProveResult result;
    if (names.size() > 4) {
        result.status = ProofStatus::TooManyVariables;
        return result;
    }

    FibExpr diff = id.difference();
    const int k = static_cast<int>(names.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
        ParityCase pc;
        bool consistent = true;
        for (int i = 0; i < k; ++i) {
            int bit = (mask >> i) & 1;
            auto it = id.constraints.find(names[i]);
            if (it != id.constraints.end()) {
                if (it->second == Constraint::Even && bit != 0) consistent = false;
                if (it->second == Constraint::Odd && bit != 1) consistent = false;
            }
            pc.parity[names[i]] = bit;
        }
        if (!consistent) continue;
        ++result.cases_total;
        if (!expand(diff, pc.parity).is_zero()) result.refuting_cases.push_back(pc);
        ++result.cases_checked;
    }
    result.status = result.refuting_cases.empty() ? ProofStatus::Proven : ProofStatus::Refuted;
    return result;
}

}  // namespace fibpair::expr
