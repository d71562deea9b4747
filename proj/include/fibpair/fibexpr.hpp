#pragma once

#include "fibpair/rational.hpp"
#include "fibpair/seqcore.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibpair::expr {

using seqcore::SeqKind;

// Integer-affine form in named variables: c1*v1 + ... + ck*vk + c0.
// These are the index expressions inside F[...]/L[...] and the exponents of
// (-1)^(...) factors. Evaluation at an integer assignment is always an integer.
struct AffineIndex {
    std::map<std::string, long> coeffs;  // no zero coefficients stored
    long constant = 0;

    AffineIndex() = default;
    explicit AffineIndex(long c) : constant(c) {}
    static AffineIndex var(const std::string& name, long coeff = 1);

    bool is_constant() const { return coeffs.empty(); }
    long eval(const std::map<std::string, long>& assignment) const;
    AffineIndex substituted(const std::string& name, const AffineIndex& repl) const;
    AffineIndex mod2() const;  // coefficients and constant reduced into {0,1}
    bool is_zero() const { return coeffs.empty() && constant == 0; }

    friend AffineIndex operator+(const AffineIndex& a, const AffineIndex& b);
    friend AffineIndex operator-(const AffineIndex& a, const AffineIndex& b);
    friend AffineIndex operator-(const AffineIndex& a);
    friend bool operator==(const AffineIndex& a, const AffineIndex& b) {
        return a.constant == b.constant && a.coeffs == b.coeffs;
    }
    friend bool operator<(const AffineIndex& a, const AffineIndex& b) {
        if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
        return a.constant < b.constant;
    }

    std::string str() const;  // "2m+2n+1", "r+1", "-4", "0"
};

// One F or L factor at an affine index, raised to a positive power.
struct Factor {
    SeqKind kind;
    AffineIndex index;
    int power = 1;

    friend bool operator==(const Factor& a, const Factor& b) {
        return a.kind == b.kind && a.index == b.index && a.power == b.power;
    }
    friend bool operator<(const Factor& a, const Factor& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (!(a.index == b.index)) return a.index < b.index;
        return a.power < b.power;
    }
};

// coeff * (-1)^sign * prod factors. The sign exponent is kept mod-2 normalized;
// a pure constant sign ((-1)^1) is folded into the coefficient.
struct Monomial {
    Rational coeff;
    AffineIndex sign;
    std::vector<Factor> factors;
};

// Canonical sum of monomials: factors sorted and merged inside each monomial,
// monomials with equal (sign, factors) merged, zero coefficients dropped.
class FibExpr {
public:
    FibExpr() = default;  // zero
    static FibExpr from_monomials(std::vector<Monomial> ms);
    static FibExpr constant(const Rational& c);
    static FibExpr term(SeqKind kind, AffineIndex index);  // F[...] or L[...]
    static FibExpr sign_factor(AffineIndex exponent);      // (-1)^(...)

    const std::vector<Monomial>& monomials() const { return monomials_; }
    bool is_zero() const { return monomials_.empty(); }

    friend FibExpr operator+(const FibExpr& a, const FibExpr& b);
    friend FibExpr operator-(const FibExpr& a, const FibExpr& b);
    friend FibExpr operator-(const FibExpr& a);
    friend FibExpr operator*(const FibExpr& a, const FibExpr& b);
    FibExpr scaled(const Rational& s) const;
    friend bool operator==(const FibExpr& a, const FibExpr& b) {
        return a.monomials_ == b.monomials_;
    }

    Rational eval(const std::map<std::string, long>& assignment) const;
    FibExpr substituted(const std::string& name, const AffineIndex& repl) const;
    std::vector<std::string> variables() const;  // sorted set

    std::string str() const;  // parses back to the same canonical value

private:
    std::vector<Monomial> monomials_;
};

inline bool operator==(const Monomial& a, const Monomial& b) {
    return a.coeff == b.coeff && a.sign == b.sign && a.factors == b.factors;
}

// Re-canonicalize; identity on anything built through FibExpr's own constructors.
FibExpr normalize(const FibExpr& e);

enum class Constraint { Any, Even, Odd, GeOne, NonZero };

std::string constraint_str(Constraint c);

// An equation lhs = rhs over declared variables with per-variable constraints.
struct Identity {
    std::string label;
    FibExpr lhs, rhs;
    std::vector<std::string> variables;             // declaration order
    std::map<std::string, Constraint> constraints;  // absent means Any
    std::string source;                             // free-form provenance

    FibExpr difference() const { return lhs - rhs; }
    Identity substituted(const std::string& name, const AffineIndex& repl) const;
    std::string str() const;  // "lhs = rhs"
};

// Builds an Identity, declaring variables as the sorted union of both sides
// (plus any constrained names). Throws if a constraint names an unused variable.
Identity make_identity(std::string label, FibExpr lhs, FibExpr rhs,
                       std::map<std::string, Constraint> constraints = {},
                       std::string source = {});

// ---- parsing ----------------------------------------------------------------

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Grammar (whitespace-insensitive):
//   identity := expr '=' expr
//   expr     := ['+'|'-']? term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := atom ('^' uint)?
//   atom     := 'F[' affine ']' | 'L[' affine ']' | '(-1)^(' affine ')'
//             | rational | '(' expr ')'
//   affine   := signed sum of (int? varname) and int constants
//   rational := int ('/' uint)?
FibExpr parse_expr(const std::string& text);

// Text must contain a top-level '='. Variables are declared in first-occurrence
// order; constraints can be attached afterwards.
Identity parse_identity(const std::string& text);

// ---- grid verification -------------------------------------------------------

struct Interval {
    long lo = 0, hi = 0;
};

struct GridFailure {
    std::map<std::string, long> assignment;
    Rational lhs, rhs;
};

struct VerifyReport {
    long total = 0;  // admissible assignments evaluated
    std::vector<GridFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Evaluates lhs - rhs on the full grid, filtering assignments through the
// identity's constraints. max_failures < 0 collects every failure; otherwise
// evaluation stops once that many have been found.
VerifyReport verify_grid(const Identity& id, const std::map<std::string, Interval>& ranges,
                         long max_failures = -1);

// [-12, 12] per unconstrained variable, [1, 8] for variables constrained >= 1.
std::map<std::string, Interval> default_ranges(const Identity& id);

// ---- Binet prover ------------------------------------------------------------

enum class ProofStatus { Proven, Refuted, TooManyVariables };

struct ParityCase {
    std::map<std::string, int> parity;  // 0 even, 1 odd
    std::string str() const;
};

struct ProveResult {
    ProofStatus status = ProofStatus::Proven;
    int cases_total = 0;    // parity cases consistent with the constraints
    int cases_checked = 0;
    std::vector<ParityCase> refuting_cases;  // nonempty iff Refuted
    bool proven() const { return status == ProofStatus::Proven; }
};

// Decides the identity for all integer assignments (subject to parity
// constraints) by substituting F and L with their phi/psi closed forms and
// checking that lhs - rhs collapses to the zero Laurent polynomial in the
// variables X_v = phi^v, once each variable's parity is fixed. Sound and
// complete: within a fixed parity class each X_v takes infinitely many values,
// and a nonzero Laurent polynomial cannot vanish on such a grid.
// Identities with more than four variables are not attempted.
ProveResult prove_binet(const Identity& id);

}  // namespace fibpair::expr
