#include "fibpair/fibexpr.hpp"

#include <cctype>

namespace fibpair::expr {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    FibExpr expr() {
        FibExpr e = signed_term();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                e = e + term();
            } else if (peek() == '-') {
                ++pos_;
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Identity identity(const std::string& label) {
        FibExpr lhs = expr();
        skip_ws();
        if (peek() != '=') fail("expected '='");
        ++pos_;
        FibExpr rhs = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        Identity id;
        id.label = label;
        id.lhs = std::move(lhs);
        id.rhs = std::move(rhs);
        id.variables = order_;
        return id;
    }

    FibExpr whole_expr() {
        FibExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    FibExpr signed_term() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -term();
        }
        if (peek() == '+') ++pos_;
        return term();
    }

    FibExpr term() {
        FibExpr e = factor();
        while (true) {
            skip_ws();
            if (peek() != '*') return e;
            ++pos_;
            e = e * factor();
        }
    }

    FibExpr factor() {
        FibExpr a = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            long p = uint_lit();
            FibExpr r = FibExpr::constant(Rational(1));
            for (long i = 0; i < p; ++i) r = r * a;
            return r;
        }
        return a;
    }

    FibExpr atom() {
        skip_ws();
        char c = peek();
        if (c == 'F' || c == 'L') {
            SeqKind kind = c == 'F' ? SeqKind::F : SeqKind::L;
            ++pos_;
            skip_ws();
            expect('[');
            AffineIndex idx = affine();
            expect(']');
            return FibExpr::term(kind, std::move(idx));
        }
        if (c == '(') {
            std::size_t save = pos_;
            if (try_sign_prefix()) {  // "(-1)^(" already consumed
                AffineIndex e = affine();
                expect(')');
                return FibExpr::sign_factor(std::move(e));
            }
            pos_ = save;
            ++pos_;  // '('
            FibExpr e = expr();
            skip_ws();
            expect(')');
            return e;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return rational_lit();
        fail("expected 'F[', 'L[', '(', or a number");
    }

    // Matches the literal "(-1)^(" with arbitrary interior whitespace.
    bool try_sign_prefix() {
        const char* want = "(-1)^(";
        std::size_t p = pos_;
        for (const char* w = want; *w; ++w) {
            while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
            if (p >= s_.size() || s_[p] != *w) return false;
            ++p;
        }
        pos_ = p;
        return true;
    }

    FibExpr rational_lit() {
        BigInt num = int_lit();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            long den = uint_lit();
            if (den == 0) fail_at("zero denominator", at);
            return FibExpr::constant(make_rational(num, BigInt(den)));
        }
        return FibExpr::constant(Rational(num));
    }

    AffineIndex affine() {
        AffineIndex out;
        bool first = true;
        while (true) {
            skip_ws();
            long sign = 1;
            if (peek() == '+') {
                ++pos_;
                skip_ws();
            } else if (peek() == '-') {
                sign = -1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                return out;  // no more parts
            }
            bool have_digits = std::isdigit(static_cast<unsigned char>(peek()));
            long mag = have_digits ? uint_lit() : 1;
            skip_ws();
            if (is_ident_start(peek())) {
                std::string name = ident();
                long c = sign * mag;
                long nc = (out.coeffs.count(name) ? out.coeffs[name] : 0) + c;
                if (nc == 0) out.coeffs.erase(name);
                else out.coeffs[name] = nc;
                note_variable(name);
            } else if (have_digits) {
                out.constant += sign * mag;
            } else {
                fail("expected integer or variable in index");
            }
            first = false;
        }
    }

    BigInt int_lit() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
            skip_ws();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
        BigInt v(digits, 10);  // explicit base: "010" is ten, not octal
        return neg ? BigInt(-v) : v;
    }

    long uint_lit() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) fail("integer literal too large");
            ++pos_;
        }
        return v;
    }

    static bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string ident() {
        std::string name;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            name += s_[pos_++];
        return name;
    }

    void note_variable(const std::string& name) {
        for (const auto& v : order_)
            if (v == name) return;
        order_.push_back(name);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, at);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::vector<std::string> order_;  // first-occurrence variable order
};

}  // namespace

FibExpr parse_expr(const std::string& text) { return Parser(text).whole_expr(); }

Identity parse_identity(const std::string& text) { return Parser(text).identity(""); }

}  // namespace fibpair::expr
