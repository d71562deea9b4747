#pragma once

#include <gmpxx.h>

#include <string>

namespace fibpair {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(BigInt num, BigInt den) {
    Rational r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

// gcd of |a| and |b|, gcd(0, 0) = 0
inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace fibpair
