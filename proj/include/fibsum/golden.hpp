#pragma once
// ============================================================================
// Exact arithmetic in the quadratic field Q(sqrt5).
//
// A GoldenNum is  a + b*sqrt5  with rational a, b stored canonically (reduced,
// positive denominator), so the representation is unique and equality is
// plain component comparison.  The field houses
//
//    alpha = (1 + sqrt5)/2     beta = (1 - sqrt5)/2 = -1/alpha
//
// with alpha*beta = -1, alpha + beta = 1, and the Binet link
//
//    alpha^j = (L(j) + F(j)*sqrt5) / 2
//
// used by alpha_pow to reach any power in one Fibonacci/Lucas pass instead of
// repeated multiplication.  Inversion goes through the conjugate:
// 1/(a + b*sqrt5) = (a - b*sqrt5) / (a^2 - 5 b^2).
//
// No operation here ever touches floating point.
// ============================================================================

#include <gmpxx.h>

#include <string>
#include <utility>

#include "fibsum/bigfib.hpp"

namespace fibsum {

// Exact rational, always canonical: reduced, denominator > 0.
using Rat = mpq_class;

// Canonicalizing constructor (mpq_class does not reduce on its own).
// Throws std::domain_error when den == 0.
Rat make_rat(const Integer& num, const Integer& den);

struct GoldenNum {
    Rat a;  // rational part
    Rat b;  // coefficient of sqrt5

    GoldenNum() : a(0), b(0) {}
    GoldenNum(long v) : a(v), b(0) {}  // NOLINT: implicit by design
    GoldenNum(const Integer& v) : a(v), b(0) {}
    GoldenNum(Rat rational) : a(std::move(rational)), b(0) {}
    GoldenNum(Rat rational, Rat root_coeff) : a(std::move(rational)), b(std::move(root_coeff)) {}

    friend bool operator==(const GoldenNum& x, const GoldenNum& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const GoldenNum& x, const GoldenNum& y) { return !(x == y); }
};

// Named constants, built from small rationals.
const GoldenNum& golden_alpha();
const GoldenNum& golden_beta();
const GoldenNum& golden_sqrt5();

GoldenNum gf_add(const GoldenNum& x, const GoldenNum& y);
GoldenNum gf_sub(const GoldenNum& x, const GoldenNum& y);
GoldenNum gf_neg(const GoldenNum& x);
GoldenNum gf_mul(const GoldenNum& x, const GoldenNum& y);

// Conjugate automorphism sqrt5 -> -sqrt5 (swaps alpha and beta).
GoldenNum gf_conj(const GoldenNum& x);

// Multiplicative inverse; throws std::domain_error on zero.
GoldenNum gf_inv(const GoldenNum& x);

// Field division; throws std::domain_error on zero divisor.
GoldenNum gf_div(const GoldenNum& x, const GoldenNum& y);

// x^m by binary exponentiation; m < 0 via gf_inv (throws on zero base).
// By convention gf_pow(x, 0) == 1 for every x.
GoldenNum gf_pow(const GoldenNum& x, long m);

// alpha^j = (L(j) + F(j)*sqrt5)/2 straight from one fib_lucas_pair call.
GoldenNum alpha_pow(long j);

// (a, b) components; callers test integrality as b == 0 && den(a) == 1.
std::pair<Rat, Rat> gf_decompose(const GoldenNum& x);

inline GoldenNum operator+(const GoldenNum& x, const GoldenNum& y) { return gf_add(x, y); }
inline GoldenNum operator-(const GoldenNum& x, const GoldenNum& y) { return gf_sub(x, y); }
inline GoldenNum operator-(const GoldenNum& x) { return gf_neg(x); }
inline GoldenNum operator*(const GoldenNum& x, const GoldenNum& y) { return gf_mul(x, y); }
inline GoldenNum operator/(const GoldenNum& x, const GoldenNum& y) { return gf_div(x, y); }

// Exact sign of a + b*sqrt5 as a real number: -1, 0, or +1.
int gf_sign(const GoldenNum& x);

bool is_zero(const GoldenNum& x);
bool is_integer(const GoldenNum& x);

// Value as an Integer; throws std::domain_error unless is_integer.
Integer to_integer(const GoldenNum& x);

// Canonical text rendering used in reports: "a", "a/b", or
// "a ± c*sqrt5" / "a ± c/d*sqrt5"; re-parseable by the identity DSL.
std::string render(const GoldenNum& x);
std::string render(const Rat& r);

}  // namespace fibsum
