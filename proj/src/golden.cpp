#include "fibsum/golden.hpp"

#include <stdexcept>

namespace fibsum {

Rat make_rat(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

namespace {

Rat half(long n) { return make_rat(n, 2); }

int rat_sign(const Rat& r) { return sgn(r); }

}  // namespace

const GoldenNum& golden_alpha() {
    static const GoldenNum value(half(1), half(1));  // (1 + sqrt5)/2
    return value;
}

const GoldenNum& golden_beta() {
    static const GoldenNum value(half(1), half(-1));  // (1 - sqrt5)/2
    return value;
}

const GoldenNum& golden_sqrt5() {
    static const GoldenNum value(Rat(0), Rat(1));
    return value;
}

GoldenNum gf_add(const GoldenNum& x, const GoldenNum& y) { return {x.a + y.a, x.b + y.b}; }

GoldenNum gf_sub(const GoldenNum& x, const GoldenNum& y) { return {x.a - y.a, x.b - y.b}; }

GoldenNum gf_neg(const GoldenNum& x) { return {-x.a, -x.b}; }

GoldenNum gf_mul(const GoldenNum& x, const GoldenNum& y) {
    // (a + b*sqrt5)(c + d*sqrt5) = (ac + 5bd) + (ad + bc)*sqrt5
    return {x.a * y.a + 5 * (x.b * y.b), x.a * y.b + x.b * y.a};
}

GoldenNum gf_conj(const GoldenNum& x) { return {x.a, -x.b}; }

GoldenNum gf_inv(const GoldenNum& x) {
    // 1/(a + b*sqrt5) = (a - b*sqrt5)/N with field norm N = a^2 - 5 b^2,
    // which vanishes only at zero (sqrt5 is irrational).
    Rat norm = x.a * x.a - 5 * (x.b * x.b);
    if (norm == 0) throw std::domain_error("gf_inv: zero has no inverse");
    return {x.a / norm, -x.b / norm};
}

GoldenNum gf_div(const GoldenNum& x, const GoldenNum& y) { return gf_mul(x, gf_inv(y)); }

GoldenNum gf_pow(const GoldenNum& x, long m) {
    GoldenNum base = x;
    unsigned long e;
    if (m < 0) {
        base = gf_inv(x);  // throws on zero
        e = ~static_cast<unsigned long>(m) + 1UL;
    } else {
        e = static_cast<unsigned long>(m);
    }
    GoldenNum acc(1);
    while (e != 0) {
        if (e & 1UL) acc = gf_mul(acc, base);
        e >>= 1UL;
        if (e != 0) base = gf_mul(base, base);
    }
    return acc;
}

GoldenNum alpha_pow(long j) {
    auto [f, l] = fib_lucas_pair(j);
    return {make_rat(l, 2), make_rat(f, 2)};
}

std::pair<Rat, Rat> gf_decompose(const GoldenNum& x) { return {x.a, x.b}; }

int gf_sign(const GoldenNum& x) {
    const int sa = rat_sign(x.a);
    const int sb = rat_sign(x.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Mixed signs: the sign is decided by a^2 vs 5 b^2 (exact; a tie cannot
    // occur for nonzero rationals since 5 is not a rational square).
    const Rat a_sq = x.a * x.a;
    const Rat b_sq_5 = 5 * (x.b * x.b);
    const int squares = cmp(a_sq, b_sq_5);
    return sa > 0 ? (squares > 0 ? 1 : -1) : (squares < 0 ? 1 : -1);
}

bool is_zero(const GoldenNum& x) { return x.a == 0 && x.b == 0; }

bool is_integer(const GoldenNum& x) {
    return x.b == 0 && x.a.get_den() == 1;
}

Integer to_integer(const GoldenNum& x) {
    if (!is_integer(x)) throw std::domain_error("to_integer: value is not an integer: " + render(x));
    return x.a.get_num();
}

std::string render(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string render(const GoldenNum& x) {
    if (x.b == 0) return render(x.a);
    const bool negative_root = rat_sign(x.b) < 0;
    Rat mag = negative_root ? Rat(-x.b) : x.b;
    return render(x.a) + (negative_root ? " - " : " + ") + render(mag) + "*sqrt5";
}

}  // namespace fibsum
