#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibsum/bigfib.hpp"
#include "fibsum/golden.hpp"

using namespace fibsum;

namespace {

// Deterministic sampler over a + b*sqrt5 with numerators in [-99, 99] and
// denominators in [1, 20].  Fixed seed: failures must be reproducible.
struct Sampler {
    std::mt19937_64 rng{0x5eedf1b0u};
    std::uniform_int_distribution<long> num{-99, 99};
    std::uniform_int_distribution<long> den{1, 20};

    Rat rat() { return make_rat(static_cast<Integer>(num(rng)), static_cast<Integer>(den(rng))); }
    GoldenNum value() { return GoldenNum(rat(), rat()); }
};

}  // namespace

TEST_CASE("field axioms on random triples") {
    Sampler s;
    const GoldenNum zero;
    const GoldenNum one(Integer(1));
    for (int i = 0; i < 10000; ++i) {
        GoldenNum x = s.value(), y = s.value(), z = s.value();
        CHECK(gf_add(gf_add(x, y), z) == gf_add(x, gf_add(y, z)));
        CHECK(gf_mul(gf_mul(x, y), z) == gf_mul(x, gf_mul(y, z)));
        CHECK(gf_add(x, y) == gf_add(y, x));
        CHECK(gf_mul(x, y) == gf_mul(y, x));
        CHECK(gf_mul(x, gf_add(y, z)) == gf_add(gf_mul(x, y), gf_mul(x, z)));
        CHECK(gf_add(x, zero) == x);
        CHECK(gf_mul(x, one) == x);
        CHECK(gf_sub(x, x) == zero);
        CHECK(gf_add(x, gf_neg(x)) == zero);
        if (!is_zero(x)) {
            CHECK(gf_mul(x, gf_inv(x)) == one);
            CHECK(gf_div(gf_mul(x, y), x) == y);
        }
        // Conjugation is a field automorphism.
        CHECK(gf_conj(gf_conj(x)) == x);
        CHECK(gf_conj(gf_mul(x, y)) == gf_mul(gf_conj(x), gf_conj(y)));
        CHECK(gf_conj(gf_add(x, y)) == gf_add(gf_conj(x), gf_conj(y)));
        // The norm x * conj(x) is rational and multiplicative.
        auto [na, nb] = gf_decompose(gf_mul(x, gf_conj(x)));
        CHECK(nb == 0);
        (void)na;
    }
}

TEST_CASE("defining relations of alpha, beta, sqrt5") {
    const GoldenNum a = golden_alpha();
    const GoldenNum b = golden_beta();
    const GoldenNum r5 = golden_sqrt5();
    const GoldenNum one(Integer(1));
    CHECK(gf_add(a, b) == one);
    CHECK(gf_mul(a, b) == gf_neg(one));
    CHECK(gf_mul(a, a) == gf_add(a, one));           // alpha^2 = alpha + 1
    CHECK(gf_sub(a, b) == r5);
    CHECK(gf_mul(r5, r5) == GoldenNum(Integer(5)));
    CHECK(gf_conj(a) == b);
    CHECK(gf_inv(a) == gf_neg(b));                   // alpha^-1 = -beta
}

TEST_CASE("alpha_pow agrees with generic powering for |n| <= 50") {
    const GoldenNum a = golden_alpha();
    const GoldenNum b = golden_beta();
    for (long n = -50; n <= 50; ++n) {
        CHECK(alpha_pow(n) == gf_pow(a, n));
        CHECK(gf_conj(alpha_pow(n)) == gf_pow(b, n));
    }
}

TEST_CASE("powers of alpha encode Fibonacci and Lucas numbers") {
    // alpha^n - beta^n = sqrt5 * F(n)  and  alpha^n + beta^n = L(n)
    const GoldenNum r5 = golden_sqrt5();
    for (long n = -50; n <= 50; ++n) {
        GoldenNum an = alpha_pow(n);
        GoldenNum bn = gf_conj(an);
        CHECK(gf_sub(an, bn) == gf_mul(r5, GoldenNum(Rat(fib(n)))));
        CHECK(gf_add(an, bn) == GoldenNum(Rat(lucas(n))));
        // Equivalently alpha^n = (L(n) + F(n)*sqrt5) / 2.
        CHECK(an == GoldenNum(make_rat(lucas(n), Integer(2)),
                              make_rat(fib(n), Integer(2))));
    }
}

TEST_CASE("sign is computed exactly, even very close to zero") {
    CHECK(gf_sign(GoldenNum()) == 0);
    CHECK(gf_sign(golden_alpha()) > 0);
    CHECK(gf_sign(golden_beta()) < 0);
    CHECK(gf_sign(gf_neg(golden_sqrt5())) < 0);
    for (long n = 1; n <= 30; ++n) {
        CHECK(gf_sign(alpha_pow(n)) > 0);
        CHECK(gf_sign(gf_pow(golden_beta(), n)) == (n % 2 == 0 ? 1 : -1));
    }
    // 161/72 and 682/305 are continued-fraction convergents of sqrt5, so
    // these differences are tiny; floating point could not resolve them.
    CHECK(gf_sign(GoldenNum(Rat(161), Rat(-72))) > 0);   // 161^2 = 25921 > 25920
    CHECK(gf_sign(GoldenNum(Rat(-682), Rat(305))) > 0);  // 5*305^2 = 465125 > 465124
    CHECK(gf_sign(GoldenNum(Rat(682), Rat(-305))) < 0);
}

TEST_CASE("decomposition, integrality, and rendering") {
    GoldenNum x(make_rat(Integer(3), Integer(2)), make_rat(Integer(-7), Integer(4)));
    auto [a, b] = gf_decompose(x);
    CHECK(a == make_rat(Integer(3), Integer(2)));
    CHECK(b == make_rat(Integer(-7), Integer(4)));
    CHECK(GoldenNum(a, b) == x);

    CHECK(is_integer(GoldenNum(Integer(42))));
    CHECK(!is_integer(x));
    CHECK(!is_integer(golden_alpha()));
    CHECK(to_integer(GoldenNum(Integer(-13))) == -13);

    CHECK(render(GoldenNum(Integer(7))) == "7");
    CHECK(render(GoldenNum(make_rat(Integer(-3), Integer(4)))) == "-3/4");
    CHECK(render(golden_alpha()) == "1/2 + 1/2*sqrt5");
    CHECK(render(golden_beta()) == "1/2 - 1/2*sqrt5");
    CHECK(render(golden_sqrt5()) == "0 + 1*sqrt5");
    CHECK(render(alpha_pow(3)) == "2 + 1*sqrt5");
    CHECK(render(x) == "3/2 - 7/4*sqrt5");
}

TEST_CASE("operator sugar matches the named functions") {
    Sampler s;
    for (int i = 0; i < 200; ++i) {
        GoldenNum x = s.value(), y = s.value();
        CHECK(x + y == gf_add(x, y));
        CHECK(x - y == gf_sub(x, y));
        CHECK(x * y == gf_mul(x, y));
        CHECK(-x == gf_neg(x));
        if (!is_zero(y)) CHECK(x / y == gf_div(x, y));
    }
}
