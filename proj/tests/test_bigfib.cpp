#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include "fibsum/bigfib.hpp"

using namespace fibsum;

namespace {

// Independent O(n) oracles.  These deliberately share no code with the
// library: a plain two-variable loop is the most transparent definition of
// both sequences, so any disagreement points at the fast-doubling kernel.
Integer fib_oracle(long n) {
    Integer a = 0, b = 1;
    for (long i = 0; i < n; ++i) {
        Integer next = a + b;
        a = b;
        b = next;
    }
    return a;
}

Integer lucas_oracle(long n) {
    Integer a = 2, b = 1;
    for (long i = 0; i < n; ++i) {
        Integer next = a + b;
        a = b;
        b = next;
    }
    return a;
}

}  // namespace

TEST_CASE("fast doubling matches the linear recurrence for all n <= 2000") {
    Integer fa = 0, fb = 1;  // F(n), F(n+1)
    Integer la = 2, lb = 1;  // L(n), L(n+1)
    for (long n = 0; n <= 2000; ++n) {
        CHECK(fib(n) == fa);
        CHECK(lucas(n) == la);
        Integer fn = fa + fb;
        fa = fb;
        fb = fn;
        Integer ln = la + lb;
        la = lb;
        lb = ln;
    }
}

TEST_CASE("frozen decimal expansions") {
    // Values precomputed by an independent iterative big-integer routine and
    // pasted in verbatim, so a systematic bug shared by both in-process
    // computations above could not hide here.
    CHECK(fib(100) == Integer("354224848179261915075"));
    CHECK(lucas(100) == Integer("792070839848372253127"));
    CHECK(fib(500) ==
          Integer("1394232245616978801397243828704072839500702565876973072641"
                  "08962948325571622863290691557658876222521294125"));
    CHECK(fib(1000) ==
          Integer("4346655768693745643568852767504062580256466051737178040248"
                  "1729089536555417949051890403879840079255169295922593080322"
                  "6347752096896232398733224711616429964409065331879382989696"
                  "49928516003704476137795166849228875"));
    CHECK(lucas(1000) ==
          Integer("9719417773590817520798198207932647373779787915534568508272"
                  "8081084772518818444815269080619149045968297679578305403209"
                  "3474011630369076605739717408624637518016412014902840973090"
                  "96322681531675707666695323797578127"));
    CHECK(fib(2000) ==
          Integer("4224696333392304878706725602341482782579852840250681098010"
                  "2801373143085843701307072241235996391415110884460875389096"
                  "0360764019471164359602927198331259873732625355580260699158"
                  "5915229492453904998722256795316982874482472992263901833716"
                  "7780606070116154978867198798583114688708762645973690867228"
                  "8402365442229524334796448013951534956297208765265606952980"
                  "6499841977448720155612802665404554171717881930324025204312"
                  "082516817125"));
    CHECK(lucas(2000) ==
          Integer("9446708185759308415384067495999677431530963218480368032804"
                  "8265982818563244459773226849450382670860943647613660001372"
                  "9134883618967378545732660790336401346548395727383680433659"
                  "5888397782139002535468799414419546535346394066447256463745"
                  "3113106612593599739091893798267224253321122425543703130639"
                  "1792942466918518629167382376465482951387382147763737123769"
                  "7744102254002802127905427315493403711022179894479121632130"
                  "910668828127"));
}

TEST_CASE("negative indices obey the reflection laws for |j| <= 200") {
    for (long j = 0; j <= 200; ++j) {
        Integer f = fib_oracle(j);
        Integer l = lucas_oracle(j);
        // F(-j) = (-1)^(j-1) F(j),  L(-j) = (-1)^j L(j)
        CHECK(fib(-j) == (j % 2 == 0 ? -f : f));
        CHECK(lucas(-j) == (j % 2 == 0 ? l : -l));
    }
}

TEST_CASE("pair accessor and cache-free variant agree with the cached path") {
    for (long j = -300; j <= 300; j += 7) {
        auto [f, l] = fib_lucas_pair(j);
        CHECK(f == fib(j));
        CHECK(l == lucas(j));
        CHECK(fib_nocache(j) == fib(j));
    }
    CHECK(fib_nocache(2000) == fib_oracle(2000));
    CHECK(fib_nocache(-9) == fib(-9));
}

TEST_CASE("doubling identities hold on a spot band") {
    for (long m = 0; m <= 120; m += 3) {
        CHECK(fib(2 * m) == fib(m) * (2 * fib(m + 1) - fib(m)));
        CHECK(fib(2 * m + 1) == fib(m) * fib(m) + fib(m + 1) * fib(m + 1));
        CHECK(lucas(m) == 2 * fib(m + 1) - fib(m));
    }
}

TEST_CASE("binomial coefficients: edges, errors, Pascal consistency") {
    CHECK(binom(0, 0) == 1);
    CHECK(binom(5, 2) == 10);
    CHECK(binom(10, 10) == 1);
    CHECK(binom(5, -1) == 0);
    CHECK(binom(5, 6) == 0);
    CHECK_THROWS_AS(binom(-1, 0), std::domain_error);
    for (long n = 1; n <= 60; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
    CHECK(binom(64, 32) == Integer("1832624140942590534"));
}
