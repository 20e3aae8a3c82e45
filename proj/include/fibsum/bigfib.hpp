#pragma once
// ============================================================================
// Arbitrary-precision Fibonacci / Lucas / binomial kernels.
//
// Index conventions live here and nowhere else:
//
//    F(0) = 0, F(1) = 1,  F(-j) = (-1)^(j-1) F(j)
//    L(0) = 2, L(1) = 1,  L(-j) = (-1)^j     L(j)
//
// Non-negative indices use fast doubling,
//
//    F(2m)   = F(m) * (2 F(m+1) - F(m))
//    F(2m+1) = F(m)^2 + F(m+1)^2
//
// which costs O(log j) big-integer multiplications; callers never special-case
// signs themselves.  Binomials follow the out-of-range convention
// C(n,k) = 0 for k < 0 or k > n, so summation bounds like floor(n/2) need no
// special-casing at call sites.
// ============================================================================

#include <gmpxx.h>

#include <utility>

namespace fibsum {

// Exact signed integer of any magnitude.
using Integer = mpz_class;

// F(j) for any integer j (negative allowed).
Integer fib(long j);

// L(j) for any integer j (negative allowed).
Integer lucas(long j);

// (F(j), L(j)) from a single fast-doubling pass over the bits of |j|.
std::pair<Integer, Integer> fib_lucas_pair(long j);

// C(n,k); 0 when k < 0 or k > n.  Throws std::domain_error for n < 0.
Integer binom(long n, long k);

// F(j) recomputed by fast doubling every call, skipping the small-index
// memo.  Exists so benchmarks time the algorithm rather than a table hit;
// everything else should call fib().
Integer fib_nocache(long j);

}  // namespace fibsum
