#pragma once
// ---------------------------------------------------------------------------
// bench -- wall-time comparison harness.
//
// Two experiments:
//   * fib:   fast doubling vs the linear recurrence, per input size.
//   * entry: direct LHS summation vs closed-form RHS for one catalog entry,
//            with the sum-length parameter n set to the requested size and
//            the remaining parameters pinned to 1 (or 0/mixed when 1
//            violates the entry's guards).
//
// The LHS is summed incrementally -- binomials, Fibonacci/Lucas values and
// weight powers advance by constant-step recurrences between consecutive
// terms -- so the closed form is compared against a competitive O(n)
// baseline, not against naive per-term recomputation.  Sums the stepper
// cannot express fall back to the generic evaluator.
//
// Every record carries a digest of the canonical value rendering; competing
// strategies must agree, so each benchmark doubles as a correctness probe
// at sizes far beyond the verification grids.
// ---------------------------------------------------------------------------
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fibsum/catalog.hpp"

namespace fibsum {

struct BenchRecord {
    std::string subject;       // "iterative", "fast-doubling", "<id>/lhs", "<id>/rhs"
    long n = 0;
    int reps = 0;
    std::uint64_t median_ns = 0;
    std::uint64_t digest = 0;  // FNV-1a of the canonical value rendering
};

// Times both Fibonacci strategies at each size.  Sizes must be
// non-negative and reps >= 3; digests agree per size by construction
// (a mismatch throws, exposing a kernel defect).
std::vector<BenchRecord> bench_fib(const std::vector<long>& n_values, int reps);

// Times LHS summation and RHS closed form of one entry at the given n.
// Throws CatalogError for unknown ids, std::invalid_argument when the
// entry has no parameter n, no guard-satisfying pinning exists, or
// reps < 3; a digest mismatch throws std::runtime_error.
std::pair<BenchRecord, BenchRecord> bench_entry(const std::vector<CatalogEntry>& catalog,
                                                const std::string& id, long n, int reps);

// CSV with header `subject,n,reps,median_ns,digest`, LF line endings.
std::string render_csv(const std::vector<BenchRecord>& records);

}  // namespace fibsum
