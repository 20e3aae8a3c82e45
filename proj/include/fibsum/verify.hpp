#pragma once
// ---------------------------------------------------------------------------
// verify -- exact LHS-vs-RHS verification of catalog entries over parameter
// grids, plus the generic Binet-transform consistency check.
//
// A grid assigns each parameter an inclusive integer range; every binding in
// the cartesian product is evaluated exactly in Q(sqrt5).  Bindings that
// violate an entry's `require` guards are skipped, not failed.  An entry
// passes iff no binding fails and at least one was checked.
//
// Default ranges are group-aware: sums over four offset parameters grow
// combinatorially, so their length parameter sweeps a shorter range.
// ---------------------------------------------------------------------------
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibsum/catalog.hpp"
#include "fibsum/dsl.hpp"
#include "fibsum/golden.hpp"

namespace fibsum {

struct ParamRange {
    long lo = 0;
    long hi = 0;  // inclusive; lo <= hi always holds
};

struct ParamGrid {
    std::map<std::string, ParamRange> ranges;
    // When the cartesian product exceeds this, cases are sampled with a
    // uniform stride so roughly max_cases of them are visited.
    std::optional<std::uint64_t> max_cases;
};

// Grid-spec text: comma-separated `name=lo..hi` items plus an optional
// `max=N` cap, e.g. "n=0..30,s=-6..6,max=100000".
ParamGrid parse_grid_spec(const std::string& text);
std::string render_grid_spec(const ParamGrid& grid);

// Default ranges for one entry: n in [0,30] (length of linear sums),
// [0,24] for group G-Q, [0,16] for G-C/G-X; j in [-3,3]; every other
// parameter in [-6,6]; each intersected with the parameter's declared
// domain.  Throws std::invalid_argument when a declared domain lies
// entirely outside the default range (override via an explicit grid).
ParamGrid default_grid_for(const CatalogEntry& e);

// Ranges and cap from `overrides` win; everything else comes from `base`.
ParamGrid merge_grids(const ParamGrid& base, const ParamGrid& overrides);

struct CaseFailure {
    Binding binding;
    std::string lhs;    // canonical rendering; empty when `error` is set
    std::string rhs;
    std::string error;  // evaluation diagnostic; empty for plain mismatches
};

struct VerificationReport {
    std::string id;
    std::string group;
    std::uint64_t cases_checked = 0;
    std::uint64_t cases_skipped = 0;
    std::uint64_t failure_count = 0;       // total, including unrecorded
    std::vector<CaseFailure> failures;     // first kMaxRecordedFailures only
    std::vector<std::string> notes;        // "empty grid", "branch uncovered: ..."
    bool pass = false;                     // failures empty && cases_checked >= 1

    static constexpr std::size_t kMaxRecordedFailures = 5;
};

// Sweeps the grid (each range trimmed to the parameter's declared domain)
// and compares both sides exactly.  Evaluation errors (division by zero,
// non-integer index) are per-case failures with a diagnostic, never a
// crash.  Throws std::invalid_argument when the grid misses a parameter.
VerificationReport verify_entry(const CatalogEntry& e, const ParamGrid& g);

// Verifies every entry, treating `overrides` as adjustments layered over
// each entry's default grid.  Reports come back in (group, id) order and
// are byte-identical regardless of worker count.
std::vector<VerificationReport> verify_all(const std::vector<CatalogEntry>& entries,
                                           const ParamGrid& overrides, int workers);

// Text rendering: `<status> <id> cases=<n> skipped=<m>` plus up to 5
// counterexample lines `  at <binding>: lhs=<canonical> rhs=<canonical>`
// and any `  note: ...` diagnostics.  Trailing newline included.
std::string render_report(const VerificationReport& r);

// One JSON object (single line, no trailing newline) for machine use.
std::string render_report_json(const VerificationReport& r);

// Binet-transform consistency check for h(w) = sum_k g_k w^{f_k}:
//   sqrt5 * sum_k g_k z^{f_k} F(j f_k)  ==  h(alpha^j z) - h(beta^j z)
//          sum_k g_k z^{f_k} L(j f_k)  ==  h(alpha^j z) + h(beta^j z)
// True for any finite coefficient list, so a failure exposes a defect in
// the field or sequence kernels.  Throws on z = 0 with a negative f_k.
bool check_binet_transform(const std::vector<std::pair<GoldenNum, long>>& coeffs, long j,
                           const GoldenNum& z);

}  // namespace fibsum
