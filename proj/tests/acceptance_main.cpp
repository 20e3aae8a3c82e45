// ===========================================================================
// Acceptance gate: one line per criterion, [PASS]/[FAIL] prefixed, exit code
// equal to the number of failed criteria.  Every check here is end-to-end:
// the full catalog sweep, oracle spot checks computed by direct summation
// (independent of the DSL encoding), suspect adjudication (which also writes
// docs/errata.md and docs/audit.md), the kernel property suites, the
// Binet-transform sensitivity probe, the big-integer oracle equivalences,
// the whole-catalog DSL round trip, and the large-n performance margins.
// ===========================================================================

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "docgen.hpp"
#include "fibsum/bench.hpp"
#include "fibsum/bigfib.hpp"
#include "fibsum/catalog.hpp"
#include "fibsum/dsl.hpp"
#include "fibsum/gauss.hpp"
#include "fibsum/golden.hpp"
#include "fibsum/verify.hpp"

using namespace fibsum;

namespace {

int g_failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1: full catalog at the default grid ------------------------

bool full_catalog_sweep(const std::vector<CatalogEntry>& catalog,
                        std::vector<VerificationReport>& reports, std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    reports = verify_all(catalog, ParamGrid{}, 1);
    const double wall = seconds_since(start);

    std::uint64_t cases = 0, skipped = 0;
    std::size_t normal_total = 0, normal_passed = 0, suspects = 0;
    std::vector<std::string> broken;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        cases += reports[i].cases_checked;
        skipped += reports[i].cases_skipped;
        if (catalog[i].status == EntryStatus::Suspect) {
            ++suspects;
            continue;
        }
        ++normal_total;
        if (reports[i].pass)
            ++normal_passed;
        else
            broken.push_back(reports[i].id);
    }

    std::ostringstream d;
    d << catalog.size() << " entries (" << normal_passed << "/" << normal_total
      << " normal pass, " << suspects << " suspect), " << cases << " cases, " << skipped
      << " skipped, " << std::fixed;
    d.precision(1);
    d << wall << " s single-threaded";
    bool ok = normal_passed == normal_total && catalog.size() >= 150 && cases >= 100000 &&
              wall < 300.0;
    if (!broken.empty()) {
        d << "; failing:";
        for (const std::string& id : broken) d << " " << id;
    }
    if (catalog.size() < 150) d << "; catalog below 150 entries";
    if (cases < 100000) d << "; fewer than 1e5 cases";
    if (wall >= 300.0) d << "; over the 300 s budget";
    detail = d.str();
    return ok;
}

// --- criterion 2: spot checks by direct summation --------------------------

bool spot_checks(std::string& detail) {
    // Even-count family, theorem 2, F line at (n,s) = (2,0):
    // 2*sum C(2,2k) F(2k) = F(4) - F(2), both sides 2.
    Integer lhs_a = 0;
    for (long k = 0; 2 * k <= 2; ++k) lhs_a += binom(2, 2 * k) * fib(2 * k);
    lhs_a *= 2;
    const Integer rhs_a = fib(4) - fib(2);
    const bool a = lhs_a == 2 && rhs_a == 2;

    // Quadratic family, odd-n corollary shape at (n,r,s) = (1,0,0):
    // sum C(2,2k) F(3k)^2 = 2^(2*1-1) F(1) F(3), both sides 4.
    Integer lhs_b = 0;
    for (long k = 0; 2 * k <= 2; ++k) lhs_b += binom(2, 2 * k) * fib(3 * k) * fib(3 * k);
    const Integer rhs_b = Integer(2) * fib(1) * fib(3);
    const bool b = lhs_b == 4 && rhs_b == 4;

    // Alternating binomial collapse at n = 4:
    // sum (-1)^k C(4,2k) = Re((1+i)^4), both sides -4.
    Integer lhs_c = 0;
    for (long k = 0; 2 * k <= 4; ++k)
        lhs_c += (k % 2 == 0 ? Integer(1) : Integer(-1)) * binom(4, 2 * k);
    const GoldenNum rhs_c = re_im_pow(GoldenNum(1), GoldenNum(1), 4).first;
    const bool c = lhs_c == -4 && rhs_c == GoldenNum(-4);

    std::ostringstream d;
    d << "shifted-F pair = (" << lhs_a.get_str() << ", " << rhs_a.get_str()
      << "), squared-F pair = (" << lhs_b.get_str() << ", " << rhs_b.get_str()
      << "), alternating pair = (" << lhs_c.get_str() << ", " << render(rhs_c) << ")";
    detail = d.str();
    return a && b && c;
}

// --- criterion 3: suspect adjudication + docs ------------------------------

bool adjudication(const std::vector<CatalogEntry>& catalog, std::string& detail) {
    const auto verdicts = adjudicate_suspects(catalog);
    bool ok = !verdicts.empty();
    std::ostringstream d;
    for (const SuspectVerdict& v : verdicts) {
        if (d.tellp() > 0) d << "; ";
        d << v.id << ": ";
        if (v.verbatim.pass) {
            d << "displayed form holds (" << v.verbatim.cases_checked << " cases)";
        } else if (v.definitive) {
            d << "defective at " << v.verbatim.failures.front().binding.render() << " ("
              << v.verbatim.failure_count << "/" << v.verbatim.cases_checked
              << " cases fail), " << v.twin_id << " passes";
        } else {
            d << "NO DEFINITIVE VERDICT";
        }
        ok = ok && v.definitive;
    }
    const auto written = write_docs(catalog, verdicts, FIBSUM_DOCS_DIR);
    for (const std::string& path : written) d << "; wrote " << path;
    detail = d.str();
    return ok;
}

// --- criterion 4: kernel property suites ------------------------------------

bool golden_axioms() {
    std::mt19937_64 rng{0xacce97ed5u};
    std::uniform_int_distribution<long> num{-99, 99};
    std::uniform_int_distribution<long> den{1, 99};
    const auto sample = [&] {
        return GoldenNum(make_rat(Integer(num(rng)), Integer(den(rng))),
                         make_rat(Integer(num(rng)), Integer(den(rng))));
    };
    const GoldenNum one(1);
    for (int i = 0; i < 10000; ++i) {
        GoldenNum x = sample(), y = sample(), z = sample();
        if (gf_add(gf_add(x, y), z) != gf_add(x, gf_add(y, z))) return false;
        if (gf_mul(gf_mul(x, y), z) != gf_mul(x, gf_mul(y, z))) return false;
        if (gf_add(x, y) != gf_add(y, x)) return false;
        if (gf_mul(x, y) != gf_mul(y, x)) return false;
        if (gf_mul(x, gf_add(y, z)) != gf_add(gf_mul(x, y), gf_mul(x, z))) return false;
        if (!is_zero(x) && gf_mul(x, gf_inv(x)) != one) return false;
        if (gf_conj(gf_mul(x, y)) != gf_mul(gf_conj(x), gf_conj(y))) return false;
    }
    return true;
}

bool alpha_pow_agreement() {
    for (long n = -50; n <= 50; ++n)
        if (alpha_pow(n) != gf_pow(golden_alpha(), n)) return false;
    return true;
}

bool binet_consistency() {
    const GoldenNum r5 = golden_sqrt5();
    for (long n = -50; n <= 50; ++n) {
        const GoldenNum an = alpha_pow(n);
        const GoldenNum bn = gf_conj(an);
        if (gf_add(an, bn) != GoldenNum(Rat(lucas(n)))) return false;
        if (gf_sub(an, bn) != gf_mul(r5, GoldenNum(Rat(fib(n))))) return false;
    }
    return true;
}

bool gauss_conservation() {
    const GoldenNum bases[][2] = {
        {GoldenNum(1), GoldenNum(1)},   {GoldenNum(1), GoldenNum(2)},
        {GoldenNum(2), GoldenNum(3)},   {GoldenNum(1), golden_sqrt5()},
        {GoldenNum(1), golden_alpha()}, {GoldenNum(-2), GoldenNum(7)},
    };
    for (const auto& base : bases) {
        const GoldenNum& x = base[0];
        const GoldenNum& y = base[1];
        const GoldenNum norm = gf_add(gf_mul(x, x), gf_mul(y, y));
        for (long m = 0; m <= 40; ++m) {
            auto [re, im] = re_im_pow(x, y, m);
            if (gf_add(gf_mul(re, re), gf_mul(im, im)) != gf_pow(norm, m)) return false;
        }
    }
    return true;
}

bool binomial_collapses() {
    // sum (-c^2)^k C(n,2k) = Re((1+ci)^n) for c in {1, 2, sqrt5}, n <= 64.
    const GoldenNum cs[] = {GoldenNum(1), GoldenNum(2), golden_sqrt5()};
    for (const GoldenNum& c : cs) {
        const GoldenNum weight = gf_neg(gf_mul(c, c));
        for (long n = 0; n <= 64; ++n) {
            GoldenNum acc;
            for (long k = 0; 2 * k <= n; ++k)
                acc = gf_add(acc, gf_mul(gf_pow(weight, k), GoldenNum(Rat(binom(n, 2 * k)))));
            if (acc != re_im_pow(GoldenNum(1), c, n).first) return false;
        }
    }
    return true;
}

bool arctan_symmetries() {
    const GoldenNum one(1);
    for (long r = 1; r <= 4; ++r) {
        const GoldenNum ar = alpha_pow(r);
        const GoldenNum br = gf_conj(ar);
        const GoldenNum A = gf_add(one, alpha_pow(2 * r));
        const GoldenNum B = gf_add(one, gf_conj(alpha_pow(2 * r)));
        const GoldenNum M = (r % 2 != 0) ? gf_mul(golden_sqrt5(), GoldenNum(Rat(fib(r))))
                                         : GoldenNum(Rat(lucas(r)));
        for (long n = 0; n <= 20; ++n) {
            auto [rea, ima] = re_im_pow(one, ar, 2 * n);
            auto [reb, imb] = re_im_pow(one, br, 2 * n);
            const GoldenNum se((n % 2 == 0) ? 1 : -1);
            const GoldenNum so(((n + r + 1) % 2 == 0) ? 1 : -1);
            if (gf_mul(gf_mul(rea, gf_pow(B, n)), se) != gf_mul(reb, gf_pow(A, n)))
                return false;
            if (gf_mul(gf_mul(ima, gf_pow(B, n)), so) != gf_mul(imb, gf_pow(A, n)))
                return false;
        }
        for (long n = 1; n <= 20; ++n) {
            auto [rea, ima] = re_im_pow(one, ar, 2 * n - 1);
            auto [reb, imb] = re_im_pow(one, br, 2 * n - 1);
            const GoldenNum so(((n + r + 1) % 2 == 0) ? 1 : -1);
            const GoldenNum sn(((n - 1) % 2 == 0) ? 1 : -1);
            if (gf_mul(rea, gf_pow(B, n)) !=
                gf_mul(gf_mul(gf_mul(so, imb), gf_pow(A, n - 1)), M))
                return false;
            if (gf_mul(ima, gf_pow(B, n)) !=
                gf_mul(gf_mul(gf_mul(sn, reb), gf_pow(A, n - 1)), M))
                return false;
        }
    }
    return true;
}

bool kernel_suites(std::string& detail) {
    struct Suite {
        const char* name;
        bool (*run)();
    };
    const Suite suites[] = {
        {"field-axioms", golden_axioms},
        {"alpha-pow-agreement", alpha_pow_agreement},
        {"binet-consistency", binet_consistency},
        {"gauss-conservation", gauss_conservation},
        {"binomial-collapses", binomial_collapses},
        {"arctan-symmetries", arctan_symmetries},
    };
    std::ostringstream d;
    bool ok = true;
    for (const Suite& s : suites) {
        const bool good = s.run();
        ok = ok && good;
        if (d.tellp() > 0) d << ", ";
        d << s.name << (good ? " ok" : " FAILED");
    }
    detail = d.str();
    return ok;
}

// --- criterion 5: Binet-transform forcing and sensitivity -------------------

bool corrupted_binet_holds(const std::vector<std::pair<GoldenNum, long>>& coeffs, long j,
                           const GoldenNum& z, std::size_t bad) {
    const GoldenNum alpha_jz = gf_mul(alpha_pow(j), z);
    const GoldenNum beta_jz = gf_mul(gf_conj(alpha_pow(j)), z);
    GoldenNum sum_f, sum_l, h_alpha, h_beta;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const auto& [g_k, f_k] = coeffs[k];
        const GoldenNum z_pow = gf_pow(z, f_k);
        const long shift = (k == bad) ? 1 : 0;  // the deliberate corruption
        sum_f = gf_add(sum_f, gf_mul(gf_mul(g_k, z_pow), GoldenNum(fib(j * f_k + shift))));
        sum_l = gf_add(sum_l, gf_mul(gf_mul(g_k, z_pow), GoldenNum(lucas(j * f_k))));
        h_alpha = gf_add(h_alpha, gf_mul(g_k, gf_pow(alpha_jz, f_k)));
        h_beta = gf_add(h_beta, gf_mul(g_k, gf_pow(beta_jz, f_k)));
    }
    return gf_mul(golden_sqrt5(), sum_f) == gf_sub(h_alpha, h_beta) &&
           sum_l == gf_add(h_alpha, h_beta);
}

bool binet_transform_probe(std::string& detail) {
    std::mt19937_64 rng{0xb13e7u};
    std::uniform_int_distribution<int> len_d{1, 8};
    std::uniform_int_distribution<long> f_d{-10, 10};
    std::uniform_int_distribution<long> num_d{-10, 10};
    std::uniform_int_distribution<long> den_d{1, 4};
    std::uniform_int_distribution<int> j_d{-3, 3};
    std::uniform_int_distribution<int> z_d{0, 5};
    const GoldenNum zs[] = {GoldenNum(1),  GoldenNum(2),
                            GoldenNum(-1), GoldenNum(make_rat(Integer(1), Integer(2))),
                            golden_alpha(), golden_sqrt5()};
    int passes = 0, corruptions = 0, caught = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const long j = j_d(rng);
        std::vector<std::pair<GoldenNum, long>> coeffs;
        const int len = len_d(rng);
        for (int t = 0; t < len; ++t) {
            long num = num_d(rng);
            while (num == 0) num = num_d(rng);
            long f = f_d(rng);
            while (j * f == 1) f = f_d(rng);  // F(1)=F(2) would mask the corruption
            coeffs.emplace_back(GoldenNum(make_rat(Integer(num), Integer(den_d(rng)))), f);
        }
        const GoldenNum z = zs[z_d(rng)];
        passes += check_binet_transform(coeffs, j, z);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            ++corruptions;
            caught += !corrupted_binet_holds(coeffs, j, z, k);
        }
    }
    std::ostringstream d;
    d << passes << "/100 lists pass, " << caught << "/" << corruptions
      << " single-term corruptions detected";
    detail = d.str();
    return passes == 100 && caught == corruptions;
}

// --- criterion 6: big-integer oracle equivalence ----------------------------

bool bigfib_oracle(std::string& detail) {
    Integer fa = 0, fb = 1, la = 2, lb = 1;
    for (long n = 0; n <= 2000; ++n) {
        if (fib(n) != fa || lucas(n) != la) {
            detail = "disagreement at n=" + std::to_string(n);
            return false;
        }
        Integer t = fa + fb;
        fa = fb;
        fb = t;
        t = la + lb;
        la = lb;
        lb = t;
    }
    for (long j = 0; j <= 200; ++j) {
        if (fib(-j) != (j % 2 == 0 ? Integer(-fib(j)) : fib(j)) ||
            lucas(-j) != (j % 2 == 0 ? lucas(j) : Integer(-lucas(j)))) {
            detail = "negative-index law broken at j=" + std::to_string(j);
            return false;
        }
    }
    detail = "doubling == recurrence for n <= 2000, reflection laws for |j| <= 200";
    return true;
}

// --- criterion 7: DSL round trip over the shipped catalog -------------------

bool dsl_round_trip(const std::vector<CatalogEntry>& catalog, std::string& detail) {
    std::size_t checked = 0;
    for (const CatalogEntry& e : catalog) {
        const std::string printed = print_identity(e.spec);
        IdentitySpec again;
        try {
            again = parse_identity(printed);
        } catch (const ParseError& err) {
            detail = e.spec.id + ": reprint fails to parse: " + err.what();
            return false;
        }
        if (!spec_equal(e.spec, again)) {
            detail = e.spec.id + ": parse(print(spec)) differs structurally";
            return false;
        }
        if (print_identity(again) != printed) {
            detail = e.spec.id + ": printing is not canonical";
            return false;
        }
        ++checked;
    }
    detail = "parse/print fixed point on all " + std::to_string(checked) + " entries";
    return true;
}

// --- criterion 8: performance margins at n = 1e5 ----------------------------

bool performance(const std::vector<CatalogEntry>& catalog, std::string& detail) {
    const long n = 100000;
    const auto fib_records = bench_fib({n}, 3);
    const BenchRecord& iter = fib_records[0];
    const BenchRecord& dbl = fib_records[1];
    auto [lhs, rhs] = bench_entry(catalog, "T2F", n, 3);

    const bool fib_margin = dbl.median_ns > 0 && iter.median_ns >= 2 * dbl.median_ns;
    const bool entry_margin = rhs.median_ns > 0 && lhs.median_ns >= 2 * rhs.median_ns;
    const bool digests = iter.digest == dbl.digest && lhs.digest == rhs.digest;

    std::ostringstream d;
    d.precision(1);
    d << std::fixed << "fib: iterative " << iter.median_ns / 1e6 << " ms vs doubling "
      << dbl.median_ns / 1e6 << " ms (" << double(iter.median_ns) / double(dbl.median_ns)
      << "x); T2F: summation " << lhs.median_ns / 1e6 << " ms vs closed form "
      << rhs.median_ns / 1e6 << " ms (" << double(lhs.median_ns) / double(rhs.median_ns)
      << "x); digests " << (digests ? "agree" : "DISAGREE");
    detail = d.str();
    return fib_margin && entry_margin && digests;
}

}  // namespace

int main() {
    std::vector<CatalogEntry> catalog;
    try {
        catalog = load_catalog(FIBSUM_CATALOG_DIR);
    } catch (const std::exception& e) {
        std::printf("[FAIL] catalog load: %s\n", e.what());
        return 1;
    }

    std::string detail;
    std::vector<VerificationReport> reports;

    bool ok = full_catalog_sweep(catalog, reports, detail);
    report(1, "full-catalog verification at the default grid", ok, detail);

    ok = spot_checks(detail);
    report(2, "direct-summation spot checks", ok, detail);

    try {
        ok = adjudication(catalog, detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(3, "suspect adjudication with docs output", ok, detail);

    ok = kernel_suites(detail);
    report(4, "kernel property suites", ok, detail);

    ok = binet_transform_probe(detail);
    report(5, "Binet-transform forcing and sensitivity", ok, detail);

    ok = bigfib_oracle(detail);
    report(6, "big-integer oracle equivalence", ok, detail);

    ok = dsl_round_trip(catalog, detail);
    report(7, "DSL round trip", ok, detail);

    try {
        ok = performance(catalog, detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(8, "performance margins at n = 100000", ok, detail);

    if (g_failures == 0)
        std::printf("acceptance: all 8 criteria pass\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures;
}
