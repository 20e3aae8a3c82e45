#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "fibsum/verify.hpp"

namespace fibsum {

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

namespace {

long parse_long(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid spec: bad " + what + " '" + text + "'");
    }
    if (used != text.size())
        throw std::invalid_argument("grid spec: bad " + what + " '" + text + "'");
    return v;
}

}  // namespace

ParamGrid parse_grid_spec(const std::string& text) {
    ParamGrid grid;
    std::vector<std::string> items;
    std::string current;
    for (const char c : text) {
        if (c == ';' || c == ',') {  // both separators accepted
            items.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    items.push_back(current);
    for (const std::string& item : items) {
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("grid spec: expected name=lo..hi in '" + item + "'");
        const std::string name = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (name.empty()) throw std::invalid_argument("grid spec: empty name in '" + item + "'");
        if (name == "max") {
            const long cap = parse_long(value, "max");
            if (cap <= 0) throw std::invalid_argument("grid spec: max must be positive");
            grid.max_cases = static_cast<std::uint64_t>(cap);
            continue;
        }
        const std::size_t dots = value.find("..");
        if (dots == std::string::npos)
            throw std::invalid_argument("grid spec: expected lo..hi in '" + item + "'");
        ParamRange r;
        r.lo = parse_long(value.substr(0, dots), "bound");
        r.hi = parse_long(value.substr(dots + 2), "bound");
        if (r.lo > r.hi)
            throw std::invalid_argument("grid spec: empty range in '" + item + "'");
        grid.ranges[name] = r;
    }
    return grid;
}

std::string render_grid_spec(const ParamGrid& grid) {
    std::string out;
    for (const auto& [name, r] : grid.ranges) {
        if (!out.empty()) out += ';';
        out += name + "=" + std::to_string(r.lo) + ".." + std::to_string(r.hi);
    }
    if (grid.max_cases) {
        if (!out.empty()) out += ';';
        out += "max=" + std::to_string(*grid.max_cases);
    }
    return out;
}

ParamGrid default_grid_for(const CatalogEntry& e) {
    long n_hi = 30;
    if (e.group == "G-Q") n_hi = 24;
    if (e.group == "G-C" || e.group == "G-X") n_hi = 16;
    ParamGrid grid;
    for (const ParamDecl& p : e.spec.params) {
        ParamRange r;
        if (p.name == "n") {
            r = {0, n_hi};
        } else if (p.name == "j") {
            r = {-3, 3};
        } else {
            r = {-6, 6};
        }
        if (p.lo && p.lo->fits_slong_p()) r.lo = std::max(r.lo, p.lo->get_si());
        if (p.hi && p.hi->fits_slong_p()) r.hi = std::min(r.hi, p.hi->get_si());
        if (r.lo > r.hi)
            throw std::invalid_argument("default grid cannot cover parameter '" + p.name +
                                        "' of '" + e.spec.id + "'; give an explicit range");
        grid.ranges[p.name] = r;
    }
    return grid;
}

ParamGrid merge_grids(const ParamGrid& base, const ParamGrid& overrides) {
    ParamGrid out = base;
    for (const auto& [name, r] : overrides.ranges) out.ranges[name] = r;
    if (overrides.max_cases) out.max_cases = overrides.max_cases;
    return out;
}

// ---------------------------------------------------------------------------
// verify_entry
// ---------------------------------------------------------------------------

VerificationReport verify_entry(const CatalogEntry& e, const ParamGrid& g) {
    const IdentitySpec& spec = e.spec;
    VerificationReport report;
    report.id = spec.id;
    report.group = e.group;

    // Effective per-parameter ranges: grid trimmed to the declared domain.
    std::vector<ParamRange> ranges;
    for (const ParamDecl& p : spec.params) {
        auto it = g.ranges.find(p.name);
        if (it == g.ranges.end())
            throw std::invalid_argument("grid does not cover parameter '" + p.name + "' of '" +
                                        spec.id + "'");
        ParamRange r = it->second;
        if (p.lo && p.lo->fits_slong_p()) r.lo = std::max(r.lo, p.lo->get_si());
        if (p.hi && p.hi->fits_slong_p()) r.hi = std::min(r.hi, p.hi->get_si());
        if (r.lo > r.hi) {  // domain and grid are disjoint: nothing to visit
            report.notes.push_back("empty grid");
            report.pass = false;
            return report;
        }
        ranges.push_back(r);
    }

    // The sweep walks the cartesian product in row-major order (last
    // parameter fastest); under a max_cases cap it visits every stride-th
    // point instead, which keeps the selection deterministic.
    unsigned __int128 total = 1;
    for (const ParamRange& r : ranges) {
        total *= static_cast<unsigned __int128>(r.hi - r.lo + 1);
        if (total > (static_cast<unsigned __int128>(1) << 100)) break;  // saturate
    }
    unsigned __int128 stride = 1;
    if (g.max_cases && total > *g.max_cases)
        stride = (total + *g.max_cases - 1) / *g.max_cases;

    EvalCache cache;
    Evaluator ev(spec, &cache);
    std::vector<long> values(ranges.size(), 0);
    std::vector<std::uint64_t> case_hits(spec.rhs.size(), 0);

    for (unsigned __int128 index = 0; index < total; index += stride) {
        unsigned __int128 rest = index;
        for (std::size_t i = ranges.size(); i-- > 0;) {
            const unsigned __int128 width =
                static_cast<unsigned __int128>(ranges[i].hi - ranges[i].lo + 1);
            values[i] = ranges[i].lo + static_cast<long>(rest % width);
            rest /= width;
        }
        auto record_failure = [&](CaseFailure f) {
            ++report.failure_count;
            if (report.failures.size() < VerificationReport::kMaxRecordedFailures)
                report.failures.push_back(std::move(f));
        };
        auto binding_of = [&]() {
            Binding b;
            for (std::size_t i = 0; i < values.size(); ++i)
                b.set(spec.params[i].name, values[i]);
            return b;
        };
        try {
            ev.bind_ordered(values);
            if (!ev.require_holds()) {
                ++report.cases_skipped;
                continue;
            }
            const int active = ev.active_rhs_case();
            ++case_hits[static_cast<std::size_t>(active)];
            const GoldenNum lhs = ev.lhs();
            const GoldenNum rhs = ev.rhs();
            ++report.cases_checked;
            if (!(lhs == rhs)) {
                CaseFailure f;
                f.binding = binding_of();
                f.lhs = render(lhs);
                f.rhs = render(rhs);
                record_failure(std::move(f));
            }
        } catch (const EvalError& err) {
            ++report.cases_checked;
            CaseFailure f;
            f.binding = binding_of();
            f.error = err.what();
            record_failure(std::move(f));
        }
    }

    if (spec.rhs_is_cases) {
        for (std::size_t i = 0; i < case_hits.size(); ++i)
            if (case_hits[i] == 0)
                report.notes.push_back("branch uncovered: case " + std::to_string(i) + " guard '" +
                                       print_guard(spec, spec.rhs[i].guard) + "'");
    }
    if (report.cases_checked == 0) report.notes.push_back("empty grid");
    report.pass = report.failure_count == 0 && report.cases_checked >= 1;
    return report;
}

// ---------------------------------------------------------------------------
// verify_all
// ---------------------------------------------------------------------------

std::vector<VerificationReport> verify_all(const std::vector<CatalogEntry>& entries,
                                           const ParamGrid& overrides, int workers) {
    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&entries](std::size_t a, std::size_t b) {
        if (entries[a].group != entries[b].group) return entries[a].group < entries[b].group;
        return entries[a].spec.id < entries[b].spec.id;
    });

    std::vector<VerificationReport> reports(entries.size());
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= order.size()) return;
            const CatalogEntry& e = entries[order[slot]];
            try {
                reports[slot] = verify_entry(e, merge_grids(default_grid_for(e), overrides));
            } catch (const std::exception& err) {
                VerificationReport r;
                r.id = e.spec.id;
                r.group = e.group;
                r.notes.push_back(std::string("error: ") + err.what());
                reports[slot] = std::move(r);
            }
        }
    };

    if (workers < 1) workers = 1;
    const int spawn = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(workers), entries.empty() ? 1 : entries.size()));
    if (spawn <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < spawn; ++i) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string render_report(const VerificationReport& r) {
    std::string out = (r.pass ? "pass " : "fail ") + r.id +
                      " cases=" + std::to_string(r.cases_checked) +
                      " skipped=" + std::to_string(r.cases_skipped) + "\n";
    for (const CaseFailure& f : r.failures) {
        out += "  at " + f.binding.render() + ": ";
        out += f.error.empty() ? "lhs=" + f.lhs + " rhs=" + f.rhs : "error=" + f.error;
        out += "\n";
    }
    if (r.failure_count > r.failures.size())
        out += "  ... " + std::to_string(r.failure_count - r.failures.size()) +
               " more failures\n";
    for (const std::string& n : r.notes) out += "  note: " + n + "\n";
    return out;
}

std::string render_report_json(const VerificationReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["group"] = r.group;
    j["status"] = r.pass ? "pass" : "fail";
    j["cases"] = r.cases_checked;
    j["skipped"] = r.cases_skipped;
    j["failure_count"] = r.failure_count;
    j["failures"] = nlohmann::json::array();
    for (const CaseFailure& f : r.failures) {
        nlohmann::json jf;
        for (const auto& [name, value] : f.binding.values) jf["binding"][name] = value;
        if (f.error.empty()) {
            jf["lhs"] = f.lhs;
            jf["rhs"] = f.rhs;
        } else {
            jf["error"] = f.error;
        }
        j["failures"].push_back(std::move(jf));
    }
    j["notes"] = r.notes;
    return j.dump();
}

// ---------------------------------------------------------------------------
// Binet-transform consistency
// ---------------------------------------------------------------------------

bool check_binet_transform(const std::vector<std::pair<GoldenNum, long>>& coeffs, long j,
                           const GoldenNum& z) {
    const GoldenNum alpha_jz = gf_mul(alpha_pow(j), z);
    const GoldenNum beta_jz = gf_mul(gf_conj(alpha_pow(j)), z);
    GoldenNum sum_f(0), sum_l(0), h_alpha(0), h_beta(0);
    for (const auto& [g_k, f_k] : coeffs) {
        const GoldenNum z_pow = gf_pow(z, f_k);
        const Integer f_mult = fib(j * f_k);
        const Integer l_mult = lucas(j * f_k);
        sum_f = gf_add(sum_f, gf_mul(gf_mul(g_k, z_pow), GoldenNum(f_mult)));
        sum_l = gf_add(sum_l, gf_mul(gf_mul(g_k, z_pow), GoldenNum(l_mult)));
        h_alpha = gf_add(h_alpha, gf_mul(g_k, gf_pow(alpha_jz, f_k)));
        h_beta = gf_add(h_beta, gf_mul(g_k, gf_pow(beta_jz, f_k)));
    }
    const bool f_line = gf_mul(golden_sqrt5(), sum_f) == gf_sub(h_alpha, h_beta);
    const bool l_line = sum_l == gf_add(h_alpha, h_beta);
    return f_line && l_line;
}

}  // namespace fibsum
