#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "fibsum/bench.hpp"

namespace fibsum {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t median_of(std::vector<std::uint64_t> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    if (samples.size() % 2 != 0) return samples[mid];
    return (samples[mid - 1] + samples[mid]) / 2;
}

// Runs `compute` reps times; the digest is taken outside the timed section
// so timings cover arithmetic only.  All reps must agree on the value.
template <typename F>
BenchRecord time_subject(std::string subject, long n, int reps, F&& compute) {
    BenchRecord rec;
    rec.subject = std::move(subject);
    rec.n = n;
    rec.reps = reps;
    std::vector<std::uint64_t> samples;
    samples.reserve(static_cast<std::size_t>(reps));
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        const GoldenNum value = compute();
        const auto stop = std::chrono::steady_clock::now();
        samples.push_back(static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
        const std::uint64_t digest = fnv1a(render(value));
        if (i == 0)
            rec.digest = digest;
        else if (digest != rec.digest)
            throw std::runtime_error("bench: nondeterministic value for " + rec.subject);
    }
    rec.median_ns = median_of(std::move(samples));
    return rec;
}

// ---------------------------------------------------------------------------
// Incremental summation
//
// A Sum body that is a product of binomials, Fibonacci/Lucas values, powers
// with k-linear exponents, and k-free factors is summed by advancing each
// factor from term k to term k+1 with O(1) big-int operations:
//
//   C(u, m+1) = C(u, m) (u-m) / (m+1)        (and the reverse for m-1)
//   F(m+1)    = F(m) + F(m-1)                (same recurrence for L)
//   w^(m+a)   = w^m * w^a                    (w^a precomputed)
// ---------------------------------------------------------------------------

struct LinForm {
    long a = 0;  // coefficient of the sum variable
    long b = 0;  // constant part
};

std::optional<LinForm> linear_form(const IdentitySpec& spec, int idx, int kslot,
                                   const std::vector<long>& param_values) {
    const Node& n = spec.nodes[idx];
    switch (n.kind) {
        case NodeKind::IntLit:
            if (!n.int_value.fits_slong_p()) return std::nullopt;
            return LinForm{0, n.int_value.get_si()};
        case NodeKind::Param:
            if (n.slot == kslot) return LinForm{1, 0};
            if (n.slot < static_cast<int>(param_values.size()))
                return LinForm{0, param_values[static_cast<std::size_t>(n.slot)]};
            return std::nullopt;  // variable of some other sum
        case NodeKind::Neg: {
            auto f = linear_form(spec, n.child0, kslot, param_values);
            if (!f) return std::nullopt;
            return LinForm{-f->a, -f->b};
        }
        case NodeKind::Add:
        case NodeKind::Sub: {
            auto l = linear_form(spec, n.child0, kslot, param_values);
            auto r = linear_form(spec, n.child1, kslot, param_values);
            if (!l || !r) return std::nullopt;
            if (n.kind == NodeKind::Sub) return LinForm{l->a - r->a, l->b - r->b};
            return LinForm{l->a + r->a, l->b + r->b};
        }
        case NodeKind::Mul: {
            auto l = linear_form(spec, n.child0, kslot, param_values);
            auto r = linear_form(spec, n.child1, kslot, param_values);
            if (!l || !r) return std::nullopt;
            if (l->a != 0 && r->a != 0) return std::nullopt;  // quadratic in k
            if (l->a == 0) return LinForm{l->b * r->a, l->b * r->b};
            return LinForm{l->a * r->b, l->b * r->b};
        }
        default:
            return std::nullopt;
    }
}

enum class FactorKind { Binom, Fib, Luc, PowInt, PowField, Sign };

struct Factor {
    FactorKind kind;
    long step = 0;      // per-k increment of the rolling index m
    long m = 0;         // current lower index / sequence index / exponent
    long u = 0;         // Binom: fixed upper index
    Integer z_cur;      // Binom / Fib / Luc / PowInt current value
    Integer z_aux;      // Fib / Luc: value at m+1
    Integer z_mult;     // PowInt: multiplier base^step
    GoldenNum g_cur;    // PowField current value
    GoldenNum g_step;   // PowField multiplier
    int sign = 1;       // Sign current value

    bool in_range() const { return m >= 0 && m <= u; }  // Binom only
};

// One recurrence step for a (value(m), value(m+1)) pair, either direction.
void seq_step(Integer& v, Integer& v1, long by) {
    for (; by > 0; --by) {
        v.swap(v1);
        v1 += v;  // (v, v1) <- (v1, v + v1)
    }
    for (; by < 0; ++by) {
        v1.swap(v);
        v -= v1;  // (v, v1) <- (v1 - v, v)
    }
}

void advance(Factor& f) {
    switch (f.kind) {
        case FactorKind::Binom: {
            const bool was_in = f.in_range();
            const long target = f.m + f.step;
            if (was_in && target >= 0 && target <= f.u) {
                while (f.m < target) {
                    f.z_cur *= f.u - f.m;
                    mpz_divexact_ui(f.z_cur.get_mpz_t(), f.z_cur.get_mpz_t(),
                                    static_cast<unsigned long>(f.m + 1));
                    ++f.m;
                }
                while (f.m > target) {
                    f.z_cur *= f.m;
                    mpz_divexact_ui(f.z_cur.get_mpz_t(), f.z_cur.get_mpz_t(),
                                    static_cast<unsigned long>(f.u - f.m + 1));
                    --f.m;
                }
            } else {
                f.m = target;
                if (f.in_range()) f.z_cur = binom(f.u, f.m);  // re-entered the support
            }
            break;
        }
        case FactorKind::Fib:
        case FactorKind::Luc:
            seq_step(f.z_cur, f.z_aux, f.step);
            f.m += f.step;
            break;
        case FactorKind::PowInt:
            f.z_cur *= f.z_mult;
            break;
        case FactorKind::PowField:
            f.g_cur = gf_mul(f.g_cur, f.g_step);
            break;
        case FactorKind::Sign:
            if (f.step % 2 != 0) f.sign = -f.sign;
            break;
    }
}

struct SumPlan {
    GoldenNum constant{1};     // product of all k-free factors
    std::vector<Factor> factors;
    bool integer_mode = false; // all factors and the constant are integers
};

// Attempts to compile the body of a Sum into stepping factors.  Returns
// nullopt when any piece falls outside the supported shapes.
std::optional<SumPlan> plan_sum(const IdentitySpec& spec, const Node& sum, long lo,
                                const std::vector<long>& param_values, Evaluator& ev) {
    const int kslot = sum.slot;
    std::vector<std::pair<int, bool>> parts;  // (node, inverted)
    std::vector<std::pair<int, bool>> work{{sum.child2, false}};
    int negations = 0;
    while (!work.empty()) {
        auto [idx, inv] = work.back();
        work.pop_back();
        const Node& n = spec.nodes[idx];
        if (n.kind == NodeKind::Mul) {
            work.emplace_back(n.child0, inv);
            work.emplace_back(n.child1, inv);
        } else if (n.kind == NodeKind::Div) {
            work.emplace_back(n.child0, inv);
            work.emplace_back(n.child1, !inv);
        } else if (n.kind == NodeKind::Neg) {
            ++negations;
            work.emplace_back(n.child0, inv);
        } else {
            parts.emplace_back(idx, inv);
        }
    }

    SumPlan plan;
    if (negations % 2 != 0) plan.constant = gf_neg(plan.constant);
    bool all_integer = true;
    const std::uint64_t kbit = 1ULL << kslot;
    for (auto [idx, inv] : parts) {
        const Node& n = spec.nodes[idx];
        if ((n.free_mask & kbit) == 0) {
            GoldenNum value = ev.eval(idx);
            if (inv) {
                if (is_zero(value)) throw EvalError("division by zero in `" +
                                                    print_expr(spec, idx) + "`");
                value = gf_inv(value);
            }
            plan.constant = gf_mul(plan.constant, value);
            continue;
        }
        Factor f{};
        switch (n.kind) {
            case NodeKind::BinomOf: {
                if (inv) return std::nullopt;
                if ((spec.nodes[n.child0].free_mask & kbit) != 0) return std::nullopt;
                const auto lin = linear_form(spec, n.child1, kslot, param_values);
                if (!lin) return std::nullopt;
                const long u = ev.eval_index(n.child0);
                if (u < 0) throw EvalError("negative binomial upper index in `" +
                                           print_expr(spec, idx) + "`");
                f.kind = FactorKind::Binom;
                f.u = u;
                f.step = lin->a;
                f.m = lin->a * lo + lin->b;
                if (f.in_range()) f.z_cur = binom(f.u, f.m);
                break;
            }
            case NodeKind::FibOf:
            case NodeKind::LucasOf: {
                if (inv) return std::nullopt;
                const auto lin = linear_form(spec, n.child0, kslot, param_values);
                if (!lin) return std::nullopt;
                f.kind = n.kind == NodeKind::FibOf ? FactorKind::Fib : FactorKind::Luc;
                f.step = lin->a;
                f.m = lin->a * lo + lin->b;
                if (f.kind == FactorKind::Fib) {
                    f.z_cur = fib(f.m);
                    f.z_aux = fib(f.m + 1);
                } else {
                    f.z_cur = lucas(f.m);
                    f.z_aux = lucas(f.m + 1);
                }
                break;
            }
            case NodeKind::SignPow: {
                const auto lin = linear_form(spec, n.child0, kslot, param_values);
                if (!lin) return std::nullopt;
                f.kind = FactorKind::Sign;
                f.step = lin->a;
                f.sign = (lin->a * lo + lin->b) % 2 != 0 ? -1 : 1;
                break;
            }
            case NodeKind::Pow: {
                if ((spec.nodes[n.child0].free_mask & kbit) != 0) return std::nullopt;
                auto lin = linear_form(spec, n.child1, kslot, param_values);
                if (!lin) return std::nullopt;
                if (inv) lin = LinForm{-lin->a, -lin->b};
                const GoldenNum base = ev.eval(n.child0);
                const long m0 = lin->a * lo + lin->b;
                if (is_zero(base)) return std::nullopt;  // degenerate; generic path
                const bool integral_base = is_integer(base);
                if (integral_base && lin->a >= 0 && m0 >= 0) {
                    f.kind = FactorKind::PowInt;
                    const Integer zb = to_integer(base);
                    f.z_mult = 1;
                    for (long i = 0; i < lin->a; ++i) f.z_mult *= zb;
                    f.z_cur = 1;
                    for (long i = 0; i < m0; ++i) f.z_cur *= zb;
                } else {
                    f.kind = FactorKind::PowField;
                    f.g_cur = gf_pow(base, m0);
                    f.g_step = gf_pow(base, lin->a);
                }
                break;
            }
            default:
                return std::nullopt;
        }
        if (f.kind == FactorKind::PowField) all_integer = false;
        plan.factors.push_back(std::move(f));
    }
    plan.integer_mode = all_integer && is_integer(plan.constant);
    return plan;
}

GoldenNum run_plan(SumPlan& plan, long lo, long hi) {
    if (plan.integer_mode) {
        const Integer c0 = to_integer(plan.constant);
        Integer acc = 0;
        Integer term;
        for (long k = lo; k <= hi; ++k) {
            bool zero = false;
            int sign = 1;
            term = c0;
            for (const Factor& f : plan.factors) {
                switch (f.kind) {
                    case FactorKind::Binom:
                        if (!f.in_range()) zero = true;
                        else term *= f.z_cur;
                        break;
                    case FactorKind::Fib:
                    case FactorKind::Luc:
                    case FactorKind::PowInt:
                        term *= f.z_cur;
                        break;
                    case FactorKind::Sign:
                        sign *= f.sign;
                        break;
                    case FactorKind::PowField:
                        break;  // unreachable in integer mode
                }
                if (zero) break;
            }
            if (!zero) {
                if (sign < 0) acc -= term;
                else acc += term;
            }
            if (k < hi)
                for (Factor& f : plan.factors) advance(f);
        }
        return GoldenNum(acc);
    }
    GoldenNum acc(0);
    for (long k = lo; k <= hi; ++k) {
        GoldenNum term = plan.constant;
        bool zero = false;
        for (const Factor& f : plan.factors) {
            switch (f.kind) {
                case FactorKind::Binom:
                    if (!f.in_range()) zero = true;
                    else term = gf_mul(term, GoldenNum(f.z_cur));
                    break;
                case FactorKind::Fib:
                case FactorKind::Luc:
                case FactorKind::PowInt:
                    term = gf_mul(term, GoldenNum(f.z_cur));
                    break;
                case FactorKind::PowField:
                    term = gf_mul(term, f.g_cur);
                    break;
                case FactorKind::Sign:
                    if (f.sign < 0) term = gf_neg(term);
                    break;
            }
            if (zero) break;
        }
        if (!zero) acc = gf_add(acc, term);
        if (k < hi)
            for (Factor& f : plan.factors) advance(f);
    }
    return acc;
}

// Evaluates an expression, summing eligible Sum nodes incrementally and
// deferring everything else to the generic evaluator.
GoldenNum eval_fast(const IdentitySpec& spec, int idx, const std::vector<long>& param_values,
                    Evaluator& ev) {
    const Node& n = spec.nodes[idx];
    switch (n.kind) {
        case NodeKind::Neg:
            return gf_neg(eval_fast(spec, n.child0, param_values, ev));
        case NodeKind::Add:
            return gf_add(eval_fast(spec, n.child0, param_values, ev),
                          eval_fast(spec, n.child1, param_values, ev));
        case NodeKind::Sub:
            return gf_sub(eval_fast(spec, n.child0, param_values, ev),
                          eval_fast(spec, n.child1, param_values, ev));
        case NodeKind::Mul:
            return gf_mul(eval_fast(spec, n.child0, param_values, ev),
                          eval_fast(spec, n.child1, param_values, ev));
        case NodeKind::Div: {
            const GoldenNum divisor = eval_fast(spec, n.child1, param_values, ev);
            if (is_zero(divisor))
                throw EvalError("division by zero in `" + print_expr(spec, idx) + "`");
            return gf_div(eval_fast(spec, n.child0, param_values, ev), divisor);
        }
        case NodeKind::Sum: {
            const long lo = ev.eval_index(n.child0);
            const long hi = ev.eval_index(n.child1);
            if (lo > hi) return GoldenNum(0);
            auto plan = plan_sum(spec, n, lo, param_values, ev);
            if (!plan) return ev.eval(idx);
            return run_plan(*plan, lo, hi);
        }
        default:
            return ev.eval(idx);
    }
}

// Pins every parameter other than n, preferring all-ones, then all-zeros,
// then single-zero variants, keeping the first assignment that satisfies
// declared domains, `require`, and case-guard exhaustiveness.
std::vector<long> pin_parameters(const IdentitySpec& spec, int n_index, long n) {
    const std::size_t count = spec.params.size();
    std::vector<std::vector<long>> candidates;
    candidates.emplace_back(count, 1);
    candidates.emplace_back(count, 0);
    for (std::size_t flip = 0; flip < count; ++flip) {
        if (static_cast<int>(flip) == n_index) continue;
        std::vector<long> v(count, 1);
        v[flip] = 0;
        candidates.push_back(std::move(v));
    }
    for (std::vector<long>& values : candidates) {
        values[static_cast<std::size_t>(n_index)] = n;
        bool ok = true;
        for (std::size_t i = 0; i < count && ok; ++i) {
            const ParamDecl& p = spec.params[i];
            if (p.lo && Integer(values[i]) < *p.lo) ok = false;
            if (p.hi && Integer(values[i]) > *p.hi) ok = false;
        }
        if (!ok) continue;
        try {
            Evaluator ev(spec, nullptr);
            ev.bind_ordered(values);
            if (!ev.require_holds()) continue;
            ev.active_rhs_case();
        } catch (const EvalError&) {
            continue;
        }
        return values;
    }
    throw std::invalid_argument("no guard-satisfying pinning of '" + spec.id +
                                "' at n=" + std::to_string(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

std::vector<BenchRecord> bench_fib(const std::vector<long>& n_values, int reps) {
    if (reps < 3) throw std::invalid_argument("bench: reps must be at least 3");
    std::vector<BenchRecord> records;
    for (const long n : n_values) {
        if (n < 0) throw std::invalid_argument("bench: sizes must be non-negative");
        BenchRecord iter = time_subject("iterative", n, reps, [n] {
            Integer a = 0, b = 1;
            for (long i = 0; i < n; ++i) {
                a.swap(b);
                b += a;  // (a, b) <- (b, a + b)
            }
            return GoldenNum(a);
        });
        BenchRecord doubling =
            time_subject("fast-doubling", n, reps, [n] { return GoldenNum(fib_nocache(n)); });
        if (iter.digest != doubling.digest)
            throw std::runtime_error("bench: strategies disagree on F(" + std::to_string(n) + ")");
        records.push_back(std::move(iter));
        records.push_back(std::move(doubling));
    }
    return records;
}

std::pair<BenchRecord, BenchRecord> bench_entry(const std::vector<CatalogEntry>& catalog,
                                                const std::string& id, long n, int reps) {
    if (reps < 3) throw std::invalid_argument("bench: reps must be at least 3");
    const CatalogEntry& e = entry(catalog, id);
    const IdentitySpec& spec = e.spec;
    const int n_index = spec.param_index("n");
    if (n_index < 0)
        throw std::invalid_argument("entry '" + id + "' has no parameter n to scale");
    const std::vector<long> values = pin_parameters(spec, n_index, n);

    BenchRecord lhs = time_subject(id + "/lhs", n, reps, [&] {
        Evaluator ev(spec, nullptr);
        ev.bind_ordered(values);
        return eval_fast(spec, spec.lhs, values, ev);
    });
    BenchRecord rhs = time_subject(id + "/rhs", n, reps, [&] {
        Evaluator ev(spec, nullptr);
        ev.bind_ordered(values);
        return ev.rhs();
    });
    if (lhs.digest != rhs.digest)
        throw std::runtime_error("bench: lhs and rhs of '" + id + "' disagree at n=" +
                                 std::to_string(n));
    return {std::move(lhs), std::move(rhs)};
}

std::string render_csv(const std::vector<BenchRecord>& records) {
    std::string out = "subject,n,reps,median_ns,digest\n";
    for (const BenchRecord& r : records) {
        char digest[17];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(r.digest));
        out += r.subject + "," + std::to_string(r.n) + "," + std::to_string(r.reps) + "," +
               std::to_string(r.median_ns) + "," + digest + "\n";
    }
    return out;
}

}  // namespace fibsum
