#include <climits>
#include <string>

#include "fibsum/dsl.hpp"
#include "fibsum/gauss.hpp"

namespace fibsum {

// ---------------------------------------------------------------------------
// EvalCache
// ---------------------------------------------------------------------------

std::size_t EvalCache::KeyHash::operator()(const Key& k) const {
    // FNV-1a over the used portion of the key.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(k.node));
    mix(static_cast<std::uint64_t>(k.count));
    for (int i = 0; i < k.count; ++i) mix(static_cast<std::uint64_t>(k.args[i]));
    return static_cast<std::size_t>(h);
}

GoldenNum* EvalCache::find(const Key& k) {
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
}

void EvalCache::insert(const Key& k, const GoldenNum& v) {
    if (map_.size() >= kMaxEntries) return;
    map_.emplace(k, v);
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

Evaluator::Evaluator(const IdentitySpec& spec, EvalCache* cache)
    : spec_(spec), cache_(cache), slots_(static_cast<std::size_t>(spec.slot_count()), 0) {}

void Evaluator::bind(const Binding& env) {
    for (std::size_t i = 0; i < spec_.params.size(); ++i) {
        std::optional<long> v = env.get(spec_.params[i].name);
        if (!v) throw EvalError("binding missing parameter '" + spec_.params[i].name + "'");
        slots_[i] = *v;
    }
}

void Evaluator::bind_ordered(const std::vector<long>& values) {
    if (values.size() != spec_.params.size())
        throw EvalError("binding has " + std::to_string(values.size()) + " values for " +
                        std::to_string(spec_.params.size()) + " parameters");
    for (std::size_t i = 0; i < values.size(); ++i) slots_[i] = values[i];
}

void Evaluator::fail(const Node& n, const std::string& what) const {
    const int idx = static_cast<int>(&n - spec_.nodes.data());
    throw EvalError(what + " in `" + print_expr(spec_, idx) + "`");
}

namespace {

long floordiv(long a, long b) {
    long q = a / b;
    const long r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

long ceildiv(long a, long b) {
    long q = a / b;
    const long r = a % b;
    if (r != 0 && ((r < 0) == (b < 0))) ++q;
    return q;
}

}  // namespace

// Native fast path for index arithmetic: almost every index/exponent/bound in
// the catalog is a small linear form in the parameters, so avoid building
// rationals for them.  Returns false when the subtree needs field evaluation.
bool Evaluator::eval_int_fast(int idx, long& out) {
    const Node& n = spec_.nodes[idx];
    switch (n.kind) {
        case NodeKind::IntLit:
            if (!n.int_value.fits_slong_p()) fail(n, "index out of machine range");
            out = n.int_value.get_si();
            return true;
        case NodeKind::Param:
            out = slots_[static_cast<std::size_t>(n.slot)];
            return true;
        case NodeKind::Neg: {
            long v;
            if (!eval_int_fast(n.child0, v)) return false;
            if (v == LONG_MIN) fail(n, "index out of machine range");
            out = -v;
            return true;
        }
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul: {
            long a, b;
            if (!eval_int_fast(n.child0, a) || !eval_int_fast(n.child1, b)) return false;
            bool overflow = false;
            switch (n.kind) {
                case NodeKind::Add: overflow = __builtin_saddl_overflow(a, b, &out); break;
                case NodeKind::Sub: overflow = __builtin_ssubl_overflow(a, b, &out); break;
                default: overflow = __builtin_smull_overflow(a, b, &out); break;
            }
            if (overflow) fail(n, "index out of machine range");
            return true;
        }
        case NodeKind::FloorDiv:
        case NodeKind::CeilDiv: {
            long a, b;
            if (!eval_int_fast(n.child0, a) || !eval_int_fast(n.child1, b)) return false;
            if (b == 0) fail(n, "division by zero");
            out = n.kind == NodeKind::FloorDiv ? floordiv(a, b) : ceildiv(a, b);
            return true;
        }
        case NodeKind::SignPow: {
            long e;
            if (!eval_int_fast(n.child0, e)) return false;
            out = (e % 2 != 0) ? -1 : 1;
            return true;
        }
        default:
            return false;
    }
}

long Evaluator::eval_index(int expr) { return eval_int(expr); }

long Evaluator::eval_int(int idx) {
    long fast;
    if (eval_int_fast(idx, fast)) return fast;
    const GoldenNum value = eval_node(idx);
    const Node& n = spec_.nodes[idx];
    if (!is_integer(value))
        fail(n, "non-integer value " + render(value) + " in index position");
    const Integer v = value.a.get_num();
    if (!v.fits_slong_p()) fail(n, "index out of machine range");
    return v.get_si();
}

GoldenNum Evaluator::eval_node(int idx) {
    const Node& n = spec_.nodes[idx];
    if (n.cacheable && cache_ != nullptr) {
        EvalCache::Key key;
        key.node = idx;
        std::uint64_t mask = n.free_mask;
        while (mask != 0) {
            const int slot = __builtin_ctzll(mask);
            mask &= mask - 1;
            key.args[key.count++] = slots_[static_cast<std::size_t>(slot)];
        }
        if (GoldenNum* hit = cache_->find(key)) return *hit;
        GoldenNum value = eval_uncached(n);
        cache_->insert(key, value);
        return value;
    }
    return eval_uncached(n);
}

GoldenNum Evaluator::eval_uncached(const Node& n) {
    switch (n.kind) {
        case NodeKind::IntLit:
        case NodeKind::RatLit:
        case NodeKind::Sqrt5:
        case NodeKind::Alpha:
        case NodeKind::Beta:
            return n.lit_value;
        case NodeKind::Param:
            return GoldenNum(slots_[static_cast<std::size_t>(n.slot)]);
        case NodeKind::Neg:
            return gf_neg(eval_node(n.child0));
        case NodeKind::Add:
            return gf_add(eval_node(n.child0), eval_node(n.child1));
        case NodeKind::Sub:
            return gf_sub(eval_node(n.child0), eval_node(n.child1));
        case NodeKind::Mul:
            return gf_mul(eval_node(n.child0), eval_node(n.child1));
        case NodeKind::Div: {
            const GoldenNum divisor = eval_node(n.child1);
            if (is_zero(divisor)) fail(n, "division by zero");
            return gf_div(eval_node(n.child0), divisor);
        }
        case NodeKind::Pow: {
            const long e = eval_int(n.child1);
            // alpha^e and beta^e come from one Fibonacci/Lucas pass instead of
            // repeated squaring: alpha^e = (L(e) + F(e) sqrt5)/2, beta = conj.
            const NodeKind base_kind = spec_.nodes[n.child0].kind;
            if (base_kind == NodeKind::Alpha) return alpha_pow(e);
            if (base_kind == NodeKind::Beta) return gf_conj(alpha_pow(e));
            const GoldenNum base = eval_node(n.child0);
            if (is_zero(base) && e < 0) fail(n, "zero base with negative exponent");
            return gf_pow(base, e);
        }
        case NodeKind::SignPow: {
            const long e = eval_int(n.child0);
            return GoldenNum(e % 2 != 0 ? -1 : 1);
        }
        case NodeKind::FibOf:
            return GoldenNum(fib(eval_int(n.child0)));
        case NodeKind::LucasOf:
            return GoldenNum(lucas(eval_int(n.child0)));
        case NodeKind::BinomOf: {
            const long upper = eval_int(n.child0);
            if (upper < 0) fail(n, "negative binomial upper index");
            return GoldenNum(binom(upper, eval_int(n.child1)));
        }
        case NodeKind::FloorDiv: {
            const long b = eval_int(n.child1);
            if (b == 0) fail(n, "division by zero");
            return GoldenNum(floordiv(eval_int(n.child0), b));
        }
        case NodeKind::CeilDiv: {
            const long b = eval_int(n.child1);
            if (b == 0) fail(n, "division by zero");
            return GoldenNum(ceildiv(eval_int(n.child0), b));
        }
        case NodeKind::RePow:
        case NodeKind::ImPow: {
            const long m = eval_int(n.child2);
            if (m < 0) fail(n, "negative exponent");
            auto [re, im] = re_im_pow(eval_node(n.child0), eval_node(n.child1), m);
            return n.kind == NodeKind::RePow ? re : im;
        }
        case NodeKind::Sum: {
            const long lo = eval_int(n.child0);
            const long hi = eval_int(n.child1);
            GoldenNum acc(0);
            long& var = slots_[static_cast<std::size_t>(n.slot)];
            for (long v = lo; v <= hi; ++v) {
                var = v;
                acc = gf_add(acc, eval_node(n.child2));
            }
            return acc;  // empty range (lo > hi) stays 0
        }
    }
    throw EvalError("unreachable node kind");
}

GoldenNum Evaluator::eval(int expr) { return eval_node(expr); }

bool Evaluator::guard_holds(const Guard& guard) {
    for (const GuardAtom& a : guard) {
        switch (a.op) {
            case GuardOp::Even:
                if (eval_int(a.lhs) % 2 != 0) return false;
                break;
            case GuardOp::Odd:
                if (eval_int(a.lhs) % 2 == 0) return false;
                break;
            case GuardOp::Eq:
                if (!(eval_node(a.lhs) == eval_node(a.rhs))) return false;
                break;
            case GuardOp::Le:
                if (gf_sign(gf_sub(eval_node(a.lhs), eval_node(a.rhs))) > 0) return false;
                break;
        }
    }
    return true;
}

bool Evaluator::require_holds() {
    for (const Guard& g : spec_.require)
        if (!guard_holds(g)) return false;
    return true;
}

int Evaluator::active_rhs_case() {
    if (!spec_.rhs_is_cases) return 0;
    int active = -1;
    for (std::size_t i = 0; i < spec_.rhs.size(); ++i) {
        if (!guard_holds(spec_.rhs[i].guard)) continue;
        if (active >= 0)
            throw EvalError("rhs cases " + std::to_string(active) + " and " + std::to_string(i) +
                            " both hold (guards not mutually exclusive)");
        active = static_cast<int>(i);
    }
    if (active < 0) throw EvalError("no rhs case holds (guards not exhaustive)");
    return active;
}

GoldenNum Evaluator::lhs() { return eval_node(spec_.lhs); }

GoldenNum Evaluator::rhs() { return eval_node(spec_.rhs[static_cast<std::size_t>(active_rhs_case())].expr); }

// ---------------------------------------------------------------------------
// One-shot helpers
// ---------------------------------------------------------------------------

GoldenNum eval_expr(const IdentitySpec& spec, int expr, const Binding& env, EvalCache* cache) {
    Evaluator ev(spec, cache);
    ev.bind(env);
    return ev.eval(expr);
}

GoldenNum eval_lhs(const IdentitySpec& spec, const Binding& env, EvalCache* cache) {
    Evaluator ev(spec, cache);
    ev.bind(env);
    return ev.lhs();
}

GoldenNum eval_rhs(const IdentitySpec& spec, const Binding& env, EvalCache* cache) {
    Evaluator ev(spec, cache);
    ev.bind(env);
    return ev.rhs();
}

}  // namespace fibsum
