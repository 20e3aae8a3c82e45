#pragma once
// ============================================================================
// The identity description language: parser, canonical printer, exact
// evaluator.
//
// Grammar (UTF-8, '#' starts a line comment; '# key: value' comments with
// key in {group, source, status} are directives attached to the next block):
//
//   identity  := "identity" NAME "{" ["params" paramlist ";"]
//                ("require" guard ";")* "lhs" "=" expr ";" "rhs" "=" rhs "}"
//   paramlist := param ("," param)*
//   param     := IDENT "in" ( "int" | INT "..." | INT ".." INT )
//   rhs       := expr | "cases" "{" (guard "->" expr ";")+ "}"
//   guard     := atom ("&&" atom)*
//   atom      := "even(" expr ")" | "odd(" expr ")"
//              | expr "<=" expr | expr "==" expr
//   expr      := precedence: "+" "-" < "*" "/" < unary "-" < "^" (right-assoc)
//   primary   := INT | INT "/" INT | "sqrt5" | "alpha" | "beta" | IDENT
//              | "F(" expr ")" | "L(" expr ")" | "C(" expr "," expr ")"
//              | "(-1)^(" expr ")"
//              | "sum(" IDENT "=" expr ".." expr ";" expr ")"
//              | "fdiv(" expr "," expr ")" | "cdiv(" expr "," expr ")"
//              | "re(" expr "," expr "," expr ")"
//              | "im(" expr "," expr "," expr ")"
//
// Notes nailed down by the implementation:
//   - INT "/" INT folds to a rational literal unless the second INT is
//     immediately followed by '^' (so 3/2^n stays 3/(2^n)).
//   - NAME (the identity id) is lexed as a maximal run of [A-Za-z0-9_/.+-],
//     so ids like "G-Q/odd-n-corollary" are single tokens; parameter names
//     are ordinary identifiers.
//   - "^" binds tighter than unary minus; exponents parse at the unary level
//     (x^-2 is fine), bases must be primaries.
//   - A missing params clause declares no parameters.
//   - (-1)^(e) is a dedicated node defined for any integer e, either sign.
//
// Evaluation is exact over Q(sqrt5).  Index positions (F/L/C arguments, sum
// bounds, exponents, fdiv/cdiv and parity operands) must come out integer;
// anything else is an EvalError naming the offending subexpression.  A sum
// with lo > hi is 0, matching the out-of-range binomial convention.
// ============================================================================

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fibsum/golden.hpp"

namespace fibsum {

enum class NodeKind : std::uint8_t {
    IntLit,
    RatLit,
    Param,
    Sqrt5,
    Alpha,
    Beta,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,       // child0 ^ child1
    SignPow,   // (-1)^(child0)
    FibOf,     // F(child0)
    LucasOf,   // L(child0)
    BinomOf,   // C(child0, child1)
    Sum,       // sum(name = child0 .. child1; child2)
    FloorDiv,  // fdiv(child0, child1), floor toward -inf
    CeilDiv,   // cdiv(child0, child1), ceiling toward +inf
    RePow,     // re(child0, child1, child2)
    ImPow,     // im(child0, child1, child2)
};

// One AST node.  A whole identity shares a single arena (IdentitySpec::nodes)
// and children are indices into it; -1 means absent.
struct Node {
    NodeKind kind;
    int child0 = -1;
    int child1 = -1;
    int child2 = -1;
    Integer int_value;         // IntLit
    Rat rat_value;             // RatLit
    std::string name;          // Param name or Sum variable
    int slot = -1;             // resolved variable slot (Param, Sum binder)
    std::uint64_t free_mask = 0;  // variable slots this subtree reads
    bool cacheable = false;       // memoized across bindings by the evaluator
    GoldenNum lit_value;          // prebuilt value for literal kinds
    int line = 0, col = 0;
};

enum class GuardOp : std::uint8_t { Even, Odd, Eq, Le };

struct GuardAtom {
    GuardOp op;
    int lhs = -1;
    int rhs = -1;  // Eq/Le only
};

// A conjunction of atoms.
using Guard = std::vector<GuardAtom>;

struct RhsCase {
    Guard guard;  // empty = unconditional (single-expression rhs)
    int expr = -1;
};

struct ParamDecl {
    std::string name;
    std::optional<Integer> lo, hi;  // "int": neither; "INT...": lo only
};

struct IdentitySpec {
    std::string id;
    std::vector<ParamDecl> params;
    std::vector<Guard> require;
    int lhs = -1;
    std::vector<RhsCase> rhs;   // one unguarded case when rhs_is_cases is false
    bool rhs_is_cases = false;
    std::vector<Node> nodes;
    int sum_depth = 0;  // deepest Sum nesting; sum slots sit above the params

    int param_index(const std::string& name) const;
    int slot_count() const { return static_cast<int>(params.size()) + sum_depth; }
};

// Parameter valuation, by name.  Covers all declared params of the spec it is
// used with.
struct Binding {
    std::vector<std::pair<std::string, long>> values;

    void set(const std::string& name, long v);
    std::optional<long> get(const std::string& name) const;
    std::string render() const;  // "n=2, s=0"
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int col)
        : std::runtime_error(std::move(message)), line(line), col(col) {}
    int line, col;
};

class EvalError : public std::runtime_error {
public:
    explicit EvalError(std::string message) : std::runtime_error(std::move(message)) {}
};

// --- Parsing -----------------------------------------------------------

// Parses exactly one identity block.
IdentitySpec parse_identity(const std::string& text);

// Parses a whole catalog file: any number of identity blocks with their
// attached '# key: value' directives.  Diagnostics are prefixed with
// filename:line:col.
struct ParsedBlock {
    IdentitySpec spec;
    std::string group;   // empty when the directive is absent
    std::string source;
    std::string status;
    int line = 0;  // line of the "identity" keyword
};
std::vector<ParsedBlock> parse_identity_file(const std::string& text, const std::string& filename);

// --- Printing ----------------------------------------------------------

// Canonical rendering; parse_identity(print_identity(s)) is structurally
// equal to s.
std::string print_identity(const IdentitySpec& spec);

// Canonical rendering of one subexpression (diagnostics, reports).
std::string print_expr(const IdentitySpec& spec, int expr);
std::string print_guard(const IdentitySpec& spec, const Guard& guard);

bool expr_equal(const IdentitySpec& spec, int lhs, int rhs);

// Structural equality of two independently parsed specs (round-trip checks).
bool spec_equal(const IdentitySpec& a, const IdentitySpec& b);

// --- Evaluation --------------------------------------------------------

// Cross-binding memo for subexpressions that depend on a strict subset of the
// parameters (keyed by node and the values of its free variables).  One cache
// serves one IdentitySpec; reuse across bindings is the point.
class EvalCache {
public:
    struct Key {
        int node = -1;
        int count = 0;
        std::array<long, 8> args{};
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    GoldenNum* find(const Key& k);
    void insert(const Key& k, const GoldenNum& v);

private:
    static constexpr std::size_t kMaxEntries = 1u << 21;
    std::unordered_map<Key, GoldenNum, KeyHash> map_;
};

// Bound evaluator over one spec; reusable across bindings (that is the hot
// verification loop).  Throws EvalError on contract violations.
class Evaluator {
public:
    explicit Evaluator(const IdentitySpec& spec, EvalCache* cache = nullptr);

    // Validates that env covers every declared parameter.
    void bind(const Binding& env);
    // Fast path: values in declaration order.
    void bind_ordered(const std::vector<long>& values);

    GoldenNum eval(int expr);
    long eval_index(int expr);
    bool guard_holds(const Guard& guard);
    bool require_holds();

    // Index of the unique active rhs case; throws EvalError when zero or
    // several guards hold.
    int active_rhs_case();

    GoldenNum lhs();
    GoldenNum rhs();

private:
    const IdentitySpec& spec_;
    EvalCache* cache_;
    std::vector<long> slots_;

    GoldenNum eval_node(int idx);
    GoldenNum eval_uncached(const Node& n);
    bool eval_int_fast(int idx, long& out);  // native fast path, false on spill
    long eval_int(int idx);
    [[noreturn]] void fail(const Node& n, const std::string& what) const;
};

// Spec-shaped one-shot helpers.
GoldenNum eval_expr(const IdentitySpec& spec, int expr, const Binding& env,
                    EvalCache* cache = nullptr);
GoldenNum eval_lhs(const IdentitySpec& spec, const Binding& env, EvalCache* cache = nullptr);
GoldenNum eval_rhs(const IdentitySpec& spec, const Binding& env, EvalCache* cache = nullptr);

}  // namespace fibsum
