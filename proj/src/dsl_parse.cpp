#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "fibsum/dsl.hpp"

namespace fibsum {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok : std::uint8_t {
    Ident,      // ordinary identifier / keyword
    Name,       // identity id, lexed in name-mode right after "identity"
    Int,        // digit run
    Directive,  // "# key: value" comment, key in {group, source, status}
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Assign,
    Arrow,
    AndAnd,
    Le,
    EqEq,
    DotDot,
    DotDotDot,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
};

struct Token {
    Tok kind;
    std::string text;   // Ident/Name/Int text, Directive key
    std::string value;  // Directive value
    int line = 1, col = 1;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Name: return "name";
        case Tok::Int: return "integer";
        case Tok::Directive: return "directive";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Assign: return "'='";
        case Tok::Arrow: return "'->'";
        case Tok::AndAnd: return "'&&'";
        case Tok::Le: return "'<='";
        case Tok::EqEq: return "'=='";
        case Tok::DotDot: return "'..'";
        case Tok::DotDotDot: return "'...'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::string token_shown(const Token& t) {
    if (t.kind == Tok::Ident || t.kind == Tok::Name || t.kind == Tok::Int)
        return "'" + t.text + "'";
    return describe(t.kind);
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' || c == '.' ||
           c == '+' || c == '-';
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool name_mode = false;  // the token right after "identity" is the id

    auto push = [&](Tok k, std::string t, int l, int c) {
        out.push_back(Token{k, std::move(t), "", l, c});
    };
    auto bump = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };

    while (i < n) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump(c);
            ++i;
            continue;
        }
        if (c == '#') {
            const int l = line, cl = col;
            std::size_t j = i;
            while (j < n && text[j] != '\n') ++j;
            std::string body = text.substr(i + 1, j - i - 1);
            // Directive comments look like "# key: value".
            std::string trimmed = trim(body);
            std::size_t colon = trimmed.find(':');
            if (colon != std::string::npos) {
                std::string key = trim(trimmed.substr(0, colon));
                if (key == "group" || key == "source" || key == "status") {
                    Token t{Tok::Directive, key, trim(trimmed.substr(colon + 1)), l, cl};
                    out.push_back(std::move(t));
                }
            }
            while (i < j) {
                bump(text[i]);
                ++i;
            }
            continue;
        }

        const int l = line, cl = col;
        if (name_mode && is_name_char(c)) {
            std::size_t j = i;
            while (j < n && is_name_char(text[j])) ++j;
            push(Tok::Name, text.substr(i, j - i), l, cl);
            while (i < j) {
                bump(text[i]);
                ++i;
            }
            name_mode = false;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            if (word == "identity") name_mode = true;
            push(Tok::Ident, std::move(word), l, cl);
            while (i < j) {
                bump(text[i]);
                ++i;
            }
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            push(Tok::Int, text.substr(i, j - i), l, cl);
            while (i < j) {
                bump(text[i]);
                ++i;
            }
            continue;
        }

        auto two = [&](char a, char b) { return c == a && i + 1 < n && text[i + 1] == b; };
        if (two('-', '>')) { push(Tok::Arrow, "->", l, cl); bump(c); bump('>'); i += 2; continue; }
        if (two('&', '&')) { push(Tok::AndAnd, "&&", l, cl); bump(c); bump('&'); i += 2; continue; }
        if (two('<', '=')) { push(Tok::Le, "<=", l, cl); bump(c); bump('='); i += 2; continue; }
        if (two('=', '=')) { push(Tok::EqEq, "==", l, cl); bump(c); bump('='); i += 2; continue; }
        if (c == '.') {
            if (i + 2 < n && text[i + 1] == '.' && text[i + 2] == '.') {
                push(Tok::DotDotDot, "...", l, cl);
                bump('.'); bump('.'); bump('.');
                i += 3;
                continue;
            }
            if (i + 1 < n && text[i + 1] == '.') {
                push(Tok::DotDot, "..", l, cl);
                bump('.'); bump('.');
                i += 2;
                continue;
            }
            throw ParseError("stray '.' (expected '..' or '...')", l, cl);
        }
        Tok k;
        switch (c) {
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            case ';': k = Tok::Semi; break;
            case '=': k = Tok::Assign; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
        push(k, std::string(1, c), l, cl);
        bump(c);
        ++i;
    }
    out.push_back(Token{Tok::End, "", "", line, col});
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

const std::unordered_set<std::string>& reserved_words() {
    static const std::unordered_set<std::string> words{
        "identity", "params", "require", "lhs",  "rhs",  "cases", "in",    "int",
        "sum",      "fdiv",   "cdiv",    "re",   "im",   "even",  "odd",
        "sqrt5",    "alpha",  "beta",    "F",    "L",    "C",
    };
    return words;
}

class Parser {
public:
    explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

    bool at_end() const { return peek().kind == Tok::End; }

    // Collects directives until the next identity block (or end).
    void take_directives(std::string& group, std::string& source, std::string& status) {
        while (peek().kind == Tok::Directive) {
            const Token& t = advance();
            std::string& slot = t.text == "group" ? group : t.text == "source" ? source : status;
            if (!slot.empty())
                throw ParseError("duplicate '" + t.text + "' directive", t.line, t.col);
            slot = t.value;
        }
    }

    IdentitySpec parse_block(int* block_line) {
        spec_ = IdentitySpec{};
        const Token& kw = expect_keyword("identity");
        if (block_line) *block_line = kw.line;
        spec_.id = expect(Tok::Name, "identity name").text;
        expect(Tok::LBrace, "'{'");
        if (is_keyword("params")) {
            advance();
            parse_params();
            expect(Tok::Semi, "';'");
        }
        while (is_keyword("require")) {
            advance();
            spec_.require.push_back(parse_guard());
            expect(Tok::Semi, "';'");
        }
        expect_keyword("lhs");
        expect(Tok::Assign, "'='");
        spec_.lhs = parse_expr();
        expect(Tok::Semi, "';'");
        expect_keyword("rhs");
        expect(Tok::Assign, "'='");
        if (is_keyword("cases")) {
            advance();
            spec_.rhs_is_cases = true;
            expect(Tok::LBrace, "'{'");
            do {
                RhsCase c;
                c.guard = parse_guard();
                expect(Tok::Arrow, "'->'");
                c.expr = parse_expr();
                expect(Tok::Semi, "';'");
                spec_.rhs.push_back(std::move(c));
            } while (peek().kind != Tok::RBrace);
            expect(Tok::RBrace, "'}'");
        } else {
            RhsCase c;
            c.expr = parse_expr();
            spec_.rhs.push_back(std::move(c));
        }
        expect(Tok::RBrace, "'}'");
        resolve();
        return std::move(spec_);
    }

private:
    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
    IdentitySpec spec_;
    int expr_depth_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail_at(const Token& t, const std::string& expected) const {
        throw ParseError("expected " + expected + ", got " + token_shown(t), t.line, t.col);
    }
    const Token& expect(Tok k, const char* expected) {
        if (peek().kind != k) fail_at(peek(), expected);
        return advance();
    }
    bool is_keyword(const char* word, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Ident && t.text == word;
    }
    const Token& expect_keyword(const char* word) {
        if (!is_keyword(word)) fail_at(peek(), std::string("'") + word + "'");
        return advance();
    }

    int new_node(NodeKind k, const Token& at) {
        Node n;
        n.kind = k;
        n.line = at.line;
        n.col = at.col;
        spec_.nodes.push_back(std::move(n));
        return static_cast<int>(spec_.nodes.size()) - 1;
    }

    Integer parse_bound_int() {
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            neg = true;
            advance();
        }
        const Token& t = expect(Tok::Int, "integer");
        Integer v(t.text);
        return neg ? Integer(-v) : v;
    }

    void parse_params() {
        while (true) {
            const Token& name = expect(Tok::Ident, "parameter name");
            if (reserved_words().count(name.text))
                throw ParseError("'" + name.text + "' is reserved and cannot name a parameter",
                                 name.line, name.col);
            for (const ParamDecl& p : spec_.params)
                if (p.name == name.text)
                    throw ParseError("duplicate parameter '" + name.text + "'", name.line,
                                     name.col);
            expect_keyword("in");
            ParamDecl decl;
            decl.name = name.text;
            if (is_keyword("int")) {
                advance();
            } else {
                const Token& at = peek();
                decl.lo = parse_bound_int();
                if (peek().kind == Tok::DotDotDot) {
                    advance();
                } else if (peek().kind == Tok::DotDot) {
                    advance();
                    decl.hi = parse_bound_int();
                    if (*decl.lo > *decl.hi)
                        throw ParseError("empty parameter domain for '" + decl.name + "'", at.line,
                                         at.col);
                } else {
                    fail_at(peek(), "'..' or '...'");
                }
            }
            spec_.params.push_back(std::move(decl));
            if (peek().kind != Tok::Comma) break;
            advance();
        }
        if (spec_.params.size() > 48)
            throw ParseError("too many parameters", peek().line, peek().col);
    }

    Guard parse_guard() {
        Guard g;
        g.push_back(parse_guard_atom());
        while (peek().kind == Tok::AndAnd) {
            advance();
            g.push_back(parse_guard_atom());
        }
        return g;
    }

    GuardAtom parse_guard_atom() {
        GuardAtom a;
        if ((is_keyword("even") || is_keyword("odd")) && peek(1).kind == Tok::LParen) {
            a.op = is_keyword("even") ? GuardOp::Even : GuardOp::Odd;
            advance();
            advance();
            a.lhs = parse_expr();
            expect(Tok::RParen, "')'");
            return a;
        }
        a.lhs = parse_expr();
        if (peek().kind == Tok::Le) {
            a.op = GuardOp::Le;
        } else if (peek().kind == Tok::EqEq) {
            a.op = GuardOp::Eq;
        } else {
            fail_at(peek(), "'<=' or '=='");
        }
        advance();
        a.rhs = parse_expr();
        return a;
    }

    struct DepthGuard {
        int& d;
        explicit DepthGuard(int& depth, const Token& at) : d(depth) {
            if (++d > 200) throw ParseError("expression nests too deeply", at.line, at.col);
        }
        ~DepthGuard() { --d; }
    };

    int parse_expr() { return parse_add(); }

    int parse_add() {
        DepthGuard guard(expr_depth_, peek());
        int lhs = parse_mul();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = advance();
            int rhs = parse_mul();
            int n = new_node(op.kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub, op);
            spec_.nodes[n].child0 = lhs;
            spec_.nodes[n].child1 = rhs;
            lhs = n;
        }
        return lhs;
    }

    int parse_mul() {
        int lhs = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& op = advance();
            int rhs = parse_unary();
            int n = new_node(op.kind == Tok::Star ? NodeKind::Mul : NodeKind::Div, op);
            spec_.nodes[n].child0 = lhs;
            spec_.nodes[n].child1 = rhs;
            lhs = n;
        }
        return lhs;
    }

    int parse_unary() {
        DepthGuard guard(expr_depth_, peek());
        if (peek().kind == Tok::Minus) {
            const Token& op = advance();
            int operand = parse_unary();
            int n = new_node(NodeKind::Neg, op);
            spec_.nodes[n].child0 = operand;
            return n;
        }
        return parse_power();
    }

    int parse_power() {
        int base = parse_primary();
        if (peek().kind == Tok::Caret) {
            const Token& op = advance();
            int exponent = parse_unary();  // right-assoc; exponents may be negated
            int n = new_node(NodeKind::Pow, op);
            spec_.nodes[n].child0 = base;
            spec_.nodes[n].child1 = exponent;
            return n;
        }
        return base;
    }

    int call_args(NodeKind kind, int arity, const Token& at) {
        expect(Tok::LParen, "'('");
        int c0 = parse_expr();
        int c1 = -1, c2 = -1;
        if (arity >= 2) {
            expect(Tok::Comma, "','");
            c1 = parse_expr();
        }
        if (arity >= 3) {
            expect(Tok::Comma, "','");
            c2 = parse_expr();
        }
        expect(Tok::RParen, "')'");
        int n = new_node(kind, at);
        spec_.nodes[n].child0 = c0;
        spec_.nodes[n].child1 = c1;
        spec_.nodes[n].child2 = c2;
        return n;
    }

    int parse_primary() {
        DepthGuard guard(expr_depth_, peek());
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            // INT "/" INT is a rational literal unless the denominator is
            // immediately powered (3/2^n must stay 3/(2^n)).
            if (peek(1).kind == Tok::Slash && peek(2).kind == Tok::Int &&
                peek(3).kind != Tok::Caret) {
                const Token& num = advance();
                advance();
                const Token& den = advance();
                if (den.text.find_first_not_of('0') == std::string::npos)
                    throw ParseError("zero denominator in rational literal", den.line, den.col);
                int n = new_node(NodeKind::RatLit, num);
                spec_.nodes[n].rat_value = make_rat(Integer(num.text), Integer(den.text));
                return n;
            }
            advance();
            int n = new_node(NodeKind::IntLit, t);
            spec_.nodes[n].int_value = Integer(t.text);
            return n;
        }
        if (t.kind == Tok::LParen) {
            // "(-1)^(" starts the dedicated sign-power form.
            if (peek(1).kind == Tok::Minus && peek(2).kind == Tok::Int && peek(2).text == "1" &&
                peek(3).kind == Tok::RParen && peek(4).kind == Tok::Caret &&
                peek(5).kind == Tok::LParen) {
                advance();  // (
                advance();  // -
                advance();  // 1
                advance();  // )
                advance();  // ^
                advance();  // (
                int e = parse_expr();
                expect(Tok::RParen, "')'");
                int n = new_node(NodeKind::SignPow, t);
                spec_.nodes[n].child0 = e;
                return n;
            }
            advance();
            int inner = parse_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "sqrt5") { advance(); return new_node(NodeKind::Sqrt5, t); }
            if (t.text == "alpha") { advance(); return new_node(NodeKind::Alpha, t); }
            if (t.text == "beta") { advance(); return new_node(NodeKind::Beta, t); }
            if (t.text == "F") { advance(); return call_args(NodeKind::FibOf, 1, t); }
            if (t.text == "L") { advance(); return call_args(NodeKind::LucasOf, 1, t); }
            if (t.text == "C") { advance(); return call_args(NodeKind::BinomOf, 2, t); }
            if (t.text == "fdiv") { advance(); return call_args(NodeKind::FloorDiv, 2, t); }
            if (t.text == "cdiv") { advance(); return call_args(NodeKind::CeilDiv, 2, t); }
            if (t.text == "re") { advance(); return call_args(NodeKind::RePow, 3, t); }
            if (t.text == "im") { advance(); return call_args(NodeKind::ImPow, 3, t); }
            if (t.text == "sum") {
                advance();
                expect(Tok::LParen, "'('");
                const Token& var = expect(Tok::Ident, "summation variable");
                if (reserved_words().count(var.text))
                    throw ParseError("'" + var.text + "' is reserved and cannot name a variable",
                                     var.line, var.col);
                expect(Tok::Assign, "'='");
                int lo = parse_expr();
                expect(Tok::DotDot, "'..'");
                int hi = parse_expr();
                expect(Tok::Semi, "';'");
                int body = parse_expr();
                expect(Tok::RParen, "')'");
                int n = new_node(NodeKind::Sum, t);
                spec_.nodes[n].name = var.text;
                spec_.nodes[n].child0 = lo;
                spec_.nodes[n].child1 = hi;
                spec_.nodes[n].child2 = body;
                return n;
            }
            if (reserved_words().count(t.text))
                fail_at(t, "an expression (INT, INT/INT, sqrt5, alpha, beta, parameter, F(), "
                           "L(), C(), (-1)^(), sum(), fdiv(), cdiv(), re(), im(), or '(')");
            advance();
            int n = new_node(NodeKind::Param, t);
            spec_.nodes[n].name = t.text;
            return n;
        }
        fail_at(t, "an expression (INT, INT/INT, sqrt5, alpha, beta, parameter, F(), L(), C(), "
                   "(-1)^(), sum(), fdiv(), cdiv(), re(), im(), or '(')");
    }

    // --- Resolution ------------------------------------------------------

    struct ScopeVar {
        std::string name;
        int slot;
    };

    std::uint64_t resolve_expr(int idx, std::vector<ScopeVar>& scope, int depth) {
        Node& n = spec_.nodes[idx];
        std::uint64_t mask = 0;
        switch (n.kind) {
            case NodeKind::IntLit:
                n.lit_value = GoldenNum(Rat(n.int_value));
                break;
            case NodeKind::RatLit:
                n.lit_value = GoldenNum(n.rat_value);
                break;
            case NodeKind::Sqrt5:
                n.lit_value = golden_sqrt5();
                break;
            case NodeKind::Alpha:
                n.lit_value = golden_alpha();
                break;
            case NodeKind::Beta:
                n.lit_value = golden_beta();
                break;
            case NodeKind::Param: {
                for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
                    if (it->name == n.name) {
                        n.slot = it->slot;
                        break;
                    }
                }
                if (n.slot < 0)
                    throw ParseError("unbound variable '" + n.name + "'", n.line, n.col);
                mask |= 1ULL << n.slot;
                break;
            }
            case NodeKind::Sum: {
                mask |= resolve_expr(n.child0, scope, depth);
                mask |= resolve_expr(n.child1, scope, depth);
                const int slot = static_cast<int>(spec_.params.size()) + depth;
                if (slot >= 48)
                    throw ParseError("sums nest too deeply", n.line, n.col);
                spec_.sum_depth = std::max(spec_.sum_depth, depth + 1);
                scope.push_back({spec_.nodes[idx].name, slot});
                std::uint64_t body = resolve_expr(spec_.nodes[idx].child2, scope, depth + 1);
                scope.pop_back();
                spec_.nodes[idx].slot = slot;
                mask |= body & ~(1ULL << slot);
                break;
            }
            default:
                if (n.child0 >= 0) mask |= resolve_expr(n.child0, scope, depth);
                if (spec_.nodes[idx].child1 >= 0)
                    mask |= resolve_expr(spec_.nodes[idx].child1, scope, depth);
                if (spec_.nodes[idx].child2 >= 0)
                    mask |= resolve_expr(spec_.nodes[idx].child2, scope, depth);
                break;
        }
        Node& done = spec_.nodes[idx];
        done.free_mask = mask;
        const std::size_t nparams = spec_.params.size();
        switch (done.kind) {
            case NodeKind::Sum:
            case NodeKind::RePow:
            case NodeKind::ImPow:
            case NodeKind::Pow: {
                const std::uint64_t param_mask =
                    nparams >= 64 ? ~0ULL : ((1ULL << nparams) - 1ULL);
                const int param_free = __builtin_popcountll(mask & param_mask);
                done.cacheable = nparams > 0 &&
                                 param_free < static_cast<int>(nparams) &&
                                 __builtin_popcountll(mask) <= 8;
                break;
            }
            default:
                break;
        }
        return mask;
    }

    void resolve_guard(Guard& g, std::vector<ScopeVar>& scope) {
        for (GuardAtom& a : g) {
            resolve_expr(a.lhs, scope, 0);
            if (a.rhs >= 0) resolve_expr(a.rhs, scope, 0);
        }
    }

    void resolve() {
        std::vector<ScopeVar> scope;
        for (std::size_t i = 0; i < spec_.params.size(); ++i)
            scope.push_back({spec_.params[i].name, static_cast<int>(i)});
        for (Guard& g : spec_.require) resolve_guard(g, scope);
        resolve_expr(spec_.lhs, scope, 0);
        for (RhsCase& c : spec_.rhs) {
            resolve_guard(c.guard, scope);
            resolve_expr(c.expr, scope, 0);
        }
        if (spec_.rhs_is_cases) check_exhaustive();
    }

    // --- Syntactic exhaustiveness / exclusivity of rhs cases --------------
    //
    // Provable shapes: a lone constant-true guard, or a tree of even/odd
    // splits on structurally identical expressions.  Anything else is
    // rejected here; the evaluator additionally insists at run time that
    // exactly one case fires.

    [[noreturn]] void cases_error(const std::string& why) {
        const Node& n = spec_.nodes[spec_.rhs.front().expr];
        throw ParseError("rhs cases: " + why, n.line, n.col);
    }

    bool atom_constant_true(const GuardAtom& a) {
        const std::uint64_t m = spec_.nodes[a.lhs].free_mask |
                                (a.rhs >= 0 ? spec_.nodes[a.rhs].free_mask : 0ULL);
        if (m != 0) return false;
        Evaluator ev(spec_, nullptr);
        std::vector<long> zeros(spec_.params.size(), 0);
        ev.bind_ordered(zeros);
        Guard g{a};
        return ev.guard_holds(g);
    }

    void check_partition(std::vector<std::vector<GuardAtom>> cases) {
        for (const auto& c : cases)
            if (c.empty()) {
                if (cases.size() > 1) cases_error("cases overlap (unreachable or ambiguous)");
                return;
            }
        if (cases.size() == 1) {
            for (const GuardAtom& a : cases[0])
                if (!atom_constant_true(a))
                    cases_error("cannot prove cases exhaustive (guard '" +
                                print_guard(spec_, cases[0]) + "' is not a tautology)");
            return;
        }
        // Find an expression every case constrains by parity.
        int split = -1;
        for (const GuardAtom& a : cases[0]) {
            if (a.op != GuardOp::Even && a.op != GuardOp::Odd) continue;
            bool everywhere = true;
            for (const auto& c : cases) {
                bool found = false;
                for (const GuardAtom& b : c)
                    if ((b.op == GuardOp::Even || b.op == GuardOp::Odd) &&
                        expr_equal(spec_, a.lhs, b.lhs)) {
                        found = true;
                        break;
                    }
                if (!found) {
                    everywhere = false;
                    break;
                }
            }
            if (everywhere) {
                split = a.lhs;
                break;
            }
        }
        if (split < 0)
            cases_error("cannot prove cases exhaustive (no common even/odd split)");
        std::vector<std::vector<GuardAtom>> evens, odds;
        for (const auto& c : cases) {
            bool has_even = false, has_odd = false;
            std::vector<GuardAtom> rest;
            for (const GuardAtom& a : c) {
                if ((a.op == GuardOp::Even || a.op == GuardOp::Odd) &&
                    expr_equal(spec_, a.lhs, split)) {
                    (a.op == GuardOp::Even ? has_even : has_odd) = true;
                } else {
                    rest.push_back(a);
                }
            }
            if (has_even && has_odd) cases_error("a guard requires both parities at once");
            (has_even ? evens : odds).push_back(std::move(rest));
        }
        if (evens.empty() || odds.empty())
            cases_error("cases not exhaustive: one parity of '" + print_expr(spec_, split) +
                        "' is uncovered");
        check_partition(std::move(evens));
        check_partition(std::move(odds));
    }

    void check_exhaustive() {
        std::vector<std::vector<GuardAtom>> cases;
        for (const RhsCase& c : spec_.rhs) cases.push_back(c.guard);
        check_partition(std::move(cases));
    }
};

}  // namespace

int IdentitySpec::param_index(const std::string& name) const {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i].name == name) return static_cast<int>(i);
    return -1;
}

void Binding::set(const std::string& name, long v) {
    for (auto& [k, old] : values)
        if (k == name) {
            old = v;
            return;
        }
    values.emplace_back(name, v);
}

std::optional<long> Binding::get(const std::string& name) const {
    for (const auto& [k, v] : values)
        if (k == name) return v;
    return std::nullopt;
}

std::string Binding::render() const {
    std::string out;
    for (const auto& [k, v] : values) {
        if (!out.empty()) out += ", ";
        out += k + "=" + std::to_string(v);
    }
    return out.empty() ? "(no parameters)" : out;
}

std::vector<ParsedBlock> parse_identity_file(const std::string& text,
                                             const std::string& filename) {
    auto with_file = [&](const ParseError& e) {
        std::string where = filename.empty() ? "" : filename + ":";
        return ParseError(where + std::to_string(e.line) + ":" + std::to_string(e.col) + ": " +
                              e.what(),
                          e.line, e.col);
    };
    try {
        std::vector<Token> toks = lex(text);
        Parser parser(toks);
        std::vector<ParsedBlock> out;
        while (!parser.at_end()) {
            ParsedBlock block;
            parser.take_directives(block.group, block.source, block.status);
            if (parser.at_end()) {
                if (!block.group.empty() || !block.source.empty() || !block.status.empty())
                    throw ParseError("directive is not followed by an identity block", 0, 0);
                break;
            }
            block.spec = parser.parse_block(&block.line);
            out.push_back(std::move(block));
        }
        return out;
    } catch (const ParseError& e) {
        throw with_file(e);
    }
}

IdentitySpec parse_identity(const std::string& text) {
    std::vector<ParsedBlock> blocks = parse_identity_file(text, "");
    if (blocks.size() != 1)
        throw ParseError("expected exactly one identity block, found " +
                             std::to_string(blocks.size()),
                         1, 1);
    return std::move(blocks.front().spec);
}

}  // namespace fibsum
