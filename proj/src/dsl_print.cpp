#include <string>

#include "fibsum/dsl.hpp"

namespace fibsum {

namespace {

// Binding strength used for parenthesization: higher binds tighter.
// RatLit prints as NUM/DEN, so it must parenthesize exactly like a division.
int prec(const Node& n) {
    switch (n.kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::RatLit: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow:
        case NodeKind::SignPow: return 4;
        default: return 5;
    }
}

void render_expr(const IdentitySpec& spec, int idx, int min_prec, std::string& out) {
    const Node& n = spec.nodes[idx];
    const bool parens = prec(n) < min_prec;
    if (parens) out += '(';
    switch (n.kind) {
        case NodeKind::IntLit:
            out += n.int_value.get_str();
            break;
        case NodeKind::RatLit:
            out += n.rat_value.get_num().get_str();
            out += '/';
            out += n.rat_value.get_den().get_str();
            break;
        case NodeKind::Param:
            out += n.name;
            break;
        case NodeKind::Sqrt5:
            out += "sqrt5";
            break;
        case NodeKind::Alpha:
            out += "alpha";
            break;
        case NodeKind::Beta:
            out += "beta";
            break;
        case NodeKind::Neg:
            out += '-';
            render_expr(spec, n.child0, 3, out);
            break;
        case NodeKind::Add:
        case NodeKind::Sub:
            render_expr(spec, n.child0, 1, out);
            out += n.kind == NodeKind::Add ? " + " : " - ";
            render_expr(spec, n.child1, 2, out);
            break;
        case NodeKind::Mul:
        case NodeKind::Div:
            render_expr(spec, n.child0, 2, out);
            out += n.kind == NodeKind::Mul ? '*' : '/';
            render_expr(spec, n.child1, 3, out);
            break;
        case NodeKind::Pow:
            render_expr(spec, n.child0, 5, out);
            out += '^';
            render_expr(spec, n.child1, 3, out);
            break;
        case NodeKind::SignPow:
            out += "(-1)^(";
            render_expr(spec, n.child0, 0, out);
            out += ')';
            break;
        case NodeKind::FibOf:
        case NodeKind::LucasOf:
            out += n.kind == NodeKind::FibOf ? "F(" : "L(";
            render_expr(spec, n.child0, 0, out);
            out += ')';
            break;
        case NodeKind::BinomOf:
        case NodeKind::FloorDiv:
        case NodeKind::CeilDiv:
            out += n.kind == NodeKind::BinomOf ? "C(" : n.kind == NodeKind::FloorDiv ? "fdiv(" : "cdiv(";
            render_expr(spec, n.child0, 0, out);
            out += ',';
            render_expr(spec, n.child1, 0, out);
            out += ')';
            break;
        case NodeKind::RePow:
        case NodeKind::ImPow:
            out += n.kind == NodeKind::RePow ? "re(" : "im(";
            render_expr(spec, n.child0, 0, out);
            out += ',';
            render_expr(spec, n.child1, 0, out);
            out += ',';
            render_expr(spec, n.child2, 0, out);
            out += ')';
            break;
        case NodeKind::Sum:
            out += "sum(";
            out += n.name;
            out += '=';
            render_expr(spec, n.child0, 0, out);
            out += "..";
            render_expr(spec, n.child1, 0, out);
            out += "; ";
            render_expr(spec, n.child2, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

void render_guard(const IdentitySpec& spec, const Guard& g, std::string& out) {
    bool first = true;
    for (const GuardAtom& a : g) {
        if (!first) out += " && ";
        first = false;
        switch (a.op) {
            case GuardOp::Even:
            case GuardOp::Odd:
                out += a.op == GuardOp::Even ? "even(" : "odd(";
                render_expr(spec, a.lhs, 0, out);
                out += ')';
                break;
            case GuardOp::Eq:
            case GuardOp::Le:
                render_expr(spec, a.lhs, 0, out);
                out += a.op == GuardOp::Eq ? " == " : " <= ";
                render_expr(spec, a.rhs, 0, out);
                break;
        }
    }
}

}  // namespace

std::string print_expr(const IdentitySpec& spec, int expr) {
    std::string out;
    render_expr(spec, expr, 0, out);
    return out;
}

std::string print_guard(const IdentitySpec& spec, const Guard& guard) {
    std::string out;
    render_guard(spec, guard, out);
    return out;
}

std::string print_identity(const IdentitySpec& spec) {
    std::string out = "identity " + spec.id + " {\n";
    if (!spec.params.empty()) {
        out += "  params ";
        bool first = true;
        for (const ParamDecl& p : spec.params) {
            if (!first) out += ", ";
            first = false;
            out += p.name + " in ";
            if (!p.lo && !p.hi) {
                out += "int";
            } else if (p.lo && !p.hi) {
                out += p.lo->get_str() + "...";
            } else {
                out += p.lo->get_str() + ".." + p.hi->get_str();
            }
        }
        out += ";\n";
    }
    for (const Guard& g : spec.require) {
        out += "  require ";
        render_guard(spec, g, out);
        out += ";\n";
    }
    out += "  lhs = ";
    render_expr(spec, spec.lhs, 0, out);
    out += ";\n";
    if (spec.rhs_is_cases) {
        out += "  rhs = cases {\n";
        for (const RhsCase& c : spec.rhs) {
            out += "    ";
            render_guard(spec, c.guard, out);
            out += " -> ";
            render_expr(spec, c.expr, 0, out);
            out += ";\n";
        }
        out += "  }\n";
    } else {
        out += "  rhs = ";
        render_expr(spec, spec.rhs.front().expr, 0, out);
        out += "\n";
    }
    out += "}\n";
    return out;
}

namespace {

bool node_equal(const IdentitySpec& sa, int ia, const IdentitySpec& sb, int ib) {
    if ((ia >= 0) != (ib >= 0)) return false;
    if (ia < 0) return true;
    const Node& a = sa.nodes[ia];
    const Node& b = sb.nodes[ib];
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::IntLit:
            if (a.int_value != b.int_value) return false;
            break;
        case NodeKind::RatLit:
            if (a.rat_value != b.rat_value) return false;
            break;
        case NodeKind::Param:
        case NodeKind::Sum:
            if (a.name != b.name || a.slot != b.slot) return false;
            break;
        default:
            break;
    }
    return node_equal(sa, a.child0, sb, b.child0) && node_equal(sa, a.child1, sb, b.child1) &&
           node_equal(sa, a.child2, sb, b.child2);
}

bool guard_equal(const IdentitySpec& sa, const Guard& a, const IdentitySpec& sb, const Guard& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].op != b[i].op) return false;
        if (!node_equal(sa, a[i].lhs, sb, b[i].lhs)) return false;
        if (!node_equal(sa, a[i].rhs, sb, b[i].rhs)) return false;
    }
    return true;
}

}  // namespace

bool spec_equal(const IdentitySpec& a, const IdentitySpec& b) {
    if (a.id != b.id || a.rhs_is_cases != b.rhs_is_cases) return false;
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].name != b.params[i].name) return false;
        if (a.params[i].lo != b.params[i].lo || a.params[i].hi != b.params[i].hi) return false;
    }
    if (a.require.size() != b.require.size()) return false;
    for (std::size_t i = 0; i < a.require.size(); ++i)
        if (!guard_equal(a, a.require[i], b, b.require[i])) return false;
    if (!node_equal(a, a.lhs, b, b.lhs)) return false;
    if (a.rhs.size() != b.rhs.size()) return false;
    for (std::size_t i = 0; i < a.rhs.size(); ++i) {
        if (!guard_equal(a, a.rhs[i].guard, b, b.rhs[i].guard)) return false;
        if (!node_equal(a, a.rhs[i].expr, b, b.rhs[i].expr)) return false;
    }
    return true;
}

bool expr_equal(const IdentitySpec& spec, int lhs, int rhs) {
    if (lhs == rhs) return true;
    const Node& a = spec.nodes[lhs];
    const Node& b = spec.nodes[rhs];
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::IntLit: return a.int_value == b.int_value;
        case NodeKind::RatLit: return a.rat_value == b.rat_value;
        case NodeKind::Param: return a.slot == b.slot;
        case NodeKind::Sqrt5:
        case NodeKind::Alpha:
        case NodeKind::Beta: return true;
        case NodeKind::Sum:
            if (a.name != b.name) return false;
            break;
        default:
            break;
    }
    if ((a.child0 >= 0) != (b.child0 >= 0)) return false;
    if (a.child0 >= 0 && !expr_equal(spec, a.child0, b.child0)) return false;
    if ((a.child1 >= 0) != (b.child1 >= 0)) return false;
    if (a.child1 >= 0 && !expr_equal(spec, a.child1, b.child1)) return false;
    if ((a.child2 >= 0) != (b.child2 >= 0)) return false;
    if (a.child2 >= 0 && !expr_equal(spec, a.child2, b.child2)) return false;
    return true;
}

}  // namespace fibsum
