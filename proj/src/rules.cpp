#include "gp2/rules.hpp"

#include <algorithm>
#include <set>

#include "gp2/lexer.hpp"

namespace gp2 {

std::string_view var_type_name(VarType t) {
    switch (t) {
        case VarType::Int: return "int";
        case VarType::Char: return "char";
        case VarType::String: return "string";
        case VarType::Atom: return "atom";
        case VarType::List: return "list";
    }
    return "list";
}

namespace {

std::optional<VarType> var_type_from_name(std::string_view s) {
    if (s == "int") return VarType::Int;
    if (s == "char") return VarType::Char;
    if (s == "string") return VarType::String;
    if (s == "atom") return VarType::Atom;
    if (s == "list") return VarType::List;
    return std::nullopt;
}

bool is_reserved_word(const std::string& s) {
    static const std::set<std::string> words = {
        "if",   "then",  "else", "try",  "or",   "skip", "fail",  "break", "where",
        "empty", "not",  "and",  "Main", "indeg", "outdeg", "edge",
        "int",  "char",  "string", "atom", "list"};
    return words.count(s) > 0;
}

struct RuleParser {
    TokenCursor& cur;
    Rule& rule;
    bool in_condition = false;

    LabelTerm parse_primary() {
        const Token& t = cur.peek();
        if (t.kind == TokKind::Int) {
            cur.next();
            LabelTerm out;
            out.kind = LabelTerm::Kind::IntConst;
            out.int_value = t.int_value;
            return out;
        }
        if (t.kind == TokKind::Str) {
            cur.next();
            LabelTerm out;
            out.kind = LabelTerm::Kind::StrConst;
            out.text = t.text;
            return out;
        }
        if (cur.is_sym("-")) {
            cur.next();
            if (cur.peek().kind == TokKind::Int) {
                const Token& v = cur.next();
                LabelTerm out;
                out.kind = LabelTerm::Kind::IntConst;
                out.int_value = -v.int_value;
                return out;
            }
            LabelTerm zero;
            zero.kind = LabelTerm::Kind::IntConst;
            LabelTerm out;
            out.kind = LabelTerm::Kind::Sub;
            out.lhs = std::make_shared<LabelTerm>(zero);
            out.rhs = std::make_shared<LabelTerm>(parse_primary());
            return out;
        }
        if (cur.accept_sym("(")) {
            LabelTerm inner = parse_additive();
            cur.expect_sym(")");
            return inner;
        }
        if (t.kind == TokKind::Ident) {
            if (in_condition && (t.text == "indeg" || t.text == "outdeg")) {
                cur.next();
                cur.expect_sym("(");
                if (cur.peek().kind != TokKind::Int) cur.fail("expected interface number");
                const Token& num = cur.next();
                cur.expect_sym(")");
                LabelTerm out;
                out.kind = t.text == "indeg" ? LabelTerm::Kind::Indeg : LabelTerm::Kind::Outdeg;
                out.iface = static_cast<int>(num.int_value);
                return out;
            }
            if (t.text == "indeg" || t.text == "outdeg")
                throw ParseError("'" + t.text + "' is only allowed in a rule condition", t.loc);
            if (!rule.var_type(t.text))
                throw ParseError("undeclared variable '" + t.text + "'", t.loc);
            cur.next();
            LabelTerm out;
            out.kind = LabelTerm::Kind::Var;
            out.text = t.text;
            return out;
        }
        if (cur.is_sym("/") || cur.is_sym("."))
            throw ParseError("operator '" + t.text + "' is not supported", t.loc);
        cur.fail("expected label expression");
    }

    LabelTerm parse_multiplicative() {
        LabelTerm left = parse_primary();
        while (cur.is_sym("*") || cur.is_sym("/")) {
            if (cur.is_sym("/"))
                throw ParseError("division is not supported", cur.peek().loc);
            cur.next();
            LabelTerm out;
            out.kind = LabelTerm::Kind::Mul;
            out.lhs = std::make_shared<LabelTerm>(std::move(left));
            out.rhs = std::make_shared<LabelTerm>(parse_primary());
            left = std::move(out);
        }
        return left;
    }

    LabelTerm parse_additive() {
        LabelTerm left = parse_multiplicative();
        while (cur.is_sym("+") || cur.is_sym("-")) {
            bool add = cur.is_sym("+");
            cur.next();
            LabelTerm out;
            out.kind = add ? LabelTerm::Kind::Add : LabelTerm::Kind::Sub;
            out.lhs = std::make_shared<LabelTerm>(std::move(left));
            out.rhs = std::make_shared<LabelTerm>(parse_multiplicative());
            left = std::move(out);
        }
        return left;
    }

    LabelExpr parse_label_expr() {
        LabelExpr out;
        if (cur.accept_ident("empty")) return out;
        out.terms.push_back(parse_additive());
        while (cur.accept_sym(":")) out.terms.push_back(parse_additive());
        return out;
    }

    // Rule graphs share the host-graph bracket structure.
    RuleGraph parse_rule_graph() {
        RuleGraph g;
        std::map<std::string, int> node_by_id;
        std::set<std::string> ids;
        std::set<int> ifaces;
        cur.expect_sym("[");
        while (!cur.is_sym("|")) {
            SourceLoc loc = cur.peek().loc;
            cur.expect_sym("(");
            RuleNode n;
            n.id = parse_item_id();
            if (cur.accept_sym("@")) {
                if (cur.peek().kind != TokKind::Int) cur.fail("expected interface number");
                n.iface = static_cast<int>(cur.next().int_value);
                if (!ifaces.insert(n.iface).second)
                    throw ParseError("duplicate interface number " + std::to_string(n.iface), loc);
            }
            cur.expect_sym(",");
            n.label = parse_label_expr();
            if (cur.accept_sym("#")) {
                const Token& m = cur.expect_ident();
                auto mk = node_mark_from_name(m.text);
                if (!mk) throw ParseError("unknown node mark '" + m.text + "'", m.loc);
                n.mark = *mk;
            }
            if (cur.is_sym("(") && cur.is_ident("R", 1)) {
                cur.next();
                cur.next();
                cur.expect_sym(")");
                n.rooted = true;
            }
            cur.expect_sym(")");
            if (!ids.insert(n.id).second)
                throw ParseError("duplicate node id '" + n.id + "'", loc);
            node_by_id.emplace(n.id, static_cast<int>(g.nodes.size()));
            g.nodes.push_back(std::move(n));
        }
        cur.expect_sym("|");
        while (!cur.is_sym("]")) {
            SourceLoc loc = cur.peek().loc;
            cur.expect_sym("(");
            RuleEdge e;
            e.id = parse_item_id();
            cur.expect_sym(",");
            std::string src = parse_item_id();
            cur.expect_sym(",");
            std::string tgt = parse_item_id();
            cur.expect_sym(",");
            e.label = parse_label_expr();
            if (cur.accept_sym("#")) {
                const Token& m = cur.expect_ident();
                auto mk = edge_mark_from_name(m.text);
                if (!mk) throw ParseError("unknown edge mark '" + m.text + "'", m.loc);
                e.mark = *mk;
            }
            cur.expect_sym(")");
            if (!ids.insert(e.id).second)
                throw ParseError("duplicate edge id '" + e.id + "'", loc);
            auto si = node_by_id.find(src);
            if (si == node_by_id.end()) throw ParseError("unknown source node " + src, loc);
            auto ti = node_by_id.find(tgt);
            if (ti == node_by_id.end()) throw ParseError("unknown target node " + tgt, loc);
            e.source = si->second;
            e.target = ti->second;
            g.edges.push_back(std::move(e));
        }
        cur.expect_sym("]");
        return g;
    }

    std::string parse_item_id() {
        const Token& t = cur.peek();
        if (t.kind == TokKind::Ident || t.kind == TokKind::Int) {
            cur.next();
            return t.text;
        }
        cur.fail("expected node or edge id");
    }

    // Conditions: not > and > or; a parenthesis may open either a
    // grouped condition or an arithmetic operand, so try the condition
    // reading first and fall back on the comparison.
    ConditionPtr parse_condition() { return parse_or(); }

    ConditionPtr parse_or() {
        ConditionPtr left = parse_and();
        while (cur.accept_ident("or")) {
            auto node = std::make_shared<Condition>();
            node->kind = Condition::Kind::Or;
            node->a = left;
            node->b = parse_and();
            left = node;
        }
        return left;
    }

    ConditionPtr parse_and() {
        ConditionPtr left = parse_not();
        while (cur.accept_ident("and")) {
            auto node = std::make_shared<Condition>();
            node->kind = Condition::Kind::And;
            node->a = left;
            node->b = parse_not();
            left = node;
        }
        return left;
    }

    ConditionPtr parse_not() {
        if (cur.accept_ident("not")) {
            auto node = std::make_shared<Condition>();
            node->kind = Condition::Kind::Not;
            node->a = parse_not();
            return node;
        }
        if (cur.is_sym("(")) {
            std::size_t mark = cur.position();
            cur.next();
            try {
                ConditionPtr inner = parse_condition();
                cur.expect_sym(")");
                return inner;
            } catch (const ParseError&) {
                cur.rewind(mark);
            }
        }
        return parse_atom_condition();
    }

    ConditionPtr parse_atom_condition() {
        if (cur.is_ident("edge") && cur.is_sym("(", 1)) {
            cur.next();
            cur.next();
            auto node = std::make_shared<Condition>();
            node->kind = Condition::Kind::EdgePred;
            if (cur.peek().kind != TokKind::Int) cur.fail("expected interface number");
            node->edge_from = static_cast<int>(cur.next().int_value);
            cur.expect_sym(",");
            if (cur.peek().kind != TokKind::Int) cur.fail("expected interface number");
            node->edge_to = static_cast<int>(cur.next().int_value);
            cur.expect_sym(")");
            return node;
        }
        auto node = std::make_shared<Condition>();
        node->kind = Condition::Kind::Compare;
        node->cmp_lhs = parse_label_expr();
        const Token& t = cur.peek();
        if (t.kind != TokKind::Sym) cur.fail("expected comparison operator");
        if (t.text == "=")
            node->op = Condition::CmpOp::Eq;
        else if (t.text == "!=")
            node->op = Condition::CmpOp::Ne;
        else if (t.text == "<")
            node->op = Condition::CmpOp::Lt;
        else if (t.text == "<=")
            node->op = Condition::CmpOp::Le;
        else if (t.text == ">")
            node->op = Condition::CmpOp::Gt;
        else if (t.text == ">=")
            node->op = Condition::CmpOp::Ge;
        else
            cur.fail("expected comparison operator");
        cur.next();
        node->cmp_rhs = parse_label_expr();
        return node;
    }
};

void collect_vars(const LabelTerm& t, std::set<std::string>& out) {
    if (t.kind == LabelTerm::Kind::Var) out.insert(t.text);
    if (t.lhs) collect_vars(*t.lhs, out);
    if (t.rhs) collect_vars(*t.rhs, out);
}

void collect_vars(const LabelExpr& e, std::set<std::string>& out) {
    for (const LabelTerm& t : e.terms) collect_vars(t, out);
}

void collect_vars(const RuleGraph& g, std::set<std::string>& out) {
    for (const RuleNode& n : g.nodes) collect_vars(n.label, out);
    for (const RuleEdge& e : g.edges) collect_vars(e.label, out);
}

void collect_condition_vars(const Condition& c, std::set<std::string>& out) {
    if (c.a) collect_condition_vars(*c.a, out);
    if (c.b) collect_condition_vars(*c.b, out);
    collect_vars(c.cmp_lhs, out);
    collect_vars(c.cmp_rhs, out);
}

void collect_condition_ifaces(const Condition& c, std::set<int>& out) {
    if (c.a) collect_condition_ifaces(*c.a, out);
    if (c.b) collect_condition_ifaces(*c.b, out);
    if (c.kind == Condition::Kind::EdgePred) {
        out.insert(c.edge_from);
        out.insert(c.edge_to);
    }
    auto scan = [&](const LabelExpr& e) {
        for (const LabelTerm& t : e.terms) {
            const LabelTerm* stack[64];
            int sp = 0;
            stack[sp++] = &t;
            while (sp) {
                const LabelTerm* u = stack[--sp];
                if (u->kind == LabelTerm::Kind::Indeg || u->kind == LabelTerm::Kind::Outdeg)
                    out.insert(u->iface);
                if (u->lhs && sp < 62) stack[sp++] = u->lhs.get();
                if (u->rhs && sp < 62) stack[sp++] = u->rhs.get();
            }
        }
    };
    scan(c.cmp_lhs);
    scan(c.cmp_rhs);
}

void validate_rule(const Rule& rule, SourceLoc loc) {
    // variables of the right side and condition must occur on the left
    std::set<std::string> lhs_vars, rhs_vars;
    collect_vars(rule.lhs, lhs_vars);
    collect_vars(rule.rhs, rhs_vars);
    if (rule.condition) collect_condition_vars(*rule.condition, rhs_vars);
    for (const std::string& v : rhs_vars)
        if (!lhs_vars.count(v))
            throw ParseError("variable '" + v + "' does not occur in the left-hand graph", loc);

    for (const RuleNode& n : rule.lhs.nodes) {
        int list_vars = 0;
        for (const LabelTerm& t : n.label.terms) {
            if (t.is_arithmetic())
                throw ParseError("composite arithmetic in left-hand label of rule '" +
                                     rule.name + "'",
                                 loc);
            if (t.kind == LabelTerm::Kind::Var && rule.var_type(t.text) == VarType::List)
                ++list_vars;
        }
        if (list_vars > 1)
            throw ParseError("left-hand label with more than one list variable in rule '" +
                                 rule.name + "'",
                             loc);
    }
    for (const RuleEdge& e : rule.lhs.edges) {
        int list_vars = 0;
        for (const LabelTerm& t : e.label.terms) {
            if (t.is_arithmetic())
                throw ParseError("composite arithmetic in left-hand label of rule '" +
                                     rule.name + "'",
                                 loc);
            if (t.kind == LabelTerm::Kind::Var && rule.var_type(t.text) == VarType::List)
                ++list_vars;
        }
        if (list_vars > 1)
            throw ParseError("left-hand label with more than one list variable in rule '" +
                                 rule.name + "'",
                             loc);
    }

    std::set<int> lhs_if, rhs_if;
    for (const RuleNode& n : rule.lhs.nodes)
        if (n.iface >= 0) lhs_if.insert(n.iface);
    for (const RuleNode& n : rule.rhs.nodes)
        if (n.iface >= 0) rhs_if.insert(n.iface);
    if (lhs_if != rhs_if)
        throw ParseError("interface numbers differ between the sides of rule '" + rule.name + "'",
                         loc);
    if (rule.condition) {
        std::set<int> cond_if;
        collect_condition_ifaces(*rule.condition, cond_if);
        for (int i : cond_if)
            if (!lhs_if.count(i))
                throw ParseError("condition of rule '" + rule.name +
                                     "' uses interface number " + std::to_string(i) +
                                     " that is not in the left-hand graph",
                                 loc);
    }
}

} // namespace

Rule parse_rule_decl(TokenCursor& cur) {
    SourceLoc loc = cur.peek().loc;
    const Token& name = cur.expect_ident();
    if (is_reserved_word(name.text))
        throw ParseError("'" + name.text + "' cannot be used as a rule name", name.loc);
    Rule rule;
    rule.name = name.text;
    cur.expect_sym("(");
    std::set<std::string> seen;
    while (!cur.is_sym(")")) {
        std::vector<std::string> group;
        group.push_back(cur.expect_ident().text);
        while (cur.accept_sym(",")) group.push_back(cur.expect_ident().text);
        cur.expect_sym(":");
        const Token& ty = cur.expect_ident();
        auto parsed = var_type_from_name(ty.text);
        if (!parsed) throw ParseError("unknown variable type '" + ty.text + "'", ty.loc);
        for (std::string& v : group) {
            if (!seen.insert(v).second)
                throw ParseError("duplicate variable '" + v + "'", loc);
            rule.variables.push_back(Variable{std::move(v), *parsed});
        }
        if (!cur.accept_sym(";")) break;
    }
    cur.expect_sym(")");
    cur.expect_sym("=");
    RuleParser rp{cur, rule};
    rule.lhs = rp.parse_rule_graph();
    cur.expect_sym("=>");
    rule.rhs = rp.parse_rule_graph();
    if (cur.accept_ident("where")) {
        rp.in_condition = true;
        rule.condition = rp.parse_condition();
    }
    validate_rule(rule, loc);
    return rule;
}

Rule parse_rule(std::string_view text) {
    TokenCursor cur(tokenize(text));
    Rule r = parse_rule_decl(cur);
    if (!cur.at_end()) cur.fail("trailing input after rule");
    return r;
}

namespace {

std::string render_term(const LabelTerm& t) {
    switch (t.kind) {
        case LabelTerm::Kind::IntConst: return std::to_string(t.int_value);
        case LabelTerm::Kind::StrConst: return "\"" + t.text + "\"";
        case LabelTerm::Kind::Var: return t.text;
        case LabelTerm::Kind::Indeg: return "indeg(" + std::to_string(t.iface) + ")";
        case LabelTerm::Kind::Outdeg: return "outdeg(" + std::to_string(t.iface) + ")";
        case LabelTerm::Kind::Add: return "(" + render_term(*t.lhs) + " + " + render_term(*t.rhs) + ")";
        case LabelTerm::Kind::Sub: return "(" + render_term(*t.lhs) + " - " + render_term(*t.rhs) + ")";
        case LabelTerm::Kind::Mul: return "(" + render_term(*t.lhs) + " * " + render_term(*t.rhs) + ")";
    }
    return "?";
}

} // namespace

std::string render_label_expr(const LabelExpr& e) {
    if (e.terms.empty()) return "empty";
    std::string out;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        if (i) out += ":";
        out += render_term(e.terms[i]);
    }
    return out;
}

std::string render_condition(const Condition& c) {
    switch (c.kind) {
        case Condition::Kind::Not: return "not (" + render_condition(*c.a) + ")";
        case Condition::Kind::And:
            return "(" + render_condition(*c.a) + " and " + render_condition(*c.b) + ")";
        case Condition::Kind::Or:
            return "(" + render_condition(*c.a) + " or " + render_condition(*c.b) + ")";
        case Condition::Kind::EdgePred:
            return "edge(" + std::to_string(c.edge_from) + ", " + std::to_string(c.edge_to) + ")";
        case Condition::Kind::Compare: {
            const char* op = "=";
            switch (c.op) {
                case Condition::CmpOp::Eq: op = "="; break;
                case Condition::CmpOp::Ne: op = "!="; break;
                case Condition::CmpOp::Lt: op = "<"; break;
                case Condition::CmpOp::Le: op = "<="; break;
                case Condition::CmpOp::Gt: op = ">"; break;
                case Condition::CmpOp::Ge: op = ">="; break;
            }
            return render_label_expr(c.cmp_lhs) + op + render_label_expr(c.cmp_rhs);
        }
    }
    return "?";
}

} // namespace gp2
