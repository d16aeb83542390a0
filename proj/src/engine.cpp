#include "gp2/engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gp2/diagnostics.hpp"

namespace gp2 {
namespace {

// --- label matching -------------------------------------------------------

// How many host atoms a left-hand term consumes: every term is one atom
// except a list variable, which takes an arbitrary (possibly empty) slice.
bool is_list_var(const LabelTerm& t, const Rule& rule) {
    return t.kind == LabelTerm::Kind::Var && rule.var_type(t.text) == VarType::List;
}

bool bind(Binding& b, const std::string& name, ListValue value) {
    auto it = b.values.find(name);
    if (it != b.values.end()) return it->second == value;
    b.values.emplace(name, std::move(value));
    return true;
}

bool match_atom_term(const LabelTerm& t, const Atom& a, const Rule& rule, Binding& b) {
    switch (t.kind) {
        case LabelTerm::Kind::IntConst:
            return std::holds_alternative<std::int64_t>(a) &&
                   std::get<std::int64_t>(a) == t.int_value;
        case LabelTerm::Kind::StrConst:
            return std::holds_alternative<std::string>(a) && std::get<std::string>(a) == t.text;
        case LabelTerm::Kind::Var: {
            VarType ty = *rule.var_type(t.text);
            switch (ty) {
                case VarType::Int:
                    if (!std::holds_alternative<std::int64_t>(a)) return false;
                    break;
                case VarType::String:
                    if (!std::holds_alternative<std::string>(a)) return false;
                    break;
                case VarType::Char:
                    if (!std::holds_alternative<std::string>(a) ||
                        std::get<std::string>(a).size() != 1)
                        return false;
                    break;
                case VarType::Atom:
                    break;
                case VarType::List:
                    return false; // handled by the slice logic
            }
            return bind(b, t.text, ListValue{{a}});
        }
        default:
            return false; // arithmetic cannot occur in a left-hand label
    }
}

// Left-hand labels carry at most one list variable, so a label either
// fixes the length exactly or splits host atoms into prefix/slice/suffix.
bool match_label(const LabelExpr& pattern, const ListValue& value, const Rule& rule, Binding& b) {
    int list_pos = -1;
    for (int i = 0; i < static_cast<int>(pattern.terms.size()); ++i)
        if (is_list_var(pattern.terms[i], rule)) list_pos = i;

    const auto& atoms = value.items;
    int fixed = static_cast<int>(pattern.terms.size()) - (list_pos >= 0 ? 1 : 0);
    if (list_pos < 0) {
        if (static_cast<int>(atoms.size()) != fixed) return false;
        for (int i = 0; i < fixed; ++i)
            if (!match_atom_term(pattern.terms[i], atoms[i], rule, b)) return false;
        return true;
    }
    if (static_cast<int>(atoms.size()) < fixed) return false;
    int suffix = static_cast<int>(pattern.terms.size()) - list_pos - 1;
    int slice_len = static_cast<int>(atoms.size()) - fixed;
    for (int i = 0; i < list_pos; ++i)
        if (!match_atom_term(pattern.terms[i], atoms[i], rule, b)) return false;
    for (int i = 0; i < suffix; ++i) {
        const LabelTerm& t = pattern.terms[list_pos + 1 + i];
        if (!match_atom_term(t, atoms[list_pos + slice_len + i], rule, b)) return false;
    }
    ListValue slice;
    slice.items.assign(atoms.begin() + list_pos, atoms.begin() + list_pos + slice_len);
    return bind(b, pattern.terms[list_pos].text, std::move(slice));
}

// --- label / condition evaluation ------------------------------------------

struct EvalContext {
    const Rule& rule;
    const Match* match = nullptr;   // required for indeg/outdeg/edge
    const HostGraph* graph = nullptr;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw EvalError("integer overflow in label arithmetic");
    return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw EvalError("integer overflow in label arithmetic");
    return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw EvalError("integer overflow in label arithmetic");
    return r;
}

int host_node_for_iface(const EvalContext& ctx, int iface) {
    auto lhs_index = ctx.rule.lhs.node_with_iface(iface);
    if (!lhs_index || !ctx.match)
        throw EvalError("condition refers to unknown interface number " + std::to_string(iface));
    return ctx.match->node_image.at(*lhs_index);
}

std::int64_t eval_int_term(const LabelTerm& t, const Binding& b, const EvalContext& ctx);

ListValue eval_term(const LabelTerm& t, const Binding& b, const EvalContext& ctx) {
    switch (t.kind) {
        case LabelTerm::Kind::IntConst: return ListValue::of_int(t.int_value);
        case LabelTerm::Kind::StrConst: return ListValue::of_string(t.text);
        case LabelTerm::Kind::Var: {
            auto it = b.values.find(t.text);
            if (it == b.values.end()) throw EvalError("unbound variable '" + t.text + "'");
            return it->second;
        }
        default:
            return ListValue::of_int(eval_int_term(t, b, ctx));
    }
}

std::int64_t eval_int_term(const LabelTerm& t, const Binding& b, const EvalContext& ctx) {
    switch (t.kind) {
        case LabelTerm::Kind::IntConst: return t.int_value;
        case LabelTerm::Kind::Add:
            return checked_add(eval_int_term(*t.lhs, b, ctx), eval_int_term(*t.rhs, b, ctx));
        case LabelTerm::Kind::Sub:
            return checked_sub(eval_int_term(*t.lhs, b, ctx), eval_int_term(*t.rhs, b, ctx));
        case LabelTerm::Kind::Mul:
            return checked_mul(eval_int_term(*t.lhs, b, ctx), eval_int_term(*t.rhs, b, ctx));
        case LabelTerm::Kind::Indeg:
            return ctx.graph->indegree(host_node_for_iface(ctx, t.iface));
        case LabelTerm::Kind::Outdeg:
            return ctx.graph->outdegree(host_node_for_iface(ctx, t.iface));
        case LabelTerm::Kind::Var: {
            auto it = b.values.find(t.text);
            if (it == b.values.end()) throw EvalError("unbound variable '" + t.text + "'");
            if (it->second.items.size() != 1 ||
                !std::holds_alternative<std::int64_t>(it->second.items[0]))
                throw EvalError("variable '" + t.text + "' is not an integer");
            return std::get<std::int64_t>(it->second.items[0]);
        }
        case LabelTerm::Kind::StrConst:
            throw EvalError("string used where an integer is required");
    }
    throw EvalError("malformed label term");
}

ListValue eval_label(const LabelExpr& e, const Binding& b, const EvalContext& ctx) {
    ListValue out;
    for (const LabelTerm& t : e.terms) {
        ListValue piece = eval_term(t, b, ctx);
        out.items.insert(out.items.end(), piece.items.begin(), piece.items.end());
    }
    return out;
}

bool eval_condition_node(const Condition& c, const Binding& b, const EvalContext& ctx) {
    switch (c.kind) {
        case Condition::Kind::Not: return !eval_condition_node(*c.a, b, ctx);
        case Condition::Kind::And:
            return eval_condition_node(*c.a, b, ctx) && eval_condition_node(*c.b, b, ctx);
        case Condition::Kind::Or:
            return eval_condition_node(*c.a, b, ctx) || eval_condition_node(*c.b, b, ctx);
        case Condition::Kind::EdgePred: {
            int from = host_node_for_iface(ctx, c.edge_from);
            int to = host_node_for_iface(ctx, c.edge_to);
            for (const HostEdge& e : ctx.graph->edges())
                if (e.source == from && e.target == to) return true;
            return false;
        }
        case Condition::Kind::Compare: {
            if (c.op == Condition::CmpOp::Eq || c.op == Condition::CmpOp::Ne) {
                ListValue l = eval_label(c.cmp_lhs, b, ctx);
                ListValue r = eval_label(c.cmp_rhs, b, ctx);
                return (l == r) == (c.op == Condition::CmpOp::Eq);
            }
            auto as_int = [&](const LabelExpr& e) {
                ListValue v = eval_label(e, b, ctx);
                if (v.items.size() != 1 || !std::holds_alternative<std::int64_t>(v.items[0]))
                    throw EvalError("ordering comparison on a non-integer value");
                return std::get<std::int64_t>(v.items[0]);
            };
            std::int64_t l = as_int(c.cmp_lhs), r = as_int(c.cmp_rhs);
            switch (c.op) {
                case Condition::CmpOp::Lt: return l < r;
                case Condition::CmpOp::Le: return l <= r;
                case Condition::CmpOp::Gt: return l > r;
                case Condition::CmpOp::Ge: return l >= r;
                default: return false;
            }
        }
    }
    return false;
}

// --- match search -----------------------------------------------------------

struct MatchSearch {
    const Rule& rule;
    const HostGraph& g;
    std::vector<int> host_node_order; // ascending by id
    std::vector<int> host_edge_order;
    std::vector<Match>& out;

    MatchSearch(const Rule& r, const HostGraph& g_, std::vector<Match>& out_)
        : rule(r), g(g_), out(out_) {
        host_node_order.resize(g.node_count());
        std::iota(host_node_order.begin(), host_node_order.end(), 0);
        std::sort(host_node_order.begin(), host_node_order.end(),
                  [&](int a, int b) { return id_less(g.node(a).id, g.node(b).id); });
        host_edge_order.resize(g.edge_count());
        std::iota(host_edge_order.begin(), host_edge_order.end(), 0);
        std::sort(host_edge_order.begin(), host_edge_order.end(),
                  [&](int a, int b) { return id_less(g.edge(a).id, g.edge(b).id); });
    }

    void assign_nodes(std::size_t next, Match& m, std::vector<bool>& node_used) {
        if (next == rule.lhs.nodes.size()) {
            Match edge_try = m;
            assign_edges(0, edge_try, std::vector<bool>(g.edge_count(), false));
            return;
        }
        const RuleNode& ln = rule.lhs.nodes[next];
        for (int cand : host_node_order) {
            if (node_used[cand]) continue;
            const HostNode& hn = g.node(cand);
            if (hn.mark != ln.mark || hn.rooted != ln.rooted) continue;
            Binding saved = m.binding;
            if (match_label(ln.label, hn.label, rule, m.binding)) {
                m.node_image[next] = cand;
                node_used[cand] = true;
                assign_nodes(next + 1, m, node_used);
                node_used[cand] = false;
            }
            m.binding = std::move(saved);
        }
    }

    void assign_edges(std::size_t next, Match& m, std::vector<bool> edge_used) {
        if (next == rule.lhs.edges.size()) {
            finish(m);
            return;
        }
        const RuleEdge& le = rule.lhs.edges[next];
        int want_src = m.node_image[le.source];
        int want_tgt = m.node_image[le.target];
        for (int cand : host_edge_order) {
            if (edge_used[cand]) continue;
            const HostEdge& he = g.edge(cand);
            if (he.source != want_src || he.target != want_tgt || he.mark != le.mark) continue;
            Binding saved = m.binding;
            if (match_label(le.label, he.label, rule, m.binding)) {
                m.edge_image[next] = cand;
                edge_used[cand] = true;
                assign_edges(next + 1, m, edge_used);
                edge_used[cand] = false;
            }
            m.binding = std::move(saved);
        }
    }

    void finish(Match& m) {
        if (!check_dangling(rule, m, g)) return;
        if (!eval_condition(rule.condition, rule, m, g)) return;
        out.push_back(m);
    }
};

} // namespace

std::vector<Match> find_matches(const Rule& rule, const HostGraph& g) {
    std::vector<Match> out;
    Match m;
    m.node_image.assign(rule.lhs.nodes.size(), -1);
    m.edge_image.assign(rule.lhs.edges.size(), -1);
    std::vector<bool> node_used(g.node_count(), false);
    MatchSearch search(rule, g, out);
    search.assign_nodes(0, m, node_used);
    return out;
}

bool check_dangling(const Rule& rule, const Match& m, const HostGraph& g) {
    std::set<int> matched_edges(m.edge_image.begin(), m.edge_image.end());
    for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
        if (rule.lhs.nodes[i].iface >= 0) continue; // stays in place
        int host = m.node_image[i];
        for (int e = 0; e < g.edge_count(); ++e) {
            const HostEdge& he = g.edge(e);
            if ((he.source == host || he.target == host) && !matched_edges.count(e))
                return false;
        }
    }
    return true;
}

bool eval_condition(const ConditionPtr& c, const Rule& rule, const Match& m, const HostGraph& g) {
    if (!c) return true;
    EvalContext ctx{rule, &m, &g};
    return eval_condition_node(*c, m.binding, ctx);
}

HostGraph apply_match(const Rule& rule, const Match& m, const HostGraph& g) {
    EvalContext ctx{rule, &m, &g};
    std::set<int> deleted_nodes;
    std::set<int> deleted_edges(m.edge_image.begin(), m.edge_image.end());
    std::map<int, int> iface_to_host; // interface number -> host node index
    for (std::size_t i = 0; i < rule.lhs.nodes.size(); ++i) {
        if (rule.lhs.nodes[i].iface < 0)
            deleted_nodes.insert(m.node_image[i]);
        else
            iface_to_host.emplace(rule.lhs.nodes[i].iface, m.node_image[i]);
    }

    // Final state of each surviving host node; interface nodes take the
    // instantiated right-hand label/mark/root.
    struct NodeState {
        ListValue label;
        NodeMark mark;
        bool rooted;
    };
    std::map<int, NodeState> survivors;
    for (int v = 0; v < g.node_count(); ++v) {
        if (deleted_nodes.count(v)) continue;
        const HostNode& n = g.node(v);
        survivors.emplace(v, NodeState{n.label, n.mark, n.rooted});
    }
    std::map<int, int> rhs_iface_host; // rhs node index -> host node index
    for (std::size_t i = 0; i < rule.rhs.nodes.size(); ++i) {
        const RuleNode& rn = rule.rhs.nodes[i];
        if (rn.iface < 0) continue;
        int host = iface_to_host.at(rn.iface);
        survivors.at(host) = NodeState{eval_label(rn.label, m.binding, ctx), rn.mark, rn.rooted};
        rhs_iface_host.emplace(static_cast<int>(i), host);
    }

    GraphBuilder b;
    b.seed_fresh(g.fresh_counter());
    std::map<int, int> host_to_new;
    for (auto& [v, state] : survivors) {
        host_to_new.emplace(v, b.add_node(g.node(v).id, state.label, state.mark, state.rooted));
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        if (deleted_edges.count(e)) continue;
        const HostEdge& he = g.edge(e);
        if (deleted_nodes.count(he.source) || deleted_nodes.count(he.target))
            throw EngineError("dangling edge survived rule application");
        b.add_edge(he.id, host_to_new.at(he.source), host_to_new.at(he.target), he.label, he.mark);
    }
    std::map<int, int> rhs_node_to_new;
    for (std::size_t i = 0; i < rule.rhs.nodes.size(); ++i) {
        const RuleNode& rn = rule.rhs.nodes[i];
        if (rn.iface >= 0) {
            rhs_node_to_new.emplace(static_cast<int>(i),
                                    host_to_new.at(rhs_iface_host.at(static_cast<int>(i))));
        } else {
            ListValue label = eval_label(rn.label, m.binding, ctx);
            rhs_node_to_new.emplace(
                static_cast<int>(i),
                b.add_node(b.fresh_node_id(), std::move(label), rn.mark, rn.rooted));
        }
    }
    for (const RuleEdge& re : rule.rhs.edges) {
        ListValue label = eval_label(re.label, m.binding, ctx);
        b.add_edge(b.fresh_edge_id(), rhs_node_to_new.at(re.source), rhs_node_to_new.at(re.target),
                   std::move(label), re.mark);
    }
    return b.freeze();
}

std::vector<HostGraph> apply_rule_set(const std::vector<const Rule*>& rules, const HostGraph& g) {
    std::map<std::string, HostGraph> by_key;
    for (const Rule* rule : rules) {
        for (const Match& m : find_matches(*rule, g)) {
            HostGraph h = apply_match(*rule, m, g);
            by_key.emplace(h.canonical_key(), std::move(h));
        }
    }
    std::vector<HostGraph> out;
    out.reserve(by_key.size());
    for (auto& [key, graph] : by_key) out.push_back(std::move(graph));
    return out;
}

} // namespace gp2
