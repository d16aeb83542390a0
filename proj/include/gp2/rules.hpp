#ifndef GP2_RULES_HPP
#define GP2_RULES_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gp2/host_graph.hpp"

namespace gp2 {

enum class VarType { Int, Char, String, Atom, List };

std::string_view var_type_name(VarType t);

struct Variable {
    std::string name;
    VarType type = VarType::List;
};

/// One term of a label expression. Indeg/Outdeg appear only inside
/// application conditions.
struct LabelTerm {
    enum class Kind { IntConst, StrConst, Var, Add, Sub, Mul, Indeg, Outdeg };
    Kind kind = Kind::IntConst;
    std::int64_t int_value = 0;
    std::string text;  // variable name / string body
    int iface = -1;    // Indeg/Outdeg argument
    std::shared_ptr<const LabelTerm> lhs, rhs;

    bool is_arithmetic() const {
        return kind == Kind::Add || kind == Kind::Sub || kind == Kind::Mul;
    }
};

/// A label in a rule graph: the concatenation of terms (x:y:1). The
/// empty sequence denotes `empty`.
struct LabelExpr {
    std::vector<LabelTerm> terms;
};

struct RuleNode {
    std::string id;
    int iface = -1; // interface number, -1 when unnumbered
    LabelExpr label;
    NodeMark mark = NodeMark::None;
    bool rooted = false;
};

struct RuleEdge {
    std::string id;
    int source = -1;
    int target = -1;
    LabelExpr label;
    EdgeMark mark = EdgeMark::None;
};

struct RuleGraph {
    std::vector<RuleNode> nodes;
    std::vector<RuleEdge> edges;

    std::optional<int> node_with_iface(int iface) const {
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (nodes[i].iface == iface) return i;
        return std::nullopt;
    }
};

/// Application condition: indeg/outdeg/edge predicates, list and
/// integer comparisons, and not/and/or.
struct Condition {
    enum class Kind { Not, And, Or, Compare, EdgePred };
    enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

    Kind kind = Kind::Compare;
    std::shared_ptr<const Condition> a, b;
    CmpOp op = CmpOp::Eq;
    LabelExpr cmp_lhs, cmp_rhs;
    int edge_from = -1, edge_to = -1;
};

using ConditionPtr = std::shared_ptr<const Condition>;

struct Rule {
    std::string name;
    std::vector<Variable> variables;
    RuleGraph lhs, rhs;
    ConditionPtr condition; // null when absent

    std::optional<VarType> var_type(const std::string& name) const {
        for (const Variable& v : variables)
            if (v.name == name) return v.type;
        return std::nullopt;
    }
};

using RuleTable = std::map<std::string, Rule>;

/// Parses one rule declaration starting at the cursor:
///   name '(' vardecls ')' '=' graph '=>' graph ('where' cond)?
/// Graphs use the host-graph grammar extended with `@n` interface
/// numbers after node ids and label expressions in place of constant
/// lists. Checks the structural invariants (variables declared once and
/// used from the left side, no composite arithmetic and at most one
/// list variable per left label, matching interface sets).
class TokenCursor;
Rule parse_rule_decl(TokenCursor& cur);

/// Convenience wrapper for a standalone rule text.
Rule parse_rule(std::string_view text);

std::string render_condition(const Condition& c);
std::string render_label_expr(const LabelExpr& e);

} // namespace gp2

#endif
