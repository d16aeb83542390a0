#ifndef GP2_EXPLORER_HPP
#define GP2_EXPLORER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gp2/bigstep.hpp"
#include "gp2/smallstep.hpp"

namespace gp2 {

/// Bounded BFS image of the new transition system. States are merged by
/// configuration key (command structure + stack of canonical graph
/// keys), so keys identify configurations up to elementwise graph
/// isomorphism of the stacks.
struct StateSpace {
    struct State {
        ExtConfiguration config;
        int depth = 0;
        bool expanded = false;
    };

    std::string root_key;
    std::map<std::string, State> states;
    std::vector<std::tuple<std::string, StepLabel, std::string>> transitions;
    std::map<std::string, std::pair<std::string, StepLabel>> parent; // BFS tree
    bool frontier_exhausted = false;

    std::vector<std::pair<StepLabel, std::string>> outgoing(const std::string& key) const;
};

/// BFS over successors from ⟨P, [G]⟩. States at depth max_depth are
/// recorded but not expanded; hitting either bound sets
/// frontier_exhausted. Throws EvalError if a bound is not positive.
StateSpace explore(const RuleTable& rules, const CmdPtr& program, const HostGraph& graph,
                   int max_states, int max_depth);

/// ⟦P⟧G from an explored space: result graphs (terminal stacks all have
/// size 1), the fail flag, and the divergence verdict (cycle-definite
/// when a reachable cycle of non-terminal states certifies an infinite
/// run, fuel-possible when the frontier was cut).
OutcomeSet new_semantic_function(const StateSpace& space);
OutcomeSet new_semantic_function(const RuleTable& rules, const CmdPtr& program,
                                 const HostGraph& graph, int max_states, int max_depth);

/// Shortest label path (BFS tree) from the root to a state, if explored.
std::optional<std::vector<StepLabel>> witness_path(const StateSpace& space,
                                                   const std::string& state_key);

struct ComparisonBudgets {
    long old_fuel = 2000;
    int max_states = 4000;
    int max_depth = 400;
};

/// Old/new differential result: (a) containment of the old outcomes in
/// the new ones and (b) equality after removing bottom, qualified by
/// the exhausted flags. `violations` is filled only when both
/// explorations closed, i.e. when the checks are conclusive.
struct ComparisonReport {
    OutcomeSet old_set;
    OutcomeSet new_set;
    bool conclusive = false;
    bool containment_ok = true;
    bool equal_excluding_bottom = true;

    struct OutcomeRow {
        std::string outcome; // serialized graph, "fail", or "bottom"
        bool in_old = false;
        bool in_new = false;
    };
    std::vector<OutcomeRow> rows;

    struct Violation {
        std::string detail;
        std::vector<StepLabel> witness;
    };
    std::vector<Violation> violations;
};

ComparisonReport compare_semantics(const RuleTable& rules, const CmdPtr& program,
                                   const HostGraph& graph, const ComparisonBudgets& budgets);

/// Runtime audit of the metatheorems over an explored space:
/// non-blocking (expanded non-terminal states have successors), the
/// stack-size law |S| = #(P') + 1, terminal stacks of size 1, and
/// finite out-degree with nondeterminism only from or/call steps.
struct AuditReport {
    bool ok = true;
    std::vector<std::string> violations;
    int states_checked = 0;
    int max_out_degree = 0;
};

AuditReport audit_invariants(const StateSpace& space);

/// Certificate that an infinite run exists: a stem from the root and a
/// cycle of non-terminal states, both as (label, target-key) hops.
struct Lasso {
    std::string start_key;
    std::vector<std::pair<StepLabel, std::string>> stem;
    std::vector<std::pair<StepLabel, std::string>> cycle;
};

std::optional<Lasso> konig_witness(const StateSpace& space);

std::string to_dot(const StateSpace& space);

} // namespace gp2

#endif
