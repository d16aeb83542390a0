#ifndef GP2_ENGINE_HPP
#define GP2_ENGINE_HPP

#include <map>
#include <vector>

#include "gp2/host_graph.hpp"
#include "gp2/rules.hpp"

namespace gp2 {

/// A binding of rule variables to constant lists.
struct Binding {
    std::map<std::string, ListValue> values;

    friend bool operator==(const Binding&, const Binding&) = default;
};

/// An injective occurrence of a rule's left side in a host graph.
struct Match {
    std::vector<int> node_image; // lhs node index -> host node index
    std::vector<int> edge_image; // lhs edge index -> host edge index
    Binding binding;

    friend bool operator==(const Match&, const Match&) = default;
};

/// All injective matches of `rule.lhs` in `g` whose instantiated labels
/// equal the host labels, whose marks and root flags agree, for which
/// the dangling condition holds and the application condition evaluates
/// to true. Deterministically ordered (candidates are tried in
/// ascending host id order).
std::vector<Match> find_matches(const Rule& rule, const HostGraph& g);

/// Dangling condition: every host node matched by an unnumbered lhs
/// node has all incident edges inside the match image.
bool check_dangling(const Rule& rule, const Match& m, const HostGraph& g);

/// Evaluates `c` under the match: indeg/outdeg/edge are computed on `g`
/// at the matched nodes, comparisons on instantiated values. A null
/// condition is vacuously true. Throws EvalError on a type mismatch.
bool eval_condition(const ConditionPtr& c, const Rule& rule, const Match& m, const HostGraph& g);

/// Applies the rule at a match that passed the dangling and condition
/// checks: deletes images of unnumbered lhs nodes and of all lhs edges,
/// relabels/re-marks interface nodes per the right side, and inserts
/// the right side's unnumbered nodes and all its edges under fresh ids.
/// `g` is not mutated. Throws EvalError on arithmetic overflow.
HostGraph apply_match(const Rule& rule, const Match& m, const HostGraph& g);

/// Union over all rules of all single-application results, deduplicated
/// up to isomorphism and ordered by canonical key. The empty result
/// means the call fails.
std::vector<HostGraph> apply_rule_set(const std::vector<const Rule*>& rules, const HostGraph& g);

} // namespace gp2

#endif
