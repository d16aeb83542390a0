#ifndef GP2_BIGSTEP_HPP
#define GP2_BIGSTEP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gp2/command.hpp"
#include "gp2/engine.hpp"
#include "gp2/host_graph.hpp"
#include "gp2/smallstep.hpp" // StepLabel

namespace gp2 {

/// ⟨command, graph⟩, a terminal graph, or fail — no stacks, no ITE/TRY.
struct OldConfiguration {
    enum class Kind { Running, Graph, Fail };
    Kind kind = Kind::Fail;
    CmdPtr command;
    std::optional<HostGraph> graph; // Running and Graph

    static OldConfiguration running(CmdPtr cmd, HostGraph g) {
        return {Kind::Running, std::move(cmd), std::move(g)};
    }
    static OldConfiguration graph_result(HostGraph g) {
        return {Kind::Graph, nullptr, std::move(g)};
    }
    static OldConfiguration fail() { return {Kind::Fail, nullptr, std::nullopt}; }
};

std::string render_old_configuration(const OldConfiguration& cfg);
std::string old_configuration_key(const OldConfiguration& cfg);

/// Divergence verdict of a semantic-function computation. `Definite`
/// covers a certified cycle of configurations and (in the previous
/// semantics only) a stuck configuration; the serialized name stays
/// "cycle-definite".
enum class Bottom { Absent, CycleDefinite, FuelPossible };

/// ⟦P⟧G / [P]G restricted to a budget: terminal graphs up to
/// isomorphism, the fail flag, the bottom verdict, and whether any part
/// of the search was cut off before closure.
struct OutcomeSet {
    std::vector<HostGraph> graphs; // deduplicated by canonical key, key-ordered
    bool fail = false;
    Bottom bottom = Bottom::Absent;
    bool exhausted = false;

    bool contains_graph(const HostGraph& g) const {
        for (const HostGraph& h : graphs)
            if (h.canonical_key() == g.canonical_key()) return true;
        return false;
    }
};

struct OldStep {
    StepLabel label;
    OldConfiguration target;
};

/// Previous GP 2 semantics ↝. Big-step premises (↝⁺ and ↝*) are
/// discharged by bounded recursive evaluation against a shared premise
/// budget, so the relation is total at the price of an `exhausted`
/// qualifier.
class BigStep {
public:
    explicit BigStep(const RuleTable& rules) : rules_(&rules) {}

    struct Budget {
        long remaining = 0;
        bool ran_out = false;
        bool take() {
            if (remaining <= 0) {
                ran_out = true;
                return false;
            }
            --remaining;
            return true;
        }
    };

    struct SuccessorResult {
        std::vector<OldStep> steps;
        bool stuck = false;             // non-terminal, no rule applicable
        bool premise_exhausted = false; // verdict may change with more fuel
    };

    /// One-step successors of ⟨command, g⟩ with premises evaluated
    /// against `premises`.
    SuccessorResult old_successors(const CmdPtr& command, const HostGraph& g,
                                   Budget& premises) const;

    /// Convenience overload with a private budget.
    SuccessorResult old_successors(const CmdPtr& command, const HostGraph& g,
                                   long premise_budget) const;

    /// [P]G bounded by `fuel` top-level expansions (premises share a
    /// pool of fuel * 8). Bottom is CycleDefinite when a cycle of
    /// non-terminal configurations is reachable or a configuration is
    /// stuck, FuelPossible when the search was merely cut off.
    OutcomeSet old_semantic_function(const CmdPtr& command, const HostGraph& g, long fuel) const;

    /// Shortest label path from ⟨P,G⟩ to the outcome found by the last
    /// old_semantic_function call on this engine, if any.
    std::optional<std::vector<StepLabel>> witness_for_graph(const HostGraph& g) const;
    std::optional<std::vector<StepLabel>> witness_for_fail() const;

private:
    struct PremiseOutcome {
        std::vector<HostGraph> graphs;
        std::vector<HostGraph> breaks; // graphs reached as ⟨break, H⟩
        bool fail = false;
        bool exhausted = false;
    };

    PremiseOutcome evaluate(const CmdPtr& command, const HostGraph& g, Budget& premises) const;

    const RuleTable* rules_;
    mutable std::map<std::string, PremiseOutcome> memo_; // closed results only
    mutable std::map<std::string, std::pair<std::string, StepLabel>> parents_;
    mutable std::map<std::string, std::string> outcome_state_; // outcome key -> state key
};

std::string_view bottom_name(Bottom b);

} // namespace gp2

#endif
