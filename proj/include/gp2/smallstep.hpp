#ifndef GP2_SMALLSTEP_HPP
#define GP2_SMALLSTEP_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gp2/command.hpp"
#include "gp2/engine.hpp"
#include "gp2/host_graph.hpp"

namespace gp2 {

/// Non-empty stack of host graphs; position 0 is the top (the current
/// host graph). pop removes the top, pop2 removes the second entry.
class GraphStack {
public:
    explicit GraphStack(HostGraph g) : items_{std::move(g)} {}

    const HostGraph& top() const { return items_.front(); }
    std::size_t size() const { return items_.size(); }
    const HostGraph& at(std::size_t i) const { return items_.at(i); }

    GraphStack pushed(HostGraph g) const;
    GraphStack popped() const;  // engine invariant: size >= 2
    GraphStack popped2() const; // engine invariant: size >= 2
    /// push(g, pop(S)) in one step, the [call1] stack action.
    GraphStack with_top(HostGraph g) const;

    friend bool operator==(const GraphStack& a, const GraphStack& b) {
        return a.items_ == b.items_;
    }

private:
    GraphStack() = default;
    std::vector<HostGraph> items_;
};

/// ⟨command, stack⟩, a terminal stack, or fail.
struct ExtConfiguration {
    enum class Kind { Running, Stack, Fail };
    Kind kind = Kind::Fail;
    CmdPtr command;                  // Running only
    std::optional<GraphStack> stack; // Running and Stack

    static ExtConfiguration running(CmdPtr cmd, GraphStack s) {
        return {Kind::Running, std::move(cmd), std::move(s)};
    }
    static ExtConfiguration stack_result(GraphStack s) {
        return {Kind::Stack, nullptr, std::move(s)};
    }
    static ExtConfiguration fail() { return {Kind::Fail, nullptr, std::nullopt}; }
};

bool is_terminal(const ExtConfiguration& cfg);

/// Name chain of the applied inference rule, premise-first: a step
/// derived by using [call1] as the premise of [try3] is "call1/try3".
using StepLabel = std::string;

struct Step {
    StepLabel label;
    ExtConfiguration target;
};

/// The transition relation: complete labelled successor sets of
/// non-terminal extended configurations. Pure; identical inputs give
/// the identical (canonically ordered) sequence.
class SmallStep {
public:
    explicit SmallStep(const RuleTable& rules) : rules_(&rules) {}

    std::vector<Step> successors(const CmdPtr& command, const GraphStack& stack) const;
    std::vector<Step> successors(const ExtConfiguration& cfg) const;

private:
    const RuleTable* rules_;
    std::vector<const Rule*> resolve(const std::vector<std::string>& names) const;
};

/// Picks the index of the next step among the successors.
using Chooser = std::function<std::size_t(const ExtConfiguration& current,
                                          const std::vector<Step>& options)>;

Chooser first_chooser();
Chooser random_chooser(std::uint64_t seed);
/// Consumes the scripted choices in order, then falls back to 0.
Chooser scripted_chooser(std::vector<std::size_t> choices);

struct TraceStep {
    StepLabel label;
    ExtConfiguration config;
};

struct Trace {
    ExtConfiguration start;
    std::vector<TraceStep> steps;
    bool cutoff = false;  // fuel ran out before a terminal configuration
    bool aborted = false; // chooser gave up (interactive EOF)

    const ExtConfiguration& last() const {
        return steps.empty() ? start : steps.back().config;
    }
};

/// Runs one path of the transition system from ⟨P, [G]⟩, following the
/// chooser at nondeterministic points, for at most `fuel` steps.
/// Precondition: P passed the context-condition check.
Trace run_trace(const RuleTable& rules, const CmdPtr& program, const HostGraph& graph,
                const Chooser& chooser, long fuel);

/// Fig. 5-style rendering: `<command> , [<graphs>]`, `[<graphs>]`, or `fail`.
std::string render_configuration(const ExtConfiguration& cfg);

/// State identity for exploration: command structure plus the sequence
/// of canonical keys of the stacked graphs.
std::string configuration_key(const ExtConfiguration& cfg);

} // namespace gp2

#endif
