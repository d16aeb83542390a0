#include "gp2/explorer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "gp2/diagnostics.hpp"

namespace gp2 {

std::vector<std::pair<StepLabel, std::string>> StateSpace::outgoing(
    const std::string& key) const {
    std::vector<std::pair<StepLabel, std::string>> out;
    for (const auto& [from, label, to] : transitions)
        if (from == key) out.push_back({label, to});
    return out;
}

StateSpace explore(const RuleTable& rules, const CmdPtr& program, const HostGraph& graph,
                   int max_states, int max_depth) {
    if (max_states <= 0 || max_depth <= 0) throw EvalError("exploration bounds must be positive");
    SmallStep engine(rules);
    StateSpace space;
    std::deque<std::string> frontier;

    ExtConfiguration root = ExtConfiguration::running(program, GraphStack(graph));
    space.root_key = configuration_key(root);
    space.states.emplace(space.root_key, StateSpace::State{std::move(root), 0, false});
    frontier.push_back(space.root_key);

    std::set<std::tuple<std::string, StepLabel, std::string>> seen_transitions;
    while (!frontier.empty()) {
        std::string key = frontier.front();
        frontier.pop_front();
        StateSpace::State& state = space.states.at(key);
        if (is_terminal(state.config)) {
            state.expanded = true;
            continue;
        }
        if (state.depth >= max_depth) {
            space.frontier_exhausted = true;
            continue;
        }
        std::vector<Step> steps = engine.successors(state.config);
        state.expanded = true;
        for (Step& step : steps) {
            std::string succ_key = configuration_key(step.target);
            auto found = space.states.find(succ_key);
            if (found == space.states.end()) {
                if (static_cast<int>(space.states.size()) >= max_states) {
                    space.frontier_exhausted = true;
                    continue;
                }
                space.states.emplace(succ_key,
                                     StateSpace::State{step.target, state.depth + 1, false});
                space.parent.emplace(succ_key, std::make_pair(key, step.label));
                frontier.push_back(succ_key);
            }
            if (seen_transitions.insert({key, step.label, succ_key}).second)
                space.transitions.push_back({key, step.label, succ_key});
        }
    }
    return space;
}

namespace {

bool has_nonterminal_cycle(const StateSpace& space) {
    // DFS colouring over non-terminal states only
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [from, label, to] : space.transitions) {
        auto it = space.states.find(to);
        if (it != space.states.end() && !is_terminal(it->second.config))
            adj[from].push_back(to);
    }
    std::map<std::string, int> color;
    bool found = false;
    std::function<void(const std::string&)> visit = [&](const std::string& key) {
        color[key] = 1;
        for (const std::string& succ : adj[key]) {
            if (found) return;
            int c = color[succ];
            if (c == 1)
                found = true;
            else if (c == 0)
                visit(succ);
        }
        color[key] = 2;
    };
    for (const auto& [key, state] : space.states) {
        if (found) break;
        if (!is_terminal(state.config) && color[key] == 0) visit(key);
    }
    return found;
}

} // namespace

OutcomeSet new_semantic_function(const StateSpace& space) {
    OutcomeSet os;
    for (const auto& [key, state] : space.states) {
        if (state.config.kind == ExtConfiguration::Kind::Stack) {
            if (state.config.stack->size() != 1)
                throw EngineError("terminal stack of size " +
                                  std::to_string(state.config.stack->size()));
            const HostGraph& g = state.config.stack->top();
            bool present = false;
            for (const HostGraph& h : os.graphs)
                if (h.canonical_key() == g.canonical_key()) present = true;
            if (!present) os.graphs.push_back(g);
        } else if (state.config.kind == ExtConfiguration::Kind::Fail) {
            os.fail = true;
        }
    }
    std::sort(os.graphs.begin(), os.graphs.end(), [](const HostGraph& a, const HostGraph& b) {
        return a.canonical_key() < b.canonical_key();
    });
    os.exhausted = space.frontier_exhausted;
    if (has_nonterminal_cycle(space))
        os.bottom = Bottom::CycleDefinite;
    else if (space.frontier_exhausted)
        os.bottom = Bottom::FuelPossible;
    return os;
}

OutcomeSet new_semantic_function(const RuleTable& rules, const CmdPtr& program,
                                 const HostGraph& graph, int max_states, int max_depth) {
    return new_semantic_function(explore(rules, program, graph, max_states, max_depth));
}

std::optional<std::vector<StepLabel>> witness_path(const StateSpace& space,
                                                   const std::string& state_key) {
    if (!space.states.count(state_key)) return std::nullopt;
    std::vector<StepLabel> labels;
    std::string key = state_key;
    while (key != space.root_key) {
        auto it = space.parent.find(key);
        if (it == space.parent.end()) return std::nullopt;
        labels.push_back(it->second.second);
        key = it->second.first;
    }
    std::reverse(labels.begin(), labels.end());
    return labels;
}

ComparisonReport compare_semantics(const RuleTable& rules, const CmdPtr& program,
                                   const HostGraph& graph, const ComparisonBudgets& budgets) {
    ComparisonReport report;
    BigStep old_engine(rules);
    report.old_set = old_engine.old_semantic_function(program, graph, budgets.old_fuel);
    StateSpace space = explore(rules, program, graph, budgets.max_states, budgets.max_depth);
    report.new_set = new_semantic_function(space);
    report.conclusive = !report.old_set.exhausted && !report.new_set.exhausted;

    auto new_witness = [&](const HostGraph& g) -> std::vector<StepLabel> {
        std::string key = "S|" + g.canonical_key() + "\x1f";
        if (auto w = witness_path(space, key)) return *w;
        return {};
    };
    auto old_witness = [&](const HostGraph& g) -> std::vector<StepLabel> {
        if (auto w = old_engine.witness_for_graph(g)) return *w;
        return {};
    };

    // per-outcome membership rows over the union of both graph sets
    std::map<std::string, std::pair<const HostGraph*, std::pair<bool, bool>>> membership;
    for (const HostGraph& g : report.old_set.graphs)
        membership[g.canonical_key()] = {&g, {true, report.new_set.contains_graph(g)}};
    for (const HostGraph& g : report.new_set.graphs) {
        auto it = membership.find(g.canonical_key());
        if (it == membership.end())
            membership[g.canonical_key()] = {&g, {false, true}};
    }
    for (const auto& [key, entry] : membership) {
        report.rows.push_back(ComparisonReport::OutcomeRow{
            serialize_host_graph(*entry.first), entry.second.first, entry.second.second});
    }
    report.rows.push_back(
        ComparisonReport::OutcomeRow{"fail", report.old_set.fail, report.new_set.fail});
    report.rows.push_back(ComparisonReport::OutcomeRow{"bottom",
                                                       report.old_set.bottom != Bottom::Absent,
                                                       report.new_set.bottom != Bottom::Absent});

    // (a) old ⊆ new, (b) equality excluding bottom — conclusive only on
    // closed explorations
    for (const HostGraph& g : report.old_set.graphs) {
        if (!report.new_set.contains_graph(g)) {
            report.containment_ok = false;
            report.equal_excluding_bottom = false;
            if (report.conclusive)
                report.violations.push_back(
                    {"graph outcome only in the previous semantics: " + serialize_host_graph(g),
                     old_witness(g)});
        }
    }
    for (const HostGraph& g : report.new_set.graphs) {
        if (!report.old_set.contains_graph(g)) {
            report.equal_excluding_bottom = false;
            if (report.conclusive)
                report.violations.push_back(
                    {"graph outcome only in the new semantics: " + serialize_host_graph(g),
                     new_witness(g)});
        }
    }
    if (report.old_set.fail != report.new_set.fail) {
        report.equal_excluding_bottom = false;
        if (report.old_set.fail) report.containment_ok = false;
        if (report.conclusive) {
            std::vector<StepLabel> witness;
            if (report.new_set.fail) {
                if (auto w = witness_path(space, "F")) witness = *w;
            } else if (auto w = old_engine.witness_for_fail()) {
                witness = *w;
            }
            report.violations.push_back(
                {std::string("fail outcome only in the ") +
                     (report.old_set.fail ? "previous" : "new") + " semantics",
                 witness});
        }
    }
    if (report.old_set.bottom != Bottom::Absent && report.new_set.bottom == Bottom::Absent) {
        report.containment_ok = false;
        if (report.conclusive)
            report.violations.push_back(
                {"bottom outcome in the previous semantics is missing from the new one", {}});
    }
    return report;
}

AuditReport audit_invariants(const StateSpace& space) {
    AuditReport report;
    std::map<std::string, std::vector<StepLabel>> out_labels;
    for (const auto& [from, label, to] : space.transitions) out_labels[from].push_back(label);

    for (const auto& [key, state] : space.states) {
        ++report.states_checked;
        const auto& labels = out_labels[key];
        int outdeg = static_cast<int>(labels.size());
        report.max_out_degree = std::max(report.max_out_degree, outdeg);

        if (state.config.kind == ExtConfiguration::Kind::Running) {
            int expected = count_ite_try(state.config.command) + 1;
            int actual = static_cast<int>(state.config.stack->size());
            if (actual != expected)
                report.violations.push_back("stack-size law broken at " + key + ": |S|=" +
                                            std::to_string(actual) + " but #(P')+1=" +
                                            std::to_string(expected));
            if (state.expanded && outdeg == 0)
                report.violations.push_back("non-blocking broken: expanded non-terminal state " +
                                            key + " has no successors");
        } else if (state.config.kind == ExtConfiguration::Kind::Stack) {
            if (state.config.stack->size() != 1)
                report.violations.push_back("terminal stack at " + key + " has size " +
                                            std::to_string(state.config.stack->size()));
        }
        if (outdeg > 2) {
            // more than two successors may only come from rule matching
            for (const StepLabel& label : labels) {
                if (label.rfind("call1", 0) != 0) {
                    report.violations.push_back(
                        "out-degree " + std::to_string(outdeg) + " at " + key +
                        " includes non-call nondeterminism (label " + label + ")");
                    break;
                }
            }
        } else if (outdeg == 2) {
            auto base = [](const StepLabel& l) { return l.substr(0, l.find('/')); };
            std::string a = base(labels[0]), b = base(labels[1]);
            bool or_pair = (a == "or1" && b == "or2") || (a == "or2" && b == "or1");
            bool call_pair = a == "call1" && b == "call1";
            if (!or_pair && !call_pair)
                report.violations.push_back("unexpected branching at " + key + ": " + labels[0] +
                                            " / " + labels[1]);
        }
    }
    report.ok = report.violations.empty();
    return report;
}

std::optional<Lasso> konig_witness(const StateSpace& space) {
    // DFS from the root over non-terminal states, tracking the active path.
    std::map<std::string, std::vector<std::pair<StepLabel, std::string>>> adj;
    for (const auto& [from, label, to] : space.transitions) {
        auto it = space.states.find(to);
        if (it != space.states.end() && !is_terminal(it->second.config))
            adj[from].push_back({label, to});
    }
    std::map<std::string, int> color;
    std::vector<std::pair<StepLabel, std::string>> path; // hops from root
    std::optional<Lasso> result;

    std::function<void(const std::string&)> visit = [&](const std::string& key) {
        color[key] = 1;
        for (const auto& [label, succ] : adj[key]) {
            if (result) return;
            int c = color[succ];
            if (c == 1) {
                // found a back edge: split the active path at succ
                Lasso lasso;
                lasso.start_key = space.root_key;
                std::size_t cycle_start = path.size();
                std::string at = space.root_key;
                for (std::size_t i = 0; i <= path.size(); ++i) {
                    if (at == succ) {
                        cycle_start = i;
                        break;
                    }
                    if (i < path.size()) at = path[i].second;
                }
                lasso.stem.assign(path.begin(), path.begin() + cycle_start);
                lasso.cycle.assign(path.begin() + cycle_start, path.end());
                lasso.cycle.push_back({label, succ});
                result = std::move(lasso);
                return;
            }
            if (c == 0) {
                path.push_back({label, succ});
                visit(succ);
                path.pop_back();
                if (result) return;
            }
        }
        color[key] = 2;
    };
    auto root_it = space.states.find(space.root_key);
    if (root_it == space.states.end() || is_terminal(root_it->second.config)) return std::nullopt;
    visit(space.root_key);
    return result;
}

std::string to_dot(const StateSpace& space) {
    std::ostringstream out;
    out << "digraph statespace {\n";
    out << "  rankdir=LR;\n";
    std::map<std::string, int> ids;
    for (const auto& [key, state] : space.states) {
        int id = static_cast<int>(ids.size());
        ids.emplace(key, id);
        std::string label = render_configuration(state.config);
        std::string escaped;
        for (char c : label) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        out << "  n" << id << " [label=\"" << escaped << "\"";
        if (is_terminal(state.config)) out << ", shape=doublecircle";
        if (key == space.root_key) out << ", penwidth=2";
        out << "];\n";
    }
    for (const auto& [from, label, to] : space.transitions)
        out << "  n" << ids.at(from) << " -> n" << ids.at(to) << " [label=\"" << label << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace gp2
