#include "gp2/bigstep.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "gp2/diagnostics.hpp"

namespace gp2 {

std::string_view bottom_name(Bottom b) {
    switch (b) {
        case Bottom::Absent: return "absent";
        case Bottom::CycleDefinite: return "cycle-definite";
        case Bottom::FuelPossible: return "fuel-possible";
    }
    return "absent";
}

std::string render_old_configuration(const OldConfiguration& cfg) {
    switch (cfg.kind) {
        case OldConfiguration::Kind::Running:
            return render_command(cfg.command) + " , " + serialize_host_graph(*cfg.graph);
        case OldConfiguration::Kind::Graph:
            return serialize_host_graph(*cfg.graph);
        case OldConfiguration::Kind::Fail:
            return "fail";
    }
    return "?";
}

std::string old_configuration_key(const OldConfiguration& cfg) {
    switch (cfg.kind) {
        case OldConfiguration::Kind::Running:
            return "R|" + render_command(cfg.command) + "|" + cfg.graph->canonical_key();
        case OldConfiguration::Kind::Graph:
            return "G|" + cfg.graph->canonical_key();
        case OldConfiguration::Kind::Fail:
            return "F";
    }
    return "?";
}

namespace {

std::vector<const Rule*> resolve(const RuleTable& table, const std::vector<std::string>& names) {
    std::vector<const Rule*> out;
    out.reserve(names.size());
    for (const std::string& name : names) {
        auto it = table.find(name);
        if (it == table.end()) throw EngineError("call of undeclared rule '" + name + "'");
        out.push_back(&it->second);
    }
    return out;
}

void add_dedup(std::vector<HostGraph>& into, const HostGraph& g) {
    for (const HostGraph& h : into)
        if (h.canonical_key() == g.canonical_key()) return;
    into.push_back(g);
}

} // namespace

// Exhaustive bounded evaluation of ↝⁺/↝* premises: every terminal graph,
// fail, and break-termination reachable from ⟨command, g⟩.
BigStep::PremiseOutcome BigStep::evaluate(const CmdPtr& command, const HostGraph& g,
                                          Budget& premises) const {
    std::string memo_key = render_command(command) + "\x1f" + g.canonical_key();
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

    PremiseOutcome out;
    std::set<std::string> seen;
    std::deque<OldConfiguration> frontier;
    OldConfiguration root = OldConfiguration::running(command, g);
    seen.insert(old_configuration_key(root));
    frontier.push_back(std::move(root));

    while (!frontier.empty()) {
        if (!premises.take()) {
            out.exhausted = true;
            break;
        }
        OldConfiguration cfg = std::move(frontier.front());
        frontier.pop_front();
        if (cfg.kind == OldConfiguration::Kind::Graph) {
            add_dedup(out.graphs, *cfg.graph);
            continue;
        }
        if (cfg.kind == OldConfiguration::Kind::Fail) {
            out.fail = true;
            continue;
        }
        if (cfg.command->kind == CmdKind::Break) {
            add_dedup(out.breaks, *cfg.graph);
            continue;
        }
        SuccessorResult res = old_successors(cfg.command, *cfg.graph, premises);
        out.exhausted |= res.premise_exhausted;
        for (OldStep& step : res.steps) {
            std::string key = old_configuration_key(step.target);
            if (seen.insert(key).second) frontier.push_back(std::move(step.target));
        }
    }
    if (!frontier.empty()) out.exhausted = true;
    if (!out.exhausted) memo_.emplace(std::move(memo_key), out);
    return out;
}

BigStep::SuccessorResult BigStep::old_successors(const CmdPtr& command, const HostGraph& g,
                                                 long premise_budget) const {
    Budget b{premise_budget, false};
    return old_successors(command, g, b);
}

BigStep::SuccessorResult BigStep::old_successors(const CmdPtr& command, const HostGraph& g,
                                                 Budget& premises) const {
    SuccessorResult out;
    switch (command->kind) {
        case CmdKind::RuleCall: {
            std::vector<HostGraph> results = apply_rule_set(resolve(*rules_, command->names), g);
            if (results.empty()) {
                out.steps.push_back({"call2'", OldConfiguration::fail()});
            } else {
                for (HostGraph& h : results)
                    out.steps.push_back({"call1'", OldConfiguration::graph_result(std::move(h))});
            }
            break;
        }
        case CmdKind::Seq: {
            if (command->a->kind == CmdKind::Break) {
                out.steps.push_back({"break'", OldConfiguration::running(command->a, g)});
                break;
            }
            SuccessorResult first = old_successors(command->a, g, premises);
            out.premise_exhausted |= first.premise_exhausted;
            out.stuck = first.stuck;
            for (OldStep& st : first.steps) {
                switch (st.target.kind) {
                    case OldConfiguration::Kind::Running:
                        out.steps.push_back(
                            {st.label + "/seq1'",
                             OldConfiguration::running(make_seq(st.target.command, command->b),
                                                       *std::move(st.target.graph))});
                        break;
                    case OldConfiguration::Kind::Graph:
                        out.steps.push_back(
                            {st.label + "/seq2'",
                             OldConfiguration::running(command->b, *std::move(st.target.graph))});
                        break;
                    case OldConfiguration::Kind::Fail:
                        out.steps.push_back({st.label + "/seq3'", OldConfiguration::fail()});
                        break;
                }
            }
            break;
        }
        case CmdKind::Loop: {
            PremiseOutcome body = evaluate(command->a, g, premises);
            out.premise_exhausted |= body.exhausted;
            for (const HostGraph& h : body.graphs)
                out.steps.push_back({"alap1'", OldConfiguration::running(command, h)});
            if (body.fail)
                out.steps.push_back({"alap2'", OldConfiguration::graph_result(g)});
            for (const HostGraph& h : body.breaks)
                out.steps.push_back({"alap3'", OldConfiguration::graph_result(h)});
            out.stuck = out.steps.empty();
            break;
        }
        case CmdKind::If: {
            if (!command->c) {
                out.steps.push_back(
                    {"if3'", OldConfiguration::running(
                                 make_if(command->a, command->b, make_skip()), g)});
                break;
            }
            PremiseOutcome cond = evaluate(command->a, g, premises);
            out.premise_exhausted |= cond.exhausted;
            if (!cond.graphs.empty())
                out.steps.push_back({"if1'", OldConfiguration::running(command->b, g)});
            if (cond.fail)
                out.steps.push_back({"if2'", OldConfiguration::running(command->c, g)});
            out.stuck = out.steps.empty();
            break;
        }
        case CmdKind::Try: {
            if (command->b && command->c) {
                PremiseOutcome cond = evaluate(command->a, g, premises);
                out.premise_exhausted |= cond.exhausted;
                for (const HostGraph& h : cond.graphs)
                    out.steps.push_back({"try1'", OldConfiguration::running(command->b, h)});
                if (cond.fail)
                    out.steps.push_back({"try2'", OldConfiguration::running(command->c, g)});
                out.stuck = out.steps.empty();
            } else if (command->b) {
                out.steps.push_back(
                    {"try3'", OldConfiguration::running(
                                  make_try(command->a, command->b, make_skip()), g)});
            } else if (command->c) {
                out.steps.push_back(
                    {"try4'", OldConfiguration::running(
                                  make_try(command->a, make_skip(), command->c), g)});
            } else {
                out.steps.push_back(
                    {"try5'", OldConfiguration::running(
                                  make_try(command->a, make_skip(), make_skip()), g)});
            }
            break;
        }
        case CmdKind::Or:
            out.steps.push_back({"or1'", OldConfiguration::running(command->a, g)});
            out.steps.push_back({"or2'", OldConfiguration::running(command->b, g)});
            break;
        case CmdKind::Skip:
            out.steps.push_back({"skip'", OldConfiguration::graph_result(g)});
            break;
        case CmdKind::Fail:
            out.steps.push_back({"fail'", OldConfiguration::fail()});
            break;
        case CmdKind::Break:
            // a bare break is no transition by itself; it only witnesses alap3'
            out.stuck = true;
            break;
        case CmdKind::Ite:
        case CmdKind::TryAux:
            throw EngineError("auxiliary construct in the previous semantics");
        case CmdKind::ProcCall:
            throw EngineError("procedure call reached the semantics; expand first");
    }
    return out;
}

OutcomeSet BigStep::old_semantic_function(const CmdPtr& command, const HostGraph& g,
                                          long fuel) const {
    if (fuel <= 0) throw EvalError("fuel must be positive");
    parents_.clear();
    outcome_state_.clear();

    Budget premises{fuel * 8, false};
    OutcomeSet os;
    std::map<std::string, OldConfiguration> states;
    std::map<std::string, std::vector<std::pair<std::string, bool>>> edges; // key -> (succ, succ_nonterminal)
    std::deque<std::string> frontier;
    bool stuck_found = false;

    OldConfiguration root = OldConfiguration::running(command, g);
    std::string root_key = old_configuration_key(root);
    states.emplace(root_key, std::move(root));
    frontier.push_back(root_key);
    long expansions = 0;

    while (!frontier.empty()) {
        if (expansions >= fuel) {
            os.exhausted = true;
            break;
        }
        ++expansions;
        std::string key = frontier.front();
        frontier.pop_front();
        const OldConfiguration& cfg = states.at(key);
        if (cfg.kind == OldConfiguration::Kind::Graph) {
            add_dedup(os.graphs, *cfg.graph);
            outcome_state_.emplace("G|" + cfg.graph->canonical_key(), key);
            continue;
        }
        if (cfg.kind == OldConfiguration::Kind::Fail) {
            os.fail = true;
            outcome_state_.emplace("F", key);
            continue;
        }
        if (cfg.command->kind == CmdKind::Break) {
            // top-level ⟨break, H⟩: no inference rule applies
            stuck_found = true;
            continue;
        }
        SuccessorResult res = old_successors(cfg.command, *cfg.graph, premises);
        os.exhausted |= res.premise_exhausted;
        if (res.steps.empty()) {
            stuck_found = true;
            continue;
        }
        for (OldStep& step : res.steps) {
            std::string succ_key = old_configuration_key(step.target);
            bool nonterminal = step.target.kind == OldConfiguration::Kind::Running;
            edges[key].push_back({succ_key, nonterminal});
            if (!states.count(succ_key)) {
                parents_.emplace(succ_key, std::make_pair(key, step.label));
                states.emplace(succ_key, std::move(step.target));
                frontier.push_back(succ_key);
            }
        }
    }
    if (!frontier.empty()) os.exhausted = true;

    // cycle among non-terminal explored states => certified divergence
    std::map<std::string, int> color; // 0 new, 1 active, 2 done
    bool has_cycle = false;
    std::function<void(const std::string&)> visit = [&](const std::string& key) {
        color[key] = 1;
        auto it = edges.find(key);
        if (it != edges.end()) {
            for (const auto& [succ, nonterminal] : it->second) {
                if (!nonterminal || has_cycle) continue;
                int c = color[succ];
                if (c == 1)
                    has_cycle = true;
                else if (c == 0)
                    visit(succ);
            }
        }
        color[key] = 2;
    };
    for (const auto& [key, cfg] : states) {
        if (cfg.kind == OldConfiguration::Kind::Running && color[key] == 0 && !has_cycle)
            visit(key);
    }

    std::sort(os.graphs.begin(), os.graphs.end(), [](const HostGraph& a, const HostGraph& b) {
        return a.canonical_key() < b.canonical_key();
    });
    if (has_cycle || stuck_found)
        os.bottom = Bottom::CycleDefinite;
    else if (os.exhausted)
        os.bottom = Bottom::FuelPossible;
    return os;
}

namespace {
std::optional<std::vector<StepLabel>> chase_parents(
    const std::map<std::string, std::pair<std::string, StepLabel>>& parents,
    const std::map<std::string, std::string>& outcome_state, const std::string& outcome_key) {
    auto it = outcome_state.find(outcome_key);
    if (it == outcome_state.end()) return std::nullopt;
    std::vector<StepLabel> labels;
    std::string key = it->second;
    while (true) {
        auto p = parents.find(key);
        if (p == parents.end()) break;
        labels.push_back(p->second.second);
        key = p->second.first;
    }
    std::reverse(labels.begin(), labels.end());
    return labels;
}
} // namespace

std::optional<std::vector<StepLabel>> BigStep::witness_for_graph(const HostGraph& g) const {
    return chase_parents(parents_, outcome_state_, "G|" + g.canonical_key());
}

std::optional<std::vector<StepLabel>> BigStep::witness_for_fail() const {
    return chase_parents(parents_, outcome_state_, "F");
}

} // namespace gp2
