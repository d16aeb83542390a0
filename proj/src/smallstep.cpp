#include "gp2/smallstep.hpp"

#include <random>

#include "gp2/diagnostics.hpp"

namespace gp2 {

GraphStack GraphStack::pushed(HostGraph g) const {
    GraphStack out;
    out.items_.reserve(items_.size() + 1);
    out.items_.push_back(std::move(g));
    out.items_.insert(out.items_.end(), items_.begin(), items_.end());
    return out;
}

GraphStack GraphStack::popped() const {
    if (items_.size() < 2) throw EngineError("pop on a stack of size " + std::to_string(items_.size()));
    GraphStack out;
    out.items_.assign(items_.begin() + 1, items_.end());
    return out;
}

GraphStack GraphStack::popped2() const {
    if (items_.size() < 2)
        throw EngineError("pop2 on a stack of size " + std::to_string(items_.size()));
    GraphStack out;
    out.items_.reserve(items_.size() - 1);
    out.items_.push_back(items_.front());
    out.items_.insert(out.items_.end(), items_.begin() + 2, items_.end());
    return out;
}

GraphStack GraphStack::with_top(HostGraph g) const {
    GraphStack out;
    out.items_ = items_;
    out.items_.front() = std::move(g);
    return out;
}

bool is_terminal(const ExtConfiguration& cfg) {
    return cfg.kind != ExtConfiguration::Kind::Running;
}

std::vector<const Rule*> SmallStep::resolve(const std::vector<std::string>& names) const {
    std::vector<const Rule*> out;
    out.reserve(names.size());
    for (const std::string& name : names) {
        auto it = rules_->find(name);
        if (it == rules_->end()) throw EngineError("call of undeclared rule '" + name + "'");
        out.push_back(&it->second);
    }
    return out;
}

std::vector<Step> SmallStep::successors(const CmdPtr& command, const GraphStack& stack) const {
    std::vector<Step> out;
    switch (command->kind) {
        case CmdKind::RuleCall: {
            std::vector<HostGraph> results = apply_rule_set(resolve(command->names), stack.top());
            if (results.empty()) {
                out.push_back({"call2", ExtConfiguration::fail()});
            } else {
                for (HostGraph& h : results)
                    out.push_back({"call1",
                                   ExtConfiguration::stack_result(stack.with_top(std::move(h)))});
            }
            break;
        }
        case CmdKind::Seq: {
            // the break axiom takes priority over the premise rules
            if (command->a->kind == CmdKind::Break) {
                out.push_back({"break", ExtConfiguration::running(command->a, stack)});
                break;
            }
            for (Step& st : successors(command->a, stack)) {
                switch (st.target.kind) {
                    case ExtConfiguration::Kind::Running:
                        out.push_back({st.label + "/seq1",
                                       ExtConfiguration::running(
                                           make_seq(st.target.command, command->b),
                                           *std::move(st.target.stack))});
                        break;
                    case ExtConfiguration::Kind::Stack:
                        out.push_back({st.label + "/seq2",
                                       ExtConfiguration::running(command->b,
                                                                 *std::move(st.target.stack))});
                        break;
                    case ExtConfiguration::Kind::Fail:
                        out.push_back({st.label + "/seq3", ExtConfiguration::fail()});
                        break;
                }
            }
            break;
        }
        case CmdKind::Loop:
            out.push_back({"alap1", ExtConfiguration::running(
                                        make_try(command->a, command, make_skip()), stack)});
            break;
        case CmdKind::If:
            if (command->c) {
                out.push_back({"if1", ExtConfiguration::running(
                                          make_ite(command->a, command->b, command->c),
                                          stack.pushed(stack.top()))});
            } else {
                out.push_back({"if5", ExtConfiguration::running(
                                          make_if(command->a, command->b, make_skip()), stack)});
            }
            break;
        case CmdKind::Try:
            if (command->b && command->c) {
                out.push_back({"try1", ExtConfiguration::running(
                                           make_try_aux(command->a, command->b, command->c),
                                           stack.pushed(stack.top()))});
            } else if (command->b) {
                out.push_back({"try5", ExtConfiguration::running(
                                           make_try(command->a, command->b, make_skip()), stack)});
            } else if (command->c) {
                out.push_back({"try6", ExtConfiguration::running(
                                           make_try(command->a, make_skip(), command->c), stack)});
            } else {
                out.push_back({"try7", ExtConfiguration::running(
                                           make_try(command->a, make_skip(), make_skip()), stack)});
            }
            break;
        case CmdKind::Ite: {
            for (Step& st : successors(command->a, stack)) {
                switch (st.target.kind) {
                    case ExtConfiguration::Kind::Running:
                        out.push_back({st.label + "/if2",
                                       ExtConfiguration::running(
                                           make_ite(st.target.command, command->b, command->c),
                                           *std::move(st.target.stack))});
                        break;
                    case ExtConfiguration::Kind::Stack:
                        out.push_back({st.label + "/if3",
                                       ExtConfiguration::running(command->b,
                                                                 st.target.stack->popped())});
                        break;
                    case ExtConfiguration::Kind::Fail:
                        out.push_back({st.label + "/if4",
                                       ExtConfiguration::running(command->c, stack.popped())});
                        break;
                }
            }
            break;
        }
        case CmdKind::TryAux: {
            if (command->a->kind == CmdKind::Break && command->b->kind == CmdKind::Loop &&
                command->c->kind == CmdKind::Skip) {
                out.push_back({"alap2", ExtConfiguration::stack_result(stack.popped2())});
                break;
            }
            for (Step& st : successors(command->a, stack)) {
                switch (st.target.kind) {
                    case ExtConfiguration::Kind::Running:
                        out.push_back({st.label + "/try2",
                                       ExtConfiguration::running(
                                           make_try_aux(st.target.command, command->b, command->c),
                                           *std::move(st.target.stack))});
                        break;
                    case ExtConfiguration::Kind::Stack:
                        out.push_back({st.label + "/try3",
                                       ExtConfiguration::running(command->b,
                                                                 st.target.stack->popped2())});
                        break;
                    case ExtConfiguration::Kind::Fail:
                        out.push_back({st.label + "/try4",
                                       ExtConfiguration::running(command->c, stack.popped())});
                        break;
                }
            }
            break;
        }
        case CmdKind::Or:
            out.push_back({"or1", ExtConfiguration::running(command->a, stack)});
            out.push_back({"or2", ExtConfiguration::running(command->b, stack)});
            break;
        case CmdKind::Skip:
            out.push_back({"skip", ExtConfiguration::stack_result(stack)});
            break;
        case CmdKind::Fail:
            out.push_back({"fail", ExtConfiguration::fail()});
            break;
        case CmdKind::Break:
            break; // no Fig. 4 rule concludes from a bare break
        case CmdKind::ProcCall:
            throw EngineError("procedure call reached the semantics; expand first");
    }
    return out;
}

std::vector<Step> SmallStep::successors(const ExtConfiguration& cfg) const {
    if (is_terminal(cfg)) throw EngineError("successors of a terminal configuration");
    return successors(cfg.command, *cfg.stack);
}

Chooser first_chooser() {
    return [](const ExtConfiguration&, const std::vector<Step>&) -> std::size_t { return 0; };
}

Chooser random_chooser(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng](const ExtConfiguration&, const std::vector<Step>& options) -> std::size_t {
        std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
        return dist(*rng);
    };
}

Chooser scripted_chooser(std::vector<std::size_t> choices) {
    auto state = std::make_shared<std::pair<std::vector<std::size_t>, std::size_t>>(
        std::move(choices), 0);
    return [state](const ExtConfiguration&, const std::vector<Step>& options) -> std::size_t {
        if (state->second >= state->first.size()) return 0;
        std::size_t pick = state->first[state->second++];
        return pick < options.size() ? pick : 0;
    };
}

Trace run_trace(const RuleTable& rules, const CmdPtr& program, const HostGraph& graph,
                const Chooser& chooser, long fuel) {
    if (fuel <= 0) throw EvalError("fuel must be positive");
    SmallStep engine(rules);
    Trace trace;
    trace.start = ExtConfiguration::running(program, GraphStack(graph));
    ExtConfiguration current = trace.start;
    for (long step = 0; step < fuel; ++step) {
        if (is_terminal(current)) return trace;
        std::vector<Step> options = engine.successors(current);
        if (options.empty())
            throw EngineError("non-terminal configuration with no successors: " +
                              render_configuration(current));
        std::size_t pick = chooser(current, options);
        if (pick == static_cast<std::size_t>(-1)) {
            trace.aborted = true;
            return trace;
        }
        if (pick >= options.size()) throw EngineError("chooser picked an invalid successor");
        current = options[pick].target;
        trace.steps.push_back(TraceStep{options[pick].label, current});
    }
    trace.cutoff = !is_terminal(current);
    return trace;
}

namespace {
std::string render_stack(const GraphStack& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += " ; ";
        out += serialize_host_graph(s.at(i));
    }
    return out + "]";
}
} // namespace

std::string render_configuration(const ExtConfiguration& cfg) {
    switch (cfg.kind) {
        case ExtConfiguration::Kind::Running:
            return render_command(cfg.command) + " , " + render_stack(*cfg.stack);
        case ExtConfiguration::Kind::Stack:
            return render_stack(*cfg.stack);
        case ExtConfiguration::Kind::Fail:
            return "fail";
    }
    return "?";
}

std::string configuration_key(const ExtConfiguration& cfg) {
    switch (cfg.kind) {
        case ExtConfiguration::Kind::Running: {
            std::string out = "R|" + render_command(cfg.command) + "|";
            for (std::size_t i = 0; i < cfg.stack->size(); ++i) {
                out += cfg.stack->at(i).canonical_key();
                out += "\x1f";
            }
            return out;
        }
        case ExtConfiguration::Kind::Stack: {
            std::string out = "S|";
            for (std::size_t i = 0; i < cfg.stack->size(); ++i) {
                out += cfg.stack->at(i).canonical_key();
                out += "\x1f";
            }
            return out;
        }
        case ExtConfiguration::Kind::Fail:
            return "F";
    }
    return "?";
}

} // namespace gp2
