#include "gp2/command.hpp"

namespace gp2 {

namespace {
CmdPtr node(CmdKind kind, std::vector<std::string> names, CmdPtr a, CmdPtr b, CmdPtr c,
            SourceLoc loc) {
    auto p = std::make_shared<Cmd>();
    p->kind = kind;
    p->names = std::move(names);
    p->a = std::move(a);
    p->b = std::move(b);
    p->c = std::move(c);
    p->loc = loc;
    return p;
}
} // namespace

CmdPtr make_rule_call(std::vector<std::string> names, SourceLoc loc) {
    return node(CmdKind::RuleCall, std::move(names), nullptr, nullptr, nullptr, loc);
}
CmdPtr make_proc_call(std::string name, SourceLoc loc) {
    return node(CmdKind::ProcCall, {std::move(name)}, nullptr, nullptr, nullptr, loc);
}
CmdPtr make_seq(CmdPtr first, CmdPtr rest) {
    if (first->kind == CmdKind::Seq)
        return make_seq(first->a, make_seq(first->b, std::move(rest)));
    SourceLoc loc = first->loc;
    return node(CmdKind::Seq, {}, std::move(first), std::move(rest), nullptr, loc);
}
CmdPtr make_or(CmdPtr left, CmdPtr right, SourceLoc loc) {
    return node(CmdKind::Or, {}, std::move(left), std::move(right), nullptr, loc);
}
CmdPtr make_if(CmdPtr cond, CmdPtr then_part, CmdPtr else_part, SourceLoc loc) {
    return node(CmdKind::If, {}, std::move(cond), std::move(then_part), std::move(else_part), loc);
}
CmdPtr make_try(CmdPtr cond, CmdPtr then_part, CmdPtr else_part, SourceLoc loc) {
    return node(CmdKind::Try, {}, std::move(cond), std::move(then_part), std::move(else_part),
                loc);
}
CmdPtr make_ite(CmdPtr cond, CmdPtr then_part, CmdPtr else_part) {
    return node(CmdKind::Ite, {}, std::move(cond), std::move(then_part), std::move(else_part), {});
}
CmdPtr make_try_aux(CmdPtr cond, CmdPtr then_part, CmdPtr else_part) {
    return node(CmdKind::TryAux, {}, std::move(cond), std::move(then_part), std::move(else_part),
                {});
}
CmdPtr make_loop(CmdPtr body, SourceLoc loc) {
    return node(CmdKind::Loop, {}, std::move(body), nullptr, nullptr, loc);
}
CmdPtr make_break(SourceLoc loc) { return node(CmdKind::Break, {}, nullptr, nullptr, nullptr, loc); }
CmdPtr make_skip(SourceLoc loc) { return node(CmdKind::Skip, {}, nullptr, nullptr, nullptr, loc); }
CmdPtr make_fail(SourceLoc loc) { return node(CmdKind::Fail, {}, nullptr, nullptr, nullptr, loc); }

bool commands_equal(const CmdPtr& a, const CmdPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->names != b->names) return false;
    return commands_equal(a->a, b->a) && commands_equal(a->b, b->b) && commands_equal(a->c, b->c);
}

namespace {

bool needs_parens_as_block(const CmdPtr& c) {
    switch (c->kind) {
        case CmdKind::Seq:
        case CmdKind::If:
        case CmdKind::Try:
            return true;
        default:
            return false;
    }
}

std::string render_block(const CmdPtr& c, bool parenthesize_or) {
    if (needs_parens_as_block(c) || (parenthesize_or && c->kind == CmdKind::Or))
        return "(" + render_command(c) + ")";
    return render_command(c);
}

} // namespace

std::string render_command(const CmdPtr& cmd) {
    switch (cmd->kind) {
        case CmdKind::RuleCall: {
            if (cmd->names.size() == 1) return cmd->names[0];
            std::string out = "{";
            for (std::size_t i = 0; i < cmd->names.size(); ++i) {
                if (i) out += ", ";
                out += cmd->names[i];
            }
            return out + "}";
        }
        case CmdKind::ProcCall: return cmd->names[0];
        case CmdKind::Seq: return render_command(cmd->a) + "; " + render_command(cmd->b);
        case CmdKind::Or:
            // right-associative: parenthesize an `or` on the left only
            return render_block(cmd->a, true) + " or " + render_block(cmd->b, false);
        case CmdKind::If: {
            std::string out =
                "if " + render_block(cmd->a, false) + " then " + render_block(cmd->b, false);
            if (cmd->c) out += " else " + render_block(cmd->c, false);
            return out;
        }
        case CmdKind::Try: {
            std::string out = "try " + render_block(cmd->a, false);
            if (cmd->b) out += " then " + render_block(cmd->b, false);
            if (cmd->c) out += " else " + render_block(cmd->c, false);
            return out;
        }
        case CmdKind::Ite:
            return "ITE(" + render_command(cmd->a) + ", " + render_command(cmd->b) + ", " +
                   render_command(cmd->c) + ")";
        case CmdKind::TryAux:
            return "TRY(" + render_command(cmd->a) + ", " + render_command(cmd->b) + ", " +
                   render_command(cmd->c) + ")";
        case CmdKind::Loop: {
            const CmdPtr& body = cmd->a;
            if (body->kind == CmdKind::RuleCall || body->kind == CmdKind::ProcCall)
                return render_command(body) + "!";
            return "(" + render_command(body) + ")!";
        }
        case CmdKind::Break: return "break";
        case CmdKind::Skip: return "skip";
        case CmdKind::Fail: return "fail";
    }
    return "?";
}

int count_ite_try(const CmdPtr& cmd) {
    if (!cmd) return 0;
    int self = (cmd->kind == CmdKind::Ite || cmd->kind == CmdKind::TryAux) ? 1 : 0;
    return self + count_ite_try(cmd->a) + count_ite_try(cmd->b) + count_ite_try(cmd->c);
}

bool contains_proc_call(const CmdPtr& cmd) {
    if (!cmd) return false;
    if (cmd->kind == CmdKind::ProcCall) return true;
    return contains_proc_call(cmd->a) || contains_proc_call(cmd->b) || contains_proc_call(cmd->c);
}

} // namespace gp2
