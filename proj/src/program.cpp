#include "gp2/program.hpp"

#include <cctype>
#include <set>

#include "gp2/lexer.hpp"

namespace gp2 {
namespace {

bool is_keyword(const std::string& s) {
    static const std::set<std::string> words = {"if",   "then", "else",  "try",  "or",
                                                "skip", "fail", "break", "where"};
    return words.count(s) > 0;
}

bool upper_start(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

struct ProgramParser {
    TokenCursor& cur;

    bool at_command_start() const {
        const Token& t = cur.peek();
        if (t.kind == TokKind::Sym) return t.text == "(" || t.text == "{";
        if (t.kind != TokKind::Ident) return false;
        if (t.text == "if" || t.text == "try" || t.text == "skip" || t.text == "fail" ||
            t.text == "break")
            return true;
        if (is_keyword(t.text)) return false;
        if (t.text == "Main") return false;
        // An identifier opens a command only if it is not itself the start
        // of the next declaration (`name =` or `name (`).
        if (cur.is_sym("=", 1) || cur.is_sym("(", 1)) return false;
        return true;
    }

    CmdPtr parse_command_seq() {
        CmdPtr first = parse_command();
        if (!cur.accept_sym(";")) return first;
        return make_seq(first, parse_command_seq());
    }

    CmdPtr parse_command() {
        SourceLoc loc = cur.peek().loc;
        if (cur.accept_ident("if")) {
            CmdPtr c = parse_block();
            if (!cur.accept_ident("then")) cur.fail("expected 'then'");
            CmdPtr t = parse_block();
            CmdPtr e;
            if (cur.accept_ident("else")) e = parse_block();
            return make_if(c, t, e, loc);
        }
        if (cur.accept_ident("try")) {
            CmdPtr c = parse_block();
            CmdPtr t, e;
            if (cur.accept_ident("then")) t = parse_block();
            if (cur.accept_ident("else")) e = parse_block();
            return make_try(c, t, e, loc);
        }
        return parse_block();
    }

    CmdPtr parse_block() {
        CmdPtr left = parse_block_primary();
        if (cur.accept_ident("or")) {
            SourceLoc loc = left->loc;
            return make_or(left, parse_block(), loc); // right-associative
        }
        return left;
    }

    CmdPtr parse_block_primary() {
        SourceLoc loc = cur.peek().loc;
        if (cur.accept_sym("(")) {
            CmdPtr inner = parse_command_seq();
            cur.expect_sym(")");
            if (cur.accept_sym("!")) return make_loop(inner, loc);
            return inner;
        }
        if (cur.accept_sym("{")) {
            std::vector<std::string> names;
            if (!cur.is_sym("}")) {
                names.push_back(parse_rule_name());
                while (cur.accept_sym(",")) names.push_back(parse_rule_name());
            }
            cur.expect_sym("}");
            CmdPtr call = make_rule_call(std::move(names), loc);
            if (cur.accept_sym("!")) return make_loop(call, loc);
            return call;
        }
        const Token& t = cur.peek();
        if (t.kind != TokKind::Ident) cur.fail("expected command");
        if (t.text == "break") {
            cur.next();
            return make_break(loc);
        }
        if (t.text == "skip") {
            cur.next();
            return make_skip(loc);
        }
        if (t.text == "fail") {
            cur.next();
            return make_fail(loc);
        }
        if (is_keyword(t.text) || t.text == "Main") cur.fail("expected command");
        cur.next();
        CmdPtr call = upper_start(t.text) ? make_proc_call(t.text, loc)
                                          : make_rule_call({t.text}, loc);
        if (cur.accept_sym("!")) return make_loop(call, loc);
        return call;
    }

    std::string parse_rule_name() {
        const Token& t = cur.expect_ident();
        if (is_keyword(t.text) || t.text == "Main")
            throw ParseError("'" + t.text + "' cannot name a rule", t.loc);
        if (upper_start(t.text))
            throw ParseError("rule set elements must be rules, and rule names start lower-case",
                             t.loc);
        return t.text;
    }

    ProcedureDecl parse_procedure_decl() {
        ProcedureDecl decl;
        const Token& name = cur.expect_ident();
        decl.name = name.text;
        decl.loc = name.loc;
        cur.expect_sym("=");
        if (cur.accept_sym("[")) {
            while (!cur.is_sym("]")) parse_local_decl(decl);
            cur.expect_sym("]");
        }
        decl.body = parse_command_seq();
        return decl;
    }

    void parse_local_decl(ProcedureDecl& into) {
        const Token& t = cur.peek();
        if (t.kind != TokKind::Ident) cur.fail("expected local declaration");
        if (cur.is_sym("(", 1)) {
            Rule r = parse_rule_decl(cur);
            for (const Rule& existing : into.local_rules)
                if (existing.name == r.name)
                    throw ParseError("duplicate local rule '" + r.name + "'", t.loc);
            into.local_rules.push_back(std::move(r));
            return;
        }
        if (cur.is_sym("=", 1)) {
            if (!upper_start(t.text))
                throw ParseError("procedure names start upper-case", t.loc);
            ProcedureDecl nested = parse_procedure_decl();
            for (const ProcedureDecl& existing : into.local_procedures)
                if (existing.name == nested.name)
                    throw ParseError("duplicate local procedure '" + nested.name + "'", t.loc);
            into.local_procedures.push_back(std::move(nested));
            return;
        }
        cur.fail("expected local declaration");
    }
};

} // namespace

CmdPtr parse_command_seq(std::string_view text) {
    TokenCursor cur(tokenize(text));
    ProgramParser p{cur};
    CmdPtr out = p.parse_command_seq();
    if (!cur.at_end()) cur.fail("trailing input after command sequence");
    return out;
}

ProgramDecl parse_program(std::string_view text) {
    TokenCursor cur(tokenize(text));
    ProgramParser p{cur};
    ProgramDecl program;
    bool have_main = false;
    while (!cur.at_end()) {
        const Token& t = cur.peek();
        if (t.kind != TokKind::Ident) cur.fail("expected declaration");
        if (t.text == "Main") {
            if (have_main) throw ParseError("duplicate Main declaration", t.loc);
            cur.next();
            cur.expect_sym("=");
            program.main = p.parse_command_seq();
            have_main = true;
            continue;
        }
        if (cur.is_sym("(", 1)) {
            SourceLoc loc = t.loc;
            Rule r = parse_rule_decl(cur);
            if (program.rules.count(r.name))
                throw ParseError("duplicate rule '" + r.name + "'", loc);
            program.rules.emplace(r.name, std::move(r));
            continue;
        }
        if (cur.is_sym("=", 1)) {
            if (!upper_start(t.text))
                throw ParseError("procedure names start upper-case", t.loc);
            ProcedureDecl decl = p.parse_procedure_decl();
            if (program.procedures.count(decl.name))
                throw ParseError("duplicate procedure '" + decl.name + "'", decl.loc);
            program.procedures.emplace(decl.name, std::move(decl));
            continue;
        }
        cur.fail("expected declaration");
    }
    if (!have_main) throw ParseError("program has no Main declaration", {});
    return program;
}

namespace {

struct Scope {
    std::map<std::string, std::string> rule_alias;          // visible rule name -> table name
    std::map<std::string, const ProcedureDecl*> procedures; // visible procedure name -> decl
};

struct Expander {
    RuleTable table;
    int rename_counter = 1;
    std::vector<std::string> active; // procedures on the expansion stack

    CmdPtr expand(const CmdPtr& cmd, const std::vector<Scope>& scopes) {
        switch (cmd->kind) {
            case CmdKind::RuleCall: {
                std::vector<std::string> resolved;
                for (const std::string& name : cmd->names) resolved.push_back(resolve_rule(name, scopes, cmd->loc));
                return make_rule_call(std::move(resolved), cmd->loc);
            }
            case CmdKind::ProcCall: {
                const std::string& name = cmd->names[0];
                const ProcedureDecl* decl = nullptr;
                for (auto it = scopes.rbegin(); it != scopes.rend() && !decl; ++it) {
                    auto found = it->procedures.find(name);
                    if (found != it->procedures.end()) decl = found->second;
                }
                if (!decl)
                    throw ParseError("unknown procedure '" + name + "'", cmd->loc);
                for (const std::string& a : active)
                    if (a == name)
                        throw ParseError("recursive procedure '" + name + "'", cmd->loc);
                active.push_back(name);
                std::vector<Scope> inner = scopes;
                inner.push_back(scope_for(*decl));
                CmdPtr body = expand(decl->body, inner);
                active.pop_back();
                return body;
            }
            case CmdKind::Seq:
                return make_seq(expand(cmd->a, scopes), expand(cmd->b, scopes));
            case CmdKind::Or:
                return make_or(expand(cmd->a, scopes), expand(cmd->b, scopes), cmd->loc);
            case CmdKind::If:
                return make_if(expand(cmd->a, scopes), expand(cmd->b, scopes),
                               cmd->c ? expand(cmd->c, scopes) : nullptr, cmd->loc);
            case CmdKind::Try:
                return make_try(expand(cmd->a, scopes),
                                cmd->b ? expand(cmd->b, scopes) : nullptr,
                                cmd->c ? expand(cmd->c, scopes) : nullptr, cmd->loc);
            case CmdKind::Loop:
                return make_loop(expand(cmd->a, scopes), cmd->loc);
            case CmdKind::Ite:
            case CmdKind::TryAux:
                throw ParseError("auxiliary construct in source program", cmd->loc);
            default:
                return cmd;
        }
    }

    std::string resolve_rule(const std::string& name, const std::vector<Scope>& scopes,
                             SourceLoc loc) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->rule_alias.find(name);
            if (found != it->rule_alias.end()) return found->second;
        }
        throw ParseError("unknown rule '" + name + "'", loc);
    }

    Scope scope_for(const ProcedureDecl& decl) {
        Scope s;
        for (const Rule& r : decl.local_rules) {
            std::string renamed = r.name + "$" + std::to_string(rename_counter++);
            Rule copy = r;
            copy.name = renamed;
            table.emplace(renamed, std::move(copy));
            s.rule_alias.emplace(r.name, renamed);
        }
        for (const ProcedureDecl& p : decl.local_procedures) s.procedures.emplace(p.name, &p);
        return s;
    }
};

} // namespace

Program expand_procedures(const ProgramDecl& program) {
    Expander ex;
    ex.table = program.rules;
    Scope global;
    for (const auto& [name, rule] : program.rules) global.rule_alias.emplace(name, name);
    for (const auto& [name, decl] : program.procedures) global.procedures.emplace(name, &decl);
    std::vector<Scope> scopes{std::move(global)};
    CmdPtr main = ex.expand(program.main, scopes);
    return Program{std::move(main), std::move(ex.table)};
}

namespace {

// in_loop: a loop encloses this position without an intervening
// branching-statement condition boundary.
std::optional<Diagnostic> walk_context(const CmdPtr& cmd, bool in_loop) {
    switch (cmd->kind) {
        case CmdKind::Break:
            if (!in_loop)
                return Diagnostic{"break without an enclosing loop", cmd->loc};
            return std::nullopt;
        case CmdKind::Loop:
            return walk_context(cmd->a, true);
        case CmdKind::Seq:
        case CmdKind::Or: {
            if (auto d = walk_context(cmd->a, in_loop)) return d;
            return walk_context(cmd->b, in_loop);
        }
        case CmdKind::If:
        case CmdKind::Try:
        case CmdKind::Ite:
        case CmdKind::TryAux: {
            if (auto d = walk_context(cmd->a, false)) return d; // condition boundary
            if (cmd->b)
                if (auto d = walk_context(cmd->b, in_loop)) return d;
            if (cmd->c)
                if (auto d = walk_context(cmd->c, in_loop)) return d;
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

} // namespace

std::optional<Diagnostic> check_context_conditions(const CmdPtr& command) {
    return walk_context(command, false);
}

} // namespace gp2
