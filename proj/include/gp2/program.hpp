#ifndef GP2_PROGRAM_HPP
#define GP2_PROGRAM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gp2/command.hpp"
#include "gp2/rules.hpp"

namespace gp2 {

struct ProcedureDecl {
    std::string name;
    std::vector<Rule> local_rules;
    std::vector<ProcedureDecl> local_procedures;
    CmdPtr body;
    SourceLoc loc;
};

/// A parsed program: exactly one Main, plus rule and procedure
/// declarations. Procedure calls are still unexpanded.
struct ProgramDecl {
    CmdPtr main;
    RuleTable rules;
    std::map<std::string, ProcedureDecl> procedures;
};

/// Main after macro expansion; local rules are renamed apart and merged
/// into the table.
struct Program {
    CmdPtr main;
    RuleTable rules;
};

/// Parses a `.gp2` program text: declarations in any order, one of them
/// `Main = CommandSeq`. Rule names start lower-case, procedure names
/// upper-case. Throws ParseError on syntax errors, duplicate
/// declarations, or a missing Main.
ProgramDecl parse_program(std::string_view text);

/// Replaces every procedure call by its body; local declarations are
/// renamed apart. Throws ParseError on recursive procedures or unknown
/// identifiers.
Program expand_procedures(const ProgramDecl& program);

struct Diagnostic {
    std::string message;
    SourceLoc loc;
};

/// Break-placement context condition: every break needs an enclosing
/// loop, and a break inside the condition of a branching statement
/// needs its loop within that same condition. Returns the first
/// offending position, or nullopt when the sequence is fine.
std::optional<Diagnostic> check_context_conditions(const CmdPtr& command);

/// Parses a command sequence alone (no declarations); used by tests.
CmdPtr parse_command_seq(std::string_view text);

} // namespace gp2

#endif
