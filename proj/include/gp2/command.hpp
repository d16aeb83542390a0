#ifndef GP2_COMMAND_HPP
#define GP2_COMMAND_HPP

#include <memory>
#include <string>
#include <vector>

#include "gp2/diagnostics.hpp"

namespace gp2 {

/// Abstract syntax of (extended) command sequences. Ite and TryAux are
/// the run-time auxiliary constructs; they never occur in parsed
/// programs. ProcCall survives only until procedure expansion.
enum class CmdKind {
    RuleCall, // names
    ProcCall, // names[0]
    Seq,      // a; b  (a is never itself a Seq)
    Or,       // a or b
    If,       // if a then b [else c]
    Try,      // try a [then b] [else c]
    Ite,      // ITE(a, b, c)
    TryAux,   // TRY(a, b, c)
    Loop,     // a!
    Break,
    Skip,
    Fail,
};

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

struct Cmd {
    CmdKind kind;
    std::vector<std::string> names;
    CmdPtr a, b, c;
    SourceLoc loc;
};

CmdPtr make_rule_call(std::vector<std::string> names, SourceLoc loc = {});
CmdPtr make_proc_call(std::string name, SourceLoc loc = {});
/// Right-nests so that the first component is never a composition.
CmdPtr make_seq(CmdPtr first, CmdPtr rest);
CmdPtr make_or(CmdPtr left, CmdPtr right, SourceLoc loc = {});
CmdPtr make_if(CmdPtr cond, CmdPtr then_part, CmdPtr else_part /*may be null*/,
               SourceLoc loc = {});
CmdPtr make_try(CmdPtr cond, CmdPtr then_part /*may be null*/, CmdPtr else_part /*may be null*/,
                SourceLoc loc = {});
CmdPtr make_ite(CmdPtr cond, CmdPtr then_part, CmdPtr else_part);
CmdPtr make_try_aux(CmdPtr cond, CmdPtr then_part, CmdPtr else_part);
CmdPtr make_loop(CmdPtr body, SourceLoc loc = {});
CmdPtr make_break(SourceLoc loc = {});
CmdPtr make_skip(SourceLoc loc = {});
CmdPtr make_fail(SourceLoc loc = {});

bool commands_equal(const CmdPtr& a, const CmdPtr& b);

/// Concrete-syntax rendering; for parsed programs, parsing the result
/// gives back an equal tree. ITE/TRY render in the paper's functional
/// notation and are not re-parseable (they have no surface syntax).
std::string render_command(const CmdPtr& cmd);

/// Combined number of ITE and TRY statements in the term.
int count_ite_try(const CmdPtr& cmd);

bool contains_proc_call(const CmdPtr& cmd);

} // namespace gp2

#endif
