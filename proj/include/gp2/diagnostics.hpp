#ifndef GP2_DIAGNOSTICS_HPP
#define GP2_DIAGNOSTICS_HPP

#include <stdexcept>
#include <string>

namespace gp2 {

struct SourceLoc {
    int line = 0;
    int column = 0;
};

/// Syntax or static-semantics error in a program, rule, or host-graph text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourceLoc loc)
        : std::runtime_error(format(message, loc)), loc_(loc), raw_(std::move(message)) {}

    SourceLoc where() const { return loc_; }
    const std::string& detail() const { return raw_; }

private:
    static std::string format(const std::string& message, SourceLoc loc) {
        return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message;
    }
    SourceLoc loc_;
    std::string raw_;
};

/// Violation of an engine-internal invariant (e.g. pop on a too-short
/// stack). Indicates a bug in the engine, not a failing GP 2 program.
class EngineError : public std::logic_error {
public:
    explicit EngineError(const std::string& message) : std::logic_error(message) {}
};

/// Run-time failure of the whole program run, distinct from GP 2 `fail`
/// (currently: 64-bit overflow while instantiating a right-hand label).
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace gp2

#endif
