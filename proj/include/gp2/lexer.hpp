#ifndef GP2_LEXER_HPP
#define GP2_LEXER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/diagnostics.hpp"

namespace gp2 {

enum class TokKind { End, Ident, Int, Str, Sym };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;         // identifier text, symbol spelling, or string body
    std::int64_t int_value = 0;
    SourceLoc loc;
};

/// Shared tokenizer for host graphs, rules, and programs. Recognizes
/// identifiers, unsigned integer literals, double-quoted strings
/// (no escapes), `//` line comments, and the symbols
///   ( ) [ ] { } | , ; : @ # ! * + - / . = => != < <= > >=
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token stream with one-token lookahead helpers.
class TokenCursor {
public:
    explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos_ + static_cast<std::size_t>(ahead);
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == TokKind::End; }

    bool is_sym(std::string_view s, int ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokKind::Sym && t.text == s;
    }
    bool is_ident(std::string_view s, int ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokKind::Ident && t.text == s;
    }
    bool accept_sym(std::string_view s) {
        if (!is_sym(s)) return false;
        next();
        return true;
    }
    bool accept_ident(std::string_view s) {
        if (!is_ident(s)) return false;
        next();
        return true;
    }
    const Token& expect_sym(std::string_view s) {
        if (!is_sym(s)) fail(std::string("expected '") + std::string(s) + "'");
        return next();
    }
    const Token& expect_ident() {
        if (peek().kind != TokKind::Ident) fail("expected identifier");
        return next();
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message + " (got '" + describe(peek()) + "')", peek().loc);
    }

    std::size_t position() const { return pos_; }
    void rewind(std::size_t pos) { pos_ = pos; }

    static std::string describe(const Token& t);

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace gp2

#endif
