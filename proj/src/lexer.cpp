#include "gp2/lexer.hpp"

#include <cctype>

namespace gp2 {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto loc_here = [&] { return SourceLoc{line, col}; };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        SourceLoc loc = loc_here();
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            Token t;
            t.kind = TokKind::Ident;
            t.text = std::string(text.substr(i, j - i));
            t.loc = loc;
            out.push_back(std::move(t));
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            std::uint64_t v = 0;
            bool overflow = false;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                v = v * 10 + static_cast<std::uint64_t>(text[j] - '0');
                if (v > static_cast<std::uint64_t>(INT64_MAX)) overflow = true;
                ++j;
            }
            if (overflow) throw ParseError("integer literal out of range", loc);
            Token t;
            t.kind = TokKind::Int;
            t.text = std::string(text.substr(i, j - i));
            t.int_value = static_cast<std::int64_t>(v);
            t.loc = loc;
            out.push_back(std::move(t));
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"')
                throw ParseError("unterminated string literal", loc);
            Token t;
            t.kind = TokKind::Str;
            t.text = std::string(text.substr(i + 1, j - i - 1));
            t.loc = loc;
            out.push_back(std::move(t));
            advance(j - i + 1);
            continue;
        }
        // multi-char symbols first
        auto emit = [&](std::string s) {
            Token t;
            t.kind = TokKind::Sym;
            t.text = std::move(s);
            t.loc = loc;
            out.push_back(std::move(t));
        };
        if (i + 1 < text.size()) {
            char d = text[i + 1];
            if ((c == '=' && d == '>') || (c == '!' && d == '=') || (c == '<' && d == '=') ||
                (c == '>' && d == '=')) {
                emit(std::string{c, d});
                advance(2);
                continue;
            }
        }
        static const std::string singles = "()[]{}|,;:@#!=<>+-*/.";
        if (singles.find(c) != std::string::npos) {
            emit(std::string(1, c));
            advance(1);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", loc);
    }
    Token end;
    end.kind = TokKind::End;
    end.loc = loc_here();
    out.push_back(end);
    return out;
}

std::string TokenCursor::describe(const Token& t) {
    switch (t.kind) {
        case TokKind::End: return "end of input";
        case TokKind::Ident: return t.text;
        case TokKind::Int: return t.text;
        case TokKind::Str: return "\"" + t.text + "\"";
        case TokKind::Sym: return t.text;
    }
    return "?";
}

} // namespace gp2
