#pragma once

#include <string_view>
#include <vector>

#include "blobscan/source.hpp"

namespace blobscan {

enum class TokenKind {
    Identifier,
    Keyword,
    IntLiteral,
    FloatLiteral,
    CharLiteral,
    StringLiteral, ///< includes text blocks
    Operator,      ///< operators and separators; `>` is always a single token
    Unknown,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string_view text;
    Span span;

    [[nodiscard]] bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    [[nodiscard]] bool op(std::string_view t) const { return is(TokenKind::Operator, t); }
    [[nodiscard]] bool keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

struct LexResult {
    std::vector<Token> tokens; ///< always terminated by an End token
    std::vector<Diagnostic> diagnostics;
};

/// Tokenizes Java source. Comments and whitespace are dropped; `if` inside a
/// string or comment never produces a keyword token. Never fails: stray bytes
/// become Unknown tokens, unterminated literals/comments produce diagnostics.
[[nodiscard]] LexResult lex_java(std::string_view text);

[[nodiscard]] bool is_java_keyword(std::string_view word);

/// Returns the offset of the first byte that breaks UTF-8 well-formedness, or npos.
[[nodiscard]] std::size_t find_invalid_utf8(std::string_view text);

} // namespace blobscan
