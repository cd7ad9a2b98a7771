#include "blobscan/lexer.hpp"

#include <algorithm>
#include <array>

namespace blobscan {

namespace {

constexpr std::array kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",         "catch",    "char",
    "class",    "const",      "continue",  "default",   "do",        "double",       "else",     "enum",
    "extends",  "final",      "finally",   "float",     "for",       "goto",         "if",       "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",       "new",      "package",
    "private",  "protected",  "public",    "return",    "short",     "static",       "strictfp", "super",
    "switch",   "synchronized", "this",    "throw",     "throws",    "transient",    "try",      "void",
    "volatile", "while",      "true",      "false",     "null",
};

// Longest first within a shared prefix. `>` is deliberately single-character
// so generic closers never merge; the parser rejoins `>>`, `>=`, `>>=`, ...
constexpr std::array<std::string_view, 28> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "<<", "+=", "-=",
    "*=",  "/=",  "%=", "&=", "|=", "^=", "(",  ")",  "{",  "}",  "[",  "]",  ";",  ",",
};
constexpr std::string_view kSingleOperators = ".@=<>!~?:+-*/&|^%";

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}
bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    [[nodiscard]] bool done() const { return pos_.offset >= text_.size(); }
    [[nodiscard]] unsigned char peek(std::size_t ahead = 0) const {
        auto i = pos_.offset + ahead;
        return i < text_.size() ? static_cast<unsigned char>(text_[i]) : '\0';
    }
    [[nodiscard]] bool starts_with(std::string_view s) const { return text_.substr(pos_.offset).starts_with(s); }
    [[nodiscard]] SourcePosition position() const { return pos_; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && !done(); ++i) {
            auto c = static_cast<unsigned char>(text_[pos_.offset]);
            ++pos_.offset;
            if (c == '\n') {
                ++pos_.line;
                pos_.column = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++pos_.column;
            }
        }
        // Keep columns counting code points: a continuation byte never starts a column.
        while (!done() && (static_cast<unsigned char>(text_[pos_.offset]) & 0xC0) == 0x80 && n > 0) {
            ++pos_.offset;
        }
    }

    [[nodiscard]] std::string_view text(const SourcePosition& from) const {
        return text_.substr(from.offset, pos_.offset - from.offset);
    }

private:
    std::string_view text_;
    SourcePosition pos_;
};

void lex_number(Cursor& cur) {
    bool hex = cur.peek() == '0' && (cur.peek(1) == 'x' || cur.peek(1) == 'X');
    bool seen_dot = false;
    if (hex) cur.advance(2);
    while (!cur.done()) {
        auto c = cur.peek();
        if (is_digit(c) || c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            bool exponent = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
            cur.advance();
            if (exponent && (cur.peek() == '+' || cur.peek() == '-')) cur.advance();
        } else if (c == '.' && !seen_dot && !hex && !is_ident_start(cur.peek(1))) {
            seen_dot = true;
            cur.advance();
        } else if (c == '.' && !seen_dot && !hex &&
                   (cur.peek(1) == 'e' || cur.peek(1) == 'E' || cur.peek(1) == 'f' || cur.peek(1) == 'F' ||
                    cur.peek(1) == 'd' || cur.peek(1) == 'D')) {
            seen_dot = true;
            cur.advance();
        } else {
            break;
        }
    }
}

} // namespace

bool is_java_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::size_t find_invalid_utf8(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        auto c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return i;
        }
        if (i + len > text.size()) return i;
        for (std::size_t k = 1; k < len; ++k) {
            auto cc = static_cast<unsigned char>(text[i + k]);
            if ((cc & 0xC0) != 0x80) return i;
            cp = (cp << 6) | (cc & 0x3F);
        }
        bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
        i += len;
    }
    return std::string_view::npos;
}

LexResult lex_java(std::string_view text) {
    LexResult result;
    Cursor cur(text);
    if (cur.starts_with("\xEF\xBB\xBF")) cur.advance(3);

    auto emit = [&](TokenKind kind, const SourcePosition& begin) {
        result.tokens.push_back(Token{kind, cur.text(begin), Span{begin, cur.position()}});
    };
    auto diagnose = [&](const SourcePosition& begin, std::string message) {
        result.diagnostics.push_back(Diagnostic{Span{begin, cur.position()}, std::move(message)});
    };

    while (!cur.done()) {
        auto c = cur.peek();
        auto begin = cur.position();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
            cur.advance();
        } else if (c == '/' && cur.peek(1) == '/') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
        } else if (c == '/' && cur.peek(1) == '*') {
            cur.advance(2);
            while (!cur.done() && !cur.starts_with("*/")) cur.advance();
            if (cur.done()) {
                diagnose(begin, "unterminated block comment");
            } else {
                cur.advance(2);
            }
        } else if (cur.starts_with("\"\"\"")) {
            cur.advance(3);
            while (!cur.done() && !cur.starts_with("\"\"\"")) {
                if (cur.peek() == '\\') cur.advance();
                cur.advance();
            }
            if (cur.done()) {
                diagnose(begin, "unterminated text block");
            } else {
                cur.advance(3);
            }
            emit(TokenKind::StringLiteral, begin);
        } else if (c == '"' || c == '\'') {
            cur.advance();
            bool closed = false;
            while (!cur.done() && cur.peek() != '\n') {
                if (cur.peek() == '\\') {
                    cur.advance();
                    if (cur.peek() == '\n') break;
                    cur.advance();
                    continue;
                }
                if (cur.peek() == c) {
                    cur.advance();
                    closed = true;
                    break;
                }
                cur.advance();
            }
            if (!closed) diagnose(begin, c == '"' ? "unterminated string literal" : "unterminated char literal");
            emit(c == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, begin);
        } else if (is_digit(c) || (c == '.' && is_digit(cur.peek(1)))) {
            lex_number(cur);
            auto spelled = cur.text(begin);
            bool hex = spelled.size() > 1 && (spelled[1] == 'x' || spelled[1] == 'X');
            bool is_float = spelled.find('.') != std::string_view::npos ||
                            (!hex && spelled.find_first_of("eEfFdD") != std::string_view::npos) ||
                            (hex && spelled.find_first_of("pP") != std::string_view::npos);
            emit(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, begin);
        } else if (is_ident_start(c)) {
            while (!cur.done() && is_ident_part(cur.peek())) cur.advance();
            emit(is_java_keyword(cur.text(begin)) ? TokenKind::Keyword : TokenKind::Identifier, begin);
        } else {
            bool matched = false;
            for (auto op : kOperators) {
                if (cur.starts_with(op)) {
                    cur.advance(op.size());
                    matched = true;
                    break;
                }
            }
            if (!matched && kSingleOperators.find(static_cast<char>(c)) != std::string_view::npos) {
                cur.advance();
                matched = true;
            }
            if (matched) {
                emit(TokenKind::Operator, begin);
            } else {
                cur.advance();
                emit(TokenKind::Unknown, begin);
                diagnose(begin, "unexpected character");
            }
        }
    }
    auto end = cur.position();
    result.tokens.push_back(Token{TokenKind::End, {}, Span{end, end}});
    return result;
}

} // namespace blobscan
