#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace blobscan {

/// 1-based line/column plus the 0-based byte offset into the unit text.
struct SourcePosition {
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::uint32_t offset = 0;

    friend bool operator==(const SourcePosition& a, const SourcePosition& b) { return a.offset == b.offset; }
    friend auto operator<=>(const SourcePosition& a, const SourcePosition& b) { return a.offset <=> b.offset; }
};

/// Half-open region [begin, end) of one compilation unit's text. The file is
/// carried by the owning CompilationUnit, so both endpoints always share it.
struct Span {
    SourcePosition begin;
    SourcePosition end;

    [[nodiscard]] bool contains(const Span& other) const {
        return begin.offset <= other.begin.offset && other.end.offset <= end.offset;
    }
    [[nodiscard]] bool strictly_contains(const Span& other) const {
        return contains(other) && (begin.offset != other.begin.offset || end.offset != other.end.offset);
    }
    [[nodiscard]] bool overlaps(const Span& other) const {
        return begin.offset < other.end.offset && other.begin.offset < end.offset;
    }
    [[nodiscard]] std::uint32_t first_line() const { return begin.line; }
    // Nodes never end on a newline, so the exclusive end sits on the last line.
    [[nodiscard]] std::uint32_t last_line() const { return end.line; }
    [[nodiscard]] std::uint32_t line_count() const { return last_line() - first_line() + 1; }
    [[nodiscard]] std::uint32_t length() const { return end.offset - begin.offset; }

    friend bool operator==(const Span&, const Span&) = default;
};

[[nodiscard]] inline Span join(const Span& a, const Span& b) {
    return Span{a.begin.offset <= b.begin.offset ? a.begin : b.begin,
                a.end.offset >= b.end.offset ? a.end : b.end};
}

struct Diagnostic {
    Span span;
    std::string message;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A source or data file could not be read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Source text is not valid UTF-8.
class EncodingError : public Error {
public:
    EncodingError(const std::string& file, std::uint32_t byte_offset)
        : Error(file + ": invalid UTF-8 at byte " + std::to_string(byte_offset)), offset_(byte_offset) {}
    [[nodiscard]] std::uint32_t offset() const { return offset_; }

private:
    std::uint32_t offset_;
};

} // namespace blobscan
