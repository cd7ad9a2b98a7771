#pragma once

#include <algorithm>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "blobscan/analyzer.hpp"
#include "blobscan/ast_walk.hpp"
#include "blobscan/catalog.hpp"
#include "blobscan/parser.hpp"

namespace blobscan::testing {

inline std::filesystem::path fixture(std::string_view relative) {
    return std::filesystem::path(BLOBSCAN_FIXTURES) / relative;
}

inline std::string fixture_text(std::string_view relative) { return read_text_file(fixture(relative)); }

inline CompilationUnit parse_fixture(std::string_view relative) {
    return parse_unit(std::string(relative), fixture_text(relative), swing_catalog().parse_options());
}

inline CompilationUnit parse_java(std::string_view text) {
    return parse_unit("Test.java", text, swing_catalog().parse_options());
}

inline std::unique_ptr<Analysis> analyze_fixture(std::string_view relative, DetectionConfig config = {}) {
    return analyze_root(fixture(relative), config);
}

inline std::unique_ptr<Analysis> analyze_source(std::string_view text, DetectionConfig config = {}) {
    std::vector<CompilationUnit> units;
    units.push_back(parse_java(text));
    return analyze_units(std::move(units), swing_catalog(), config);
}

/// Every .java file under the fixture root, relative and sorted.
inline std::vector<std::string> all_fixture_sources() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator(BLOBSCAN_FIXTURES)) {
        if (e.is_regular_file() && e.path().extension() == ".java") {
            out.push_back(std::filesystem::relative(e.path(), BLOBSCAN_FIXTURES).generic_string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Counts `if`/`switch` keywords with a character scanner that shares no code
/// with the lexer: comments, string/char literals and text blocks are skipped.
inline std::size_t count_conditional_keywords(std::string_view s) {
    std::size_t count = 0;
    std::size_t i = 0;
    auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; };
    while (i < s.size()) {
        if (s.compare(i, 2, "//") == 0) {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (s.compare(i, 2, "/*") == 0) {
            auto end = s.find("*/", i + 2);
            i = end == std::string_view::npos ? s.size() : end + 2;
        } else if (s.compare(i, 3, "\"\"\"") == 0) {
            auto end = s.find("\"\"\"", i + 3);
            i = end == std::string_view::npos ? s.size() : end + 3;
        } else if (s[i] == '"' || s[i] == '\'') {
            char q = s[i++];
            while (i < s.size() && s[i] != q && s[i] != '\n') i += s[i] == '\\' ? 2 : 1;
            ++i;
        } else if (ident(s[i])) {
            auto start = i;
            while (i < s.size() && ident(s[i])) ++i;
            auto word = s.substr(start, i - start);
            if (word == "if" || word == "switch") ++count;
        } else {
            ++i;
        }
    }
    return count;
}

/// If and Switch nodes (statement and expression switches) in a unit.
inline std::size_t count_conditional_nodes(const CompilationUnit& unit) {
    struct Counter : AstWalker {
        std::size_t n = 0;
        bool enter_statement(const Statement& s) override {
            if (s.is_conditional()) ++n;
            return true;
        }
    } counter;
    counter.walk(unit);
    return counter.n;
}

} // namespace blobscan::testing
