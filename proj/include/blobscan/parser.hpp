#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "blobscan/ast.hpp"

namespace blobscan {

/// How a lambda passed to a registration method (e.g. `addActionListener`)
/// becomes a listener class.
struct LambdaBinding {
    std::string interface_name;
    std::string method_name;
    std::string event_type;
};

struct ParseOptions {
    /// registration method name -> binding
    std::map<std::string, LambdaBinding, std::less<>> lambda_bindings;
};

/// Parses Java source into a CompilationUnit. Total over valid UTF-8:
/// malformed regions become Opaque nodes plus a diagnostic, and every `if` /
/// `switch` keyword yields an If / Switch node.
/// Throws EncodingError when `text` is not valid UTF-8.
[[nodiscard]] CompilationUnit parse_unit(std::string file, std::string_view text, const ParseOptions& options = {});

/// Reads `path` and parses it; `display_name` becomes CompilationUnit::file.
/// Throws IoError or EncodingError.
[[nodiscard]] CompilationUnit parse_file(const std::filesystem::path& path, std::string display_name,
                                         const ParseOptions& options = {});

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

} // namespace blobscan
