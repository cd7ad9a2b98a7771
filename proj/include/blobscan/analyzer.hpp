#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "blobscan/catalog.hpp"
#include "blobscan/detection.hpp"
#include "blobscan/universe.hpp"

namespace blobscan {

struct SourceFile {
    std::filesystem::path path;
    std::string display; ///< root-relative, '/'-separated
};

struct FileDiagnostic {
    std::string file;
    Span span;
    std::string message;
};

/// The whole pipeline's state for one corpus. Holds pointers into its own
/// units, so it is neither copyable nor movable; pass it around by pointer.
class Analysis {
public:
    Analysis(ToolkitCatalog catalog, DetectionConfig config) : catalog(std::move(catalog)), config(std::move(config)) {}
    Analysis(const Analysis&) = delete;
    Analysis& operator=(const Analysis&) = delete;

    ToolkitCatalog catalog;
    DetectionConfig config;
    std::vector<CompilationUnit> units; ///< sorted by file
    std::unique_ptr<TypeUniverse> universe;
    std::vector<ListenerResult> listeners;
    std::vector<BlobFinding> findings;
    std::vector<FileDiagnostic> diagnostics; ///< sorted by (file, offset)
    std::vector<std::pair<std::string, double>> timing_ms;

    [[nodiscard]] std::size_t conditional_listener_count() const;
    [[nodiscard]] std::size_t command_count() const;
};

/// Every `.java` file under root, sorted by display path.
[[nodiscard]] std::vector<SourceFile> discover_sources(const std::filesystem::path& root);

/// Runs the pipeline over already-parsed units (order is normalized by file).
[[nodiscard]] std::unique_ptr<Analysis> analyze_units(std::vector<CompilationUnit> units, ToolkitCatalog catalog,
                                                      DetectionConfig config);

/// Parses `files` (any order) and runs the pipeline. Undecodable files are
/// skipped with a diagnostic; unreadable ones throw IoError.
[[nodiscard]] std::unique_ptr<Analysis> analyze_files(std::vector<SourceFile> files, ToolkitCatalog catalog,
                                                      DetectionConfig config);

/// Loads the configured toolkit, discovers sources under root and analyzes them.
[[nodiscard]] std::unique_ptr<Analysis> analyze_root(const std::filesystem::path& root, const DetectionConfig& config);

} // namespace blobscan
