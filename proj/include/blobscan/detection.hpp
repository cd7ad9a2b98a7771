#pragma once

#include <array>
#include <string>
#include <vector>

#include "blobscan/commands.hpp"
#include "blobscan/listeners.hpp"

namespace blobscan {

struct DetectionConfig {
    int threshold = 3; ///< a listener is a Blob when it has at least this many commands
    int max_trace_depth = 8;
    std::string toolkit = "swing"; ///< bundled name or catalog file path
};

enum class Variant { PropertyComparison, TypeCheck, ReferenceComparison };

[[nodiscard]] std::string_view to_string(Variant variant);

/// Everything the pipeline learned about one listener method.
struct ListenerResult {
    ListenerMethod listener;
    std::vector<const Statement*> conditional_statements; ///< empty: not a conditional listener
    std::vector<CommandCandidate> candidates;
    std::vector<GuiCommand> commands;

    [[nodiscard]] bool conditional() const { return !conditional_statements.empty(); }
    [[nodiscard]] std::size_t command_count() const { return commands.size(); }
};

struct BlobFinding {
    ListenerMethod listener;
    std::size_t command_count = 0;
    std::vector<GuiCommand> commands;
    std::vector<Variant> variants;
    std::vector<std::string> notes;
};

/// One finding per listener with command_count >= threshold, ordered by (file, offset).
[[nodiscard]] std::vector<BlobFinding> detect_blobs(const std::vector<ListenerResult>& listeners,
                                                    const DetectionConfig& config);

/// Variant tags implied by the evidence (own and governing) of the finding's commands.
[[nodiscard]] std::vector<Variant> classify_variants(const BlobFinding& finding);

/// Listener counts for 0, 1, 2, 3 and 4+ commands.
[[nodiscard]] std::array<std::size_t, 5> command_distribution(const std::vector<ListenerResult>& listeners);

inline constexpr std::array<std::string_view, 5> kDistributionBuckets = {"0", "1", "2", "3", "4+"};

} // namespace blobscan
