#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "blobscan/source.hpp"

namespace blobscan {

using LineRange = std::pair<std::uint32_t, std::uint32_t>; ///< inclusive

struct TruthEntry {
    std::string file;
    std::string owner; ///< qualified or simple name
    std::string method;
    std::vector<LineRange> relevant_commands;
    bool is_blob = false;
};

struct GroundTruth {
    std::vector<TruthEntry> entries;
};

class TruthFormatError : public Error {
public:
    TruthFormatError(std::size_t line, const std::string& what)
        : Error("ground truth line " + std::to_string(line) + ": " + what) {}
};

/// A truth entry names a listener the report does not contain.
class TruthReferenceError : public Error {
public:
    using Error::Error;
};

/// `file \t Owner \t method \t L1-L2,... \t blob|noblob`, `#` comments. An
/// empty span list may be written as `-`.
[[nodiscard]] GroundTruth load_ground_truth(std::string_view text);

struct EvalMetrics {
    std::size_t detected = 0;
    std::size_t false_negatives = 0;
    std::size_t false_positives = 0;
    double recall_pct = 100.0;    ///< rounded to 2 decimals
    double precision_pct = 100.0; ///< rounded to 2 decimals
};

[[nodiscard]] EvalMetrics compute_metrics(std::size_t tp, std::size_t fn, std::size_t fp);
[[nodiscard]] std::string format_pct(double pct);

struct ListenerMatch {
    std::string file;
    std::string owner;
    std::string method;
    std::size_t true_positives = 0;
    std::vector<LineRange> false_negatives;
    std::vector<LineRange> false_positives;
    bool truth_blob = false;
    bool flagged = false;
};

struct EvalResult {
    EvalMetrics commands;
    EvalMetrics blobs;
    std::vector<ListenerMatch> per_listener;
};

/// Matches detected commands (report inventory) to relevant ones by >=1
/// shared line, 1-to-1, greedily in ascending start line order.
[[nodiscard]] std::vector<ListenerMatch> match_commands(const nlohmann::ordered_json& report, const GroundTruth& truth);

struct BlobCounts {
    std::size_t tp = 0;
    std::size_t fn = 0;
    std::size_t fp = 0;
};
[[nodiscard]] BlobCounts match_blobs(const nlohmann::ordered_json& report, const GroundTruth& truth);

[[nodiscard]] EvalResult evaluate(const nlohmann::ordered_json& report, const GroundTruth& truth);

[[nodiscard]] nlohmann::ordered_json eval_json(const EvalResult& result);
[[nodiscard]] std::string render_eval_text(const EvalResult& result);

} // namespace blobscan
