#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "blobscan/analyzer.hpp"

namespace blobscan {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportOptions {
    bool explain = false;  ///< include evidence traces per command
    bool timing = true;    ///< include timing_ms (off for byte-stable output)
    bool cfg_dump = false; ///< include Graphviz CFGs of conditional listeners
};

/// The detect report. Field names and order are stable; see docs/report-schema.md.
[[nodiscard]] nlohmann::ordered_json report_json(const Analysis& analysis, const ReportOptions& options);
[[nodiscard]] std::string render_detect_text(const Analysis& analysis, const ReportOptions& options);

[[nodiscard]] nlohmann::ordered_json stats_json(const Analysis& analysis);
[[nodiscard]] std::string render_stats_text(const Analysis& analysis);

/// Owner display name: the qualified name of the listener's class.
[[nodiscard]] std::string owner_name(const ListenerMethod& listener);

} // namespace blobscan
