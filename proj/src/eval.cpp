#include "blobscan/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

namespace blobscan {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

/// Percentage num/den rounded half-up to 2 decimals, computed exactly.
double rounded_pct(std::size_t num, std::size_t den) {
    if (den == 0) return 100.0;
    auto hundredths = (static_cast<unsigned long long>(num) * 20000ULL + den) / (2ULL * den);
    return static_cast<double>(hundredths) / 100.0;
}

bool owner_matches(const std::string& truth_owner, const std::string& qualified) {
    if (truth_owner == qualified) return true;
    if (qualified.size() <= truth_owner.size()) return false;
    auto sep = qualified[qualified.size() - truth_owner.size() - 1];
    return (sep == '.' || sep == '$') && qualified.ends_with(truth_owner);
}

struct InventoryItem {
    const ordered_json* json;
    std::string file;
    std::string owner;
    std::string method;
    std::vector<LineRange> commands;
    bool flagged = false;
};

std::vector<InventoryItem> inventory_of(const ordered_json& report) {
    std::set<std::tuple<std::string, std::string, std::string, std::uint32_t>> flagged;
    for (const auto& f : report.at("findings")) {
        flagged.emplace(f.at("file").get<std::string>(), f.at("owner").get<std::string>(),
                        f.at("method").get<std::string>(), f.at("start_line").get<std::uint32_t>());
    }
    std::vector<InventoryItem> out;
    for (const auto& l : report.at("inventory")) {
        InventoryItem item{&l, l.at("file").get<std::string>(), l.at("owner").get<std::string>(),
                           l.at("method").get<std::string>(), {}, false};
        for (const auto& c : l.at("commands")) {
            item.commands.emplace_back(c.at("start_line").get<std::uint32_t>(), c.at("end_line").get<std::uint32_t>());
        }
        item.flagged = flagged.count({item.file, item.owner, item.method, l.at("start_line").get<std::uint32_t>()}) != 0;
        out.push_back(std::move(item));
    }
    return out;
}

/// Index of the truth entry for each inventory item (or npos). Every truth
/// entry must name exactly one inventory item, preferring exact owner matches.
std::vector<std::size_t> bind_truth(const std::vector<InventoryItem>& inventory, const GroundTruth& truth) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> bound(inventory.size(), npos);
    for (std::size_t t = 0; t < truth.entries.size(); ++t) {
        const auto& e = truth.entries[t];
        std::vector<std::size_t> exact;
        std::vector<std::size_t> loose;
        for (std::size_t i = 0; i < inventory.size(); ++i) {
            const auto& item = inventory[i];
            if (item.file != e.file || item.method != e.method) continue;
            if (item.owner == e.owner) {
                exact.push_back(i);
            } else if (owner_matches(e.owner, item.owner)) {
                loose.push_back(i);
            }
        }
        const auto& hits = exact.empty() ? loose : exact;
        auto label = e.file + " " + e.owner + "." + e.method;
        if (hits.empty()) throw TruthReferenceError("ground truth names an unknown listener: " + label);
        if (hits.size() > 1) throw TruthReferenceError("ground truth names an ambiguous listener: " + label);
        if (bound[hits.front()] != npos) throw TruthReferenceError("two ground truth entries name " + label);
        bound[hits.front()] = t;
    }
    return bound;
}

bool overlap(const LineRange& a, const LineRange& b) { return a.first <= b.second && b.first <= a.second; }

ListenerMatch match_one(const InventoryItem& item, const TruthEntry* entry) {
    ListenerMatch m;
    m.file = item.file;
    m.owner = item.owner;
    m.method = item.method;
    m.flagged = item.flagged;
    m.truth_blob = entry != nullptr && entry->is_blob;

    auto detected = item.commands;
    auto relevant = entry != nullptr ? entry->relevant_commands : std::vector<LineRange>{};
    std::stable_sort(detected.begin(), detected.end());
    std::stable_sort(relevant.begin(), relevant.end());
    std::vector<bool> used(relevant.size(), false);
    for (const auto& d : detected) {
        bool matched = false;
        for (std::size_t r = 0; r < relevant.size(); ++r) {
            if (used[r] || !overlap(d, relevant[r])) continue;
            used[r] = true;
            matched = true;
            break;
        }
        if (matched) {
            ++m.true_positives;
        } else {
            m.false_positives.push_back(d);
        }
    }
    for (std::size_t r = 0; r < relevant.size(); ++r) {
        if (!used[r]) m.false_negatives.push_back(relevant[r]);
    }
    return m;
}

ordered_json metrics_json(const EvalMetrics& m) {
    return ordered_json{{"detected", m.detected},
                        {"false_negatives", m.false_negatives},
                        {"false_positives", m.false_positives},
                        {"recall_pct", m.recall_pct},
                        {"precision_pct", m.precision_pct}};
}

ordered_json ranges_json(const std::vector<LineRange>& ranges) {
    ordered_json out = ordered_json::array();
    for (const auto& [a, b] : ranges) out.push_back(std::to_string(a) + "-" + std::to_string(b));
    return out;
}

} // namespace

GroundTruth load_ground_truth(std::string_view text) {
    static const std::regex range_re(R"((\d+)-(\d+))");
    GroundTruth truth;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    auto lines = split(text, '\n');
    for (std::size_t n = 0; n < lines.size(); ++n) {
        auto line = trim(lines[n]);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 5) throw TruthFormatError(n + 1, "expected 5 tab-separated fields");
        TruthEntry e;
        e.file = trim(fields[0]);
        e.owner = trim(fields[1]);
        e.method = trim(fields[2]);
        if (e.file.empty() || e.owner.empty() || e.method.empty()) throw TruthFormatError(n + 1, "empty name field");
        auto spans = trim(fields[3]);
        if (spans != "-" && !spans.empty()) {
            for (const auto& part : split(spans, ',')) {
                std::smatch m;
                auto s = trim(part);
                if (!std::regex_match(s, m, range_re)) throw TruthFormatError(n + 1, "bad span '" + s + "'");
                auto a = static_cast<std::uint32_t>(std::stoul(m[1]));
                auto b = static_cast<std::uint32_t>(std::stoul(m[2]));
                if (a == 0 || b < a) throw TruthFormatError(n + 1, "bad span '" + s + "'");
                e.relevant_commands.emplace_back(a, b);
            }
        }
        auto verdict = trim(fields[4]);
        if (verdict == "blob") {
            e.is_blob = true;
        } else if (verdict != "noblob") {
            throw TruthFormatError(n + 1, "expected blob or noblob");
        }
        if (!seen.emplace(e.file, e.owner, e.method).second) throw TruthFormatError(n + 1, "duplicate entry");
        truth.entries.push_back(std::move(e));
    }
    return truth;
}

EvalMetrics compute_metrics(std::size_t tp, std::size_t fn, std::size_t fp) {
    return EvalMetrics{tp, fn, fp, rounded_pct(tp, tp + fn), rounded_pct(tp, tp + fp)};
}

std::string format_pct(double pct) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << pct;
    return out.str();
}

std::vector<ListenerMatch> match_commands(const ordered_json& report, const GroundTruth& truth) {
    auto inventory = inventory_of(report);
    auto bound = bind_truth(inventory, truth);
    std::vector<ListenerMatch> out;
    for (std::size_t i = 0; i < inventory.size(); ++i) {
        const TruthEntry* entry = bound[i] < truth.entries.size() ? &truth.entries[bound[i]] : nullptr;
        out.push_back(match_one(inventory[i], entry));
    }
    return out;
}

BlobCounts match_blobs(const ordered_json& report, const GroundTruth& truth) {
    BlobCounts counts;
    for (const auto& m : match_commands(report, truth)) {
        if (m.flagged && m.truth_blob) ++counts.tp;
        if (!m.flagged && m.truth_blob) ++counts.fn;
        if (m.flagged && !m.truth_blob) ++counts.fp;
    }
    return counts;
}

EvalResult evaluate(const ordered_json& report, const GroundTruth& truth) {
    EvalResult result;
    result.per_listener = match_commands(report, truth);
    std::size_t tp = 0;
    std::size_t fn = 0;
    std::size_t fp = 0;
    BlobCounts blobs;
    for (const auto& m : result.per_listener) {
        tp += m.true_positives;
        fn += m.false_negatives.size();
        fp += m.false_positives.size();
        if (m.flagged && m.truth_blob) ++blobs.tp;
        if (!m.flagged && m.truth_blob) ++blobs.fn;
        if (m.flagged && !m.truth_blob) ++blobs.fp;
    }
    result.commands = compute_metrics(tp, fn, fp);
    result.blobs = compute_metrics(blobs.tp, blobs.fn, blobs.fp);
    return result;
}

ordered_json eval_json(const EvalResult& result) {
    ordered_json per = ordered_json::array();
    for (const auto& m : result.per_listener) {
        per.push_back(ordered_json{{"file", m.file},
                                   {"owner", m.owner},
                                   {"method", m.method},
                                   {"true_positives", m.true_positives},
                                   {"false_negatives", ranges_json(m.false_negatives)},
                                   {"false_positives", ranges_json(m.false_positives)},
                                   {"truth_blob", m.truth_blob},
                                   {"flagged", m.flagged}});
    }
    return ordered_json{
        {"commands", metrics_json(result.commands)}, {"blobs", metrics_json(result.blobs)}, {"per_listener", std::move(per)}};
}

std::string render_eval_text(const EvalResult& result) {
    std::ostringstream out;
    auto row = [&](std::string_view name, const EvalMetrics& m) {
        out << std::left << std::setw(10) << name << std::right << std::setw(10) << m.detected << std::setw(6)
            << m.false_negatives << std::setw(6) << m.false_positives << std::setw(10) << format_pct(m.recall_pct)
            << std::setw(11) << format_pct(m.precision_pct) << "\n";
    };
    out << std::left << std::setw(10) << "" << std::right << std::setw(10) << "detected" << std::setw(6) << "FN"
        << std::setw(6) << "FP" << std::setw(10) << "recall" << std::setw(11) << "precision" << "\n";
    row("commands", result.commands);
    row("blobs", result.blobs);
    bool header = false;
    for (const auto& m : result.per_listener) {
        if (m.false_negatives.empty() && m.false_positives.empty() && m.flagged == m.truth_blob) continue;
        if (!header) out << "\nmismatches:\n";
        header = true;
        out << "  " << m.file << " " << m.owner << "." << m.method << ":";
        for (const auto& [a, b] : m.false_negatives) out << " FN " << a << "-" << b;
        for (const auto& [a, b] : m.false_positives) out << " FP " << a << "-" << b;
        if (m.flagged != m.truth_blob) out << (m.flagged ? " blob FP" : " blob FN");
        out << "\n";
    }
    return out.str();
}

} // namespace blobscan
