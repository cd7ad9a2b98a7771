#include "blobscan/report.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include "blobscan/cfg.hpp"

namespace blobscan {

using nlohmann::ordered_json;

namespace {

std::string first_line_of(std::string_view text) {
    auto nl = text.find('\n');
    std::string s(text.substr(0, nl));
    if (nl != std::string_view::npos) s += " ...";
    return s;
}

std::vector<std::string> kinds_of(const std::vector<GuiReferenceEvidence>& evidence) {
    std::set<EvidenceKind> kinds;
    for (const auto& e : evidence) kinds.insert(e.kind);
    std::vector<std::string> out;
    for (auto k : kinds) out.emplace_back(to_string(k));
    return out;
}

ordered_json evidence_json(const CompilationUnit& unit, const GuiReferenceEvidence& e) {
    ordered_json j;
    j["kind"] = to_string(e.kind);
    j["expression"] = e.expression != nullptr ? first_line_of(unit.slice(e.expression->span)) : "";
    j["line"] = e.expression != nullptr ? e.expression->span.first_line() : 0;
    if (e.kind == EvidenceKind::DerivedVariable) {
        j["terminal"] = to_string(e.terminal);
        ordered_json trace = ordered_json::array();
        for (const auto& hop : e.resolution_trace) {
            trace.push_back(ordered_json{{"name", hop.name}, {"line", hop.definition.first_line()}});
        }
        j["trace"] = std::move(trace);
    }
    return j;
}

ordered_json command_json(const CompilationUnit& unit, const GuiCommand& c, bool explain) {
    ordered_json j;
    j["ordinal"] = c.ordinal;
    j["branch"] = to_string(c.branch);
    j["guard_line"] = c.guard->span.first_line();
    j["start_line"] = c.body_span.first_line();
    j["end_line"] = c.body_span.last_line();
    j["evidence"] = kinds_of(c.evidence);
    j["context_evidence"] = kinds_of(c.context_evidence);
    j["state_based"] = c.state_based;
    if (explain) {
        ordered_json own = ordered_json::array();
        for (const auto& e : c.evidence) own.push_back(evidence_json(unit, e));
        ordered_json ctx = ordered_json::array();
        for (const auto& e : c.context_evidence) ctx.push_back(evidence_json(unit, e));
        j["explain"] = ordered_json{{"evidence", std::move(own)}, {"context_evidence", std::move(ctx)}};
    }
    return j;
}

ordered_json listener_head(const ListenerMethod& l) {
    ordered_json j;
    j["file"] = l.unit->file;
    j["owner"] = owner_name(l);
    j["method"] = l.method->name;
    j["interface"] = std::string(simple_name(l.interface_name));
    j["start_line"] = l.span.first_line();
    j["end_line"] = l.span.last_line();
    j["loc"] = l.span.line_count();
    return j;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

std::string owner_name(const ListenerMethod& listener) { return listener.owner->qualified_name; }

ordered_json report_json(const Analysis& a, const ReportOptions& options) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config"] = ordered_json{{"threshold", a.config.threshold},
                               {"max_trace_depth", a.config.max_trace_depth},
                               {"toolkit", a.catalog.name}};
    j["files_analyzed"] = a.units.size();
    j["listeners"] = a.listeners.size();
    j["conditional_listeners"] = a.conditional_listener_count();
    j["commands"] = a.command_count();

    ordered_json findings = ordered_json::array();
    for (const auto& f : a.findings) {
        auto fj = listener_head(f.listener);
        fj["command_count"] = f.command_count;
        std::vector<std::string> variants;
        for (auto v : f.variants) variants.emplace_back(to_string(v));
        fj["variants"] = variants;
        fj["notes"] = f.notes;
        ordered_json commands = ordered_json::array();
        for (const auto& c : f.commands) commands.push_back(command_json(*f.listener.unit, c, options.explain));
        fj["commands"] = std::move(commands);
        findings.push_back(std::move(fj));
    }
    j["findings"] = std::move(findings);

    ordered_json inventory = ordered_json::array();
    for (const auto& l : a.listeners) {
        auto lj = listener_head(l.listener);
        lj["conditional"] = l.conditional();
        lj["candidates"] = l.candidates.size();
        lj["command_count"] = l.command_count();
        ordered_json commands = ordered_json::array();
        for (const auto& c : l.commands) {
            commands.push_back(ordered_json{{"start_line", c.body_span.first_line()}, {"end_line", c.body_span.last_line()}});
        }
        lj["commands"] = std::move(commands);
        inventory.push_back(std::move(lj));
    }
    j["inventory"] = std::move(inventory);

    ordered_json diagnostics = ordered_json::array();
    for (const auto& d : a.diagnostics) {
        diagnostics.push_back(ordered_json{
            {"file", d.file}, {"line", d.span.begin.line}, {"column", d.span.begin.column}, {"message", d.message}});
    }
    j["diagnostics"] = std::move(diagnostics);

    if (options.cfg_dump) {
        ordered_json cfgs = ordered_json::array();
        for (const auto& l : a.listeners) {
            if (!l.conditional()) continue;
            auto name = owner_name(l.listener) + "." + l.listener.method->name;
            cfgs.push_back(ordered_json{{"file", l.listener.unit->file},
                                        {"listener", name},
                                        {"dot", build_cfg(*l.listener.method).to_dot(*l.listener.unit, name)}});
        }
        j["cfg"] = std::move(cfgs);
    }
    if (options.timing) {
        ordered_json timing;
        for (const auto& [phase, ms] : a.timing_ms) timing[phase] = ms;
        j["timing_ms"] = std::move(timing);
    }
    return j;
}

std::string render_detect_text(const Analysis& a, const ReportOptions& options) {
    std::ostringstream out;
    out << "blobscan " << kToolVersion << " (toolkit " << a.catalog.name << ", threshold " << a.config.threshold
        << ")\n";
    out << "files: " << a.units.size() << "  listeners: " << a.listeners.size()
        << "  conditional: " << a.conditional_listener_count() << "  commands: " << a.command_count()
        << "  findings: " << a.findings.size() << "\n";
    for (const auto& f : a.findings) {
        const auto& l = f.listener;
        std::vector<std::string> variants;
        for (auto v : f.variants) variants.emplace_back(to_string(v));
        out << "\n" << l.unit->file << ":" << l.span.first_line() << "-" << l.span.last_line() << ": Blob listener "
            << owner_name(l) << "." << l.method->name << " [" << simple_name(l.interface_name) << "], "
            << f.command_count << " commands";
        if (!variants.empty()) out << " (" << join(variants, ", ") << ")";
        if (!f.notes.empty()) out << " [" << join(f.notes, ", ") << "]";
        out << "\n";
        for (const auto& c : f.commands) {
            out << "  #" << c.ordinal << " lines " << c.body_span.first_line() << "-" << c.body_span.last_line() << " ("
                << to_string(c.branch) << " of line " << c.guard->span.first_line() << ")";
            auto own = kinds_of(c.evidence);
            auto ctx = kinds_of(c.context_evidence);
            if (!own.empty()) out << ": " << join(own, ", ");
            if (!ctx.empty()) out << "; context: " << join(ctx, ", ");
            out << "\n";
            if (!options.explain) continue;
            for (const auto* list : {&c.evidence, &c.context_evidence}) {
                for (const auto& e : *list) {
                    out << "      " << (list == &c.evidence ? "" : "context ") << to_string(e.kind) << " at line "
                        << e.expression->span.first_line() << ": " << first_line_of(l.unit->slice(e.expression->span));
                    for (const auto& hop : e.resolution_trace) {
                        out << " <- " << hop.name << " (line " << hop.definition.first_line() << ")";
                    }
                    if (e.kind == EvidenceKind::DerivedVariable) out << " => " << to_string(e.terminal);
                    out << "\n";
                }
            }
        }
    }
    if (!a.diagnostics.empty()) {
        out << "\ndiagnostics:\n";
        for (const auto& d : a.diagnostics) {
            out << "  " << d.file << ":" << d.span.begin.line << ":" << d.span.begin.column << ": " << d.message << "\n";
        }
    }
    if (options.cfg_dump) {
        for (const auto& l : a.listeners) {
            if (!l.conditional()) continue;
            auto name = owner_name(l.listener) + "." + l.listener.method->name;
            out << "\n" << build_cfg(*l.listener.method).to_dot(*l.listener.unit, name);
        }
    }
    if (options.timing) {
        out << "\ntiming:";
        for (const auto& [phase, ms] : a.timing_ms) out << " " << phase << " " << std::fixed << std::setprecision(1) << ms << "ms";
        out << "\n";
    }
    return out.str();
}

ordered_json stats_json(const Analysis& a) {
    auto buckets = command_distribution(a.listeners);
    ordered_json dist;
    for (std::size_t i = 0; i < buckets.size(); ++i) dist[std::string(kDistributionBuckets[i])] = buckets[i];
    return ordered_json{{"tool_version", kToolVersion},
                        {"files_analyzed", a.units.size()},
                        {"listeners", a.listeners.size()},
                        {"distribution", std::move(dist)}};
}

std::string render_stats_text(const Analysis& a) {
    auto buckets = command_distribution(a.listeners);
    std::ostringstream out;
    out << std::left << std::setw(10) << "commands" << std::right << std::setw(10) << "listeners" << "\n";
    for (std::size_t i = 0; i < buckets.size(); ++i) {
        out << std::left << std::setw(10) << kDistributionBuckets[i] << std::right << std::setw(10) << buckets[i] << "\n";
    }
    out << std::left << std::setw(10) << "total" << std::right << std::setw(10) << a.listeners.size() << "\n";
    return out.str();
}

} // namespace blobscan
