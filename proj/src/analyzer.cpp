#include "blobscan/analyzer.hpp"

#include <algorithm>
#include <chrono>

#include "blobscan/cfg.hpp"
#include "blobscan/parser.hpp"

namespace blobscan {

namespace fs = std::filesystem;

namespace {

class Stopwatch {
public:
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void run_pipeline(Analysis& a, Stopwatch& clock) {
    std::stable_sort(a.units.begin(), a.units.end(),
                     [](const CompilationUnit& x, const CompilationUnit& y) { return x.file < y.file; });
    for (const auto& u : a.units) {
        for (const auto& d : u.parse_diagnostics) a.diagnostics.push_back(FileDiagnostic{u.file, d.span, d.message});
    }

    a.universe = std::make_unique<TypeUniverse>(a.units, a.catalog);
    for (const auto& [type, name] : a.universe->unresolved()) {
        const auto* e = a.universe->entry(*type);
        Span at{type->span.begin, type->span.begin};
        a.diagnostics.push_back(FileDiagnostic{e->unit->file, at, "note: unresolved supertype " + name + " of " + type->name});
    }
    auto methods = find_listener_methods(a.units, *a.universe);
    a.timing_ms.emplace_back("listeners", clock.lap());

    for (const auto& m : methods) {
        ListenerResult r;
        r.listener = m;
        if (m.method->body) r.conditional_statements = conditional_statements(*m.method);
        if (r.conditional()) {
            ConditionalListener cl{m, r.conditional_statements};
            auto cfg = build_cfg(*m.method);
            for (const auto& node : cfg.nodes) {
                if (node.unreachable && node.statement != nullptr) {
                    a.diagnostics.push_back(
                        FileDiagnostic{m.unit->file, node.statement->span, "unreachable statement in " + m.method->name});
                }
            }
            r.candidates = get_potential_commands(cl, cfg, *a.universe, a.config.max_trace_depth);
            r.commands = get_proper_commands(r.candidates);
        }
        a.listeners.push_back(std::move(r));
    }
    a.timing_ms.emplace_back("commands", clock.lap());

    a.findings = detect_blobs(a.listeners, a.config);
    a.timing_ms.emplace_back("detection", clock.lap());

    std::stable_sort(a.diagnostics.begin(), a.diagnostics.end(), [](const FileDiagnostic& x, const FileDiagnostic& y) {
        if (x.file != y.file) return x.file < y.file;
        if (x.span.begin.offset != y.span.begin.offset) return x.span.begin.offset < y.span.begin.offset;
        return x.message < y.message;
    });
}

} // namespace

std::size_t Analysis::conditional_listener_count() const {
    return static_cast<std::size_t>(
        std::count_if(listeners.begin(), listeners.end(), [](const ListenerResult& l) { return l.conditional(); }));
}

std::size_t Analysis::command_count() const {
    std::size_t n = 0;
    for (const auto& l : listeners) n += l.command_count();
    return n;
}

std::vector<SourceFile> discover_sources(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        if (fs::is_regular_file(root, ec)) return {SourceFile{root, root.filename().generic_string()}};
        throw IoError("not a directory: " + root.string());
    }
    std::vector<SourceFile> out;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
    for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
        if (!it->is_regular_file(ec) || it->path().extension() != ".java") continue;
        out.push_back(SourceFile{it->path(), fs::relative(it->path(), root).generic_string()});
    }
    std::sort(out.begin(), out.end(), [](const SourceFile& a, const SourceFile& b) { return a.display < b.display; });
    return out;
}

std::unique_ptr<Analysis> analyze_units(std::vector<CompilationUnit> units, ToolkitCatalog catalog,
                                        DetectionConfig config) {
    auto a = std::make_unique<Analysis>(std::move(catalog), std::move(config));
    Stopwatch clock;
    a->units = std::move(units);
    run_pipeline(*a, clock);
    return a;
}

std::unique_ptr<Analysis> analyze_files(std::vector<SourceFile> files, ToolkitCatalog catalog, DetectionConfig config) {
    auto a = std::make_unique<Analysis>(std::move(catalog), std::move(config));
    Stopwatch clock;
    std::sort(files.begin(), files.end(), [](const SourceFile& x, const SourceFile& y) { return x.display < y.display; });
    auto options = a->catalog.parse_options();
    for (const auto& f : files) {
        auto text = read_text_file(f.path);
        try {
            a->units.push_back(parse_unit(f.display, text, options));
        } catch (const EncodingError& e) {
            SourcePosition at{1, 1, e.offset()};
            a->diagnostics.push_back(FileDiagnostic{f.display, Span{at, at}, "skipped: invalid UTF-8"});
        }
    }
    a->timing_ms.emplace_back("parse", clock.lap());
    run_pipeline(*a, clock);
    return a;
}

std::unique_ptr<Analysis> analyze_root(const fs::path& root, const DetectionConfig& config) {
    auto catalog = load_toolkit(config.toolkit);
    return analyze_files(discover_sources(root), std::move(catalog), config);
}

} // namespace blobscan
