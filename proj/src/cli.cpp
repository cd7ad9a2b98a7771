#include "blobscan/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "blobscan/analyzer.hpp"
#include "blobscan/eval.hpp"
#include "blobscan/parser.hpp"
#include "blobscan/report.hpp"

namespace blobscan {

namespace {

struct Options {
    std::string root;
    std::string format = "text";
    std::string ground_truth;
    bool explain = false;
    bool no_timing = false;
    bool cfg_dump = false;
    DetectionConfig config;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("root", o.root, "Directory (or single file) of Java sources")->required();
    cmd->add_option("--threshold", o.config.threshold, "Commands needed to flag a listener")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--toolkit", o.config.toolkit, "Bundled toolkit name or catalog file");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--max-trace-depth", o.config.max_trace_depth, "Variable resolution depth")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--no-timing", o.no_timing, "Omit per-phase timings");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Detects Blob listeners in Java Swing code", "blobscan"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Options o;
    auto* detect = app.add_subcommand("detect", "Report Blob listeners");
    add_common(detect, o);
    detect->add_flag("--explain", o.explain, "Print the evidence behind each command");
    detect->add_flag("--cfg-dump", o.cfg_dump, "Append DOT control-flow graphs of conditional listeners");
    auto* stats = app.add_subcommand("stats", "Distribution of listeners by command count");
    add_common(stats, o);
    auto* eval = app.add_subcommand("eval", "Compare detection against ground truth");
    add_common(eval, o);
    eval->add_option("--ground-truth", o.ground_truth, "Annotation file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitClean;
    } catch (const CLI::CallForVersion& e) {
        out << kToolVersion << "\n";
        return kExitClean;
    } catch (const CLI::ParseError& e) {
        err << "blobscan: " << e.what() << "\n";
        if (e.get_exit_code() == 0) return kExitClean;
        return kExitError;
    }
    bool json = o.format == "json";

    try {
        if (eval->parsed()) {
            // Parse the truth first so format errors surface before analysis.
            auto truth = load_ground_truth(read_text_file(o.ground_truth));
            auto analysis = analyze_root(o.root, o.config);
            auto report = report_json(*analysis, ReportOptions{false, false, false});
            auto result = evaluate(report, truth);
            if (json) {
                out << eval_json(result).dump(2) << "\n";
            } else {
                out << render_eval_text(result);
            }
            return kExitClean;
        }
        auto analysis = analyze_root(o.root, o.config);
        if (stats->parsed()) {
            if (json) {
                out << stats_json(*analysis).dump(2) << "\n";
            } else {
                out << render_stats_text(*analysis);
            }
            return kExitClean;
        }
        ReportOptions ro{o.explain, !o.no_timing, o.cfg_dump};
        if (json) {
            out << report_json(*analysis, ro).dump(2) << "\n";
        } else {
            out << render_detect_text(*analysis, ro);
        }
        return analysis->findings.empty() ? kExitClean : kExitFindings;
    } catch (const Error& e) {
        err << "blobscan: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "blobscan: internal error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace blobscan
