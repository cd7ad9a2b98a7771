#include <gtest/gtest.h>

#include <set>

#include "blobscan/commands.hpp"
#include "support.hpp"

using namespace blobscan;
using namespace blobscan::testing;

namespace {

using Lines = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

Lines command_lines(const ListenerResult& l) {
    Lines out;
    for (const auto& c : l.commands) out.emplace_back(c.body_span.first_line(), c.body_span.last_line());
    return out;
}

std::set<EvidenceKind> kinds(const std::vector<GuiReferenceEvidence>& evidence) {
    std::set<EvidenceKind> out;
    for (const auto& e : evidence) out.insert(e.kind);
    return out;
}

/// A one-method ActionListener whose body is `body`, preceded by `fields`.
std::string listener(std::string_view fields, std::string_view body) {
    return "import java.awt.event.*;\nimport javax.swing.*;\nclass L implements ActionListener {\n" +
           std::string(fields) + "\npublic void actionPerformed(ActionEvent e) {\n" + std::string(body) + "\n}\n}\n";
}

std::vector<std::set<EvidenceKind>> candidate_kinds(std::string_view fields, std::string_view body, int depth = 8) {
    DetectionConfig config;
    config.max_trace_depth = depth;
    auto a = analyze_source(listener(fields, body), config);
    std::vector<std::set<EvidenceKind>> out;
    for (const auto& c : a->listeners.at(0).candidates) out.push_back(kinds(c.evidence));
    return out;
}

CommandCandidate candidate(std::uint32_t begin, std::uint32_t end, std::optional<std::size_t> nested_in) {
    CommandCandidate c;
    c.body_span = Span{{begin, 1, begin * 100}, {end, 1, end * 100}};
    c.nested_in = nested_in;
    return c;
}

Lines lines_of(const std::vector<GuiCommand>& commands) {
    Lines out;
    for (const auto& c : commands) out.emplace_back(c.body_span.first_line(), c.body_span.last_line());
    return out;
}

} // namespace

TEST(Evidence, DirectForms) {
    using K = EvidenceKind;
    EXPECT_EQ(candidate_kinds("JButton ok;", "if (e.getSource() == ok) a();"),
              (std::vector<std::set<K>>{{K::WidgetFieldComparison, K::EventSourceAccess, K::WidgetTypedName}}));
    EXPECT_EQ(candidate_kinds("", "if (e.getSource() instanceof JButton) a();"),
              (std::vector<std::set<K>>{{K::InstanceOfWidget, K::EventSourceAccess, K::WidgetTypedName}}));
    EXPECT_EQ(candidate_kinds("", "if (e.getActionCommand().equals(\"x\")) a();"),
              (std::vector<std::set<K>>{{K::PropertyAccess, K::WidgetTypedName}}));
    EXPECT_EQ(candidate_kinds("", "if (e.getActionCommand().contains(\"copy\")) a();"),
              (std::vector<std::set<K>>{{K::PropertyAccess, K::WidgetTypedName}}));
}

TEST(Evidence, DerivedVariablesAreTraced) {
    auto a = analyze_source(listener("", R"(String actionCmd = ((AbstractButton) e.getSource()).getActionCommand();
String alias = actionCmd;
if ("copy".equals(alias)) a();)"));
    const auto& c = a->listeners.at(0).candidates.at(0);
    ASSERT_EQ(c.evidence.size(), 1u);
    const auto& ev = c.evidence[0];
    EXPECT_EQ(ev.kind, EvidenceKind::DerivedVariable);
    EXPECT_EQ(ev.terminal, EvidenceKind::PropertyAccess);
    ASSERT_EQ(ev.resolution_trace.size(), 2u);
    EXPECT_EQ(ev.resolution_trace[0].name, "alias");
    EXPECT_EQ(ev.resolution_trace[1].name, "actionCmd");
}

TEST(Evidence, TraceDepthIsBounded) {
    std::string chain = "Object v0 = e.getSource();\n";
    for (int i = 1; i <= 5; ++i) chain += "Object v" + std::to_string(i) + " = v" + std::to_string(i - 1) + ";\n";
    chain += "if (v5 != null) a();";
    EXPECT_EQ(candidate_kinds("", chain, 8).size(), 1u);
    EXPECT_EQ(candidate_kinds("", chain, 6).size(), 1u);
    EXPECT_EQ(candidate_kinds("", chain, 5).size(), 0u);
}

TEST(Evidence, FieldsAssignedInTheMethodAreFollowed) {
    EXPECT_EQ(candidate_kinds("Object last;", "last = e.getSource();\nif (last == null) a();").size(), 1u);
}

TEST(Evidence, NonGuiConditionsAreIgnored) {
    EXPECT_TRUE(candidate_kinds("int mode;", "if (mode == 1) a(); else if (mode == 2) b();").empty());
    EXPECT_TRUE(candidate_kinds("Model model;", "if (model.isDirty()) a();").empty());
    EXPECT_TRUE(candidate_kinds("", "if (hasPreviousBookmark()) a();").empty());
}

TEST(Evidence, NonCatalogWidgetIsInvisible) {
    auto a = analyze_fixture("eval_corpus/KnobPanel.java");
    ASSERT_EQ(a->listeners.size(), 1u);
    EXPECT_TRUE(a->listeners[0].candidates.empty());
}

TEST(Evidence, SourceSubclassOfWidgetIsGui) {
    auto with_base = [](std::string_view base) {
        return analyze_source("import java.awt.event.*;\nimport javax.swing.*;\nclass Fancy " + std::string(base) +
                              " {}\nclass L implements ActionListener {\n  Fancy fancy;\n"
                              "  public void actionPerformed(ActionEvent ev) {\n    if (fancy.isVisible()) a();\n  }\n}\n");
    };
    EXPECT_EQ(with_base("extends JButton")->listeners.at(0).candidates.size(), 1u);
    EXPECT_TRUE(with_base("extends Object")->listeners.at(0).candidates.empty());
}

TEST(Commands, CascadeWithEvidencedElse) {
    auto a = analyze_source(listener("JButton b1; JButton b2;", R"(Object src = e.getSource();
if (src == b1) {
  a();
} else if (src == b2) {
  b();
} else {
  c();
})"));
    const auto& l = a->listeners.at(0);
    EXPECT_EQ(l.candidates.size(), 3u);
    EXPECT_EQ(l.candidates[2].branch, BranchKind::Else);
}

TEST(Commands, ElseAfterUnevidencedLinkIsNotACommand) {
    auto a = analyze_source(listener("JButton b1; int mode;", R"(if (e.getSource() == b1) {
  a();
} else if (mode == 2) {
  b();
} else {
  c();
})"));
    EXPECT_EQ(a->listeners.at(0).candidates.size(), 1u);
}

TEST(Commands, SwitchCasesOnEvidencedSelector) {
    auto a = analyze_fixture("eval_corpus/MenuDispatcher.java");
    const auto& l = a->listeners.at(0);
    ASSERT_EQ(l.commands.size(), 4u);
    for (const auto& c : l.commands) EXPECT_EQ(c.branch, BranchKind::Case);
    EXPECT_EQ(command_lines(l), (Lines{{9, 11}, {12, 14}, {15, 17}, {18, 20}}));
}

TEST(Commands, StateBasedCommands) {
    auto a = analyze_fixture("listings/list_selection.java");
    const auto& l = a->listeners.at(0);
    ASSERT_EQ(l.commands.size(), 3u);
    for (const auto& c : l.commands) EXPECT_TRUE(c.state_based);
    auto b = analyze_fixture("listings/reference_dispatch.java");
    for (const auto& c : b->listeners.at(0).commands) EXPECT_FALSE(c.state_based);
}

TEST(Pruning, SingleNestedCandidateIsAPrecondition) {
    auto proper = get_proper_commands({candidate(1, 5, std::nullopt), candidate(2, 4, 0)});
    EXPECT_EQ(lines_of(proper), (Lines{{1, 5}}));
}

TEST(Pruning, SeveralNestedCandidatesReplaceTheParent) {
    auto proper = get_proper_commands(
        {candidate(1, 9, std::nullopt), candidate(2, 3, 0), candidate(4, 5, 0), candidate(6, 7, 0)});
    EXPECT_EQ(lines_of(proper), (Lines{{2, 3}, {4, 5}, {6, 7}}));
    for (std::size_t i = 0; i < proper.size(); ++i) EXPECT_EQ(proper[i].ordinal, i + 1);
}

TEST(Pruning, ThreeLevelChainKeepsTheRoot) {
    auto proper = get_proper_commands({candidate(1, 9, std::nullopt), candidate(2, 8, 0), candidate(3, 7, 1)});
    EXPECT_EQ(lines_of(proper), (Lines{{1, 9}}));
}

TEST(Pruning, SinglePassOverMixedTree) {
    // A contains only B; B contains C and D. A drops B, B's pass drops B too,
    // so C and D survive alongside A.
    auto proper = get_proper_commands(
        {candidate(1, 9, std::nullopt), candidate(2, 8, 0), candidate(3, 4, 1), candidate(5, 6, 1)});
    EXPECT_EQ(lines_of(proper), (Lines{{1, 9}, {3, 4}, {5, 6}}));
}

TEST(Pruning, Fixtures) {
    EXPECT_EQ(command_lines(analyze_fixture("nested/precondition.java")->listeners.at(0)), (Lines{{10, 14}}));
    EXPECT_EQ(command_lines(analyze_fixture("nested/multi_nested.java")->listeners.at(0)),
              (Lines{{10, 11}, {12, 13}, {14, 15}}));
    EXPECT_EQ(command_lines(analyze_fixture("nested/chain.java")->listeners.at(0)), (Lines{{11, 17}}));
    auto menu = analyze_fixture("listings/menu_listener.java");
    EXPECT_EQ(menu->listeners.at(0).candidates.size(), 4u);
    EXPECT_EQ(command_lines(menu->listeners.at(0)), (Lines{{18, 21}, {21, 23}, {23, 25}}));
}

TEST(Pruning, NestedInIsTheInnermostContainer) {
    auto a = analyze_fixture("nested/chain.java");
    const auto& c = a->listeners.at(0).candidates;
    ASSERT_EQ(c.size(), 3u);
    EXPECT_FALSE(c[0].nested_in.has_value());
    EXPECT_EQ(c[1].nested_in, 0u);
    EXPECT_EQ(c[2].nested_in, 1u);
}

TEST(Evidence, MorePropertyAccessorsNeverLoseCandidates) {
    auto count = [](const ToolkitCatalog& catalog) {
        auto files = discover_sources(fixture(""));
        auto a = analyze_files(files, catalog, DetectionConfig{});
        std::size_t n = 0;
        for (const auto& l : a->listeners) n += l.candidates.size();
        return n;
    };
    auto base = count(swing_catalog());
    auto extended = load_catalog(std::string(swing_catalog_text()) + "\n[property_accessors]\nlevel\nisDirty\n");
    EXPECT_GE(count(extended), base);
}
