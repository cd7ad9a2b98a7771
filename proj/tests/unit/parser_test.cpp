#include <gtest/gtest.h>

#include <random>

#include "blobscan/lexer.hpp"
#include "support.hpp"

using namespace blobscan;
using namespace blobscan::testing;

namespace {

std::size_t if_chain_depth(const Statement* s) {
    std::size_t depth = 0;
    while (s != nullptr && s->is<stmt::If>()) {
        ++depth;
        s = s->as<stmt::If>()->else_branch.get();
    }
    return depth;
}

void expect_nested_spans(const Statement& s, const Span& parent) {
    EXPECT_TRUE(parent.contains(s.span)) << "statement at line " << s.span.first_line();
    auto visit = [&](const StmtPtr& child) {
        if (child) expect_nested_spans(*child, s.span);
    };
    if (const auto* b = s.as<stmt::Block>()) {
        for (const auto& c : b->statements) visit(c);
    } else if (const auto* i = s.as<stmt::If>()) {
        visit(i->then_branch);
        visit(i->else_branch);
    } else if (const auto* sw = s.as<stmt::Switch>()) {
        for (const auto& c : sw->cases) {
            EXPECT_TRUE(s.span.contains(c.span));
            for (const auto& st : c.statements) visit(st);
        }
    } else if (const auto* l = s.as<stmt::Loop>()) {
        visit(l->body);
    } else if (const auto* t = s.as<stmt::Try>()) {
        visit(t->body);
        for (const auto& c : t->catches) visit(c.body);
        visit(t->finally_block);
    } else if (const auto* lb = s.as<stmt::Labeled>()) {
        visit(lb->body);
    }
}

} // namespace

TEST(Lexer, KeywordsInsideLiteralsAndCommentsAreNotTokens) {
    auto r = lex_java(R"(String s = "if (x) switch"; // if
/* switch */ char c = 'i'; if (a) {})");
    std::size_t keywords = 0;
    for (const auto& t : r.tokens) keywords += t.keyword("if") || t.keyword("switch");
    EXPECT_EQ(keywords, 1u);
    EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Lexer, UnterminatedCommentIsDiagnosedNotFatal) {
    auto r = lex_java("int a; /* never closed");
    EXPECT_FALSE(r.diagnostics.empty());
    EXPECT_EQ(r.tokens.back().kind, TokenKind::End);
}

TEST(Lexer, FindsInvalidUtf8) {
    EXPECT_EQ(find_invalid_utf8("caf\xc3\xa9"), std::string::npos);
    EXPECT_EQ(find_invalid_utf8("ab\xff"), 2u);
    EXPECT_EQ(find_invalid_utf8("\xc3"), 0u);
}

TEST(Parser, ActionControllerShape) {
    auto unit = parse_fixture("listings/action_controller.java");
    ASSERT_EQ(unit.types.size(), 1u);
    const auto& type = unit.types.front();
    EXPECT_EQ(type.name, "AController");
    EXPECT_EQ(type.implements_names, std::vector<std::string>{"ActionListener"});
    EXPECT_EQ(type.fields.size(), 3u);
    ASSERT_EQ(type.methods.size(), 1u);
    EXPECT_EQ(type.methods[0].name, "actionPerformed");
    const auto& body = type.methods[0].block()->statements;
    ASSERT_EQ(body.size(), 2u);
    EXPECT_EQ(if_chain_depth(body[1].get()), 3u);
    EXPECT_TRUE(unit.parse_diagnostics.empty());
}

TEST(Parser, ConditionalFidelityOnEveryFixture) {
    for (const auto& rel : all_fixture_sources()) {
        auto text = fixture_text(rel);
        auto unit = parse_fixture(rel);
        EXPECT_EQ(count_conditional_nodes(unit), count_conditional_keywords(text)) << rel;
        EXPECT_TRUE(unit.parse_diagnostics.empty()) << rel;
    }
}

TEST(Parser, ConditionalFidelityOnTrickySource) {
    const char* src = R"(class T {
  int f(int x) {
    String s = "if";
    char c = '"';
    String block = """
        if (x) switch
        """;
    int y = switch (x) { case 1 -> { if (x > 0) yield 2; else yield 3; } default -> 0; };
    if (x > 0) if (y > 0) return 1; else return 2;
    switch (x) { case 1: case 2: return 3; default: }
    return x > 0 ? 1 : 2;
  }
})";
    auto unit = parse_java(src);
    EXPECT_EQ(count_conditional_nodes(unit), count_conditional_keywords(src));
    EXPECT_EQ(count_conditional_nodes(unit), 5u);
}

TEST(Parser, StatementSpansNest) {
    for (const auto& rel : all_fixture_sources()) {
        auto unit = parse_fixture(rel);
        for (const auto* type : iter_listener_capable_types(unit)) {
            EXPECT_TRUE(unit.types.empty() || type->span.length() > 0);
            for (const auto& m : type->methods) {
                if (m.body) expect_nested_spans(*m.body, m.span);
            }
        }
    }
}

TEST(Parser, GenericsShiftsAndCasts) {
    auto unit = parse_java(R"(class G {
  Map<String, List<Integer>> m;
  void f() {
    int a = b >> 2 >>> 1;
    List<List<String>> x = new ArrayList<>();
    if (a >= 1 && (Object) x instanceof List<?> l) { g(); }
    Runnable r = () -> { if (a > 0) h(); };
  }
})");
    EXPECT_TRUE(unit.parse_diagnostics.empty());
    EXPECT_EQ(count_conditional_nodes(unit), 2u);
    ASSERT_EQ(unit.types[0].fields.size(), 1u);
    EXPECT_EQ(unit.types[0].fields[0].name, "m");
}

TEST(Parser, LambdaPassedToRegistrationBecomesListenerType) {
    auto unit = parse_fixture("listings/lambda_handlers.java");
    auto types = iter_listener_capable_types(unit);
    std::vector<std::string> names;
    for (const auto* t : types) names.push_back(t->qualified_name);
    EXPECT_EQ(names, (std::vector<std::string>{"PagedLambdaView", "PagedLambdaView$lambda$1", "PagedLambdaView$lambda$2"}));
    const auto& lambda_type = *types[1];
    EXPECT_EQ(lambda_type.implements_names, std::vector<std::string>{"java.awt.event.ActionListener"});
    ASSERT_EQ(lambda_type.methods.size(), 1u);
    EXPECT_EQ(lambda_type.methods[0].name, "actionPerformed");
    EXPECT_TRUE(lambda_type.methods[0].is_lambda);
}

TEST(Parser, AnonymousClassesAreNamedByOrdinal) {
    auto unit = parse_fixture("listings/anonymous_handlers.java");
    auto types = iter_listener_capable_types(unit);
    ASSERT_EQ(types.size(), 3u);
    EXPECT_EQ(types[1]->qualified_name, "PagedView$1");
    EXPECT_EQ(types[2]->qualified_name, "PagedView$2");
    EXPECT_EQ(types[1]->kind, TypeKind::Anonymous);
}

TEST(Parser, MalformedInputRecoversWithDiagnostics) {
    auto unit = parse_java("class A { void f() { if (x { y(); } } int ; } class B implements ActionListener {}");
    EXPECT_FALSE(unit.parse_diagnostics.empty());
    bool has_b = false;
    for (const auto* t : iter_listener_capable_types(unit)) has_b |= t->name == "B";
    EXPECT_TRUE(has_b);
}

TEST(Parser, InvalidUtf8Throws) {
    EXPECT_THROW((void)parse_java("class A { String s = \"\xff\"; }"), EncodingError);
}

TEST(Parser, DeeplyNestedInputDoesNotOverflow) {
    std::string src = "class D { void f() { int x = ";
    for (int i = 0; i < 5000; ++i) src += "(";
    src += "1";
    for (int i = 0; i < 5000; ++i) src += ")";
    src += "; } }";
    auto unit = parse_java(src);
    EXPECT_FALSE(unit.parse_diagnostics.empty());
}

TEST(Parser, SingleCharacterDeletionMutantsParse) {
    auto sources = all_fixture_sources();
    std::vector<std::string> texts;
    for (const auto& rel : sources) texts.push_back(fixture_text(rel));
    std::mt19937 rng(20240611);
    for (int i = 0; i < 1000; ++i) {
        const auto& text = texts[rng() % texts.size()];
        auto mutant = text;
        mutant.erase(rng() % mutant.size(), 1);
        CompilationUnit unit;
        ASSERT_NO_THROW(unit = parse_java(mutant)) << "mutant " << i;
        EXPECT_EQ(count_conditional_nodes(unit), count_conditional_keywords(mutant)) << "mutant " << i;
    }
}
