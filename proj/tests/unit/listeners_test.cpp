#include <gtest/gtest.h>

#include "blobscan/listeners.hpp"
#include "support.hpp"

using namespace blobscan;
using namespace blobscan::testing;

namespace {

struct Found {
    std::string owner;
    std::string method;
    std::string interface_name;
    friend bool operator==(const Found&, const Found&) = default;
};

std::ostream& operator<<(std::ostream& os, const Found& f) {
    return os << f.owner << "." << f.method << " [" << f.interface_name << "]";
}

std::vector<Found> find(std::vector<CompilationUnit> units) {
    TypeUniverse universe(units, swing_catalog());
    std::vector<Found> out;
    for (const auto& m : find_listener_methods(units, universe)) {
        out.push_back({m.owner->qualified_name, m.method->name, std::string(simple_name(m.interface_name))});
    }
    return out;
}

std::vector<Found> find(std::string_view src) {
    std::vector<CompilationUnit> units;
    units.push_back(parse_java(src));
    return find(std::move(units));
}

} // namespace

TEST(Listeners, ClassImplementingInterface) {
    auto found = find(R"(import java.awt.event.*;
class A implements ActionListener, KeyListener {
  public void actionPerformed(ActionEvent e) {}
  public void keyTyped(KeyEvent e) {}
  public void keyPressed(KeyEvent e) {}
  public void keyReleased(KeyEvent e) {}
  public void helper(ActionEvent e) {}
  public void actionPerformed() {}
})");
    EXPECT_EQ(found, (std::vector<Found>{{"A", "actionPerformed", "ActionListener"},
                                         {"A", "keyTyped", "KeyListener"},
                                         {"A", "keyPressed", "KeyListener"},
                                         {"A", "keyReleased", "KeyListener"}}));
}

TEST(Listeners, AdaptersAndSourceSupertypes) {
    auto found = find(R"(import java.awt.event.*;
abstract class Base implements MouseListener {}
class Derived extends Base {
  public void mouseClicked(MouseEvent e) {}
}
class Adapted extends MouseAdapter {
  public void mousePressed(MouseEvent e) {}
})");
    EXPECT_EQ(found, (std::vector<Found>{{"Derived", "mouseClicked", "MouseListener"},
                                         {"Adapted", "mousePressed", "MouseAdapter"}}));
}

TEST(Listeners, AnonymousAndLambdaListeners) {
    EXPECT_EQ(find(fixture_text("listings/anonymous_handlers.java")),
              (std::vector<Found>{{"PagedView$1", "actionPerformed", "ActionListener"},
                                  {"PagedView$2", "actionPerformed", "ActionListener"}}));
    EXPECT_EQ(find(fixture_text("listings/lambda_handlers.java")),
              (std::vector<Found>{{"PagedLambdaView$lambda$1", "actionPerformed", "ActionListener"},
                                  {"PagedLambdaView$lambda$2", "actionPerformed", "ActionListener"}}));
}

TEST(Listeners, NonGuiTypesAreIgnored) {
    EXPECT_TRUE(find(R"(class Model implements Comparable<Model>, Runnable {
  public void run() {}
  public void actionPerformed(Object e) {}
})")
                    .empty());
}

TEST(Listeners, LambdaNotPassedToRegistrationIsNotAListener) {
    EXPECT_TRUE(find("class A { void f() { Runnable r = () -> { if (x) g(); }; list.forEach(e -> h(e)); } }").empty());
}

TEST(Listeners, ConditionalStatementsExcludeNestedBodies) {
    auto unit = parse_fixture("listings/menu_listener.java");
    const auto& action = unit.types[0].methods[0];
    EXPECT_EQ(conditional_statements(action).size(), 5u);
    const auto& caret = unit.types[0].methods[1];
    EXPECT_TRUE(conditional_statements(caret).empty());

    auto outer = parse_java(R"(class A { void f() {
  b.addActionListener(new ActionListener() { public void actionPerformed(ActionEvent e) { if (x) y(); } });
  b.addActionListener(e -> { if (x) y(); });
} })");
    EXPECT_TRUE(conditional_statements(outer.types[0].methods[0]).empty());
}

TEST(Listeners, ConditionalListenerCounts) {
    auto a = analyze_fixture("listings/anonymous_handlers.java");
    EXPECT_EQ(a->listeners.size(), 2u);
    EXPECT_EQ(a->conditional_listener_count(), 1u);
    auto b = analyze_fixture("listings/action_controller.java");
    ASSERT_EQ(b->listeners.size(), 1u);
    EXPECT_EQ(b->listeners[0].conditional_statements.size(), 3u);
}

TEST(Listeners, OrderedByFileThenOffset) {
    std::vector<CompilationUnit> units;
    units.push_back(parse_unit("b/Second.java", "class S implements java.awt.event.ActionListener { public void actionPerformed(java.awt.event.ActionEvent e) {} }"));
    units.push_back(parse_unit("a/First.java", "class F implements java.awt.event.ActionListener { public void actionPerformed(java.awt.event.ActionEvent e) {} }"));
    TypeUniverse universe(units, swing_catalog());
    auto found = find_listener_methods(units, universe);
    ASSERT_EQ(found.size(), 2u);
    EXPECT_EQ(found[0].unit->file, "a/First.java");
}
