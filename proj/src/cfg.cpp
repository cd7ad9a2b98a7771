#include "blobscan/cfg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace blobscan {

std::string_view to_string(EdgeKind kind) {
    switch (kind) {
    case EdgeKind::Seq: return "seq";
    case EdgeKind::True: return "true";
    case EdgeKind::False: return "false";
    case EdgeKind::Case: return "case";
    case EdgeKind::Exception: return "exception";
    }
    return "seq";
}

namespace {

struct Pending {
    std::size_t from;
    EdgeKind kind;
    int case_index = -1;
};
using Frontier = std::vector<Pending>;

class Builder {
public:
    explicit Builder(ControlFlowGraph& g) : g_(g) {}

    Frontier build(const Statement* s, Frontier in) {
        if (s == nullptr) return in;
        return std::visit([&](const auto& node) { return build_node(*s, node, std::move(in)); }, s->node);
    }

    void connect(const Frontier& from, std::size_t to) {
        for (const auto& p : from) g_.edges.push_back(CfgEdge{p.from, to, p.kind, p.case_index});
    }

private:
    struct JumpTarget {
        std::optional<std::string> label;
        bool is_loop = false;
        bool is_switch = false;
        Frontier breaks;
        std::size_t continue_target = 0;
    };

    std::size_t add(const Statement& s, const Frontier& in) {
        auto id = g_.nodes.size();
        g_.nodes.push_back(CfgNode{CfgNode::Kind::Statement, &s, false});
        g_.index[&s] = id;
        connect(in, id);
        return id;
    }

    std::optional<std::string> take_label() {
        auto l = std::move(pending_label_);
        pending_label_.reset();
        return l;
    }

    JumpTarget* find_target(const std::optional<std::string>& label, bool for_continue) {
        for (auto it = jumps_.rbegin(); it != jumps_.rend(); ++it) {
            if (label) {
                if (it->label == label) return (for_continue && !it->is_loop) ? nullptr : &*it;
            } else if (it->is_loop || (!for_continue && it->is_switch)) {
                return &*it;
            }
        }
        return nullptr;
    }

    Frontier build_node(const Statement&, const stmt::Block& node, Frontier in) {
        for (const auto& child : node.statements) in = build(child.get(), std::move(in));
        return in;
    }

    Frontier build_node(const Statement& s, const stmt::If& node, Frontier in) {
        take_label();
        auto n = add(s, in);
        auto out = build(node.then_branch.get(), {{n, EdgeKind::True}});
        if (node.else_branch) {
            auto e = build(node.else_branch.get(), {{n, EdgeKind::False}});
            out.insert(out.end(), e.begin(), e.end());
        } else {
            out.push_back({n, EdgeKind::False});
        }
        return out;
    }

    Frontier build_node(const Statement& s, const stmt::Switch& node, Frontier in) {
        auto n = add(s, in);
        jumps_.push_back(JumpTarget{take_label(), false, true, {}, 0});
        Frontier out;
        Frontier fall;
        bool has_default = false;
        for (std::size_t i = 0; i < node.cases.size(); ++i) {
            const auto& c = node.cases[i];
            has_default = has_default || c.is_default;
            Frontier incoming{{n, EdgeKind::Case, static_cast<int>(i)}};
            if (!c.arrow) incoming.insert(incoming.end(), fall.begin(), fall.end());
            for (const auto& st : c.statements) incoming = build(st.get(), std::move(incoming));
            if (c.arrow) {
                out.insert(out.end(), incoming.begin(), incoming.end());
                fall.clear();
            } else {
                fall = std::move(incoming);
            }
        }
        out.insert(out.end(), fall.begin(), fall.end());
        if (!has_default) out.push_back({n, EdgeKind::Case, -1});
        auto& target = jumps_.back();
        out.insert(out.end(), target.breaks.begin(), target.breaks.end());
        jumps_.pop_back();
        return out;
    }

    Frontier build_node(const Statement& s, const stmt::Loop& node, Frontier in) {
        auto label = take_label();
        for (const auto& init : node.init) in = build(init.get(), std::move(in));
        Frontier out;
        if (node.kind == stmt::LoopKind::DoWhile) {
            auto n = add(s, {});
            jumps_.push_back(JumpTarget{label, true, false, {}, n});
            auto body_start = g_.nodes.size();
            auto body_out = build(node.body.get(), std::move(in));
            connect(body_out, n);
            g_.edges.push_back(CfgEdge{n, g_.nodes.size() > body_start ? body_start : n, EdgeKind::True, -1});
            out.push_back({n, EdgeKind::False});
        } else {
            auto n = add(s, in);
            jumps_.push_back(JumpTarget{label, true, false, {}, n});
            auto body_out = build(node.body.get(), {{n, EdgeKind::True}});
            connect(body_out, n);
            out.push_back({n, EdgeKind::False});
        }
        auto& target = jumps_.back();
        out.insert(out.end(), target.breaks.begin(), target.breaks.end());
        jumps_.pop_back();
        return out;
    }

    Frontier build_node(const Statement& s, const stmt::Try& node, Frontier in) {
        take_label();
        auto n = add(s, in);
        auto body_start = g_.nodes.size();
        Frontier current{{n, EdgeKind::Seq}};
        try_stack_.push_back(!node.catches.empty());
        for (const auto& r : node.resources) current = build(r.get(), std::move(current));
        auto out = build(node.body.get(), std::move(current));
        try_stack_.pop_back();
        auto body_end = g_.nodes.size();
        for (const auto& c : node.catches) {
            Frontier incoming{{n, EdgeKind::Exception}};
            for (auto k = body_start; k < body_end; ++k) incoming.push_back({k, EdgeKind::Exception});
            auto e = build(c.body.get(), std::move(incoming));
            out.insert(out.end(), e.begin(), e.end());
        }
        if (node.finally_block) out = build(node.finally_block.get(), std::move(out));
        return out;
    }

    Frontier build_node(const Statement& s, const stmt::Return&, Frontier in) {
        take_label();
        auto n = add(s, in);
        g_.edges.push_back(CfgEdge{n, ControlFlowGraph::kExit, EdgeKind::Seq, -1});
        return {};
    }

    Frontier build_node(const Statement& s, const stmt::Throw&, Frontier in) {
        take_label();
        auto n = add(s, in);
        // Inside a try with handlers the catch edges are added by the Try.
        bool caught = std::find(try_stack_.begin(), try_stack_.end(), true) != try_stack_.end();
        if (!caught) g_.edges.push_back(CfgEdge{n, ControlFlowGraph::kExit, EdgeKind::Exception, -1});
        return {};
    }

    Frontier build_node(const Statement& s, const stmt::Break& node, Frontier in) {
        take_label();
        auto n = add(s, in);
        if (auto* t = find_target(node.label, false); t != nullptr) {
            t->breaks.push_back({n, EdgeKind::Seq});
        } else {
            g_.edges.push_back(CfgEdge{n, ControlFlowGraph::kExit, EdgeKind::Seq, -1});
        }
        return {};
    }

    Frontier build_node(const Statement& s, const stmt::Continue& node, Frontier in) {
        take_label();
        auto n = add(s, in);
        auto* t = find_target(node.label, true);
        g_.edges.push_back(CfgEdge{n, t != nullptr ? t->continue_target : ControlFlowGraph::kExit, EdgeKind::Seq, -1});
        return {};
    }

    Frontier build_node(const Statement&, const stmt::Labeled& node, Frontier in) {
        const auto* body = node.body.get();
        if (body != nullptr && (body->is<stmt::Loop>() || body->is<stmt::Switch>())) {
            pending_label_ = node.label;
            return build(body, std::move(in));
        }
        jumps_.push_back(JumpTarget{node.label, false, false, {}, 0});
        auto out = build(body, std::move(in));
        auto& target = jumps_.back();
        out.insert(out.end(), target.breaks.begin(), target.breaks.end());
        jumps_.pop_back();
        return out;
    }

    template <typename T>
    Frontier build_node(const Statement& s, const T&, Frontier in) {
        take_label();
        auto n = add(s, in);
        return {{n, EdgeKind::Seq}};
    }

    ControlFlowGraph& g_;
    std::vector<JumpTarget> jumps_;
    std::vector<bool> try_stack_;
    std::optional<std::string> pending_label_;
};

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::optional<std::size_t> ControlFlowGraph::node_of(const Statement& statement) const {
    auto it = index.find(&statement);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> ControlFlowGraph::successors(std::size_t node) const {
    std::vector<std::size_t> out;
    for (const auto& e : edges) {
        if (e.from == node) out.push_back(e.to);
    }
    return out;
}

std::vector<std::size_t> ControlFlowGraph::predecessors(std::size_t node) const {
    std::vector<std::size_t> out;
    for (const auto& e : edges) {
        if (e.to == node) out.push_back(e.from);
    }
    return out;
}

std::vector<bool> ControlFlowGraph::reachable(std::optional<std::size_t> skip_edge,
                                              std::optional<std::size_t> skip_node) const {
    std::vector<std::vector<std::size_t>> adjacency(nodes.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (skip_edge && *skip_edge == i) continue;
        adjacency[edges[i].from].push_back(edges[i].to);
    }
    std::vector<bool> seen(nodes.size(), false);
    if (skip_node && *skip_node == kEntry) return seen;
    std::vector<std::size_t> stack{kEntry};
    seen[kEntry] = true;
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        for (auto m : adjacency[n]) {
            if (seen[m] || (skip_node && *skip_node == m)) continue;
            seen[m] = true;
            stack.push_back(m);
        }
    }
    return seen;
}

std::string ControlFlowGraph::to_dot(const CompilationUnit& unit, const std::string& name) const {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(name) << "\" {\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        std::string label;
        if (n.kind == CfgNode::Kind::Entry) {
            label = "entry";
        } else if (n.kind == CfgNode::Kind::Exit) {
            label = "exit";
        } else {
            auto text = unit.slice(n.statement->span);
            auto first = text.substr(0, text.find('\n'));
            if (first.size() > 40) first = first.substr(0, 40);
            label = "L" + std::to_string(n.statement->span.first_line()) + ": " + std::string(first);
        }
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\"" << (n.unreachable ? ", style=dashed" : "")
            << "];\n";
    }
    for (const auto& e : edges) {
        out << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_string(e.kind);
        if (e.kind == EdgeKind::Case) out << " " << e.case_index;
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

ControlFlowGraph build_cfg(const MethodDeclaration& method) {
    ControlFlowGraph g;
    g.method = &method;
    g.nodes.push_back(CfgNode{CfgNode::Kind::Entry, nullptr, false});
    g.nodes.push_back(CfgNode{CfgNode::Kind::Exit, nullptr, false});
    Builder builder(g);
    auto out = builder.build(method.body.get(), {{ControlFlowGraph::kEntry, EdgeKind::Seq}});
    builder.connect(out, ControlFlowGraph::kExit);
    auto seen = g.reachable();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) g.nodes[i].unreachable = !seen[i];
    return g;
}

GoverningConditions governing_conditions(const ControlFlowGraph& cfg, const Statement& statement) {
    auto node = cfg.node_of(statement);
    if (!node) throw std::out_of_range("statement is not a node of this control-flow graph");
    GoverningConditions result{&statement, {}};
    if (cfg.nodes[*node].unreachable) return result;

    std::vector<std::pair<std::size_t, GoverningBranch>> chain;
    for (std::size_t i = 0; i < cfg.edges.size(); ++i) {
        const auto& e = cfg.edges[i];
        if (e.kind != EdgeKind::True && e.kind != EdgeKind::False && e.kind != EdgeKind::Case) continue;
        const auto* cond = cfg.nodes[e.from].statement;
        if (cond == nullptr || !cond->is_conditional() || e.from == *node) continue;
        if (cfg.nodes[e.from].unreachable) continue;
        if (!cfg.reachable(i)[*node]) chain.emplace_back(e.from, GoverningBranch{cond, e.kind, e.case_index});
    }
    // Dominators of a node form a chain; order by how many others dominate each.
    std::vector<std::pair<std::size_t, std::size_t>> depth;
    for (std::size_t a = 0; a < chain.size(); ++a) {
        std::size_t dominated_by = 0;
        for (std::size_t b = 0; b < chain.size(); ++b) {
            if (a == b || chain[a].first == chain[b].first) continue;
            if (!cfg.reachable(std::nullopt, chain[b].first)[chain[a].first]) ++dominated_by;
        }
        depth.emplace_back(dominated_by, a);
    }
    std::stable_sort(depth.begin(), depth.end());
    for (const auto& [_, a] : depth) result.chain.push_back(chain[a].second);
    return result;
}

} // namespace blobscan
