#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "blobscan/ast.hpp"

namespace blobscan {

enum class EdgeKind { Seq, True, False, Case, Exception };

[[nodiscard]] std::string_view to_string(EdgeKind kind);

struct CfgEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    EdgeKind kind = EdgeKind::Seq;
    int case_index = -1; ///< Case edges: index into Switch::cases, -1 for the implicit default

    friend bool operator==(const CfgEdge&, const CfgEdge&) = default;
};

struct CfgNode {
    enum class Kind { Entry, Exit, Statement };
    Kind kind = Kind::Statement;
    const Statement* statement = nullptr;
    bool unreachable = false;
};

/// Statement-level control-flow graph of one method. Blocks are transparent:
/// every other statement of the method's own body is one node.
class ControlFlowGraph {
public:
    static constexpr std::size_t kEntry = 0;
    static constexpr std::size_t kExit = 1;

    const MethodDeclaration* method = nullptr;
    std::vector<CfgNode> nodes;
    std::vector<CfgEdge> edges;

    [[nodiscard]] std::optional<std::size_t> node_of(const Statement& statement) const;
    [[nodiscard]] std::vector<std::size_t> successors(std::size_t node) const;
    [[nodiscard]] std::vector<std::size_t> predecessors(std::size_t node) const;

    /// Nodes reachable from entry, optionally ignoring one edge or one node.
    [[nodiscard]] std::vector<bool> reachable(std::optional<std::size_t> skip_edge = std::nullopt,
                                              std::optional<std::size_t> skip_node = std::nullopt) const;

    /// Graphviz rendering; labels use the first line of each statement.
    [[nodiscard]] std::string to_dot(const CompilationUnit& unit, const std::string& name) const;

    std::unordered_map<const Statement*, std::size_t> index;
};

struct GoverningBranch {
    const Statement* conditional = nullptr; ///< an If or Switch
    EdgeKind branch = EdgeKind::True;       ///< True, False or Case
    int case_index = -1;

    friend bool operator==(const GoverningBranch&, const GoverningBranch&) = default;
};

struct GoverningConditions {
    const Statement* statement = nullptr;
    std::vector<GoverningBranch> chain; ///< outermost first
};

[[nodiscard]] ControlFlowGraph build_cfg(const MethodDeclaration& method);

/// The If/Switch branches every entry-to-statement path must take. Loop
/// conditions never appear. Unreachable statements get an empty chain.
/// Throws std::out_of_range when `statement` is not a node of `cfg`.
[[nodiscard]] GoverningConditions governing_conditions(const ControlFlowGraph& cfg, const Statement& statement);

} // namespace blobscan
