#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blobscan/ast.hpp"
#include "blobscan/cfg.hpp"
#include "blobscan/listeners.hpp"
#include "blobscan/universe.hpp"

namespace blobscan {

/// Declared in priority order: references_gui_object reports the first kind found.
enum class EvidenceKind {
    WidgetFieldComparison,
    InstanceOfWidget,
    PropertyAccess,
    EventSourceAccess,
    DerivedVariable,
    WidgetTypedName,
};

[[nodiscard]] std::string_view to_string(EvidenceKind kind);

struct TraceHop {
    std::string name;
    Span definition;
};

struct GuiReferenceEvidence {
    EvidenceKind kind = EvidenceKind::WidgetTypedName;
    const Expression* expression = nullptr;
    std::vector<TraceHop> resolution_trace; ///< non-empty only for DerivedVariable
    EvidenceKind terminal = EvidenceKind::WidgetTypedName; ///< the non-derived kind the trace ends at
};

/// Where an expression lives: the method (may be null for field initializers),
/// its owner type, and the offset before which local definitions are visible.
struct AnalysisContext {
    const TypeUniverse* universe = nullptr;
    const CompilationUnit* unit = nullptr;
    const TypeDeclaration* owner = nullptr;
    const MethodDeclaration* method = nullptr;
    int max_trace_depth = 8;
};

/// The highest-priority GUI reference in `expr`, following local variables
/// (nearest preceding definition) and fields (initializer plus assignments in
/// the method) up to max_trace_depth hops.
[[nodiscard]] std::optional<GuiReferenceEvidence> references_gui_object(const Expression& expr,
                                                                        const AnalysisContext& context);

/// Every GUI reference in `expr`, in pre-order.
[[nodiscard]] std::vector<GuiReferenceEvidence> collect_gui_evidence(const Expression& expr,
                                                                     const AnalysisContext& context);

/// True when `expr` calls a catalog state accessor, directly or through a traced variable.
[[nodiscard]] bool uses_state_accessor(const Expression& expr, const AnalysisContext& context);

enum class BranchKind { Then, Else, Case };

[[nodiscard]] std::string_view to_string(BranchKind kind);

struct CommandData {
    const Statement* guard = nullptr; ///< the If (for Else: the last If of the cascade) or Switch
    BranchKind branch = BranchKind::Then;
    int case_index = -1;
    Span body_span;
    std::vector<const Statement*> statements;
    std::vector<GuiReferenceEvidence> evidence;         ///< from the guard's own condition
    std::vector<GuiReferenceEvidence> context_evidence; ///< from enclosing governing conditions
    bool state_based = false;
};

struct CommandCandidate : CommandData {
    std::optional<std::size_t> nested_in; ///< index of the innermost strictly containing candidate
};

struct GuiCommand : CommandData {
    std::size_t ordinal = 0; ///< 1-based, document order
};

/// One candidate per if/else-if branch whose condition carries GUI evidence,
/// per trailing else of a fully-evidenced cascade, and per case group of a
/// switch whose selector carries evidence. Document order.
[[nodiscard]] std::vector<CommandCandidate> get_potential_commands(const ConditionalListener& listener,
                                                                   const ControlFlowGraph& cfg,
                                                                   const TypeUniverse& universe,
                                                                   int max_trace_depth = 8);

/// Single pruning pass: a candidate with exactly one directly nested candidate
/// drops that candidate; a candidate with several drops itself.
[[nodiscard]] std::vector<GuiCommand> get_proper_commands(const std::vector<CommandCandidate>& candidates);

[[nodiscard]] std::size_t count_commands(const ConditionalListener& listener, const TypeUniverse& universe,
                                         int max_trace_depth = 8);

} // namespace blobscan
