#pragma once

#include <string>
#include <vector>

#include "blobscan/ast.hpp"
#include "blobscan/universe.hpp"

namespace blobscan {

struct ListenerMethod {
    const CompilationUnit* unit = nullptr;
    const TypeDeclaration* owner = nullptr;
    std::string interface_name; ///< qualified catalog name
    const MethodDeclaration* method = nullptr;
    Span span; ///< == method->span
};

struct ConditionalListener {
    ListenerMethod listener;
    std::vector<const Statement*> conditional_statements; ///< If/Switch, document order
};

/// Handler methods of every listener-capable type (including anonymous and
/// lambda-materialized ones), ordered by (file, offset).
[[nodiscard]] std::vector<ListenerMethod> find_listener_methods(const std::vector<CompilationUnit>& units,
                                                                const TypeUniverse& universe);

/// The If/Switch statements of the method's own body (nested type and lambda bodies excluded).
[[nodiscard]] std::vector<const Statement*> conditional_statements(const MethodDeclaration& method);

/// Listeners with at least one conditional statement; bodiless methods are skipped.
[[nodiscard]] std::vector<ConditionalListener> find_conditional_listeners(const std::vector<ListenerMethod>& methods);

} // namespace blobscan
