#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "blobscan/ast.hpp"
#include "blobscan/catalog.hpp"

namespace blobscan {

struct TypeEntry {
    const TypeDeclaration* type = nullptr;
    const CompilationUnit* unit = nullptr;
    const TypeDeclaration* parent_type = nullptr;     ///< lexically enclosing type
    const MethodDeclaration* parent_method = nullptr; ///< method (or lambda) whose body declares the type
};

struct MethodEntry {
    const MethodDeclaration* method = nullptr;
    const TypeDeclaration* owner = nullptr;
    const CompilationUnit* unit = nullptr;
    const MethodDeclaration* parent_method = nullptr; ///< for lambda bodies: the enclosing method
};

/// Every type declared in the analyzed sources, with lexical parents and the
/// name-resolution rules that substitute for a classpath.
class TypeUniverse {
public:
    TypeUniverse(const std::vector<CompilationUnit>& units, const ToolkitCatalog& catalog);

    [[nodiscard]] const ToolkitCatalog& catalog() const { return *catalog_; }
    [[nodiscard]] const TypeEntry* entry(const TypeDeclaration& type) const;
    [[nodiscard]] const MethodEntry* method_entry(const MethodDeclaration& method) const;

    /// A source type for a name as written in `from`, or null when none or ambiguous.
    [[nodiscard]] const TypeDeclaration* resolve_source(std::string_view written, const CompilationUnit& from) const;

    /// Catalog listener interfaces reachable through extends/implements edges,
    /// following source-declared supertypes transitively. Catalog order.
    [[nodiscard]] std::vector<std::string> listener_interfaces(const TypeDeclaration& type) const;

    /// Widget or event type: a catalog type (import-blind), or a source type
    /// extending one.
    [[nodiscard]] bool is_gui_type(std::string_view written, const CompilationUnit& from) const;

    /// Field lookup through the type and its source-declared superclasses.
    [[nodiscard]] const FieldDeclaration* find_field(const TypeDeclaration& type, std::string_view name) const;

    /// Supertype names that bound to neither a source type nor the catalog.
    [[nodiscard]] const std::vector<std::pair<const TypeDeclaration*, std::string>>& unresolved() const {
        return unresolved_;
    }

private:
    template <typename Visit>
    void for_each_supertype(const TypeDeclaration& type, Visit&& visit) const;

    const ToolkitCatalog* catalog_;
    std::unordered_map<const TypeDeclaration*, TypeEntry> types_;
    std::unordered_map<const MethodDeclaration*, MethodEntry> methods_;
    std::map<std::string, std::vector<const TypeDeclaration*>, std::less<>> by_simple_;
    std::vector<std::pair<const TypeDeclaration*, std::string>> unresolved_;
};

/// The catalog listener interfaces `type` is a subtype of (empty when none).
[[nodiscard]] std::vector<std::string> is_listener_subtype(const TypeDeclaration& type, const TypeUniverse& universe);

} // namespace blobscan
