#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "blobscan/parser.hpp"
#include "blobscan/source.hpp"

namespace blobscan {

struct HandlerSignature {
    std::string method_name;
    std::string event_param_type; ///< qualified
};

struct ListenerInterface {
    std::string name; ///< qualified
    std::vector<HandlerSignature> handlers;
};

class CatalogSyntaxError : public Error {
public:
    CatalogSyntaxError(std::size_t line, const std::string& what)
        : Error("catalog line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class CatalogConsistencyError : public Error {
public:
    CatalogConsistencyError(std::string invariant, const std::string& detail)
        : Error("catalog violates '" + invariant + "': " + detail), invariant_(std::move(invariant)) {}
    [[nodiscard]] const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

/// Declarative description of a GUI toolkit. All type names are stored
/// qualified; queries accept simple or qualified spellings.
class ToolkitCatalog {
public:
    std::string name;
    std::vector<ListenerInterface> listener_interfaces; ///< file order
    std::map<std::string, std::vector<std::string>> widget_types; ///< type -> direct supertypes
    std::set<std::string> event_types;
    std::set<std::string> source_accessors;
    std::set<std::string> property_accessors;
    std::set<std::string> state_accessors;
    std::map<std::string, std::string> registration_methods; ///< method -> listener interface

    [[nodiscard]] const ListenerInterface* find_listener(std::string_view qualified) const;

    /// Every catalog type (listener, widget or event) whose simple name is `simple`.
    [[nodiscard]] std::vector<std::string> candidates(std::string_view simple) const;

    /// Binds a type name as written in `unit` to a catalog type: qualified
    /// spellings match exactly; a simple name binds when it is unique in the
    /// catalog or when the unit imports it (single-type or package wildcard).
    [[nodiscard]] std::optional<std::string> bind(std::string_view written, const CompilationUnit* unit) const;

    [[nodiscard]] bool is_widget_type(std::string_view name) const;
    [[nodiscard]] bool is_event_type(std::string_view name) const;
    /// Import-blind: a simple name matches any widget/event type with that simple name.
    [[nodiscard]] bool is_widget_or_event_type(std::string_view name) const;

    /// Registration methods whose interface has exactly one handler, for lambda listeners.
    [[nodiscard]] ParseOptions parse_options() const;

    void finalize(); ///< rebuilds lookup indexes; called by load_catalog

private:
    std::map<std::string, std::vector<std::string>, std::less<>> by_simple_;
    std::set<std::string, std::less<>> widget_simple_;
    std::set<std::string, std::less<>> event_simple_;
};

/// Parses the sectioned catalog format (see docs/catalog-format.md).
[[nodiscard]] ToolkitCatalog load_catalog(std::string_view document);

/// The bundled Swing/AWT catalog.
[[nodiscard]] const ToolkitCatalog& swing_catalog();
[[nodiscard]] std::string_view swing_catalog_text();

/// "swing" selects the bundled catalog; anything else is read as a file path.
[[nodiscard]] ToolkitCatalog load_toolkit(std::string_view selector);

} // namespace blobscan
