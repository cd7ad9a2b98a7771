#include "blobscan/catalog.hpp"

#include <algorithm>
#include <functional>
#include <regex>

#include "blobscan/ast.hpp"

namespace blobscan {

namespace {

std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_dotted_name(std::string_view s) {
    static const std::regex re(R"([A-Za-z_$][A-Za-z0-9_$]*(\.[A-Za-z_$][A-Za-z0-9_$]*)*)");
    return std::regex_match(s.begin(), s.end(), re);
}

bool is_identifier(std::string_view s) { return is_dotted_name(s) && s.find('.') == std::string_view::npos; }

std::string_view package_of(std::string_view qualified) {
    auto dot = qualified.rfind('.');
    return dot == std::string_view::npos ? std::string_view{} : qualified.substr(0, dot);
}

// Resolves a name written inside the catalog against a set of qualified names.
std::string resolve_within(const std::string& written, const std::set<std::string>& pool, const char* what) {
    if (pool.count(written) != 0U || written.find('.') != std::string::npos) return written;
    std::vector<std::string> hits;
    for (const auto& q : pool) {
        if (simple_name(q) == written) hits.push_back(q);
    }
    if (hits.size() == 1) return hits.front();
    throw CatalogConsistencyError("resolvable", std::string(what) + " '" + written + "' " +
                                                    (hits.empty() ? "is not declared" : "is ambiguous"));
}

} // namespace

const ListenerInterface* ToolkitCatalog::find_listener(std::string_view qualified) const {
    for (const auto& li : listener_interfaces) {
        if (li.name == qualified) return &li;
    }
    return nullptr;
}

std::vector<std::string> ToolkitCatalog::candidates(std::string_view simple) const {
    auto it = by_simple_.find(simple);
    return it == by_simple_.end() ? std::vector<std::string>{} : it->second;
}

std::optional<std::string> ToolkitCatalog::bind(std::string_view written, const CompilationUnit* unit) const {
    if (written.find('.') != std::string_view::npos) {
        auto hits = candidates(simple_name(written));
        if (std::find(hits.begin(), hits.end(), written) != hits.end()) return std::string(written);
        return std::nullopt;
    }
    auto hits = candidates(written);
    if (hits.empty()) return std::nullopt;
    if (hits.size() == 1) return hits.front();
    if (unit == nullptr) return std::nullopt;
    std::optional<std::string> bound;
    for (const auto& import : unit->imports) {
        if (import.is_static) continue;
        for (const auto& q : hits) {
            bool match = import.wildcard ? package_of(q) == import.name : import.name == q;
            if (!match) continue;
            // An explicit single-type import wins over any wildcard.
            if (!import.wildcard) return q;
            if (bound && *bound != q) return std::nullopt;
            bound = q;
        }
    }
    if (bound) return bound;
    if (unit->package_name) {
        for (const auto& q : hits) {
            if (package_of(q) == *unit->package_name) return q;
        }
    }
    return std::nullopt;
}

bool ToolkitCatalog::is_widget_type(std::string_view name) const {
    if (name.find('.') != std::string_view::npos) return widget_types.count(std::string(name)) != 0U;
    return widget_simple_.count(name) != 0U;
}

bool ToolkitCatalog::is_event_type(std::string_view name) const {
    if (name.find('.') != std::string_view::npos) return event_types.count(std::string(name)) != 0U;
    return event_simple_.count(name) != 0U;
}

bool ToolkitCatalog::is_widget_or_event_type(std::string_view name) const {
    return is_widget_type(name) || is_event_type(name);
}

ParseOptions ToolkitCatalog::parse_options() const {
    ParseOptions options;
    for (const auto& [method, iface] : registration_methods) {
        const auto* li = find_listener(iface);
        if (li == nullptr || li->handlers.size() != 1) continue;
        options.lambda_bindings.emplace(
            method, LambdaBinding{iface, li->handlers.front().method_name, li->handlers.front().event_param_type});
    }
    return options;
}

void ToolkitCatalog::finalize() {
    by_simple_.clear();
    widget_simple_.clear();
    event_simple_.clear();
    std::set<std::string> all;
    for (const auto& li : listener_interfaces) all.insert(li.name);
    for (const auto& [w, supers] : widget_types) {
        all.insert(w);
        widget_simple_.emplace(simple_name(w));
    }
    for (const auto& e : event_types) {
        all.insert(e);
        event_simple_.emplace(simple_name(e));
    }
    for (const auto& q : all) by_simple_[std::string(simple_name(q))].push_back(q);
}

ToolkitCatalog load_catalog(std::string_view document) {
    enum class Section { None, Toolkit, Listeners, Widgets, Events, Source, Property, Registration, State };
    static const std::map<std::string, Section, std::less<>> kSections = {
        {"toolkit", Section::Toolkit},
        {"listeners", Section::Listeners},
        {"widgets", Section::Widgets},
        {"events", Section::Events},
        {"source_accessors", Section::Source},
        {"property_accessors", Section::Property},
        {"registration", Section::Registration},
        {"state_accessors", Section::State},
    };
    static const std::regex listener_re(R"(([A-Za-z0-9_$.]+)\.([A-Za-z_$][A-Za-z0-9_$]*)\(\s*([A-Za-z0-9_$.]+)\s*\))");
    static const std::regex widget_re(R"(([A-Za-z0-9_$.]+)(?:\s*<\s*([A-Za-z0-9_$.]+))?)");
    static const std::regex registration_re(R"(([A-Za-z_$][A-Za-z0-9_$]*)\s*->\s*([A-Za-z0-9_$.]+))");

    ToolkitCatalog catalog;
    Section section = Section::None;
    std::size_t entries = 0;
    std::size_t line_no = 0;
    std::vector<std::pair<std::string, std::string>> widget_edges;
    std::vector<std::tuple<std::string, std::string, std::string>> handlers;
    std::vector<std::pair<std::string, std::string>> registrations;

    std::size_t start = 0;
    while (start <= document.size()) {
        auto end = document.find('\n', start);
        if (end == std::string_view::npos) end = document.size();
        auto line = trim(document.substr(start, end - start));
        ++line_no;
        start = end + 1;
        if (line.empty() || line.front() == '#') {
            if (end == document.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw CatalogSyntaxError(line_no, "unterminated section header");
            auto it = kSections.find(trim(line.substr(1, line.size() - 2)));
            if (it == kSections.end()) throw CatalogSyntaxError(line_no, "unknown section " + std::string(line));
            section = it->second;
        } else {
            std::string entry(line);
            std::smatch m;
            switch (section) {
            case Section::None: throw CatalogSyntaxError(line_no, "entry outside of any section");
            case Section::Toolkit:
                if (!is_identifier(entry)) throw CatalogSyntaxError(line_no, "toolkit name must be an identifier");
                catalog.name = entry;
                break;
            case Section::Listeners:
                if (!std::regex_match(entry, m, listener_re) || !is_dotted_name(m[1].str()) ||
                    !is_dotted_name(m[3].str())) {
                    throw CatalogSyntaxError(line_no, "expected Interface.method(EventType)");
                }
                handlers.emplace_back(m[1], m[2], m[3]);
                break;
            case Section::Widgets:
                if (!std::regex_match(entry, m, widget_re) || !is_dotted_name(m[1].str()) ||
                    (m[2].matched && !is_dotted_name(m[2].str()))) {
                    throw CatalogSyntaxError(line_no, "expected Type or Type < SuperType");
                }
                catalog.widget_types.try_emplace(m[1]);
                if (m[2].matched) widget_edges.emplace_back(m[1], m[2]);
                break;
            case Section::Events:
                if (!is_dotted_name(entry)) throw CatalogSyntaxError(line_no, "expected a type name");
                catalog.event_types.insert(entry);
                break;
            case Section::Source:
            case Section::Property:
            case Section::State: {
                if (!is_identifier(entry)) throw CatalogSyntaxError(line_no, "expected a method name");
                auto& target = section == Section::Source     ? catalog.source_accessors
                               : section == Section::Property ? catalog.property_accessors
                                                              : catalog.state_accessors;
                target.insert(entry);
                break;
            }
            case Section::Registration:
                if (!std::regex_match(entry, m, registration_re) || !is_dotted_name(m[2].str())) {
                    throw CatalogSyntaxError(line_no, "expected methodName -> Interface");
                }
                registrations.emplace_back(m[1], m[2]);
                break;
            }
            ++entries;
        }
        if (end == document.size()) break;
    }
    if (entries == 0) throw CatalogSyntaxError(std::max<std::size_t>(line_no, 1), "catalog has no entries");

    // Widget hierarchy: supertypes are widgets too.
    std::set<std::string> widget_pool;
    for (const auto& [w, _] : catalog.widget_types) widget_pool.insert(w);
    for (const auto& [sub, super] : widget_edges) {
        auto resolved = super.find('.') == std::string::npos && widget_pool.count(super) == 0U
                            ? resolve_within(super, widget_pool, "widget supertype")
                            : super;
        catalog.widget_types[sub].push_back(resolved);
        catalog.widget_types.try_emplace(resolved);
    }
    // acyclic: depth-first search with colors
    std::map<std::string, int> color;
    std::function<void(const std::string&)> visit = [&](const std::string& w) {
        color[w] = 1;
        for (const auto& s : catalog.widget_types[w]) {
            if (color[s] == 1) throw CatalogConsistencyError("acyclic", "widget hierarchy cycle through " + s);
            if (color[s] == 0) visit(s);
        }
        color[w] = 2;
    };
    for (const auto& [w, _] : catalog.widget_types) {
        if (color[w] == 0) visit(w);
    }

    for (const auto& [iface, method, event] : handlers) {
        auto event_q = resolve_within(event, catalog.event_types, "event type");
        if (catalog.event_types.count(event_q) == 0U) {
            throw CatalogConsistencyError("handler event type is an event",
                                          iface + "." + method + " takes undeclared " + event_q);
        }
        auto it = std::find_if(catalog.listener_interfaces.begin(), catalog.listener_interfaces.end(),
                               [&](const ListenerInterface& li) { return li.name == iface; });
        if (it == catalog.listener_interfaces.end()) {
            catalog.listener_interfaces.push_back(ListenerInterface{iface, {}});
            it = std::prev(catalog.listener_interfaces.end());
        }
        it->handlers.push_back(HandlerSignature{method, event_q});
    }

    for (const auto& s : catalog.source_accessors) {
        if (catalog.property_accessors.count(s) != 0U) {
            throw CatalogConsistencyError("source and property accessors are disjoint", s + " is in both");
        }
    }

    std::set<std::string> listener_pool;
    for (const auto& li : catalog.listener_interfaces) listener_pool.insert(li.name);
    for (const auto& [method, iface] : registrations) {
        auto q = resolve_within(iface, listener_pool, "registration target");
        if (listener_pool.count(q) == 0U) {
            throw CatalogConsistencyError("registration targets a listener", method + " -> " + q);
        }
        catalog.registration_methods[method] = q;
    }

    catalog.finalize();
    return catalog;
}

const ToolkitCatalog& swing_catalog() {
    static const ToolkitCatalog catalog = [] {
        auto c = load_catalog(swing_catalog_text());
        if (c.name.empty()) c.name = "swing";
        return c;
    }();
    return catalog;
}

ToolkitCatalog load_toolkit(std::string_view selector) {
    if (selector == "swing") return swing_catalog();
    auto text = read_text_file(std::filesystem::path(selector));
    auto catalog = load_catalog(text);
    if (catalog.name.empty()) catalog.name = std::filesystem::path(selector).stem().string();
    return catalog;
}

} // namespace blobscan
