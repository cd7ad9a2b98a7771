#include "blobscan/universe.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "blobscan/ast_walk.hpp"

namespace blobscan {

namespace {

class EntryCollector : public AstWalker {
public:
    EntryCollector(const CompilationUnit& unit, std::unordered_map<const TypeDeclaration*, TypeEntry>& types,
                   std::unordered_map<const MethodDeclaration*, MethodEntry>& methods)
        : unit_(unit), types_(types), methods_(methods) {}

    bool enter_type(const TypeDeclaration& type) override {
        TypeEntry e{&type, &unit_, type_stack_.empty() ? nullptr : type_stack_.back(), nullptr};
        // A type declared inside a method body (local, anonymous, lambda) sees
        // that method's locals.
        if (!method_stack_.empty() && method_depth_.back() == type_stack_.size()) {
            e.parent_method = method_stack_.back();
        }
        types_[&type] = e;
        type_stack_.push_back(&type);
        return true;
    }
    void leave_type(const TypeDeclaration&) override { type_stack_.pop_back(); }

    bool enter_method(const MethodDeclaration& method) override {
        MethodEntry e{&method, type_stack_.back(), &unit_, nullptr};
        // Lambda-materialized listener methods: the enclosing method is the one
        // that declared the synthetic type.
        if (method.is_lambda) {
            auto it = types_.find(type_stack_.back());
            if (it != types_.end()) e.parent_method = it->second.parent_method;
        }
        methods_[&method] = e;
        push_method(&method);
        return true;
    }
    void leave_method(const MethodDeclaration&) override { pop_method(); }

    bool enter_lambda_body(const MethodDeclaration& method) override {
        MethodEntry e{&method, type_stack_.back(), &unit_, method_stack_.empty() ? nullptr : method_stack_.back()};
        methods_[&method] = e;
        push_method(&method);
        return true;
    }
    void leave_lambda_body(const MethodDeclaration&) override { pop_method(); }

    // Initializer blocks and field initializers are not methods; types declared
    // there have no parent method.
private:
    void push_method(const MethodDeclaration* m) {
        method_stack_.push_back(m);
        method_depth_.push_back(type_stack_.size());
    }
    void pop_method() {
        method_stack_.pop_back();
        method_depth_.pop_back();
    }

    const CompilationUnit& unit_;
    std::unordered_map<const TypeDeclaration*, TypeEntry>& types_;
    std::unordered_map<const MethodDeclaration*, MethodEntry>& methods_;
    std::vector<const TypeDeclaration*> type_stack_;
    std::vector<const MethodDeclaration*> method_stack_;
    std::vector<std::size_t> method_depth_;
};

std::string_view package_of(std::string_view qualified) {
    auto dot = qualified.rfind('.');
    return dot == std::string_view::npos ? std::string_view{} : qualified.substr(0, dot);
}

} // namespace

TypeUniverse::TypeUniverse(const std::vector<CompilationUnit>& units, const ToolkitCatalog& catalog)
    : catalog_(&catalog) {
    for (const auto& unit : units) {
        EntryCollector collector(unit, types_, methods_);
        collector.walk(unit);
    }
    for (const auto& unit : units) {
        for (const auto* type : iter_listener_capable_types(unit)) {
            if (type->kind != TypeKind::Anonymous) by_simple_[type->name].push_back(type);
        }
    }
    for (const auto& unit : units) {
        for (const auto* type : iter_listener_capable_types(unit)) {
            auto check = [&](const std::string& name) {
                if (resolve_source(name, unit) == nullptr && !catalog.bind(name, &unit)) {
                    unresolved_.emplace_back(type, name);
                }
            };
            for (const auto& n : type->extends_names) check(n);
            for (const auto& n : type->implements_names) check(n);
        }
    }
}

const TypeEntry* TypeUniverse::entry(const TypeDeclaration& type) const {
    auto it = types_.find(&type);
    return it == types_.end() ? nullptr : &it->second;
}

const MethodEntry* TypeUniverse::method_entry(const MethodDeclaration& method) const {
    auto it = methods_.find(&method);
    return it == methods_.end() ? nullptr : &it->second;
}

const TypeDeclaration* TypeUniverse::resolve_source(std::string_view written, const CompilationUnit& from) const {
    if (written.empty() || written.find('[') != std::string_view::npos) return nullptr;
    auto it = by_simple_.find(simple_name(written));
    if (it == by_simple_.end()) return nullptr;
    std::vector<const TypeDeclaration*> hits;
    bool dotted = written.find('.') != std::string_view::npos;
    for (const auto* t : it->second) {
        if (dotted) {
            const auto& q = t->qualified_name;
            bool match = q == written || (q.size() > written.size() && q.ends_with(written) &&
                                          q[q.size() - written.size() - 1] == '.');
            if (!match) continue;
        }
        hits.push_back(t);
    }
    if (hits.size() == 1) return hits.front();
    if (hits.empty()) return nullptr;

    auto narrow = [&](auto pred) -> std::vector<const TypeDeclaration*> {
        std::vector<const TypeDeclaration*> out;
        std::copy_if(hits.begin(), hits.end(), std::back_inserter(out), pred);
        return out;
    };
    auto same_unit = narrow([&](const TypeDeclaration* t) { return entry(*t)->unit == &from; });
    if (same_unit.size() == 1) return same_unit.front();
    if (same_unit.size() > 1) return nullptr;
    auto imported = narrow([&](const TypeDeclaration* t) {
        return std::any_of(from.imports.begin(), from.imports.end(), [&](const ImportDeclaration& i) {
            return !i.is_static && (i.wildcard ? package_of(t->qualified_name) == i.name : i.name == t->qualified_name);
        });
    });
    if (imported.size() == 1) return imported.front();
    auto same_package = narrow([&](const TypeDeclaration* t) {
        const auto* u = entry(*t)->unit;
        return u->package_name == from.package_name;
    });
    if (same_package.size() == 1) return same_package.front();
    return nullptr;
}

template <typename Visit>
void TypeUniverse::for_each_supertype(const TypeDeclaration& type, Visit&& visit) const {
    // Breadth-first over source types; visit(name, unit) sees every supertype
    // name that does not resolve to a source type.
    std::set<const TypeDeclaration*> seen{&type};
    std::deque<const TypeDeclaration*> queue{&type};
    while (!queue.empty()) {
        const auto* current = queue.front();
        queue.pop_front();
        const auto* e = entry(*current);
        if (e == nullptr) continue;
        auto step = [&](const std::string& name) {
            if (const auto* source = resolve_source(name, *e->unit); source != nullptr) {
                if (seen.insert(source).second) queue.push_back(source);
            } else {
                visit(name, *e->unit);
            }
        };
        for (const auto& n : current->extends_names) step(n);
        for (const auto& n : current->implements_names) step(n);
    }
}

std::vector<std::string> TypeUniverse::listener_interfaces(const TypeDeclaration& type) const {
    std::set<std::string> found;
    for_each_supertype(type, [&](const std::string& name, const CompilationUnit& unit) {
        auto bound = catalog_->bind(name, &unit);
        if (bound && catalog_->find_listener(*bound) != nullptr) found.insert(*bound);
    });
    std::vector<std::string> ordered;
    for (const auto& li : catalog_->listener_interfaces) {
        if (found.count(li.name) != 0U) ordered.push_back(li.name);
    }
    return ordered;
}

bool TypeUniverse::is_gui_type(std::string_view written, const CompilationUnit& from) const {
    if (const auto* source = resolve_source(written, from); source != nullptr) {
        bool gui = false;
        for_each_supertype(*source, [&](const std::string& name, const CompilationUnit&) {
            if (catalog_->is_widget_or_event_type(name)) gui = true;
        });
        return gui;
    }
    return catalog_->is_widget_or_event_type(written);
}

const FieldDeclaration* TypeUniverse::find_field(const TypeDeclaration& type, std::string_view name) const {
    std::set<const TypeDeclaration*> seen;
    const TypeDeclaration* current = &type;
    while (current != nullptr && seen.insert(current).second) {
        if (const auto* f = current->find_field(name); f != nullptr) return f;
        const auto* e = entry(*current);
        const TypeDeclaration* next = nullptr;
        if (e != nullptr) {
            for (const auto& n : current->extends_names) {
                if ((next = resolve_source(n, *e->unit)) != nullptr) break;
            }
        }
        current = next;
    }
    return nullptr;
}

std::vector<std::string> is_listener_subtype(const TypeDeclaration& type, const TypeUniverse& universe) {
    return universe.listener_interfaces(type);
}

} // namespace blobscan
