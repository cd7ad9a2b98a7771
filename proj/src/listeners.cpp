#include "blobscan/listeners.hpp"

#include <algorithm>
#include <set>

#include "blobscan/ast_walk.hpp"

namespace blobscan {

namespace {

bool signature_matches(const MethodDeclaration& method, const HandlerSignature& handler) {
    if (method.name != handler.method_name || method.parameters.size() != 1 || method.is_constructor) return false;
    const auto& written = method.parameters.front().type_name;
    // Untyped lambda parameters carry no type; otherwise compare simple names.
    return written.empty() || simple_name(written) == simple_name(handler.event_param_type);
}

} // namespace

std::vector<ListenerMethod> find_listener_methods(const std::vector<CompilationUnit>& units,
                                                  const TypeUniverse& universe) {
    std::vector<ListenerMethod> found;
    const auto& catalog = universe.catalog();
    for (const auto& unit : units) {
        for (const auto* type : iter_listener_capable_types(unit)) {
            auto interfaces = universe.listener_interfaces(*type);
            if (interfaces.empty()) continue;
            std::set<const MethodDeclaration*> taken;
            for (const auto& iface : interfaces) {
                const auto* li = catalog.find_listener(iface);
                for (const auto& method : type->methods) {
                    if (taken.count(&method) != 0U) continue;
                    bool match = std::any_of(li->handlers.begin(), li->handlers.end(),
                                             [&](const HandlerSignature& h) { return signature_matches(method, h); });
                    if (!match) continue;
                    taken.insert(&method);
                    found.push_back(ListenerMethod{&unit, type, iface, &method, method.span});
                }
            }
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const ListenerMethod& a, const ListenerMethod& b) {
        if (a.unit->file != b.unit->file) return a.unit->file < b.unit->file;
        return a.span.begin.offset < b.span.begin.offset;
    });
    return found;
}

std::vector<const Statement*> conditional_statements(const MethodDeclaration& method) {
    std::vector<const Statement*> out;
    for_each_own_statement(method, [&](const Statement& s) {
        if (s.is_conditional()) out.push_back(&s);
    });
    return out;
}

std::vector<ConditionalListener> find_conditional_listeners(const std::vector<ListenerMethod>& methods) {
    std::vector<ConditionalListener> out;
    for (const auto& m : methods) {
        if (m.method == nullptr || !m.method->body) continue;
        auto conditionals = conditional_statements(*m.method);
        if (conditionals.empty()) continue;
        out.push_back(ConditionalListener{m, std::move(conditionals)});
    }
    return out;
}

} // namespace blobscan
