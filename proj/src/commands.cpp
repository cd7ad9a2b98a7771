#include "blobscan/commands.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "blobscan/ast_walk.hpp"

namespace blobscan {

std::string_view to_string(EvidenceKind kind) {
    switch (kind) {
    case EvidenceKind::WidgetFieldComparison: return "widget-field-comparison";
    case EvidenceKind::InstanceOfWidget: return "instanceof-widget";
    case EvidenceKind::PropertyAccess: return "property-access";
    case EvidenceKind::EventSourceAccess: return "event-source-access";
    case EvidenceKind::DerivedVariable: return "derived-variable";
    case EvidenceKind::WidgetTypedName: return "widget-typed-name";
    }
    return "widget-typed-name";
}

std::string_view to_string(BranchKind kind) {
    switch (kind) {
    case BranchKind::Then: return "then";
    case BranchKind::Else: return "else";
    case BranchKind::Case: return "case";
    }
    return "then";
}

namespace {

constexpr std::uint32_t kEverything = std::numeric_limits<std::uint32_t>::max();

struct Scope {
    const TypeDeclaration* type = nullptr;
    const MethodDeclaration* method = nullptr;
    std::uint32_t before = kEverything; ///< locals defined at or after this offset are invisible
};

struct Value {
    const Expression* expr;
    Scope scope;
};

struct Definition {
    enum class Kind { Local, Parameter, Field };
    Kind kind = Kind::Local;
    const void* key = nullptr;
    std::string declared_type;
    Span site;
    std::vector<Value> values;
};

const Expression* assigned_name(const Expression& target, std::string_view name, bool allow_this) {
    if (const auto* id = target.as<expr::Identifier>(); id != nullptr && id->name == name) return &target;
    if (!allow_this) return nullptr;
    if (const auto* fa = target.as<expr::FieldAccess>(); fa != nullptr && fa->name == name && fa->receiver) {
        const auto* r = fa->receiver->as<expr::Identifier>();
        if (r != nullptr && r->name == "this") return &target;
    }
    return nullptr;
}

class Resolver {
public:
    explicit Resolver(const AnalysisContext& ctx) : ctx_(ctx) {}

    [[nodiscard]] std::optional<Definition> resolve(const std::string& name, Scope scope) const {
        for (int guard = 0; guard < 64 && scope.type != nullptr; ++guard) {
            if (scope.method != nullptr) {
                if (auto d = local(name, scope)) return d;
                if (auto d = parameter(name, scope)) return d;
                // Non-materialized lambda: continue in the enclosing method.
                const auto* me = ctx_.universe->method_entry(*scope.method);
                const auto* te = ctx_.universe->entry(*scope.type);
                if (scope.method->is_lambda && me != nullptr && me->parent_method != nullptr &&
                    (te == nullptr || te->parent_method != me->parent_method)) {
                    scope = Scope{scope.type, me->parent_method, scope.method->span.begin.offset};
                    continue;
                }
            }
            if (auto d = field(name, scope)) return d;
            const auto* te = ctx_.universe->entry(*scope.type);
            if (te == nullptr) break;
            if (te->parent_method != nullptr) {
                const auto* pe = ctx_.universe->method_entry(*te->parent_method);
                scope = Scope{pe != nullptr ? pe->owner : te->parent_type, te->parent_method,
                              scope.type->span.begin.offset};
            } else {
                scope = Scope{te->parent_type, nullptr, kEverything};
            }
        }
        return std::nullopt;
    }

    /// Field named by `e`: a bare identifier resolving to a field, `this.f`, or
    /// `x.f` where x's declared type is a source type declaring f.
    [[nodiscard]] std::optional<Definition> field_of(const Expression& e, const Scope& scope) const {
        if (const auto* id = e.as<expr::Identifier>()) {
            auto d = resolve(id->name, scope);
            if (d && d->kind == Definition::Kind::Field) return d;
            return std::nullopt;
        }
        const auto* fa = e.as<expr::FieldAccess>();
        if (fa == nullptr || !fa->receiver || scope.type == nullptr) return std::nullopt;
        const auto* r = fa->receiver->as<expr::Identifier>();
        if (r == nullptr) return std::nullopt;
        if (r->name == "this") return field(fa->name, Scope{scope.type, scope.method, scope.before});
        auto d = resolve(r->name, scope);
        if (!d) return std::nullopt;
        const auto* type = ctx_.universe->resolve_source(d->declared_type, *ctx_.unit);
        if (type == nullptr) return std::nullopt;
        const auto* f = ctx_.universe->find_field(*type, fa->name);
        if (f == nullptr) return std::nullopt;
        Definition def{Definition::Kind::Field, f, f->declared_type, f->span, {}};
        if (f->initializer) def.values.push_back(Value{f->initializer.get(), Scope{type, nullptr, kEverything}});
        return def;
    }

private:
    std::optional<Definition> local(const std::string& name, const Scope& scope) const {
        const Statement* decl = nullptr;
        const Expression* binding = nullptr;
        std::string binding_type;
        for_each_own_statement(*scope.method, [&](const Statement& s) {
            const auto* v = s.as<stmt::LocalVarDecl>();
            if (v == nullptr || v->name != name || s.span.begin.offset >= scope.before) return;
            if (decl == nullptr || s.span.begin.offset > decl->span.begin.offset) decl = &s;
        });
        for_each_own_expression(*scope.method, [&](const Expression& e) {
            const auto* io = e.as<expr::InstanceOf>();
            if (io == nullptr || io->binding != name || e.span.begin.offset >= scope.before) return;
            if (binding == nullptr || e.span.begin.offset > binding->span.begin.offset) {
                binding = &e;
                binding_type = io->type_name;
            }
        });
        if (binding != nullptr && (decl == nullptr || binding->span.begin.offset > decl->span.begin.offset)) {
            return Definition{Definition::Kind::Local, binding, binding_type, binding->span, {}};
        }
        if (decl == nullptr) return std::nullopt;
        const auto& v = *decl->as<stmt::LocalVarDecl>();
        Definition def{Definition::Kind::Local, decl, v.type_name, decl->span, {}};
        // Nearest preceding definition: the initializer or a later assignment.
        const Expression* value = v.initializer.get();
        std::uint32_t at = decl->span.begin.offset;
        Span site = decl->span;
        for_each_own_expression(*scope.method, [&](const Expression& e) {
            const auto* a = e.as<expr::Assignment>();
            if (a == nullptr || a->op != "=" || !a->target || !a->value) return;
            if (assigned_name(*a->target, name, false) == nullptr) return;
            auto off = e.span.begin.offset;
            if (off > at && off < scope.before) {
                at = off;
                value = a->value.get();
                site = e.span;
            }
        });
        def.site = site;
        if (value != nullptr) def.values.push_back(Value{value, Scope{scope.type, scope.method, at}});
        return def;
    }

    std::optional<Definition> parameter(const std::string& name, const Scope& scope) const {
        for (const auto& p : scope.method->parameters) {
            if (p.name == name) return Definition{Definition::Kind::Parameter, &p, p.type_name, scope.method->span, {}};
        }
        return std::nullopt;
    }

    std::optional<Definition> field(const std::string& name, const Scope& scope) const {
        const auto* f = ctx_.universe->find_field(*scope.type, name);
        if (f == nullptr) return std::nullopt;
        Definition def{Definition::Kind::Field, f, f->declared_type, f->span, {}};
        if (f->initializer) def.values.push_back(Value{f->initializer.get(), Scope{scope.type, nullptr, kEverything}});
        // Field assignments inside the analyzed method, flow-insensitively.
        if (scope.method != nullptr) {
            for_each_own_expression(*scope.method, [&](const Expression& e) {
                const auto* a = e.as<expr::Assignment>();
                if (a == nullptr || a->op != "=" || !a->target || !a->value) return;
                if (assigned_name(*a->target, name, true) == nullptr) return;
                def.values.push_back(Value{a->value.get(), Scope{scope.type, scope.method, e.span.begin.offset}});
            });
        }
        return def;
    }

    const AnalysisContext& ctx_;
};

class Engine {
public:
    explicit Engine(const AnalysisContext& ctx) : ctx_(ctx), resolver_(ctx), catalog_(ctx.universe->catalog()) {}

    std::vector<GuiReferenceEvidence> collect(const Expression& root, const Scope& scope, int depth) {
        std::vector<GuiReferenceEvidence> out;
        for_each_subexpression(root, [&](const Expression& e) { inspect(e, scope, depth, out); });
        return out;
    }

    bool uses_state(const Expression& root, const Scope& scope, int depth) {
        bool found = false;
        for_each_subexpression(root, [&](const Expression& e) {
            if (found) return;
            if (const auto* call = e.as<expr::MethodCall>()) {
                if (catalog_.state_accessors.count(call->name) != 0U) found = true;
            } else if (const auto* id = e.as<expr::Identifier>(); id != nullptr && depth < ctx_.max_trace_depth) {
                auto def = resolver_.resolve(id->name, scope);
                if (!def || !visiting_.insert(def->key).second) return;
                for (const auto& v : def->values) {
                    if (uses_state(*v.expr, v.scope, depth + 1)) found = true;
                }
                visiting_.erase(def->key);
            }
        });
        return found;
    }

private:
    bool gui_type(const std::string& t) const { return !t.empty() && ctx_.universe->is_gui_type(t, *ctx_.unit); }

    void inspect(const Expression& e, const Scope& scope, int depth, std::vector<GuiReferenceEvidence>& out) {
        auto add = [&](EvidenceKind kind) { out.push_back(GuiReferenceEvidence{kind, &e, {}, kind}); };
        if (const auto* b = e.as<expr::BinaryOp>()) {
            if ((b->op == "==" || b->op == "!=") && b->lhs && b->rhs && field_comparison(*b->lhs, *b->rhs, scope, depth)) {
                add(EvidenceKind::WidgetFieldComparison);
            }
        } else if (const auto* call = e.as<expr::MethodCall>()) {
            if (call->name == "equals" && call->receiver && call->args.size() == 1 &&
                field_comparison(*call->receiver, *call->args.front(), scope, depth)) {
                add(EvidenceKind::WidgetFieldComparison);
            }
            if (call->receiver && catalog_.property_accessors.count(call->name) != 0U &&
                gui_valued(*call->receiver, scope, depth)) {
                add(EvidenceKind::PropertyAccess);
            }
            if (call->receiver && catalog_.source_accessors.count(call->name) != 0U &&
                gui_valued(*call->receiver, scope, depth)) {
                add(EvidenceKind::EventSourceAccess);
            }
        } else if (const auto* io = e.as<expr::InstanceOf>()) {
            if (gui_type(io->type_name)) add(EvidenceKind::InstanceOfWidget);
        } else if (const auto* id = e.as<expr::Identifier>()) {
            if (id->name == "this" || id->name == "super") return;
            auto def = resolver_.resolve(id->name, scope);
            if (!def) return;
            if (gui_type(def->declared_type)) {
                add(EvidenceKind::WidgetTypedName);
                return;
            }
            if (auto derived = trace(*def, id->name, depth)) {
                derived->expression = &e;
                out.push_back(std::move(*derived));
            }
        } else if (e.is<expr::FieldAccess>()) {
            auto def = resolver_.field_of(e, scope);
            if (def && gui_type(def->declared_type)) add(EvidenceKind::WidgetTypedName);
        }
    }

    // Follows a variable's defining values; reports the best evidence found as
    // a derived-variable hop.
    std::optional<GuiReferenceEvidence> trace(const Definition& def, const std::string& name, int depth) {
        if (depth >= ctx_.max_trace_depth || def.values.empty()) return std::nullopt;
        if (!visiting_.insert(def.key).second) return std::nullopt;
        std::optional<GuiReferenceEvidence> best;
        for (const auto& v : def.values) {
            auto found = collect(*v.expr, v.scope, depth + 1);
            for (auto& f : found) {
                if (!best || f.kind < best->kind) best = std::move(f);
            }
            if (best) break;
        }
        visiting_.erase(def.key);
        if (!best) return std::nullopt;
        GuiReferenceEvidence derived{EvidenceKind::DerivedVariable, nullptr, {TraceHop{name, def.site}}, best->terminal};
        if (best->kind == EvidenceKind::DerivedVariable) {
            derived.resolution_trace.insert(derived.resolution_trace.end(), best->resolution_trace.begin(),
                                            best->resolution_trace.end());
        }
        return derived;
    }

    bool gui_valued(const Expression& e, const Scope& scope, int depth) {
        if (const auto* id = e.as<expr::Identifier>()) {
            auto def = resolver_.resolve(id->name, scope);
            if (!def) return false;
            if (gui_type(def->declared_type)) return true;
            return follows(*def, depth, [&](const Value& v, int d) { return gui_valued(*v.expr, v.scope, d); });
        }
        if (const auto* c = e.as<expr::Cast>()) return gui_type(c->type_name);
        if (const auto* call = e.as<expr::MethodCall>()) {
            return call->receiver && catalog_.source_accessors.count(call->name) != 0U &&
                   gui_valued(*call->receiver, scope, depth);
        }
        if (e.is<expr::FieldAccess>()) {
            auto def = resolver_.field_of(e, scope);
            return def && gui_type(def->declared_type);
        }
        if (const auto* c = e.as<expr::Conditional>()) {
            return (c->then_value && gui_valued(*c->then_value, scope, depth)) ||
                   (c->else_value && gui_valued(*c->else_value, scope, depth));
        }
        if (const auto* a = e.as<expr::Assignment>()) return a->value && gui_valued(*a->value, scope, depth);
        return false;
    }

    bool source_derived(const Expression& e, const Scope& scope, int depth) {
        if (const auto* call = e.as<expr::MethodCall>()) {
            return call->receiver && catalog_.source_accessors.count(call->name) != 0U &&
                   gui_valued(*call->receiver, scope, depth);
        }
        if (const auto* c = e.as<expr::Cast>()) return c->operand && source_derived(*c->operand, scope, depth);
        if (const auto* id = e.as<expr::Identifier>()) {
            auto def = resolver_.resolve(id->name, scope);
            if (!def) return false;
            return follows(*def, depth, [&](const Value& v, int d) { return source_derived(*v.expr, v.scope, d); });
        }
        return false;
    }

    template <typename Pred>
    bool follows(const Definition& def, int depth, Pred&& pred) {
        if (depth >= ctx_.max_trace_depth || !visiting_.insert(def.key).second) return false;
        bool result = std::any_of(def.values.begin(), def.values.end(),
                                  [&](const Value& v) { return pred(v, depth + 1); });
        visiting_.erase(def.key);
        return result;
    }

    bool widget_typed_field(const Expression& e, const Scope& scope) {
        auto def = resolver_.field_of(e, scope);
        return def && gui_type(def->declared_type);
    }

    bool field_reference(const Expression& e, const Scope& scope) {
        if (e.is<expr::FieldAccess>()) return true;
        return resolver_.field_of(e, scope).has_value();
    }

    bool field_comparison(const Expression& a, const Expression& b, const Scope& scope, int depth) {
        if (widget_typed_field(a, scope) || widget_typed_field(b, scope)) return true;
        return (source_derived(a, scope, depth) && field_reference(b, scope)) ||
               (source_derived(b, scope, depth) && field_reference(a, scope));
    }

    const AnalysisContext& ctx_;
    Resolver resolver_;
    const ToolkitCatalog& catalog_;
    std::set<const void*> visiting_;
};

Scope scope_at(const AnalysisContext& ctx, const Expression& expr) {
    return Scope{ctx.owner, ctx.method, expr.span.begin.offset};
}

const Expression* condition_of(const Statement& s) {
    if (const auto* i = s.as<stmt::If>()) return i->condition.get();
    if (const auto* sw = s.as<stmt::Switch>()) return sw->selector.get();
    return nullptr;
}

std::vector<const Statement*> branch_statements(const Statement* body) {
    std::vector<const Statement*> out;
    if (body == nullptr) return out;
    if (const auto* b = body->as<stmt::Block>()) {
        for (const auto& s : b->statements) out.push_back(s.get());
    } else {
        out.push_back(body);
    }
    return out;
}

} // namespace

std::optional<GuiReferenceEvidence> references_gui_object(const Expression& expr, const AnalysisContext& context) {
    auto all = collect_gui_evidence(expr, context);
    if (all.empty()) return std::nullopt;
    auto best = std::min_element(all.begin(), all.end(), [](const GuiReferenceEvidence& a,
                                                             const GuiReferenceEvidence& b) { return a.kind < b.kind; });
    return *best;
}

std::vector<GuiReferenceEvidence> collect_gui_evidence(const Expression& expr, const AnalysisContext& context) {
    Engine engine(context);
    return engine.collect(expr, scope_at(context, expr), 0);
}

bool uses_state_accessor(const Expression& expr, const AnalysisContext& context) {
    Engine engine(context);
    return engine.uses_state(expr, scope_at(context, expr), 0);
}

std::vector<CommandCandidate> get_potential_commands(const ConditionalListener& listener, const ControlFlowGraph& cfg,
                                                     const TypeUniverse& universe, int max_trace_depth) {
    const auto& lm = listener.listener;
    AnalysisContext ctx{&universe, lm.unit, lm.owner, lm.method, max_trace_depth};

    // `else if` links: an If that is the else branch of another If.
    std::set<const Statement*> else_ifs;
    for (const auto* s : listener.conditional_statements) {
        if (const auto* i = s->as<stmt::If>(); i != nullptr && i->else_branch && i->else_branch->is<stmt::If>()) {
            else_ifs.insert(i->else_branch.get());
        }
    }

    auto evidence_of = [&](const Statement& s) -> std::vector<GuiReferenceEvidence> {
        const auto* c = condition_of(s);
        return c != nullptr ? collect_gui_evidence(*c, ctx) : std::vector<GuiReferenceEvidence>{};
    };
    auto state_of = [&](const Statement& s) {
        const auto* c = condition_of(s);
        return c != nullptr && uses_state_accessor(*c, ctx);
    };

    std::vector<CommandCandidate> out;
    auto emit = [&](const Statement& guard, BranchKind kind, int case_index, Span body,
                    std::vector<const Statement*> statements, std::vector<GuiReferenceEvidence> evidence,
                    const std::set<const Statement*>& cascade, bool own_state) {
        CommandCandidate c;
        c.guard = &guard;
        c.branch = kind;
        c.case_index = case_index;
        c.body_span = body;
        c.statements = std::move(statements);
        c.evidence = std::move(evidence);
        c.state_based = own_state;
        if (cfg.node_of(guard)) {
            for (const auto& g : governing_conditions(cfg, guard).chain) {
                if (cascade.count(g.conditional) != 0U) continue;
                auto ev = evidence_of(*g.conditional);
                c.context_evidence.insert(c.context_evidence.end(), ev.begin(), ev.end());
                c.state_based = c.state_based || state_of(*g.conditional);
            }
        }
        out.push_back(std::move(c));
    };

    for (const auto* s : listener.conditional_statements) {
        if (const auto* sw = s->as<stmt::Switch>()) {
            auto selector_evidence = evidence_of(*s);
            if (selector_evidence.empty()) continue;
            bool state = state_of(*s);
            for (std::size_t i = 0; i < sw->cases.size(); ++i) {
                const auto& group = sw->cases[i];
                if (group.labels.empty() && !group.is_default) continue;
                std::vector<const Statement*> statements;
                for (const auto& st : group.statements) statements.push_back(st.get());
                emit(*s, BranchKind::Case, static_cast<int>(i), group.span, std::move(statements), selector_evidence,
                     {s}, state);
            }
            continue;
        }
        if (else_ifs.count(s) != 0U) continue; // handled with its cascade head
        std::vector<const Statement*> cascade;
        const Statement* cur = s;
        while (cur != nullptr && cur->is<stmt::If>()) {
            cascade.push_back(cur);
            const auto& node = *cur->as<stmt::If>();
            cur = node.else_branch && node.else_branch->is<stmt::If>() ? node.else_branch.get() : nullptr;
        }
        std::set<const Statement*> members(cascade.begin(), cascade.end());
        bool all_evidenced = true;
        bool all_state = true;
        for (const auto* link : cascade) {
            const auto& node = *link->as<stmt::If>();
            auto evidence = evidence_of(*link);
            bool state = state_of(*link);
            all_state = all_state && state;
            if (evidence.empty()) {
                all_evidenced = false;
                continue;
            }
            const auto* body = node.then_branch.get();
            if (body == nullptr) continue;
            emit(*link, BranchKind::Then, -1, body->span, branch_statements(body), std::move(evidence), members, state);
        }
        const auto& last = *cascade.back()->as<stmt::If>();
        if (all_evidenced && last.else_branch) {
            const auto* body = last.else_branch.get();
            emit(*cascade.back(), BranchKind::Else, -1, body->span, branch_statements(body), {}, members, all_state);
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const CommandCandidate& a, const CommandCandidate& b) {
        if (a.body_span.begin.offset != b.body_span.begin.offset) {
            return a.body_span.begin.offset < b.body_span.begin.offset;
        }
        return a.body_span.end.offset > b.body_span.end.offset;
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::optional<std::size_t> parent;
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (i == j || !out[j].body_span.strictly_contains(out[i].body_span)) continue;
            if (!parent || out[*parent].body_span.length() > out[j].body_span.length()) parent = j;
        }
        out[i].nested_in = parent;
    }
    return out;
}

std::vector<GuiCommand> get_proper_commands(const std::vector<CommandCandidate>& candidates) {
    std::vector<std::vector<std::size_t>> nested(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].nested_in) nested[*candidates[i].nested_in].push_back(i);
    }
    std::vector<bool> removed(candidates.size(), false);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (nested[i].size() == 1) {
            removed[nested[i].front()] = true;
        } else if (nested[i].size() > 1) {
            removed[i] = true;
        }
    }
    std::vector<GuiCommand> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (removed[i]) continue;
        GuiCommand c;
        static_cast<CommandData&>(c) = static_cast<const CommandData&>(candidates[i]);
        c.ordinal = out.size() + 1;
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t count_commands(const ConditionalListener& listener, const TypeUniverse& universe, int max_trace_depth) {
    auto cfg = build_cfg(*listener.listener.method);
    return get_proper_commands(get_potential_commands(listener, cfg, universe, max_trace_depth)).size();
}

} // namespace blobscan
