#include "blobscan/ast.hpp"

#include <algorithm>

#include "blobscan/ast_walk.hpp"

namespace blobscan {

std::string_view to_string(TypeKind kind) {
    switch (kind) {
    case TypeKind::Class: return "class";
    case TypeKind::Interface: return "interface";
    case TypeKind::Enum: return "enum";
    case TypeKind::Anonymous: return "anonymous";
    }
    return "class";
}

std::string_view simple_name(std::string_view dotted) {
    auto dot = dotted.rfind('.');
    return dot == std::string_view::npos ? dotted : dotted.substr(dot + 1);
}

const FieldDeclaration* TypeDeclaration::find_field(std::string_view field_name) const {
    for (const auto& field : fields) {
        if (field.name == field_name) return &field;
    }
    return nullptr;
}

std::string_view CompilationUnit::slice(const Span& span) const {
    if (span.begin.offset > text.size() || span.end.offset > text.size() || span.end.offset < span.begin.offset) {
        return {};
    }
    return std::string_view(text).substr(span.begin.offset, span.end.offset - span.begin.offset);
}

void AstWalker::walk(const CompilationUnit& unit) {
    for (const auto& type : unit.types) walk(type);
}

void AstWalker::walk(const TypeDeclaration& type) {
    if (!enter_type(type)) return;
    // Members are stored per category; visit them in source order.
    struct Member {
        std::uint32_t offset;
        const void* node;
        int kind;
    };
    std::vector<Member> members;
    for (const auto& f : type.fields) members.push_back({f.span.begin.offset, &f, 0});
    for (const auto& m : type.methods) members.push_back({m.span.begin.offset, &m, 1});
    for (const auto& t : type.nested_types) members.push_back({t.span.begin.offset, &t, 2});
    for (const auto& s : type.initializers) members.push_back({s->span.begin.offset, s.get(), 3});
    std::stable_sort(members.begin(), members.end(),
                     [](const Member& a, const Member& b) { return a.offset < b.offset; });
    for (const auto& member : members) {
        switch (member.kind) {
        case 0: {
            const auto* field = static_cast<const FieldDeclaration*>(member.node);
            if (field->initializer) walk(*field->initializer);
            break;
        }
        case 1: walk(*static_cast<const MethodDeclaration*>(member.node)); break;
        case 2: walk(*static_cast<const TypeDeclaration*>(member.node)); break;
        default: walk(*static_cast<const Statement*>(member.node)); break;
        }
    }
    leave_type(type);
}

void AstWalker::walk(const MethodDeclaration& method) {
    if (!enter_method(method)) return;
    if (method.body) walk(*method.body);
    leave_method(method);
}

void AstWalker::walk(const Statement& statement) {
    if (!enter_statement(statement)) return;
    auto visit_expr = [this](const ExprPtr& e) {
        if (e) walk(*e);
    };
    auto visit_stmt = [this](const StmtPtr& s) {
        if (s) walk(*s);
    };
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, stmt::Block>) {
                for (const auto& s : node.statements) visit_stmt(s);
            } else if constexpr (std::is_same_v<T, stmt::If>) {
                visit_expr(node.condition);
                visit_stmt(node.then_branch);
                visit_stmt(node.else_branch);
            } else if constexpr (std::is_same_v<T, stmt::Switch>) {
                visit_expr(node.selector);
                for (const auto& c : node.cases) {
                    for (const auto& l : c.labels) visit_expr(l);
                    for (const auto& s : c.statements) visit_stmt(s);
                }
            } else if constexpr (std::is_same_v<T, stmt::Loop>) {
                for (const auto& s : node.init) visit_stmt(s);
                // do-while evaluates its condition after the body
                if (node.kind == stmt::LoopKind::DoWhile) {
                    visit_stmt(node.body);
                    visit_expr(node.condition);
                } else {
                    visit_expr(node.condition);
                    for (const auto& u : node.update) visit_expr(u);
                    visit_stmt(node.body);
                }
            } else if constexpr (std::is_same_v<T, stmt::Return> || std::is_same_v<T, stmt::Throw>) {
                visit_expr(node.value);
            } else if constexpr (std::is_same_v<T, stmt::ExpressionStatement>) {
                visit_expr(node.expression);
            } else if constexpr (std::is_same_v<T, stmt::LocalVarDecl>) {
                visit_expr(node.initializer);
            } else if constexpr (std::is_same_v<T, stmt::Try>) {
                for (const auto& r : node.resources) visit_stmt(r);
                visit_stmt(node.body);
                for (const auto& c : node.catches) visit_stmt(c.body);
                visit_stmt(node.finally_block);
            } else if constexpr (std::is_same_v<T, stmt::Labeled>) {
                visit_stmt(node.body);
            } else if constexpr (std::is_same_v<T, stmt::LocalTypeDecl>) {
                if (node.type) walk(*node.type);
            }
        },
        statement.node);
}

void AstWalker::walk(const Expression& expression) {
    if (!enter_expression(expression)) return;
    auto visit = [this](const ExprPtr& e) {
        if (e) walk(*e);
    };
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, expr::FieldAccess>) {
                visit(node.receiver);
            } else if constexpr (std::is_same_v<T, expr::MethodCall>) {
                visit(node.receiver);
                for (const auto& a : node.args) visit(a);
            } else if constexpr (std::is_same_v<T, expr::New>) {
                for (const auto& a : node.args) visit(a);
                if (node.body) walk(*node.body);
            } else if constexpr (std::is_same_v<T, expr::InstanceOf> || std::is_same_v<T, expr::Cast>) {
                visit(node.operand);
            } else if constexpr (std::is_same_v<T, expr::BinaryOp>) {
                visit(node.lhs);
                visit(node.rhs);
            } else if constexpr (std::is_same_v<T, expr::UnaryOp>) {
                visit(node.operand);
            } else if constexpr (std::is_same_v<T, expr::Conditional>) {
                visit(node.condition);
                visit(node.then_value);
                visit(node.else_value);
            } else if constexpr (std::is_same_v<T, expr::Assignment>) {
                visit(node.target);
                visit(node.value);
            } else if constexpr (std::is_same_v<T, expr::ArrayAccess>) {
                visit(node.array);
                visit(node.index);
            } else if constexpr (std::is_same_v<T, expr::ArrayInit>) {
                for (const auto& e : node.elements) visit(e);
            } else if constexpr (std::is_same_v<T, expr::Lambda>) {
                if (node.listener) {
                    walk(*node.listener);
                } else if (node.method && enter_lambda_body(*node.method)) {
                    if (node.method->body) walk(*node.method->body);
                    leave_lambda_body(*node.method);
                }
            } else if constexpr (std::is_same_v<T, expr::SwitchExpr>) {
                if (node.switch_statement) walk(*node.switch_statement);
            }
        },
        expression.node);
}

namespace {

class TypeCollector : public AstWalker {
public:
    std::vector<const TypeDeclaration*> types;
    bool enter_type(const TypeDeclaration& type) override {
        types.push_back(&type);
        return true;
    }
};

class OwnBodyWalker : public AstWalker {
public:
    std::function<void(const Statement&)> on_statement;
    std::function<void(const Expression&)> on_expression;

    bool enter_type(const TypeDeclaration&) override { return false; }
    bool enter_lambda_body(const MethodDeclaration&) override { return false; }
    bool enter_statement(const Statement& s) override {
        if (on_statement) on_statement(s);
        return true;
    }
    bool enter_expression(const Expression& e) override {
        if (on_expression) on_expression(e);
        return true;
    }
};

} // namespace

std::vector<const TypeDeclaration*> iter_listener_capable_types(const CompilationUnit& unit) {
    TypeCollector collector;
    collector.walk(unit);
    std::stable_sort(collector.types.begin(), collector.types.end(),
                     [](const TypeDeclaration* a, const TypeDeclaration* b) {
                         return a->span.begin.offset < b->span.begin.offset;
                     });
    return collector.types;
}

void for_each_own_statement(const MethodDeclaration& method, const std::function<void(const Statement&)>& visit) {
    if (!method.body) return;
    OwnBodyWalker walker;
    walker.on_statement = visit;
    walker.walk(*method.body);
}

void for_each_own_expression(const MethodDeclaration& method, const std::function<void(const Expression&)>& visit) {
    if (!method.body) return;
    OwnBodyWalker walker;
    walker.on_expression = visit;
    walker.walk(*method.body);
}

void for_each_subexpression(const Expression& root, const std::function<void(const Expression&)>& visit) {
    OwnBodyWalker walker;
    walker.on_expression = visit;
    walker.walk(root);
}

} // namespace blobscan
