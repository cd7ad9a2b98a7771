#pragma once

// Java abstract syntax tree covering the subset the listener analyses read.
// Constructs outside the subset are kept as Opaque nodes with their raw text.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blobscan/source.hpp"

namespace blobscan {

struct Expression;
struct Statement;
struct TypeDeclaration;
struct MethodDeclaration;

using ExprPtr = std::unique_ptr<Expression>;
using StmtPtr = std::unique_ptr<Statement>;

struct Parameter {
    std::string name;
    std::string type_name; ///< as written, generics stripped; empty for untyped lambda params
};

namespace expr {

struct Identifier {
    std::string name;
};

struct FieldAccess {
    ExprPtr receiver;
    std::string name;
};

struct MethodCall {
    ExprPtr receiver; ///< null for unqualified calls
    std::string name;
    std::vector<ExprPtr> args;
};

/// `new T(args)`, `new T(args) { body }` or `new T[n]`/`new T[]{...}`.
struct New {
    std::string type_name;
    std::vector<ExprPtr> args;
    std::unique_ptr<TypeDeclaration> body; ///< anonymous class, if any
    bool is_array = false;
};

struct InstanceOf {
    ExprPtr operand;
    std::string type_name;
    std::optional<std::string> binding; ///< pattern variable
};

struct BinaryOp {
    std::string op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct UnaryOp {
    std::string op;
    ExprPtr operand;
    bool postfix = false;
};

enum class LiteralKind { String, Char, Int, Float, Boolean, Null };

struct Literal {
    LiteralKind kind;
    std::string value; ///< source spelling
};

struct Cast {
    std::string type_name;
    ExprPtr operand;
};

struct Conditional {
    ExprPtr condition;
    ExprPtr then_value;
    ExprPtr else_value;
};

struct Assignment {
    std::string op; ///< "=", "+=", ...
    ExprPtr target;
    ExprPtr value;
};

struct ArrayAccess {
    ExprPtr array;
    ExprPtr index;
};

struct ArrayInit {
    std::vector<ExprPtr> elements;
};

/// A lambda. When it is passed to a catalog registration method it is
/// materialized as an anonymous listener class (`listener` set); otherwise the
/// body lives in `method`. Exactly one of the two is non-null.
struct Lambda {
    std::vector<Parameter> params;
    std::unique_ptr<MethodDeclaration> method;
    std::unique_ptr<TypeDeclaration> listener;

    [[nodiscard]] const MethodDeclaration& body_method() const;
};

struct SwitchExpr {
    StmtPtr switch_statement; ///< always a stmt::Switch
};

struct Opaque {
    std::string text;
};

} // namespace expr

struct Expression {
    using Node = std::variant<expr::Identifier, expr::FieldAccess, expr::MethodCall, expr::New, expr::InstanceOf,
                              expr::BinaryOp, expr::UnaryOp, expr::Literal, expr::Cast, expr::Conditional,
                              expr::Assignment, expr::ArrayAccess, expr::ArrayInit, expr::Lambda, expr::SwitchExpr,
                              expr::Opaque>;
    Span span;
    Node node;

    template <typename T>
    [[nodiscard]] const T* as() const { return std::get_if<T>(&node); }
    template <typename T>
    [[nodiscard]] bool is() const { return std::holds_alternative<T>(node); }
};

namespace stmt {

struct Block {
    std::vector<StmtPtr> statements;
};

struct If {
    ExprPtr condition;
    StmtPtr then_branch;
    StmtPtr else_branch; ///< null when absent
};

struct SwitchCase {
    std::vector<ExprPtr> labels; ///< empty for `default`
    bool is_default = false;
    bool arrow = false;
    std::vector<StmtPtr> statements;
    Span span; ///< from the first `case`/`default` keyword to the end of the last statement
};

struct Switch {
    ExprPtr selector;
    std::vector<SwitchCase> cases;
};

enum class LoopKind { While, DoWhile, For, ForEach };

struct Loop {
    LoopKind kind;
    std::vector<StmtPtr> init; ///< for-init, or the foreach variable
    ExprPtr condition;         ///< foreach: the iterated expression
    std::vector<ExprPtr> update;
    StmtPtr body;
};

struct Return {
    ExprPtr value;
};

struct ExpressionStatement {
    ExprPtr expression;
};

struct LocalVarDecl {
    std::string name;
    std::string type_name;
    ExprPtr initializer;
};

struct CatchClause {
    std::vector<std::string> types;
    std::string name;
    StmtPtr body;
    Span span;
};

struct Try {
    std::vector<StmtPtr> resources;
    StmtPtr body;
    std::vector<CatchClause> catches;
    StmtPtr finally_block;
};

struct Break {
    std::optional<std::string> label;
};

struct Continue {
    std::optional<std::string> label;
};

struct Throw {
    ExprPtr value;
};

struct Labeled {
    std::string label;
    StmtPtr body;
};

struct LocalTypeDecl {
    std::unique_ptr<TypeDeclaration> type;
};

struct Opaque {
    std::string text;
};

} // namespace stmt

struct Statement {
    using Node = std::variant<stmt::Block, stmt::If, stmt::Switch, stmt::Loop, stmt::Return, stmt::ExpressionStatement,
                              stmt::LocalVarDecl, stmt::Try, stmt::Break, stmt::Continue, stmt::Throw, stmt::Labeled,
                              stmt::LocalTypeDecl, stmt::Opaque>;
    Span span;
    Node node;

    template <typename T>
    [[nodiscard]] const T* as() const { return std::get_if<T>(&node); }
    template <typename T>
    [[nodiscard]] bool is() const { return std::holds_alternative<T>(node); }
    [[nodiscard]] bool is_conditional() const { return is<stmt::If>() || is<stmt::Switch>(); }
};

struct FieldDeclaration {
    std::string name;
    std::string declared_type;
    ExprPtr initializer;
    Span span;
};

struct MethodDeclaration {
    std::string name;
    std::vector<Parameter> parameters;
    std::string return_type; ///< empty for constructors and lambdas
    StmtPtr body;            ///< a stmt::Block, or null for abstract/interface methods
    bool is_lambda = false;
    bool is_constructor = false;
    Span span;

    [[nodiscard]] const stmt::Block* block() const { return body ? body->as<stmt::Block>() : nullptr; }
};

enum class TypeKind { Class, Interface, Enum, Anonymous };

struct TypeDeclaration {
    std::string name;
    std::string qualified_name;
    TypeKind kind = TypeKind::Class;
    std::vector<std::string> extends_names;
    std::vector<std::string> implements_names;
    std::vector<FieldDeclaration> fields;
    std::vector<MethodDeclaration> methods;
    std::vector<TypeDeclaration> nested_types;
    std::vector<StmtPtr> initializers; ///< instance/static initializer blocks
    Span span;

    [[nodiscard]] const FieldDeclaration* find_field(std::string_view field_name) const;
};

struct ImportDeclaration {
    std::string name; ///< dotted, without the trailing `.*`
    bool wildcard = false;
    bool is_static = false;
};

struct CompilationUnit {
    std::string file;
    std::string text;
    std::optional<std::string> package_name;
    std::vector<ImportDeclaration> imports;
    std::vector<TypeDeclaration> types;
    std::vector<Diagnostic> parse_diagnostics;

    [[nodiscard]] std::string_view slice(const Span& span) const;
};

inline const MethodDeclaration& expr::Lambda::body_method() const {
    return listener ? listener->methods.front() : *method;
}

[[nodiscard]] std::string_view to_string(TypeKind kind);
[[nodiscard]] std::string_view simple_name(std::string_view dotted);

} // namespace blobscan
