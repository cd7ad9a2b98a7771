#pragma once

#include <functional>
#include <vector>

#include "blobscan/ast.hpp"

namespace blobscan {

/// Pre-order traversal over every node of a unit. Each `enter_*` hook returns
/// whether to descend into the node's children.
class AstWalker {
public:
    virtual ~AstWalker() = default;

    virtual bool enter_type(const TypeDeclaration&) { return true; }
    virtual void leave_type(const TypeDeclaration&) {}
    virtual bool enter_method(const MethodDeclaration&) { return true; }
    virtual void leave_method(const MethodDeclaration&) {}
    virtual bool enter_statement(const Statement&) { return true; }
    virtual bool enter_expression(const Expression&) { return true; }
    /// Called for lambdas whose body was not materialized as a listener type.
    virtual bool enter_lambda_body(const MethodDeclaration&) { return true; }
    virtual void leave_lambda_body(const MethodDeclaration&) {}

    void walk(const CompilationUnit& unit);
    void walk(const TypeDeclaration& type);
    void walk(const MethodDeclaration& method);
    void walk(const Statement& statement);
    void walk(const Expression& expression);
};

/// Every top-level, nested, local, anonymous and lambda-materialized type of
/// the unit, each exactly once, in document order.
[[nodiscard]] std::vector<const TypeDeclaration*> iter_listener_capable_types(const CompilationUnit& unit);

/// Visits the statements that belong to `method` itself: nested type bodies
/// and lambda bodies are skipped. Pre-order, so document order.
void for_each_own_statement(const MethodDeclaration& method, const std::function<void(const Statement&)>& visit);

/// Same restriction as above, for expressions (including those nested in statements).
void for_each_own_expression(const MethodDeclaration& method, const std::function<void(const Expression&)>& visit);

/// Visits `root` and its subexpressions, without entering lambda or anonymous class bodies.
void for_each_subexpression(const Expression& root, const std::function<void(const Expression&)>& visit);

} // namespace blobscan
