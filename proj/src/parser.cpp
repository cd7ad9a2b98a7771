#include "blobscan/parser.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "blobscan/lexer.hpp"

namespace blobscan {

namespace {

constexpr int kMaxDepth = 200;

struct ParseFailure {
    Span span;
    std::string message;
};

constexpr std::array kPrimitiveTypes = {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};
constexpr std::array kModifiers = {"public",    "protected", "private",  "static",       "final",   "abstract",
                                   "native",    "transient", "volatile", "synchronized", "strictfp"};

bool is_primitive(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), t.text) != kPrimitiveTypes.end();
}

bool is_modifier(const Token& t) {
    return t.kind == TokenKind::Keyword && std::find(kModifiers.begin(), kModifiers.end(), t.text) != kModifiers.end();
}

template <typename T>
ExprPtr make_expr(const Span& span, T node) {
    return std::make_unique<Expression>(Expression{span, Expression::Node(std::move(node))});
}

template <typename T>
StmtPtr make_stmt(const Span& span, T node) {
    return std::make_unique<Statement>(Statement{span, Statement::Node(std::move(node))});
}

struct TypeFrame {
    std::string simple;
    std::string qualified;
    int anonymous = 0;
    int lambdas = 0;
};

class Parser {
public:
    Parser(CompilationUnit& unit, std::vector<Token> tokens, const ParseOptions& options)
        : unit_(unit), toks_(std::move(tokens)), options_(options) {}

    void parse_compilation_unit();

private:
    // ---- token access -------------------------------------------------------
    const Token& peek(std::size_t ahead = 0) const {
        auto i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    bool at_end() const { return peek().kind == TokenKind::End; }
    bool at_op(std::string_view t, std::size_t ahead = 0) const { return peek(ahead).op(t); }
    bool at_kw(std::string_view t, std::size_t ahead = 0) const { return peek(ahead).keyword(t); }
    bool at_conditional_keyword() const { return at_kw("if") || at_kw("switch"); }
    bool at_ident(std::size_t ahead = 0) const { return peek(ahead).kind == TokenKind::Identifier; }
    bool at_ident(std::string_view t, std::size_t ahead = 0) const { return peek(ahead).is(TokenKind::Identifier, t); }
    const Token& advance() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept_op(std::string_view t) {
        if (!at_op(t)) return false;
        advance();
        return true;
    }
    bool accept_kw(std::string_view t) {
        if (!at_kw(t)) return false;
        advance();
        return true;
    }
    [[noreturn]] void fail(std::string message) const { throw ParseFailure{peek().span, std::move(message)}; }
    void expect_op(std::string_view t) {
        if (!accept_op(t)) fail("expected '" + std::string(t) + "'");
    }
    std::string expect_ident() {
        if (!at_ident()) fail("expected identifier");
        return std::string(advance().text);
    }
    SourcePosition here() const { return peek().span.begin; }
    SourcePosition last_end() const { return pos_ == 0 ? toks_[0].span.begin : toks_[pos_ - 1].span.end; }
    Span span_from(const SourcePosition& begin) const {
        auto end = last_end();
        if (end.offset < begin.offset) end = begin;
        return Span{begin, end};
    }
    bool adjacent(std::size_t ahead) const {
        return peek(ahead).span.end.offset == peek(ahead + 1).span.begin.offset;
    }
    void diagnose(const Span& span, std::string message) {
        unit_.parse_diagnostics.push_back(Diagnostic{span, std::move(message)});
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth) {
                --parser.depth_;
                parser.fail("nesting too deep");
            }
        }
        ~DepthGuard() { --parser.depth_; }
        DepthGuard(const DepthGuard&) = delete;
        DepthGuard& operator=(const DepthGuard&) = delete;
        Parser& parser;
    };

    // Index of the token closing the bracket at `open_index`, or npos.
    // When `stop_at_statement` is set, `;`, `{` or `}` directly inside the
    // bracket abort the search.
    std::size_t find_closing(std::size_t open_index, std::string_view open, std::string_view close,
                             bool stop_at_statement) const {
        int depth = 0;
        for (std::size_t i = open_index; i < toks_.size(); ++i) {
            const Token& t = toks_[i];
            if (t.kind == TokenKind::End) return std::string::npos;
            if (t.op(open)) {
                ++depth;
            } else if (t.op(close)) {
                if (--depth == 0) return i;
            } else if (stop_at_statement && depth >= 1 &&
                       (t.op(";") || t.op("{") || t.op("}") || t.keyword("if") || t.keyword("switch"))) {
                // Only a hint: a well-formed condition containing a block
                // lambda still parses; it just is not bracket-checked.
                return std::string::npos;
            }
        }
        return std::string::npos;
    }

    ExprPtr opaque_expr(std::size_t from, std::size_t to) const {
        if (from >= to) {
            auto at = toks_[std::min(from, toks_.size() - 1)].span.begin;
            return make_expr(Span{at, at}, expr::Opaque{});
        }
        Span span{toks_[from].span.begin, toks_[to - 1].span.end};
        return make_expr(span, expr::Opaque{std::string(unit_.slice(span))});
    }

    // ---- declarations -------------------------------------------------------
    void skip_annotation();
    void parse_modifiers(bool allow_default);
    bool at_type_declaration() const;
    TypeDeclaration parse_type_declaration(const SourcePosition& begin);
    void parse_class_body(TypeDeclaration& type, bool is_enum);
    void parse_enum_constants(TypeDeclaration& type);
    void parse_member(TypeDeclaration& type);
    void recover_member(TypeDeclaration& type, std::size_t start, const ParseFailure& failure);
    std::vector<Parameter> parse_parameters();
    std::vector<std::string> parse_type_list();
    void add_field(TypeDeclaration& type, FieldDeclaration field);
    std::string anonymous_name(bool lambda, std::string* qualified);

    // ---- types --------------------------------------------------------------
    bool skip_type_arguments();
    std::string parse_type_base();
    std::string parse_type();
    std::optional<std::string> try_parse_type();

    // ---- statements ---------------------------------------------------------
    StmtPtr parse_block();
    void parse_block_statements(std::vector<StmtPtr>& out, bool in_switch);
    void parse_block_statement(std::vector<StmtPtr>& out);
    bool try_parse_local_var_decl(std::vector<StmtPtr>& out, const SourcePosition& begin, bool require_semicolon);
    StmtPtr parse_statement();
    StmtPtr parse_statement_recovering();
    StmtPtr recover_statement(std::size_t start, const ParseFailure& failure);
    StmtPtr parse_if();
    StmtPtr parse_switch();
    StmtPtr parse_for();
    StmtPtr parse_try();
    ExprPtr parse_paren_condition();
    ExprPtr parse_case_label();

    // ---- expressions --------------------------------------------------------
    ExprPtr parse_expression();
    ExprPtr parse_assignment();
    ExprPtr parse_ternary();
    ExprPtr parse_binary(int min_precedence);
    ExprPtr parse_unary();
    ExprPtr parse_postfix(ExprPtr base);
    ExprPtr parse_primary();
    ExprPtr parse_creator();
    ExprPtr parse_lambda();
    ExprPtr parse_variable_initializer();
    ExprPtr parse_array_initializer();
    std::vector<ExprPtr> parse_arguments(std::string_view call_name);
    bool lambda_ahead() const;
    bool cast_operand_ahead(std::size_t ahead) const;
    struct OperatorMatch {
        std::string text;
        std::size_t tokens = 0;
        int precedence = -1;
    };
    OperatorMatch peek_operator() const;

    CompilationUnit& unit_;
    std::vector<Token> toks_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    bool no_lambda_ = false;
    std::vector<TypeFrame> frames_;
};

// ===== declarations ===========================================================

void Parser::parse_compilation_unit() {
    auto save = pos_;
    while (at_op("@") && !at_kw("interface", 1)) skip_annotation();
    if (at_kw("package")) {
        advance();
        std::string name = expect_ident();
        while (at_op(".") && at_ident(1)) {
            advance();
            name += "." + std::string(advance().text);
        }
        if (!accept_op(";")) diagnose(peek().span, "expected ';' after package declaration");
        unit_.package_name = name;
    } else {
        pos_ = save;
    }

    while (at_kw("import")) {
        auto begin = here();
        advance();
        ImportDeclaration import;
        import.is_static = accept_kw("static");
        if (!at_ident()) {
            diagnose(span_from(begin), "malformed import");
            while (!at_end() && !at_op(";")) advance();
            accept_op(";");
            continue;
        }
        import.name = std::string(advance().text);
        while (at_op(".")) {
            advance();
            if (accept_op("*")) {
                import.wildcard = true;
                break;
            }
            if (!at_ident()) break;
            import.name += "." + std::string(advance().text);
        }
        if (!accept_op(";")) diagnose(span_from(begin), "expected ';' after import");
        unit_.imports.push_back(std::move(import));
    }

    while (!at_end()) {
        if (accept_op(";")) continue;
        auto start = pos_;
        auto begin = here();
        try {
            parse_modifiers(false);
            if (!at_type_declaration()) fail("expected type declaration");
            unit_.types.push_back(parse_type_declaration(begin));
        } catch (const ParseFailure& failure) {
            // Skip to the next plausible declaration; a stray class body is kept
            // under a synthetic type so its members are still analyzed.
            if (pos_ == start && !at_conditional_keyword()) advance();
            while (!at_end() && !at_type_declaration() && !is_modifier(peek()) && !at_op("@") && !at_op("{") &&
                   !at_conditional_keyword()) {
                advance();
            }
            diagnose(span_from(begin), "skipped: " + failure.message);
            if (at_op("{") || at_conditional_keyword()) {
                TypeDeclaration recovered;
                recovered.name = "$recovered";
                recovered.qualified_name =
                    unit_.package_name ? *unit_.package_name + ".$recovered" : std::string("$recovered");
                frames_.push_back(TypeFrame{recovered.name, recovered.qualified_name});
                if (at_op("{")) {
                    parse_class_body(recovered, false);
                } else {
                    // A stray statement, e.g. after a class closed early.
                    recovered.initializers.push_back(parse_statement_recovering());
                }
                frames_.pop_back();
                recovered.span = span_from(begin);
                unit_.types.push_back(std::move(recovered));
            }
        }
    }
}

void Parser::skip_annotation() {
    advance(); // '@'
    if (at_ident()) advance();
    while (at_op(".") && at_ident(1)) {
        advance();
        advance();
    }
    if (at_op("(")) {
        auto close = find_closing(pos_, "(", ")", false);
        if (close == std::string::npos) fail("unterminated annotation");
        pos_ = close + 1;
    }
}

void Parser::parse_modifiers(bool allow_default) {
    while (true) {
        if (is_modifier(peek())) {
            advance();
        } else if (allow_default && at_kw("default") && !at_op(":", 1) && !at_op("->", 1)) {
            advance();
        } else if (at_op("@") && !at_kw("interface", 1)) {
            skip_annotation();
        } else if ((at_ident("sealed") || at_ident("non")) && (at_ident(1) || at_kw("class", 1) ||
                                                                 at_kw("interface", 1) || at_op("-", 1))) {
            if (at_ident("non") && at_op("-", 1) && at_ident("sealed", 2)) {
                advance();
                advance();
                advance();
            } else if (at_ident("sealed")) {
                advance();
            } else {
                return;
            }
        } else {
            return;
        }
    }
}

bool Parser::at_type_declaration() const {
    return at_kw("class") || at_kw("interface") || at_kw("enum") || (at_op("@") && at_kw("interface", 1)) ||
           (at_ident("record") && at_ident(1) && (at_op("(", 2) || at_op("<", 2)));
}

std::vector<std::string> Parser::parse_type_list() {
    std::vector<std::string> names;
    names.push_back(parse_type());
    while (accept_op(",")) names.push_back(parse_type());
    return names;
}

TypeDeclaration Parser::parse_type_declaration(const SourcePosition& begin) {
    DepthGuard guard(*this);
    TypeDeclaration type;
    bool is_enum = false;
    bool is_record = false;
    if (accept_kw("class")) {
        type.kind = TypeKind::Class;
    } else if (accept_kw("interface")) {
        type.kind = TypeKind::Interface;
    } else if (accept_kw("enum")) {
        type.kind = TypeKind::Enum;
        is_enum = true;
    } else if (at_op("@")) {
        advance();
        advance();
        type.kind = TypeKind::Interface;
    } else {
        advance(); // record
        type.kind = TypeKind::Class;
        is_record = true;
    }
    type.name = expect_ident();
    if (!frames_.empty()) {
        type.qualified_name = frames_.back().qualified + "." + type.name;
    } else {
        type.qualified_name = unit_.package_name ? *unit_.package_name + "." + type.name : type.name;
    }
    if (at_op("<") && !skip_type_arguments()) fail("malformed type parameters");
    if (is_record) {
        auto components = parse_parameters();
        for (auto& c : components) {
            add_field(type, FieldDeclaration{c.name, c.type_name, nullptr, span_from(begin)});
        }
    }
    while (true) {
        if (accept_kw("extends")) {
            auto names = parse_type_list();
            type.extends_names.insert(type.extends_names.end(), names.begin(), names.end());
        } else if (accept_kw("implements")) {
            auto names = parse_type_list();
            type.implements_names.insert(type.implements_names.end(), names.begin(), names.end());
        } else if (at_ident("permits")) {
            advance();
            (void)parse_type_list();
        } else {
            break;
        }
    }
    frames_.push_back(TypeFrame{type.name, type.qualified_name});
    try {
        parse_class_body(type, is_enum);
    } catch (...) {
        frames_.pop_back();
        throw;
    }
    frames_.pop_back();
    type.span = span_from(begin);
    return type;
}

void Parser::add_field(TypeDeclaration& type, FieldDeclaration field) {
    if (type.find_field(field.name) != nullptr) {
        diagnose(field.span, "duplicate field '" + field.name + "'");
        return;
    }
    type.fields.push_back(std::move(field));
}

std::string Parser::anonymous_name(bool lambda, std::string* qualified) {
    if (frames_.empty()) frames_.push_back(TypeFrame{"$unit", "$unit"});
    auto& frame = frames_.back();
    std::string suffix = lambda ? "$lambda$" + std::to_string(++frame.lambdas) : "$" + std::to_string(++frame.anonymous);
    *qualified = frame.qualified + suffix;
    return frame.simple + suffix;
}

void Parser::parse_class_body(TypeDeclaration& type, bool is_enum) {
    expect_op("{");
    if (is_enum) parse_enum_constants(type);
    while (!at_end() && !at_op("}")) {
        if (accept_op(";")) continue;
        auto start = pos_;
        try {
            parse_member(type);
        } catch (const ParseFailure& failure) {
            recover_member(type, start, failure);
        }
        if (pos_ == start) advance();
    }
    if (!accept_op("}")) diagnose(peek().span, "missing '}' at end of " + type.name);
}

void Parser::parse_enum_constants(TypeDeclaration& type) {
    while (!at_end() && !at_op(";") && !at_op("}")) {
        auto start = pos_;
        auto begin = here();
        try {
            while (at_op("@")) skip_annotation();
            auto name = expect_ident();
            expr::New creation;
            creation.type_name = type.name;
            if (at_op("(")) creation.args = parse_arguments({});
            if (at_op("{")) {
                auto body = std::make_unique<TypeDeclaration>();
                body->kind = TypeKind::Anonymous;
                body->name = anonymous_name(false, &body->qualified_name);
                body->extends_names.push_back(type.name);
                frames_.push_back(TypeFrame{body->name, body->qualified_name});
                try {
                    parse_class_body(*body, false);
                } catch (...) {
                    frames_.pop_back();
                    throw;
                }
                frames_.pop_back();
                body->span = span_from(begin);
                creation.body = std::move(body);
            }
            auto span = span_from(begin);
            add_field(type, FieldDeclaration{name, type.name, make_expr(span, std::move(creation)), span});
            if (!accept_op(",")) break;
        } catch (const ParseFailure& failure) {
            diagnose(span_from(begin), "skipped enum constant: " + failure.message);
            if (pos_ == start) advance();
            while (!at_end() && !at_op(",") && !at_op(";") && !at_op("}")) advance();
            accept_op(",");
        }
    }
    accept_op(";");
}

std::vector<Parameter> Parser::parse_parameters() {
    std::vector<Parameter> params;
    expect_op("(");
    while (!at_op(")")) {
        parse_modifiers(false);
        Parameter param;
        param.type_name = parse_type();
        if (accept_op("...")) param.type_name += "[]";
        if (accept_kw("this")) {
            // receiver parameter
        } else {
            param.name = expect_ident();
        }
        while (at_op("[") && at_op("]", 1)) {
            advance();
            advance();
            param.type_name += "[]";
        }
        params.push_back(std::move(param));
        if (!accept_op(",")) break;
    }
    expect_op(")");
    return params;
}

void Parser::parse_member(TypeDeclaration& type) {
    auto begin = here();
    if (at_op("{") || (at_kw("static") && at_op("{", 1))) {
        accept_kw("static");
        type.initializers.push_back(parse_block());
        return;
    }
    parse_modifiers(true);
    if (at_type_declaration()) {
        type.nested_types.push_back(parse_type_declaration(begin));
        return;
    }
    if (at_op("<") && !skip_type_arguments()) fail("malformed type parameters");

    MethodDeclaration method;
    bool compact_ctor = at_ident(type.name) && at_op("{", 1);
    if ((at_ident() && at_op("(", 1)) || compact_ctor) {
        method.name = std::string(advance().text);
        method.is_constructor = true;
        if (!compact_ctor) method.parameters = parse_parameters();
    } else {
        std::string declared = parse_type();
        std::string name = expect_ident();
        if (!at_op("(")) {
            // field declarators
            while (true) {
                std::string field_type = declared;
                while (at_op("[") && at_op("]", 1)) {
                    advance();
                    advance();
                    field_type += "[]";
                }
                ExprPtr init;
                if (accept_op("=")) init = parse_variable_initializer();
                add_field(type, FieldDeclaration{name, field_type, std::move(init), span_from(begin)});
                if (!accept_op(",")) break;
                name = expect_ident();
            }
            expect_op(";");
            if (!type.fields.empty()) type.fields.back().span = span_from(begin);
            return;
        }
        method.name = std::move(name);
        method.return_type = std::move(declared);
        method.parameters = parse_parameters();
        while (at_op("[") && at_op("]", 1)) {
            advance();
            advance();
            method.return_type += "[]";
        }
    }
    if (accept_kw("throws")) (void)parse_type_list();
    if (at_op("{")) {
        method.body = parse_block();
    } else if (accept_kw("default")) {
        // annotation element default value
        while (!at_end() && !at_op(";") && !at_op("}")) advance();
        expect_op(";");
    } else {
        expect_op(";");
    }
    method.span = span_from(begin);
    type.methods.push_back(std::move(method));
}

void Parser::recover_member(TypeDeclaration& type, std::size_t start, const ParseFailure& failure) {
    auto begin = toks_[start].span.begin;
    // Rescan from the member start: anything parsed before the failure was
    // discarded, so nested bodies must be visited again.
    pos_ = start;
    if (!at_conditional_keyword()) advance();
    while (!at_end() && !at_op(";") && !at_op("}") && !at_op("{") && !at_conditional_keyword()) advance();
    if (at_conditional_keyword()) {
        // A statement at member level, e.g. after a lost method brace.
        type.initializers.push_back(parse_statement_recovering());
    } else if (at_op("{")) {
        // Keep the body so the statements inside are still visible.
        type.initializers.push_back(parse_block());
    } else {
        accept_op(";");
    }
    diagnose(span_from(begin), "skipped member: " + failure.message);
}

// ===== types ==================================================================

bool Parser::skip_type_arguments() {
    // Positioned on '<'. Type arguments only contain names, dots, commas,
    // wildcards, bounds, array brackets and annotations.
    int depth = 0;
    auto save = pos_;
    while (!at_end()) {
        const Token& t = peek();
        if (t.op("<")) {
            ++depth;
        } else if (t.op(">")) {
            if (--depth == 0) {
                advance();
                return true;
            }
        } else if (t.op("<<")) {
            depth += 2;
        } else if (t.kind == TokenKind::Identifier || t.keyword("extends") || t.keyword("super") || is_primitive(t) ||
                   t.op(".") || t.op(",") || t.op("?") || t.op("&") || t.op("[") || t.op("]") || t.op("@")) {
            // allowed inside type arguments
        } else {
            pos_ = save;
            return false;
        }
        advance();
    }
    pos_ = save;
    return false;
}

std::string Parser::parse_type_base() {
    while (at_op("@")) skip_annotation();
    if (is_primitive(peek())) return std::string(advance().text);
    if (!at_ident()) fail("expected type");
    std::string name(advance().text);
    if (at_op("<") && !skip_type_arguments()) fail("malformed type arguments");
    while (at_op(".") && (at_ident(1) || at_op("@", 1))) {
        advance();
        while (at_op("@")) skip_annotation();
        name += "." + expect_ident();
        if (at_op("<") && !skip_type_arguments()) fail("malformed type arguments");
    }
    return name;
}

std::string Parser::parse_type() {
    std::string name = parse_type_base();
    while (true) {
        auto save = pos_;
        while (at_op("@")) skip_annotation();
        if (at_op("[") && at_op("]", 1)) {
            advance();
            advance();
            name += "[]";
        } else {
            pos_ = save;
            break;
        }
    }
    return name;
}

std::optional<std::string> Parser::try_parse_type() {
    auto save = pos_;
    try {
        return parse_type();
    } catch (const ParseFailure&) {
        pos_ = save;
        return std::nullopt;
    }
}

// ===== statements =============================================================

StmtPtr Parser::parse_block() {
    DepthGuard guard(*this);
    auto begin = here();
    expect_op("{");
    stmt::Block block;
    parse_block_statements(block.statements, false);
    if (!accept_op("}")) diagnose(peek().span, "missing '}'");
    return make_stmt(span_from(begin), std::move(block));
}

void Parser::parse_block_statements(std::vector<StmtPtr>& out, bool in_switch) {
    while (!at_end() && !at_op("}")) {
        if (in_switch && (at_kw("case") || at_kw("default"))) break;
        auto start = pos_;
        parse_block_statement(out);
        if (pos_ == start) advance();
    }
}

void Parser::parse_block_statement(std::vector<StmtPtr>& out) {
    auto start = pos_;
    auto begin = here();
    try {
        auto save = pos_;
        parse_modifiers(false);
        if (at_type_declaration()) {
            auto type = std::make_unique<TypeDeclaration>(parse_type_declaration(begin));
            if (!frames_.empty()) {
                type->qualified_name = frames_.back().qualified + "$" + type->name;
            }
            out.push_back(make_stmt(span_from(begin), stmt::LocalTypeDecl{std::move(type)}));
            return;
        }
        if (try_parse_local_var_decl(out, begin, true)) return;
        pos_ = save;
        out.push_back(parse_statement());
    } catch (const ParseFailure& failure) {
        out.push_back(recover_statement(start, failure));
    }
}

bool Parser::try_parse_local_var_decl(std::vector<StmtPtr>& out, const SourcePosition& begin, bool require_semicolon) {
    auto save = pos_;
    auto type = try_parse_type();
    if (!type || !at_ident() ||
        !(at_op("=", 1) || at_op(";", 1) || at_op(",", 1) || at_op("[", 1) || at_op(":", 1))) {
        pos_ = save;
        return false;
    }
    bool first = true;
    while (true) {
        auto decl_begin = first ? begin : here();
        stmt::LocalVarDecl decl;
        decl.name = expect_ident();
        decl.type_name = *type;
        while (at_op("[") && at_op("]", 1)) {
            advance();
            advance();
            decl.type_name += "[]";
        }
        if (accept_op("=")) decl.initializer = parse_variable_initializer();
        bool more = at_op(",");
        if (!more && require_semicolon) expect_op(";");
        out.push_back(make_stmt(span_from(decl_begin), std::move(decl)));
        first = false;
        if (!accept_op(",")) break;
    }
    return true;
}

StmtPtr Parser::parse_statement_recovering() {
    auto start = pos_;
    try {
        return parse_statement();
    } catch (const ParseFailure& failure) {
        return recover_statement(start, failure);
    }
}

StmtPtr Parser::recover_statement(std::size_t start, const ParseFailure& failure) {
    // Rescan from the statement start so bodies parsed before the failure
    // (e.g. an anonymous class) are parsed again as blocks.
    pos_ = start;
    auto begin = toks_[start].span.begin;
    if (!at_end() && !at_op("}")) advance();
    while (!at_end()) {
        if (at_op(";")) {
            advance();
            break;
        }
        if (at_op("{") || at_op("}") || at_kw("if") || at_kw("switch") || at_kw("else") || at_kw("case") ||
            at_kw("default")) {
            break;
        }
        advance();
    }
    auto span = span_from(begin);
    diagnose(span, "unparsed statement: " + failure.message);
    return make_stmt(span, stmt::Opaque{std::string(unit_.slice(span))});
}

StmtPtr Parser::parse_statement() {
    DepthGuard guard(*this);
    auto begin = here();
    if (at_op("{")) return parse_block();
    if (accept_op(";")) return make_stmt(span_from(begin), stmt::Block{});
    if (at_kw("if")) return parse_if();
    if (at_kw("switch")) return parse_switch();
    if (accept_kw("while")) {
        stmt::Loop loop{stmt::LoopKind::While, {}, parse_paren_condition(), {}, nullptr};
        loop.body = parse_statement_recovering();
        return make_stmt(span_from(begin), std::move(loop));
    }
    if (accept_kw("do")) {
        stmt::Loop loop{stmt::LoopKind::DoWhile, {}, nullptr, {}, parse_statement_recovering()};
        if (accept_kw("while")) {
            loop.condition = parse_paren_condition();
        } else {
            diagnose(peek().span, "expected 'while' after do body");
        }
        if (!accept_op(";")) diagnose(peek().span, "expected ';' after do-while");
        return make_stmt(span_from(begin), std::move(loop));
    }
    if (at_kw("for")) return parse_for();
    if (at_kw("try")) return parse_try();
    if (accept_kw("return")) {
        stmt::Return ret;
        if (!at_op(";")) ret.value = parse_expression();
        expect_op(";");
        return make_stmt(span_from(begin), std::move(ret));
    }
    if (accept_kw("throw")) {
        stmt::Throw thr{parse_expression()};
        expect_op(";");
        return make_stmt(span_from(begin), std::move(thr));
    }
    if (at_kw("break") || at_kw("continue")) {
        bool is_break = advance().text == "break";
        std::optional<std::string> label;
        if (at_ident()) label = std::string(advance().text);
        expect_op(";");
        if (is_break) return make_stmt(span_from(begin), stmt::Break{label});
        return make_stmt(span_from(begin), stmt::Continue{label});
    }
    if (accept_kw("synchronized")) {
        (void)parse_paren_condition();
        auto body = parse_block();
        body->span = span_from(begin);
        return body;
    }
    if (accept_kw("assert")) {
        auto condition = parse_expression();
        if (accept_op(":")) (void)parse_expression();
        expect_op(";");
        return make_stmt(span_from(begin), stmt::ExpressionStatement{std::move(condition)});
    }
    if (at_ident() && at_op(":", 1)) {
        std::string label(advance().text);
        advance();
        return make_stmt(span_from(begin), stmt::Labeled{label, parse_statement_recovering()});
    }
    if (at_ident("yield") && !at_op("=", 1) && !at_op("(", 1) && !at_op(".", 1) && !at_op("[", 1) &&
        !at_op("++", 1) && !at_op("--", 1)) {
        advance();
        auto value = parse_expression();
        expect_op(";");
        return make_stmt(span_from(begin), stmt::ExpressionStatement{std::move(value)});
    }
    auto expression = parse_expression();
    expect_op(";");
    return make_stmt(span_from(begin), stmt::ExpressionStatement{std::move(expression)});
}

ExprPtr Parser::parse_paren_condition() {
    if (!at_op("(")) {
        diagnose(peek().span, "expected '('");
        return opaque_expr(pos_, pos_);
    }
    auto open = pos_;
    auto close = find_closing(open, "(", ")", true);
    advance();
    auto start = pos_;
    try {
        auto condition = parse_expression();
        if (close != std::string::npos && pos_ != close) fail("unexpected tokens in condition");
        if (close == std::string::npos && !at_op(")")) fail("missing ')'");
        expect_op(")");
        return condition;
    } catch (const ParseFailure& failure) {
        diagnose(failure.span, "unparsed condition: " + failure.message);
        if (close != std::string::npos) {
            pos_ = close + 1;
            return opaque_expr(start, close);
        }
        // Unclosed: stop before the statement that follows.
        pos_ = start;
        while (!at_end() && !at_op("{") && !at_op(";") && !at_op("}") && !at_conditional_keyword()) advance();
        return opaque_expr(start, pos_);
    }
}

StmtPtr Parser::parse_if() {
    auto begin = here();
    advance();
    stmt::If node;
    node.condition = parse_paren_condition();
    node.then_branch = parse_statement_recovering();
    if (accept_kw("else")) node.else_branch = parse_statement_recovering();
    return make_stmt(span_from(begin), std::move(node));
}

ExprPtr Parser::parse_case_label() {
    auto start = pos_;
    bool saved = no_lambda_;
    no_lambda_ = true;
    try {
        ExprPtr label;
        // Type patterns (`case Foo f ->`) are kept opaque.
        if (at_ident() && at_ident(1) && !at_ident("when", 1)) fail("type pattern");
        label = parse_ternary();
        no_lambda_ = saved;
        if (at_ident("when")) {
            advance();
            (void)parse_ternary();
        }
        return label;
    } catch (const ParseFailure&) {
        no_lambda_ = saved;
        pos_ = start;
        int depth = 0;
        while (!at_end()) {
            if (at_op("(")) ++depth;
            if (at_op(")")) --depth;
            if (depth <= 0 && (at_op(":") || at_op("->") || at_op(",") || at_op("}") || at_op(";"))) break;
            advance();
        }
        return opaque_expr(start, pos_);
    }
}

StmtPtr Parser::parse_switch() {
    DepthGuard guard(*this);
    auto begin = here();
    advance();
    stmt::Switch node;
    node.selector = parse_paren_condition();
    if (!accept_op("{")) {
        diagnose(peek().span, "expected '{' after switch");
        return make_stmt(span_from(begin), std::move(node));
    }
    while (!at_end() && !at_op("}")) {
        if (at_kw("case") || at_kw("default")) {
            stmt::SwitchCase group;
            auto case_begin = here();
            // Consecutive colon-style labels share one statement list.
            while (at_kw("case") || at_kw("default")) {
                if (accept_kw("default")) {
                    group.is_default = true;
                } else {
                    advance();
                    group.labels.push_back(parse_case_label());
                    while (accept_op(",")) {
                        if (accept_kw("default")) {
                            group.is_default = true;
                        } else {
                            group.labels.push_back(parse_case_label());
                        }
                    }
                }
                if (accept_op("->")) {
                    group.arrow = true;
                    break;
                }
                if (!accept_op(":")) {
                    diagnose(peek().span, "expected ':' or '->' after case label");
                    break;
                }
            }
            if (group.arrow) {
                auto start = pos_;
                try {
                    if (at_op("{") || at_kw("throw")) {
                        group.statements.push_back(parse_statement());
                    } else {
                        auto body_begin = here();
                        auto value = parse_expression();
                        expect_op(";");
                        group.statements.push_back(
                            make_stmt(span_from(body_begin), stmt::ExpressionStatement{std::move(value)}));
                    }
                } catch (const ParseFailure& failure) {
                    group.statements.push_back(recover_statement(start, failure));
                }
            } else {
                parse_block_statements(group.statements, true);
            }
            group.span = span_from(case_begin);
            node.cases.push_back(std::move(group));
        } else {
            // Statements before the first label: keep them rather than drop them.
            diagnose(peek().span, "statement outside of a case label");
            if (node.cases.empty()) {
                stmt::SwitchCase orphan;
                orphan.span = Span{here(), here()};
                node.cases.push_back(std::move(orphan));
            }
            auto& target = node.cases.back();
            auto start = pos_;
            parse_block_statement(target.statements);
            if (pos_ == start) advance();
            target.span = join(target.span, Span{target.span.begin, last_end()});
        }
    }
    if (!accept_op("}")) diagnose(peek().span, "missing '}' at end of switch");
    return make_stmt(span_from(begin), std::move(node));
}

StmtPtr Parser::parse_for() {
    auto begin = here();
    advance();
    stmt::Loop loop{stmt::LoopKind::For, {}, nullptr, {}, nullptr};
    if (!at_op("(")) {
        diagnose(peek().span, "expected '(' after for");
    } else {
        auto open = pos_;
        auto close = find_closing(open, "(", ")", false);
        advance();
        auto start = pos_;
        try {
            auto header_begin = here();
            auto save = pos_;
            parse_modifiers(false);
            auto type = try_parse_type();
            if (type && at_ident() && at_op(":", 1)) {
                loop.kind = stmt::LoopKind::ForEach;
                std::string name(advance().text);
                advance();
                loop.init.push_back(make_stmt(span_from(header_begin), stmt::LocalVarDecl{name, *type, nullptr}));
                loop.condition = parse_expression();
            } else {
                pos_ = save;
                parse_modifiers(false);
                if (!at_op(";") && !try_parse_local_var_decl(loop.init, header_begin, false)) {
                    pos_ = save;
                    do {
                        auto e_begin = here();
                        auto e = parse_expression();
                        loop.init.push_back(make_stmt(span_from(e_begin), stmt::ExpressionStatement{std::move(e)}));
                    } while (accept_op(","));
                }
                expect_op(";");
                if (!at_op(";")) loop.condition = parse_expression();
                expect_op(";");
                while (!at_op(")")) {
                    loop.update.push_back(parse_expression());
                    if (!accept_op(",")) break;
                }
            }
            expect_op(")");
        } catch (const ParseFailure& failure) {
            diagnose(failure.span, "unparsed for header: " + failure.message);
            loop.init.clear();
            loop.update.clear();
            if (close != std::string::npos) {
                loop.condition = opaque_expr(start, close);
                pos_ = close + 1;
            } else {
                pos_ = start;
                while (!at_end() && !at_op("{") && !at_op("}")) advance();
                loop.condition = opaque_expr(start, pos_);
            }
        }
    }
    loop.body = parse_statement_recovering();
    return make_stmt(span_from(begin), std::move(loop));
}

StmtPtr Parser::parse_try() {
    auto begin = here();
    advance();
    stmt::Try node;
    if (accept_op("(")) {
        while (!at_end() && !at_op(")")) {
            auto r_begin = here();
            auto start = pos_;
            try {
                parse_modifiers(false);
                if (!try_parse_local_var_decl(node.resources, r_begin, false)) {
                    auto e = parse_expression();
                    node.resources.push_back(make_stmt(span_from(r_begin), stmt::ExpressionStatement{std::move(e)}));
                }
            } catch (const ParseFailure& failure) {
                diagnose(failure.span, "unparsed resource: " + failure.message);
                pos_ = start;
                while (!at_end() && !at_op(";") && !at_op(")") && !at_op("{")) advance();
            }
            if (!accept_op(";")) break;
        }
        if (!accept_op(")")) diagnose(peek().span, "expected ')' after resources");
    }
    node.body = parse_statement_recovering();
    while (at_kw("catch")) {
        auto c_begin = here();
        advance();
        stmt::CatchClause clause;
        if (accept_op("(")) {
            auto start = pos_;
            try {
                parse_modifiers(false);
                clause.types.push_back(parse_type());
                while (accept_op("|")) clause.types.push_back(parse_type());
                clause.name = expect_ident();
                expect_op(")");
            } catch (const ParseFailure& failure) {
                diagnose(failure.span, "unparsed catch parameter: " + failure.message);
                pos_ = start;
                while (!at_end() && !at_op(")") && !at_op("{")) advance();
                accept_op(")");
            }
        }
        clause.body = parse_statement_recovering();
        clause.span = span_from(c_begin);
        node.catches.push_back(std::move(clause));
    }
    if (accept_kw("finally")) node.finally_block = parse_statement_recovering();
    return make_stmt(span_from(begin), std::move(node));
}

// ===== expressions ============================================================

ExprPtr Parser::parse_expression() { return parse_assignment(); }

bool Parser::lambda_ahead() const {
    if (no_lambda_) return false;
    if (at_ident() && at_op("->", 1)) return true;
    if (at_op("(")) {
        auto close = find_closing(pos_, "(", ")", false);
        return close != std::string::npos && close + 1 < toks_.size() && toks_[close + 1].op("->");
    }
    return false;
}

Parser::OperatorMatch Parser::peek_operator() const {
    const Token& t = peek();
    if (t.keyword("instanceof")) return {"instanceof", 1, 7};
    if (t.kind != TokenKind::Operator) return {};
    if (t.text == ">") {
        // Rejoin the split closers: > >> >>> >= >>= >>>=
        std::string text = ">";
        std::size_t n = 1;
        while (n < 3 && peek(n).op(">") && adjacent(n - 1)) {
            text += ">";
            ++n;
        }
        if (peek(n).op("=") && adjacent(n - 1)) return {text + "=", n + 1, text == ">" ? 7 : -1};
        return {text, n, text == ">" ? 7 : 8};
    }
    static const std::array<std::pair<std::string_view, int>, 17> kBinary = {{
        {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6}, {"!=", 6}, {"<", 7}, {"<=", 7},
        {"<<", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}, {"?", 0},  {":", -1},
    }};
    for (const auto& [op, prec] : kBinary) {
        if (t.text == op) return {std::string(op), 1, prec};
    }
    return {std::string(t.text), 1, -1};
}

ExprPtr Parser::parse_assignment() {
    DepthGuard guard(*this);
    if (lambda_ahead()) return parse_lambda();
    auto begin = here();
    auto target = parse_ternary();
    auto op = peek_operator();
    static const std::array<std::string_view, 12> kAssign = {"=",  "+=", "-=", "*=", "/=",  "%=",
                                                             "&=", "|=", "^=", "<<=", ">>=", ">>>="};
    if (std::find(kAssign.begin(), kAssign.end(), op.text) != kAssign.end()) {
        for (std::size_t i = 0; i < op.tokens; ++i) advance();
        auto value = parse_assignment();
        return make_expr(span_from(begin), expr::Assignment{op.text, std::move(target), std::move(value)});
    }
    return target;
}

ExprPtr Parser::parse_ternary() {
    auto begin = here();
    auto condition = parse_binary(1);
    if (!at_op("?")) return condition;
    advance();
    auto then_value = lambda_ahead() ? parse_lambda() : parse_ternary();
    expect_op(":");
    auto else_value = lambda_ahead() ? parse_lambda() : parse_ternary();
    return make_expr(span_from(begin),
                     expr::Conditional{std::move(condition), std::move(then_value), std::move(else_value)});
}

ExprPtr Parser::parse_binary(int min_precedence) {
    DepthGuard guard(*this);
    auto begin = here();
    auto lhs = parse_unary();
    while (true) {
        auto op = peek_operator();
        if (op.precedence < 1 || op.precedence < min_precedence) break;
        for (std::size_t i = 0; i < op.tokens; ++i) advance();
        if (op.text == "instanceof") {
            accept_kw("final");
            expr::InstanceOf node;
            node.operand = std::move(lhs);
            node.type_name = parse_type();
            if (at_ident() && !at_ident("when")) node.binding = std::string(advance().text);
            lhs = make_expr(span_from(begin), std::move(node));
            continue;
        }
        auto rhs = parse_binary(op.precedence + 1);
        lhs = make_expr(span_from(begin), expr::BinaryOp{op.text, std::move(lhs), std::move(rhs)});
    }
    return lhs;
}

bool Parser::cast_operand_ahead(std::size_t ahead) const {
    const Token& t = peek(ahead);
    switch (t.kind) {
    case TokenKind::Identifier:
    case TokenKind::IntLiteral:
    case TokenKind::FloatLiteral:
    case TokenKind::CharLiteral:
    case TokenKind::StringLiteral: return true;
    case TokenKind::Keyword:
        return t.text == "this" || t.text == "super" || t.text == "new" || t.text == "true" || t.text == "false" ||
               t.text == "null" || t.text == "switch" || is_primitive(t);
    case TokenKind::Operator: return t.text == "(" || t.text == "!" || t.text == "~";
    default: return false;
    }
}

ExprPtr Parser::parse_unary() {
    DepthGuard guard(*this);
    auto begin = here();
    if (at_op("+") || at_op("-") || at_op("!") || at_op("~") || at_op("++") || at_op("--")) {
        std::string op(advance().text);
        auto operand = parse_unary();
        return make_expr(span_from(begin), expr::UnaryOp{op, std::move(operand), false});
    }
    if (at_op("(") && !lambda_ahead()) {
        auto save = pos_;
        advance();
        bool primitive = is_primitive(peek());
        if (auto type = try_parse_type()) {
            while (accept_op("&")) {
                if (!try_parse_type()) break;
            }
            if (at_op(")") && (primitive || cast_operand_ahead(1))) {
                advance();
                ExprPtr operand;
                if (lambda_ahead()) {
                    operand = parse_lambda();
                } else {
                    operand = parse_unary();
                }
                return make_expr(span_from(begin), expr::Cast{*type, std::move(operand)});
            }
        }
        pos_ = save;
    }
    return parse_postfix(parse_primary());
}

std::vector<ExprPtr> Parser::parse_arguments(std::string_view call_name) {
    std::vector<ExprPtr> args;
    expect_op("(");
    if (!at_op(")")) {
        do {
            args.push_back(parse_expression());
        } while (accept_op(","));
    }
    expect_op(")");

    auto binding = options_.lambda_bindings.find(call_name);
    if (binding == options_.lambda_bindings.end()) return args;
    for (auto& arg : args) {
        auto* lambda = std::get_if<expr::Lambda>(&arg->node);
        if (lambda == nullptr || !lambda->method) continue;
        auto type = std::make_unique<TypeDeclaration>();
        type->kind = TypeKind::Anonymous;
        type->name = anonymous_name(true, &type->qualified_name);
        type->implements_names.push_back(binding->second.interface_name);
        type->span = arg->span;
        auto& method = *lambda->method;
        method.name = binding->second.method_name;
        method.return_type = "void";
        for (auto& p : method.parameters) {
            if (p.type_name.empty()) p.type_name = binding->second.event_type;
        }
        type->methods.push_back(std::move(method));
        lambda->method.reset();
        lambda->listener = std::move(type);
    }
    return args;
}

ExprPtr Parser::parse_lambda() {
    DepthGuard guard(*this);
    auto begin = here();
    std::vector<Parameter> params;
    if (at_ident()) {
        params.push_back(Parameter{std::string(advance().text), {}});
    } else {
        expect_op("(");
        while (!at_op(")")) {
            parse_modifiers(false);
            Parameter p;
            if (at_ident() && (at_op(",", 1) || at_op(")", 1))) {
                p.name = std::string(advance().text);
            } else {
                p.type_name = parse_type();
                if (accept_op("...")) p.type_name += "[]";
                p.name = expect_ident();
            }
            params.push_back(std::move(p));
            if (!accept_op(",")) break;
        }
        expect_op(")");
    }
    expect_op("->");
    auto method = std::make_unique<MethodDeclaration>();
    method->name = "lambda";
    method->parameters = params;
    method->is_lambda = true;
    if (at_op("{")) {
        method->body = parse_block();
    } else {
        bool saved = no_lambda_;
        no_lambda_ = false;
        auto value = parse_expression();
        no_lambda_ = saved;
        auto span = value->span;
        stmt::Block block;
        block.statements.push_back(make_stmt(span, stmt::ExpressionStatement{std::move(value)}));
        method->body = make_stmt(span, std::move(block));
    }
    auto span = span_from(begin);
    method->span = span;
    return make_expr(span, expr::Lambda{std::move(params), std::move(method), nullptr});
}

ExprPtr Parser::parse_variable_initializer() {
    if (at_op("{")) return parse_array_initializer();
    return parse_expression();
}

ExprPtr Parser::parse_array_initializer() {
    DepthGuard guard(*this);
    auto begin = here();
    expect_op("{");
    expr::ArrayInit init;
    while (!at_op("}")) {
        init.elements.push_back(parse_variable_initializer());
        if (!accept_op(",")) break;
    }
    expect_op("}");
    return make_expr(span_from(begin), std::move(init));
}

ExprPtr Parser::parse_creator() {
    auto begin = here();
    advance(); // new
    if (at_op("<") && !skip_type_arguments()) fail("malformed type arguments");
    expr::New node;
    node.type_name = parse_type_base();
    if (at_op("[")) {
        node.is_array = true;
        while (at_op("[")) {
            advance();
            if (!at_op("]")) node.args.push_back(parse_expression());
            expect_op("]");
            node.type_name += "[]";
        }
        if (at_op("{")) node.args.push_back(parse_array_initializer());
        return make_expr(span_from(begin), std::move(node));
    }
    if (!at_op("(")) fail("expected '(' or '[' after new");
    node.args = parse_arguments({});
    if (at_op("{")) {
        auto body = std::make_unique<TypeDeclaration>();
        body->kind = TypeKind::Anonymous;
        body->name = anonymous_name(false, &body->qualified_name);
        body->extends_names.push_back(node.type_name);
        frames_.push_back(TypeFrame{body->name, body->qualified_name});
        try {
            parse_class_body(*body, false);
        } catch (...) {
            frames_.pop_back();
            throw;
        }
        frames_.pop_back();
        body->span = span_from(begin);
        node.body = std::move(body);
    }
    return make_expr(span_from(begin), std::move(node));
}

ExprPtr Parser::parse_primary() {
    DepthGuard guard(*this);
    auto begin = here();
    const Token& t = peek();
    switch (t.kind) {
    case TokenKind::IntLiteral: advance(); return make_expr(span_from(begin), expr::Literal{expr::LiteralKind::Int, std::string(t.text)});
    case TokenKind::FloatLiteral: advance(); return make_expr(span_from(begin), expr::Literal{expr::LiteralKind::Float, std::string(t.text)});
    case TokenKind::CharLiteral: advance(); return make_expr(span_from(begin), expr::Literal{expr::LiteralKind::Char, std::string(t.text)});
    case TokenKind::StringLiteral: advance(); return make_expr(span_from(begin), expr::Literal{expr::LiteralKind::String, std::string(t.text)});
    case TokenKind::Identifier: {
        std::string name(advance().text);
        if (at_op("(")) {
            auto args = parse_arguments(name);
            return make_expr(span_from(begin), expr::MethodCall{nullptr, name, std::move(args)});
        }
        return make_expr(span_from(begin), expr::Identifier{name});
    }
    case TokenKind::Keyword: {
        if (t.text == "true" || t.text == "false") {
            advance();
            return make_expr(span_from(begin), expr::Literal{expr::LiteralKind::Boolean, std::string(t.text)});
        }
        if (t.text == "null") {
            advance();
            return make_expr(span_from(begin), expr::Literal{expr::LiteralKind::Null, "null"});
        }
        if (t.text == "this" || t.text == "super") {
            std::string name(advance().text);
            if (at_op("(")) {
                auto args = parse_arguments(name);
                return make_expr(span_from(begin), expr::MethodCall{nullptr, name, std::move(args)});
            }
            return make_expr(span_from(begin), expr::Identifier{name});
        }
        if (t.text == "new") return parse_creator();
        if (t.text == "switch") {
            auto sw = parse_switch();
            auto span = sw->span;
            return make_expr(span, expr::SwitchExpr{std::move(sw)});
        }
        if (is_primitive(t)) {
            std::string type = parse_type();
            if (accept_op("::")) {
                if (!accept_kw("new")) expect_ident();
                auto span = span_from(begin);
                return make_expr(span, expr::Opaque{std::string(unit_.slice(span))});
            }
            expect_op(".");
            if (!accept_kw("class")) fail("expected 'class'");
            auto type_span = span_from(begin);
            return make_expr(type_span, expr::FieldAccess{make_expr(type_span, expr::Identifier{type}), "class"});
        }
        break;
    }
    case TokenKind::Operator: {
        if (t.text == "(") {
            advance();
            auto inner = parse_expression();
            expect_op(")");
            inner->span = span_from(begin);
            return inner;
        }
        if (t.text == "{") return parse_array_initializer();
        if (t.text == "<") {
            if (!skip_type_arguments()) fail("malformed type arguments");
            return parse_primary();
        }
        break;
    }
    default: break;
    }
    fail("expected expression");
}

ExprPtr Parser::parse_postfix(ExprPtr base) {
    auto begin = base->span.begin;
    while (true) {
        if (at_op(".")) {
            advance();
            if (at_op("<") && !skip_type_arguments()) fail("malformed type arguments");
            if (at_ident()) {
                std::string name(advance().text);
                if (at_op("(")) {
                    auto args = parse_arguments(name);
                    base = make_expr(span_from(begin), expr::MethodCall{std::move(base), name, std::move(args)});
                } else {
                    base = make_expr(span_from(begin), expr::FieldAccess{std::move(base), name});
                }
            } else if (at_kw("new")) {
                auto inner = parse_creator();
                inner->span = span_from(begin);
                base = std::move(inner);
            } else if (at_kw("this") || at_kw("class") || at_kw("super")) {
                std::string name(advance().text);
                if (at_op("(")) {
                    auto args = parse_arguments(name);
                    base = make_expr(span_from(begin), expr::MethodCall{std::move(base), name, std::move(args)});
                } else {
                    base = make_expr(span_from(begin), expr::FieldAccess{std::move(base), name});
                }
            } else {
                fail("expected member name after '.'");
            }
        } else if (at_op("[")) {
            if (at_op("]", 1)) {
                // array type: Foo[].class or Foo[]::new
                while (at_op("[") && at_op("]", 1)) {
                    advance();
                    advance();
                }
                if (accept_op("::")) {
                    if (!accept_kw("new")) expect_ident();
                    auto span = span_from(begin);
                    base = make_expr(span, expr::Opaque{std::string(unit_.slice(span))});
                } else {
                    expect_op(".");
                    if (!accept_kw("class")) fail("expected 'class'");
                    base = make_expr(span_from(begin), expr::FieldAccess{std::move(base), "class"});
                }
                continue;
            }
            advance();
            auto index = parse_expression();
            expect_op("]");
            base = make_expr(span_from(begin), expr::ArrayAccess{std::move(base), std::move(index)});
        } else if (at_op("::")) {
            advance();
            if (at_op("<") && !skip_type_arguments()) fail("malformed type arguments");
            if (!accept_kw("new")) expect_ident();
            auto span = span_from(begin);
            base = make_expr(span, expr::Opaque{std::string(unit_.slice(span))});
        } else if (at_op("++") || at_op("--")) {
            std::string op(advance().text);
            base = make_expr(span_from(begin), expr::UnaryOp{op, std::move(base), true});
        } else {
            return base;
        }
    }
}

} // namespace

CompilationUnit parse_unit(std::string file, std::string_view text, const ParseOptions& options) {
    if (auto bad = find_invalid_utf8(text); bad != std::string_view::npos) {
        throw EncodingError(file, static_cast<std::uint32_t>(bad));
    }
    CompilationUnit unit;
    unit.file = std::move(file);
    unit.text = std::string(text);
    auto lexed = lex_java(unit.text);
    unit.parse_diagnostics = std::move(lexed.diagnostics);
    Parser parser(unit, std::move(lexed.tokens), options);
    parser.parse_compilation_unit();
    std::stable_sort(unit.parse_diagnostics.begin(), unit.parse_diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.span.begin < b.span.begin; });
    return unit;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path.string());
    return buffer.str();
}

CompilationUnit parse_file(const std::filesystem::path& path, std::string display_name, const ParseOptions& options) {
    auto text = read_text_file(path);
    return parse_unit(std::move(display_name), text, options);
}

} // namespace blobscan
