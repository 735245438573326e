#include "darboux/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace darboux {

namespace {

const std::map<std::string, Fn, std::less<>>& function_table() {
    static const std::map<std::string, Fn, std::less<>> table = {
        {"sin", Fn::sin},   {"cos", Fn::cos},  {"sinh", Fn::sinh}, {"cosh", Fn::cosh},
        {"exp", Fn::exp},   {"sqrt", Fn::sqrt}, {"ln", Fn::ln},     {"atan", Fn::atan},
    };
    return table;
}

const char* function_name(Fn fn) {
    switch (fn) {
        case Fn::sin: return "sin";
        case Fn::cos: return "cos";
        case Fn::sinh: return "sinh";
        case Fn::cosh: return "cosh";
        case Fn::exp: return "exp";
        case Fn::sqrt: return "sqrt";
        case Fn::ln: return "ln";
        case Fn::atan: return "atan";
    }
    return "?";
}

ExprNodePtr make_number(double value) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::number;
    n->number = value;
    return n;
}

ExprNodePtr make_variable(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::variable;
    n->name = std::move(name);
    return n;
}

ExprNodePtr make_negate(ExprNodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::negate;
    n->a = std::move(a);
    return n;
}

ExprNodePtr make_binary(BinOp op, ExprNodePtr a, ExprNodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

ExprNodePtr make_call(Fn fn, ExprNodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::call;
    n->fn = fn;
    n->a = std::move(a);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprNodePtr parse() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprNodePtr parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (consume('+')) lhs = make_binary(BinOp::add, lhs, parse_term());
            else if (consume('-')) lhs = make_binary(BinOp::sub, lhs, parse_term());
            else return lhs;
        }
    }

    ExprNodePtr parse_term() {
        auto lhs = parse_factor();
        for (;;) {
            if (consume('*')) lhs = make_binary(BinOp::mul, lhs, parse_factor());
            else if (consume('/')) lhs = make_binary(BinOp::div, lhs, parse_factor());
            else return lhs;
        }
    }

    ExprNodePtr parse_factor() {
        if (consume('-')) return make_negate(parse_power());
        return parse_power();
    }

    ExprNodePtr parse_power() {
        auto base = parse_atom();
        if (consume('^')) return make_binary(BinOp::pow, base, parse_factor());
        return base;
    }

    ExprNodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprNodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t e = pos_ + 1;
            if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
            if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
                pos_ = e;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        const std::string token(text_.substr(start, pos_ - start));
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0') {
            pos_ = start;
            fail("malformed number");
        }
        return make_number(value);
    }

    ExprNodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (peek_is('(')) {
            auto it = function_table().find(name);
            if (it == function_table().end()) {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            ++pos_; // '('
            auto arg = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return make_call(it->second, arg);
        }
        if (name == "pi") return make_number(M_PI);
        return make_variable(std::move(name));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void print_node(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case ExprNode::Kind::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            out += buf;
            return;
        }
        case ExprNode::Kind::variable:
            out += n.name;
            return;
        case ExprNode::Kind::negate:
            out += "(-";
            print_node(*n.a, out);
            out += ')';
            return;
        case ExprNode::Kind::call:
            out += function_name(n.fn);
            out += '(';
            print_node(*n.a, out);
            out += ')';
            return;
        case ExprNode::Kind::binary: {
            static const char* symbol[] = {"+", "-", "*", "/", "^"};
            out += '(';
            print_node(*n.a, out);
            out += symbol[static_cast<int>(n.op)];
            print_node(*n.b, out);
            out += ')';
            return;
        }
    }
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::number: return a.number == b.number;
        case ExprNode::Kind::variable: return a.name == b.name;
        case ExprNode::Kind::negate: return equal_nodes(*a.a, *b.a);
        case ExprNode::Kind::call: return a.fn == b.fn && equal_nodes(*a.a, *b.a);
        case ExprNode::Kind::binary:
            return a.op == b.op && equal_nodes(*a.a, *b.a) && equal_nodes(*a.b, *b.b);
    }
    return false;
}

Jet3 apply_function(Fn fn, const Jet3& a) {
    switch (fn) {
        case Fn::sin: return sin(a);
        case Fn::cos: return cos(a);
        case Fn::sinh: return sinh(a);
        case Fn::cosh: return cosh(a);
        case Fn::exp: return exp(a);
        case Fn::sqrt: return sqrt(a);
        case Fn::ln: return log(a);
        case Fn::atan: return atan(a);
    }
    throw PreconditionError("unreachable function kind");
}

bool is_constant_jet(const Jet3& j) {
    for (int k = 1; k < Jet3::coeff_count; ++k)
        if (j.coeff_at(k) != 0.0) return false;
    return true;
}

std::optional<long> integral_exponent(double r) {
    if (std::abs(r) <= 64.0 && r == std::floor(r)) return static_cast<long>(r);
    return std::nullopt;
}

Jet3 eval_node(const ExprNode& n, double u0, double v0, const ParamMap& params) {
    switch (n.kind) {
        case ExprNode::Kind::number:
            return Jet3::constant(n.number, u0, v0);
        case ExprNode::Kind::variable: {
            if (n.name == "u") return Jet3::variable_u(u0, v0);
            if (n.name == "v") return Jet3::variable_v(u0, v0);
            auto it = params.find(n.name);
            if (it == params.end())
                throw PreconditionError("unbound parameter '" + n.name + "'");
            return Jet3::constant(it->second, u0, v0);
        }
        case ExprNode::Kind::negate:
            return -eval_node(*n.a, u0, v0, params);
        case ExprNode::Kind::call:
            return apply_function(n.fn, eval_node(*n.a, u0, v0, params));
        case ExprNode::Kind::binary: {
            const Jet3 lhs = eval_node(*n.a, u0, v0, params);
            if (n.op == BinOp::pow) {
                const Jet3 rhs = eval_node(*n.b, u0, v0, params);
                if (!is_constant_jet(rhs)) {
                    // General a^b = exp(b*ln a); needs a positive base.
                    return exp(rhs * log(lhs));
                }
                if (auto k = integral_exponent(rhs.value())) return pow_int(lhs, *k);
                return pow(lhs, rhs.value());
            }
            const Jet3 rhs = eval_node(*n.b, u0, v0, params);
            switch (n.op) {
                case BinOp::add: return lhs + rhs;
                case BinOp::sub: return lhs - rhs;
                case BinOp::mul: return lhs * rhs;
                case BinOp::div: return lhs / rhs;
                case BinOp::pow: break;
            }
            throw PreconditionError("unreachable operator kind");
        }
    }
    throw PreconditionError("unreachable node kind");
}

} // namespace

const ExprNode& Expr::root() const {
    if (!root_) throw PreconditionError("empty expression");
    return *root_;
}

Expr parse_expression(std::string_view text) { return Expr(Parser(text).parse()); }

std::string to_string(const Expr& e) {
    std::string out;
    print_node(e.root(), out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return equal_nodes(a.root(), b.root());
}

Jet3 eval_jet(const Expr& e, double u0, double v0, const ParamMap& params) {
    return eval_node(e.root(), u0, v0, params);
}

double eval_value(const Expr& e, double u0, double v0, const ParamMap& params) {
    return eval_jet(e, u0, v0, params).value();
}

} // namespace darboux
