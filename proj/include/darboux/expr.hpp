#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "darboux/jet.hpp"

namespace darboux {

using ParamMap = std::map<std::string, double>;

enum class BinOp { add, sub, mul, div, pow };
enum class Fn { sin, cos, sinh, cosh, exp, sqrt, ln, atan };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { number, variable, negate, binary, call };

    Kind kind;
    double number = 0.0;   // Kind::number
    std::string name;      // Kind::variable: "u", "v", or a declared parameter
    BinOp op = BinOp::add; // Kind::binary
    Fn fn = Fn::sin;       // Kind::call
    ExprNodePtr a, b;      // operands (b unused for negate/call)
};

// Immutable expression tree; cheap to copy and share.
class Expr {
public:
    Expr() = default;
    explicit Expr(ExprNodePtr root) : root_(std::move(root)) {}

    bool empty() const { return root_ == nullptr; }
    const ExprNode& root() const;
    const ExprNodePtr& node() const { return root_; }

private:
    ExprNodePtr root_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')? power
//   power  := atom ('^' factor)?
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
// '^' is right-associative; unary minus binds below '^' and above '*'.
// Identifiers: u, v, declared parameter names, the function names, and the
// constant `pi` (folded to a number at parse time).
// Throws ParseError with the byte offset of the failure.
Expr parse_expression(std::string_view text);

// Fully parenthesized canonical form; parse(to_string(e)) is structurally
// identical to e.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

// Evaluate as a degree-3 jet at (u0, v0).  Parameters enter as constants;
// an identifier that is neither u, v, nor a bound parameter is an error.
Jet3 eval_jet(const Expr& e, double u0, double v0, const ParamMap& params = {});

// Convenience: plain value of the expression at a point.
double eval_value(const Expr& e, double u0, double v0, const ParamMap& params = {});

} // namespace darboux
