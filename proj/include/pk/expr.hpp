#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "pk/errors.hpp"
#include "pk/jet.hpp"
#include "pk/types.hpp"

namespace pk {

enum class Var { X, Y };

enum class UnaryOp { Neg, Sin, Cos, Sinh, Cosh, Tanh, Exp, Ln, Sqrt };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Immutable scalar field on the (x, y) chart, held as a shared expression
// tree. Every evaluation is read-only, so a single Expr may be used from
// any number of threads.
class Expr {
  public:
    enum class Kind { Constant, Variable, Unary, Binary };

    Expr() : Expr(constant(0.0)) {}

    static Expr constant(double value);
    static Expr variable(Var v);
    static Expr unary(UnaryOp op, Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    Kind kind() const;
    double constant_value() const;  // Kind::Constant only
    Var var() const;                // Kind::Variable only
    UnaryOp unary_op() const;       // Kind::Unary only
    BinaryOp binary_op() const;     // Kind::Binary only
    Expr operand() const;           // Kind::Unary only
    Expr lhs() const;               // Kind::Binary only
    Expr rhs() const;               // Kind::Binary only

    // Re-parseable text form; parse_expr(str()) rebuilds an expression
    // that evaluates bit-identically at every point.
    std::string str() const;

    struct Node;
    const Node& root() const { return *node_; }

  private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    friend Expr parse_expr(std::string_view text);

    std::shared_ptr<const Node> node_;
};

// Parses the expression grammar documented in the README. Throws
// SyntaxError with the byte offset of the failure; unknown identifiers
// and unknown function names are reported as such.
Expr parse_expr(std::string_view text);

// IEEE double evaluation of the tree. Domain failures (division by zero,
// ln <= 0, sqrt < 0, pow outside its contract) throw EvalDomainError
// naming the offending node.
double eval_expr(const Expr& e, const Point2& p);

// Exact value/gradient/Hessian by second-order forward-mode arithmetic.
Jet2 jet_eval(const Expr& e, const Point2& p);

// Central-difference jet with explicit step h (gradient and Hessian both
// O(h^2)). Test oracle for jet_eval; not used by any dynamics path.
Jet2 fd_jet(const Expr& e, const Point2& p, double h);

// Same with the default per-coordinate step 1e-5 * max(1, |coordinate|).
Jet2 fd_jet(const Expr& e, const Point2& p);

}  // namespace pk
