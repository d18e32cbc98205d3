#include "pk/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace pk {

struct Expr::Node {
    Kind kind;
    double value = 0.0;  // Constant
    Var var = Var::X;    // Variable
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    std::shared_ptr<const Node> a;  // unary operand / binary lhs
    std::shared_ptr<const Node> b;  // binary rhs
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

// Precedence levels used for minimal parenthesisation. Matches the parser:
// +,- < *,/ < unary minus < ^ < atoms.
enum : int { LV_SUM = 1, LV_PROD = 2, LV_NEG = 3, LV_POW = 4, LV_ATOM = 5 };

const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Sinh: return "sinh";
        case UnaryOp::Cosh: return "cosh";
        case UnaryOp::Tanh: return "tanh";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Ln: return "ln";
        case UnaryOp::Sqrt: return "sqrt";
    }
    return "?";
}

int node_level(const Node& n) {
    switch (n.kind) {
        case Expr::Kind::Constant:
            // A negative literal prints with a leading '-', so it binds
            // like a negation when placed next to other operators.
            return std::signbit(n.value) ? LV_NEG : LV_ATOM;
        case Expr::Kind::Variable:
            return LV_ATOM;
        case Expr::Kind::Unary:
            return n.uop == UnaryOp::Neg ? LV_NEG : LV_ATOM;
        case Expr::Kind::Binary:
            switch (n.bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return LV_SUM;
                case BinaryOp::Mul:
                case BinaryOp::Div: return LV_PROD;
                case BinaryOp::Pow: return LV_POW;
            }
    }
    return LV_ATOM;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& c, int min_level, std::string& out) {
    if (node_level(c) < min_level) {
        out += '(';
        print_node(c, out);
        out += ')';
    } else {
        print_node(c, out);
    }
}

void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
        case Expr::Kind::Constant:
            out += format_double(n.value);
            return;
        case Expr::Kind::Variable:
            out += (n.var == Var::X) ? 'x' : 'y';
            return;
        case Expr::Kind::Unary:
            if (n.uop == UnaryOp::Neg) {
                out += '-';
                print_child(*n.a, LV_NEG, out);
            } else {
                out += unary_name(n.uop);
                out += '(';
                print_node(*n.a, out);
                out += ')';
            }
            return;
        case Expr::Kind::Binary: {
            const int lv = node_level(n);
            switch (n.bop) {
                case BinaryOp::Add:
                case BinaryOp::Sub:
                    print_child(*n.a, lv, out);
                    out += (n.bop == BinaryOp::Add) ? '+' : '-';
                    // a-(b+c) != a-b+c: the right side of a left-associative
                    // operator needs parens at equal level.
                    print_child(*n.b, lv + 1, out);
                    return;
                case BinaryOp::Mul:
                case BinaryOp::Div:
                    print_child(*n.a, lv, out);
                    out += (n.bop == BinaryOp::Mul) ? '*' : '/';
                    print_child(*n.b, lv + 1, out);
                    return;
                case BinaryOp::Pow:
                    print_child(*n.a, LV_ATOM, out);
                    out += '^';
                    print_child(*n.b, LV_NEG, out);
                    return;
            }
        }
    }
}

std::string to_text(const Node& n) {
    std::string out;
    print_node(n, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------
//
//   expr  := term (("+"|"-") term)*
//   term  := unary (("*"|"/") unary)*
//   unary := "-" unary | power
//   power := atom ("^" unary)?
//   atom  := NUMBER | "x" | "y" | FUNC "(" expr ")" | "(" expr ")"
//
// '^' is right-associative and binds tighter than unary minus, so
// "-x^2" parses as -(x^2) and "x^-y" as x^(-y).

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                     text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr parse_expr_rule() {
        NodePtr lhs = parse_term();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos;
            NodePtr rhs = parse_term();
            lhs = make_binary(c == '+' ? BinaryOp::Add : BinaryOp::Sub, lhs, rhs);
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos;
            NodePtr rhs = parse_unary();
            lhs = make_binary(c == '*' ? BinaryOp::Mul : BinaryOp::Div, lhs, rhs);
        }
    }

    NodePtr parse_unary() {
        if (consume('-')) {
            NodePtr operand = parse_unary();
            return make_unary(UnaryOp::Neg, operand);
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (consume('^')) {
            NodePtr expo = parse_unary();
            return make_binary(BinaryOp::Pow, base, expo);
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= text.size())
            throw SyntaxError("expected a number, variable, function or '('", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr_rule();
            if (!consume(')')) throw SyntaxError("expected ')'", pos);
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if (c >= 'a' && c <= 'z') return parse_identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
    }

    NodePtr parse_number() {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        if (pos == start || (pos == start + 1 && text[start] == '.'))
            throw SyntaxError("malformed number", start);
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            } else {
                pos = mark;  // "2e" is the number 2 followed by junk, not an exponent
            }
        }
        double value = 0.0;
        auto res = std::from_chars(text.data() + start, text.data() + pos, value);
        if (res.ec != std::errc{} || res.ptr != text.data() + pos)
            throw SyntaxError("malformed number", start);
        auto n = std::make_shared<Node>();
        n->kind = Expr::Kind::Constant;
        n->value = value;
        return n;
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] >= 'a' && text[pos] <= 'z') ++pos;
        std::string_view name = text.substr(start, pos - start);
        const bool call = peek() == '(';
        if (call) {
            UnaryOp op;
            if (name == "sin") op = UnaryOp::Sin;
            else if (name == "cos") op = UnaryOp::Cos;
            else if (name == "sinh") op = UnaryOp::Sinh;
            else if (name == "cosh") op = UnaryOp::Cosh;
            else if (name == "tanh") op = UnaryOp::Tanh;
            else if (name == "exp") op = UnaryOp::Exp;
            else if (name == "ln") op = UnaryOp::Ln;
            else if (name == "sqrt") op = UnaryOp::Sqrt;
            else
                throw SyntaxError("unknown function name '" + std::string(name) + "'", start);
            ++pos;  // '('
            NodePtr arg = parse_expr_rule();
            if (!consume(')')) throw SyntaxError("expected ')'", pos);
            return make_unary(op, arg);
        }
        if (name == "x" || name == "y") {
            auto n = std::make_shared<Node>();
            n->kind = Expr::Kind::Variable;
            n->var = (name == "x") ? Var::X : Var::Y;
            return n;
        }
        throw SyntaxError("unknown identifier '" + std::string(name) + "'", start);
    }

    static NodePtr make_unary(UnaryOp op, NodePtr operand) {
        auto n = std::make_shared<Node>();
        n->kind = Expr::Kind::Unary;
        n->uop = op;
        n->a = std::move(operand);
        return n;
    }

    static NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->kind = Expr::Kind::Binary;
        n->bop = op;
        n->a = std::move(lhs);
        n->b = std::move(rhs);
        return n;
    }
};

// ---------------------------------------------------------------------------
// Evaluation, shared between the plain-double and jet paths
// ---------------------------------------------------------------------------

inline double value_of(double v) { return v; }
inline double value_of(const Jet2& j) { return j.v; }

inline bool is_flat(double) { return true; }
inline bool is_flat(const Jet2& j) { return j.is_flat(); }

template <class T>
T make_const(double c) {
    if constexpr (std::is_same_v<T, Jet2>)
        return Jet2::constant(c);
    else
        return c;
}

inline double call1(UnaryOp op, double u) {
    switch (op) {
        case UnaryOp::Neg: return -u;
        case UnaryOp::Sin: return std::sin(u);
        case UnaryOp::Cos: return std::cos(u);
        case UnaryOp::Sinh: return std::sinh(u);
        case UnaryOp::Cosh: return std::cosh(u);
        case UnaryOp::Tanh: return std::tanh(u);
        case UnaryOp::Exp: return std::exp(u);
        case UnaryOp::Ln: return std::log(u);
        case UnaryOp::Sqrt: return std::sqrt(u);
    }
    return 0.0;
}

inline Jet2 call1(UnaryOp op, const Jet2& u) {
    switch (op) {
        case UnaryOp::Neg: return -u;
        case UnaryOp::Sin: return jet_sin(u);
        case UnaryOp::Cos: return jet_cos(u);
        case UnaryOp::Sinh: return jet_sinh(u);
        case UnaryOp::Cosh: return jet_cosh(u);
        case UnaryOp::Tanh: return jet_tanh(u);
        case UnaryOp::Exp: return jet_exp(u);
        case UnaryOp::Ln: return jet_ln(u);
        case UnaryOp::Sqrt: return jet_sqrt(u);
    }
    return Jet2{};
}

inline double call_exp_ln(double b, double e) { return std::exp(e * std::log(b)); }
inline Jet2 call_exp_ln(const Jet2& b, const Jet2& e) { return jet_exp(e * jet_ln(b)); }

[[noreturn]] void domain_error(const char* what, const Node& n) {
    throw EvalDomainError(std::string(what) + " in '" + to_text(n) + "'");
}

// Integer powers by binary powering, so negative bases stay legal. The
// same multiplication order is used for doubles and jets.
template <class T>
T pow_integer(T base, unsigned long long m) {
    T result = make_const<T>(1.0);
    while (m) {
        if (m & 1ULL) result = result * base;
        m >>= 1;
        if (m) base = base * base;
    }
    return result;
}

template <class T>
T eval_rec(const Node& n, const T& x, const T& y) {
    constexpr bool kJet = std::is_same_v<T, Jet2>;
    switch (n.kind) {
        case Expr::Kind::Constant:
            return make_const<T>(n.value);
        case Expr::Kind::Variable:
            return n.var == Var::X ? x : y;
        case Expr::Kind::Unary: {
            T u = eval_rec(*n.a, x, y);
            const double uv = value_of(u);
            if (n.uop == UnaryOp::Ln && uv <= 0.0) domain_error("ln of non-positive argument", n);
            if (n.uop == UnaryOp::Sqrt) {
                if (uv < 0.0) domain_error("sqrt of negative argument", n);
                if (kJet && uv == 0.0) domain_error("sqrt not differentiable at zero", n);
            }
            return call1(n.uop, u);
        }
        case Expr::Kind::Binary: {
            T a = eval_rec(*n.a, x, y);
            T b = eval_rec(*n.b, x, y);
            switch (n.bop) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (value_of(b) == 0.0) domain_error("division by zero", n);
                    return a / b;
                case BinaryOp::Pow: {
                    const double ev = value_of(b);
                    if (is_flat(b) && std::nearbyint(ev) == ev && std::fabs(ev) <= 9.0e15) {
                        const long long k = static_cast<long long>(ev);
                        if (k >= 0) return pow_integer(a, static_cast<unsigned long long>(k));
                        if (value_of(a) == 0.0) domain_error("division by zero", n);
                        return make_const<T>(1.0) /
                               pow_integer(a, static_cast<unsigned long long>(-k));
                    }
                    if (value_of(a) <= 0.0)
                        domain_error("pow with non-integer exponent needs a positive base", n);
                    return call_exp_ln(a, b);
                }
            }
        }
    }
    return make_const<T>(0.0);  // unreachable
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr surface
// ---------------------------------------------------------------------------

Expr Expr::constant(double value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->var = v;
    return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Unary;
    n->uop = op;
    n->a = operand.node_;
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Binary;
    n->bop = op;
    n->a = lhs.node_;
    n->b = rhs.node_;
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
Var Expr::var() const { return node_->var; }
UnaryOp Expr::unary_op() const { return node_->uop; }
BinaryOp Expr::binary_op() const { return node_->bop; }

Expr Expr::operand() const { return Expr(node_->a); }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }

std::string Expr::str() const { return to_text(*node_); }

Expr parse_expr(std::string_view text) {
    Parser p{text};
    NodePtr root = p.parse_expr_rule();
    if (!p.at_end()) throw SyntaxError("unexpected trailing input", p.pos);
    return Expr(std::move(root));
}

double eval_expr(const Expr& e, const Point2& p) {
    return eval_rec<double>(e.root(), p.x, p.y);
}

Jet2 jet_eval(const Expr& e, const Point2& p) {
    return eval_rec<Jet2>(e.root(), Jet2::seed_x(p.x), Jet2::seed_y(p.y));
}

namespace {

Jet2 fd_jet_steps(const Expr& e, const Point2& p, double hx, double hy) {
    auto f = [&](double x, double y) { return eval_expr(e, {x, y}); };
    Jet2 j;
    const double f0 = f(p.x, p.y);
    const double fxp = f(p.x + hx, p.y), fxm = f(p.x - hx, p.y);
    const double fyp = f(p.x, p.y + hy), fym = f(p.x, p.y - hy);
    j.v = f0;
    j.gx = (fxp - fxm) / (2.0 * hx);
    j.gy = (fyp - fym) / (2.0 * hy);
    j.hxx = (fxp - 2.0 * f0 + fxm) / (hx * hx);
    j.hyy = (fyp - 2.0 * f0 + fym) / (hy * hy);
    j.hxy = (f(p.x + hx, p.y + hy) - f(p.x + hx, p.y - hy) - f(p.x - hx, p.y + hy) +
             f(p.x - hx, p.y - hy)) /
            (4.0 * hx * hy);
    return j;
}

}  // namespace

Jet2 fd_jet(const Expr& e, const Point2& p, double h) { return fd_jet_steps(e, p, h, h); }

Jet2 fd_jet(const Expr& e, const Point2& p) {
    return fd_jet_steps(e, p, 1e-5 * std::max(1.0, std::fabs(p.x)),
                        1e-5 * std::max(1.0, std::fabs(p.y)));
}

}  // namespace pk
