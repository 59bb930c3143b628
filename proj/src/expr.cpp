#include "abvp/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace abvp {

namespace {

enum class NodeKind : std::uint8_t { Number, Variable, Neg, Binary, Call };
enum class BinOp : std::uint8_t { Add, Sub, Mul, Div, Pow };
enum class Func : std::uint8_t { Sqrt, Log, Exp, Abs, Sin, Cos };

const char* func_name(Func f) {
    switch (f) {
        case Func::Sqrt: return "sqrt";
        case Func::Log:  return "log";
        case Func::Exp:  return "exp";
        case Func::Abs:  return "abs";
        case Func::Sin:  return "sin";
        case Func::Cos:  return "cos";
    }
    return "?";
}

} // namespace

struct Expr::Node {
    NodeKind kind;
    double number = 0.0;         // Number
    Var var = Var::T;            // Variable
    BinOp op = BinOp::Add;       // Binary
    Func func = Func::Sqrt;      // Call
    std::shared_ptr<const Node> lhs, rhs;  // Binary: both; Neg/Call: lhs only
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = NodeKind::Number;
    n->number = v;
    return n;
}

NodePtr make_var(Var v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = NodeKind::Variable;
    n->var = v;
    return n;
}

NodePtr make_neg(NodePtr a) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = NodeKind::Neg;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_binary(BinOp op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = NodeKind::Binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_call(Func f, NodePtr a) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = NodeKind::Call;
    n->func = f;
    n->lhs = std::move(a);
    return n;
}

// ---------------------------------------------------------------------------
// Parsing

class Parser {
public:
    Parser(std::string_view src, VarSet allowed) : src_(src), allowed_(allowed) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("empty expression", 0);
        NodePtr e = expression();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view src_;
    VarSet allowed_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(BinOp::Add, std::move(lhs), term());
            else if (accept('-'))
                lhs = make_binary(BinOp::Sub, std::move(lhs), term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(BinOp::Mul, std::move(lhs), factor());
            else if (accept('/'))
                lhs = make_binary(BinOp::Div, std::move(lhs), factor());
            else
                return lhs;
        }
    }

    NodePtr factor() {
        if (accept('-'))
            return make_neg(factor());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^'))
            return make_binary(BinOp::Pow, std::move(base), factor());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
            throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // "e" not followed by an exponent is not ours
            }
        }
        double value = 0.0;
        auto [ptr, ec] =
            std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc() || ptr != src_.data() + pos_)
            throw ParseError("malformed number", start);
        return make_number(value);
    }

    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);

        static constexpr std::array<std::pair<std::string_view, Func>, 6> funcs = {{
            {"sqrt", Func::Sqrt}, {"log", Func::Log}, {"exp", Func::Exp},
            {"abs", Func::Abs}, {"sin", Func::Sin}, {"cos", Func::Cos},
        }};
        for (auto [fname, f] : funcs) {
            if (name == fname) {
                expect('(');
                NodePtr arg = expression();
                expect(')');
                return make_call(f, std::move(arg));
            }
        }

        Var v;
        if (name == "t") v = Var::T;
        else if (name == "u") v = Var::U;
        else if (name == "r") v = Var::R;
        else
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);

        if (!allowed_.contains(v))
            throw ParseError("variable '" + std::string(name) +
                                 "' not allowed here (allowed: " + allowed_.to_string() + ")",
                             start);
        return make_var(v);
    }
};

// ---------------------------------------------------------------------------
// Printing

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Precedence levels used when deciding parentheses: additive 1,
// multiplicative 2, unary minus 3, power 4, atom 5.
int node_level(const Expr::Node& n) {
    switch (n.kind) {
        case NodeKind::Number:
        case NodeKind::Variable:
        case NodeKind::Call:
            return 5;
        case NodeKind::Neg:
            return 3;
        case NodeKind::Binary:
            switch (n.op) {
                case BinOp::Add:
                case BinOp::Sub: return 1;
                case BinOp::Mul:
                case BinOp::Div: return 2;
                case BinOp::Pow: return 4;
            }
    }
    return 5;
}

void print_node(const Expr::Node& n, std::string& out);

void print_child(const Expr::Node& child, int min_level, std::string& out) {
    if (node_level(child) < min_level) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

void print_node(const Expr::Node& n, std::string& out) {
    switch (n.kind) {
        case NodeKind::Number:
            out += format_double(n.number);
            return;
        case NodeKind::Variable:
            out += var_name(n.var);
            return;
        case NodeKind::Neg:
            out += '-';
            print_child(*n.lhs, 3, out);
            return;
        case NodeKind::Call:
            out += func_name(n.func);
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            return;
        case NodeKind::Binary:
            switch (n.op) {
                case BinOp::Add:
                    print_child(*n.lhs, 1, out);
                    out += '+';
                    print_child(*n.rhs, 2, out);
                    return;
                case BinOp::Sub:
                    print_child(*n.lhs, 1, out);
                    out += '-';
                    print_child(*n.rhs, 2, out);
                    return;
                case BinOp::Mul:
                    print_child(*n.lhs, 2, out);
                    out += '*';
                    print_child(*n.rhs, 3, out);
                    return;
                case BinOp::Div:
                    print_child(*n.lhs, 2, out);
                    out += '/';
                    print_child(*n.rhs, 3, out);
                    return;
                case BinOp::Pow:
                    // Right-associative: the base needs parens at level 4,
                    // the exponent may be a unary minus.
                    print_child(*n.lhs, 5, out);
                    out += '^';
                    print_child(*n.rhs, 3, out);
                    return;
            }
    }
}

std::string subexpr_text(const Expr::Node& n) {
    std::string s;
    print_node(n, s);
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation

bool is_integral(double v) {
    return std::isfinite(v) && v == std::nearbyint(v) && std::fabs(v) <= 1e15;
}

// Exact small-integer powers by repeated squaring.
double pow_by_squaring(double base, long long n) {
    bool invert = n < 0;
    unsigned long long k = invert ? static_cast<unsigned long long>(-n)
                                  : static_cast<unsigned long long>(n);
    double result = 1.0;
    double b = base;
    while (k != 0) {
        if (k & 1ull) result *= b;
        b *= b;
        k >>= 1;
    }
    return invert ? 1.0 / result : result;
}

double eval_pow(double a, double b, const Expr::Node& where) {
    if (is_integral(b)) {
        auto n = static_cast<long long>(b);
        if (a == 0.0 && n < 0)
            throw EvalError("domain error: 0 raised to a negative power", subexpr_text(where));
        return pow_by_squaring(a, n);
    }
    if (a == 0.0) {
        if (b < 0.0)
            throw EvalError("domain error: 0 raised to a negative power", subexpr_text(where));
        return 0.0;  // b > 0, non-integer
    }
    if (a < 0.0)
        throw EvalError("domain error: negative base with non-integer exponent",
                        subexpr_text(where));
    return std::exp(b * std::log(a));
}

double eval_node(const Expr::Node& n, const Bindings& b) {
    switch (n.kind) {
        case NodeKind::Number:
            return n.number;
        case NodeKind::Variable: {
            auto v = b.get(n.var);
            if (!v)
                throw EvalError(std::string("unbound variable '") + var_name(n.var) + "'",
                                subexpr_text(n));
            return *v;
        }
        case NodeKind::Neg:
            return -eval_node(*n.lhs, b);
        case NodeKind::Binary: {
            double x = eval_node(*n.lhs, b);
            double y = eval_node(*n.rhs, b);
            switch (n.op) {
                case BinOp::Add: return x + y;
                case BinOp::Sub: return x - y;
                case BinOp::Mul: return x * y;
                case BinOp::Div:
                    if (y == 0.0)
                        throw EvalError("domain error: division by zero", subexpr_text(n));
                    return x / y;
                case BinOp::Pow:
                    return eval_pow(x, y, n);
            }
            return 0.0;
        }
        case NodeKind::Call: {
            double x = eval_node(*n.lhs, b);
            switch (n.func) {
                case Func::Sqrt:
                    if (x < 0.0)
                        throw EvalError("domain error: sqrt of a negative number",
                                        subexpr_text(n));
                    return std::sqrt(x);
                case Func::Log:
                    if (x <= 0.0)
                        throw EvalError("domain error: log of a non-positive number",
                                        subexpr_text(n));
                    return std::log(x);
                case Func::Exp: return std::exp(x);
                case Func::Abs: return std::fabs(x);
                case Func::Sin: return std::sin(x);
                case Func::Cos: return std::cos(x);
            }
            return 0.0;
        }
    }
    return 0.0;
}

VarSet collect_vars(const Expr::Node& n) {
    switch (n.kind) {
        case NodeKind::Number:   return {};
        case NodeKind::Variable: return VarSet::of(n.var);
        case NodeKind::Neg:
        case NodeKind::Call:     return collect_vars(*n.lhs);
        case NodeKind::Binary:   return collect_vars(*n.lhs) | collect_vars(*n.rhs);
    }
    return {};
}

bool nodes_equal(const Expr::Node& a, const Expr::Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number:
            // Bitwise-identical literals (0.5 == 0.5, and -0.0 != 0.0 is fine
            // because literals are never negative).
            return a.number == b.number;
        case NodeKind::Variable:
            return a.var == b.var;
        case NodeKind::Neg:
            return nodes_equal(*a.lhs, *b.lhs);
        case NodeKind::Call:
            return a.func == b.func && nodes_equal(*a.lhs, *b.lhs);
        case NodeKind::Binary:
            return a.op == b.op && nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
    }
    return false;
}

} // namespace

const char* var_name(Var v) noexcept {
    switch (v) {
        case Var::T: return "t";
        case Var::U: return "u";
        case Var::R: return "r";
    }
    return "?";
}

std::string VarSet::to_string() const {
    std::string s = "{";
    for (Var v : {Var::T, Var::U, Var::R}) {
        if (contains(v)) {
            if (s.size() > 1) s += ", ";
            s += var_name(v);
        }
    }
    s += "}";
    return s;
}

Expr Expr::parse(std::string_view source, VarSet allowed_vars) {
    return Expr(Parser(source, allowed_vars).run());
}

double Expr::eval(const Bindings& bindings) const {
    return eval_node(*root_, bindings);
}

std::string Expr::to_string() const {
    return subexpr_text(*root_);
}

VarSet Expr::variables() const {
    return collect_vars(*root_);
}

bool Expr::equals(const Expr& other) const {
    return nodes_equal(*root_, *other.root_);
}

Expr Expr::constant(double value) {
    return Expr(make_number(value));
}

} // namespace abvp
