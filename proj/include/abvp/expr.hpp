#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "abvp/errors.hpp"

namespace abvp {

/// Scalar math expressions in the variables t, u, r, used for the
/// problem-file fields f(t,u), h(r,u), b(t), m(t) and q(t).
///
/// Grammar (EBNF, whitespace-insensitive, identifiers case-sensitive):
///
///   expression = term , { ( "+" | "-" ) , term } ;
///   term       = factor , { ( "*" | "/" ) , factor } ;
///   factor     = "-" , factor | power ;
///   power      = primary , [ "^" , factor ] ;          (* right-associative *)
///   primary    = number | variable
///              | function , "(" , expression , ")"
///              | "(" , expression , ")" ;
///   variable   = "t" | "u" | "r" ;
///   function   = "sqrt" | "log" | "exp" | "abs" | "sin" | "cos" ;
///   number     = decimal or scientific literal, e.g. 2, 0.5, .25, 1e-3, 2.5E+2 ;
///
/// Precedence is ^ > unary minus > *,/ > +,- so "-u^2" is -(u^2) and
/// "2^-3" is 2^(-3). There is no implicit multiplication: "2u" is a
/// syntax error.

enum class Var : std::uint8_t { T = 0, U = 1, R = 2 };

const char* var_name(Var v) noexcept;

/// Small value-type set of {t, u, r}.
class VarSet {
public:
    constexpr VarSet() = default;

    static constexpr VarSet of(Var v) { return VarSet(bit(v)); }

    constexpr VarSet operator|(VarSet o) const { return VarSet(mask_ | o.mask_); }
    constexpr bool contains(Var v) const { return (mask_ & bit(v)) != 0; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool operator==(const VarSet&) const = default;

    std::string to_string() const;

private:
    constexpr explicit VarSet(std::uint8_t m) : mask_(m) {}
    static constexpr std::uint8_t bit(Var v) { return std::uint8_t(1u << unsigned(v)); }
    std::uint8_t mask_ = 0;
};

inline constexpr VarSet vars_t   = VarSet::of(Var::T);
inline constexpr VarSet vars_tu  = VarSet::of(Var::T) | VarSet::of(Var::U);
inline constexpr VarSet vars_ru  = VarSet::of(Var::R) | VarSet::of(Var::U);
inline constexpr VarSet vars_tur = vars_tu | VarSet::of(Var::R);

/// Variable bindings for evaluation. Unbound variables are an error at eval.
struct Bindings {
    std::optional<double> t, u, r;

    static Bindings at_t(double tv) { return {tv, std::nullopt, std::nullopt}; }
    static Bindings at_tu(double tv, double uv) { return {tv, uv, std::nullopt}; }
    static Bindings at_ru(double rv, double uv) { return {std::nullopt, uv, rv}; }
    static Bindings at_u(double uv) { return {std::nullopt, uv, std::nullopt}; }

    std::optional<double> get(Var v) const {
        switch (v) {
            case Var::T: return t;
            case Var::U: return u;
            case Var::R: return r;
        }
        return std::nullopt;
    }
};

/// Immutable expression tree. Cheap to copy (shared immutable nodes),
/// safe to evaluate concurrently from many threads.
class Expr {
public:
    struct Node;

    /// Parses `source` rejecting any variable outside `allowed_vars`.
    /// Throws ParseError with a byte offset on malformed input.
    static Expr parse(std::string_view source, VarSet allowed_vars);

    /// Evaluates with IEEE double semantics. Integer exponents use repeated
    /// squaring (so u^3 is exact for exact u); non-integer exponents use
    /// exp(b*log a). Throws EvalError on domain violations, naming the
    /// offending subexpression.
    double eval(const Bindings& bindings) const;

    /// Minimal-parenthesis rendering; reparsing gives a structurally equal tree.
    std::string to_string() const;

    /// Variables actually referenced by the tree.
    VarSet variables() const;

    /// Structural equality.
    bool equals(const Expr& other) const;

    /// Convenience: the constant expression `value`.
    static Expr constant(double value);

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

} // namespace abvp
