// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "duoseed/detrand.hpp"

namespace duoseed {

/// Argument atoms: how x and y enter the innermost function of a term.
enum class ArgKind : std::uint8_t {
    XY, X, Y, InvX, InvY, XDivY, YMinusX, XMinusY, XPlusY,
    X3, Y3, X2, Y2, X2Y, Y2X, X2PlusY2, Y2MinusX2, X2Y3, X3Y2, XY3, YX3,
};

inline constexpr std::size_t kArgCount = 21;

/// Deterministic unary functions. The first 13 enumerators form the
/// generator family; `Atan` exists only so legacy documents can be loaded.
enum class FuncKind : std::uint8_t {
    Tanh, Cos, Sin, Identity, Abs, Ceil, Floor, Tan, Erf,
    SqrtAbs,   // sqrt(|v|)
    LogAbs1,   // log(|v|+1)
    AcoshAbs1, // acosh(|v|+1)
    Asinh,
    Atan,
};

inline constexpr std::array<FuncKind, 13> kGeneratorFunctions = {
    FuncKind::Tanh, FuncKind::Cos, FuncKind::Sin, FuncKind::Identity, FuncKind::Abs,
    FuncKind::Ceil, FuncKind::Floor, FuncKind::Tan, FuncKind::Erf, FuncKind::SqrtAbs,
    FuncKind::LogAbs1, FuncKind::AcoshAbs1, FuncKind::Asinh};

enum class OpKind : std::uint8_t { Add, Sub, Mul, Div };

inline constexpr std::array<OpKind, 4> kOperators = {OpKind::Add, OpKind::Sub, OpKind::Mul,
                                                     OpKind::Div};

std::string_view arg_text(ArgKind a) noexcept;
std::string_view op_text(OpKind o) noexcept;
/// Function name as printed ("identity" for the bare-parentheses form).
std::string_view func_name(FuncKind f) noexcept;

/// f_r f^1(f_r f^2(... f_r f^d(atom) ...)); chain is outermost first.
struct Term {
    std::vector<FuncKind> chain;
    ArgKind atom = ArgKind::X;

    std::size_t depth() const noexcept { return chain.size(); }
    friend bool operator==(const Term&, const Term&) = default;
};

struct Equation {
    Distribution dist = Distribution::Uniform;
    std::vector<Term> terms;
    std::vector<OpKind> ops; // size() == terms.size() - 1
    std::optional<FuncKind> wrap;

    friend bool operator==(const Equation&, const Equation&) = default;
};

struct GenConfig {
    int c_min = 1;
    int c_max = static_cast<int>(kGeneratorFunctions.size()) + 1;
    int d_min = 1;
    int d_max = 2;
    double wrap_p = 0.5;

    /// Throws InvalidParams naming the offending field.
    void validate() const;
    friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

/// Random equation generation. Draw order per call: n, f_r, then per term
/// (d, atom, d functions innermost first, operator if not last), then the
/// wrap test and, if taken, the wrap function. Every draw is one next_unit.
Equation generate_equation(Rng& rng, const GenConfig& cfg = {});

/// Canonical infix text.
std::string serialize(const Equation& eq);

enum class Dialect {
    Standard, ///< canonical text plus `random.` / `math.` prefixes
    Legacy,   ///< Standard, plus functions only found in legacy documents (atan)
};

/// Throws ParseError naming the offending token and byte offset.
Equation parse(std::string_view text, Dialect dialect = Dialect::Standard);

/// Number of f_r draws one evaluation consumes.
std::size_t count_samples(const Equation& eq) noexcept;

/// Structural bounds check against a generator configuration.
bool within_bounds(const Equation& eq, const GenConfig& cfg) noexcept;

inline double eval_arg(ArgKind a, double x, double y) noexcept {
    switch (a) {
    case ArgKind::XY: return x * y;
    case ArgKind::X: return x;
    case ArgKind::Y: return y;
    case ArgKind::InvX: return 1.0 / x;
    case ArgKind::InvY: return 1.0 / y;
    case ArgKind::XDivY: return x / y;
    case ArgKind::YMinusX: return y - x;
    case ArgKind::XMinusY: return x - y;
    case ArgKind::XPlusY: return x + y;
    case ArgKind::X3: return x * x * x;
    case ArgKind::Y3: return y * y * y;
    case ArgKind::X2: return x * x;
    case ArgKind::Y2: return y * y;
    case ArgKind::X2Y: return x * x * y;
    case ArgKind::Y2X: return y * y * x;
    case ArgKind::X2PlusY2: return x * x + y * y;
    case ArgKind::Y2MinusX2: return y * y - x * x;
    case ArgKind::X2Y3: return (x * x) * (y * y * y);
    case ArgKind::X3Y2: return (x * x * x) * (y * y);
    case ArgKind::XY3: return x * (y * y * y);
    case ArgKind::YX3: return y * (x * x * x);
    }
    return 0.0;
}

inline double apply(FuncKind f, double v) noexcept {
    switch (f) {
    case FuncKind::Tanh: return std::tanh(v);
    case FuncKind::Cos: return std::cos(v);
    case FuncKind::Sin: return std::sin(v);
    case FuncKind::Identity: return v;
    case FuncKind::Abs: return std::fabs(v);
    case FuncKind::Ceil: return std::ceil(v);
    case FuncKind::Floor: return std::floor(v);
    case FuncKind::Tan: return std::tan(v);
    case FuncKind::Erf: return std::erf(v);
    case FuncKind::SqrtAbs: return std::sqrt(std::fabs(v));
    case FuncKind::LogAbs1: return std::log(std::fabs(v) + 1.0);
    case FuncKind::AcoshAbs1: return std::acosh(std::fabs(v) + 1.0);
    case FuncKind::Asinh: return std::asinh(v);
    case FuncKind::Atan: return std::atan(v);
    }
    return v;
}

namespace detail {

template <class Draw>
double eval_link(const Term& t, std::size_t k, double x, double y, Draw& draw) {
    const double s = draw();
    const double inner =
        k + 1 < t.chain.size() ? eval_link(t, k + 1, x, y, draw) : eval_arg(t.atom, x, y);
    return s * apply(t.chain[k], inner);
}

// Top-level terms keep the leading sample separate: the text `a / s*f(b)`
// evaluates as (a / s) * f(b), not a / (s * f(b)).
template <class Draw>
std::pair<double, double> eval_term(const Term& t, double x, double y, Draw& draw) {
    const double s = draw();
    const double inner =
        t.chain.size() > 1 ? eval_link(t, 1, x, y, draw) : eval_arg(t.atom, x, y);
    return {s, apply(t.chain.front(), inner)};
}

} // namespace detail

/**
 * Evaluate with an arbitrary sample source (`draw()` returns the next f_r
 * value). Samples are consumed in text order: terms left to right, each
 * chain outermost first; the wrap sample is drawn last. Inter-term operators
 * follow ordinary precedence over the flat text, left-associative.
 */
template <class Draw>
double evaluate_with(const Equation& eq, double x, double y, Draw&& draw) {
    auto [s0, g0] = detail::eval_term(eq.terms.front(), x, y, draw);
    double group = s0 * g0;
    double total = 0.0;
    bool have_total = false;
    OpKind pending = OpKind::Add;
    auto flush = [&] {
        if (!have_total) {
            total = group;
            have_total = true;
        } else if (pending == OpKind::Add) {
            total = total + group;
        } else {
            total = total - group;
        }
    };
    for (std::size_t k = 1; k < eq.terms.size(); ++k) {
        const OpKind op = eq.ops[k - 1];
        auto [s, g] = detail::eval_term(eq.terms[k], x, y, draw);
        switch (op) {
        case OpKind::Mul: group = group * s * g; break;
        case OpKind::Div: group = group / s * g; break;
        case OpKind::Add:
        case OpKind::Sub:
            flush();
            pending = op;
            group = s * g;
            break;
        }
    }
    flush();
    if (eq.wrap) {
        const double sw = draw();
        return sw * apply(*eq.wrap, total);
    }
    return total;
}

/// Evaluate drawing fresh samples of eq.dist from `rng`. May return ±inf/NaN.
inline double evaluate(const Equation& eq, double x, double y, Rng& rng) {
    return evaluate_with(eq, x, y, [&] { return sample(eq.dist, rng); });
}

} // namespace duoseed
