// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "duoseed/expr.hpp"

#include <algorithm>

#include "duoseed/error.hpp"

namespace duoseed {

std::string_view arg_text(ArgKind a) noexcept {
    switch (a) {
    case ArgKind::XY: return "x*y";
    case ArgKind::X: return "x";
    case ArgKind::Y: return "y";
    case ArgKind::InvX: return "1/x";
    case ArgKind::InvY: return "1/y";
    case ArgKind::XDivY: return "x/y";
    case ArgKind::YMinusX: return "y-x";
    case ArgKind::XMinusY: return "x-y";
    case ArgKind::XPlusY: return "x+y";
    case ArgKind::X3: return "x**3";
    case ArgKind::Y3: return "y**3";
    case ArgKind::X2: return "x**2";
    case ArgKind::Y2: return "y**2";
    case ArgKind::X2Y: return "x**2*y";
    case ArgKind::Y2X: return "y**2*x";
    case ArgKind::X2PlusY2: return "x**2+y**2";
    case ArgKind::Y2MinusX2: return "y**2-x**2";
    case ArgKind::X2Y3: return "x**2*y**3";
    case ArgKind::X3Y2: return "x**3*y**2";
    case ArgKind::XY3: return "x*y**3";
    case ArgKind::YX3: return "y*x**3";
    }
    return {};
}

std::string_view op_text(OpKind o) noexcept {
    switch (o) {
    case OpKind::Add: return "+";
    case OpKind::Sub: return "-";
    case OpKind::Mul: return "*";
    case OpKind::Div: return "/";
    }
    return {};
}

std::string_view func_name(FuncKind f) noexcept {
    switch (f) {
    case FuncKind::Tanh: return "tanh";
    case FuncKind::Cos: return "cos";
    case FuncKind::Sin: return "sin";
    case FuncKind::Identity: return "identity";
    case FuncKind::Abs: return "abs";
    case FuncKind::Ceil: return "ceil";
    case FuncKind::Floor: return "floor";
    case FuncKind::Tan: return "tan";
    case FuncKind::Erf: return "erf";
    case FuncKind::SqrtAbs: return "sqrt";
    case FuncKind::LogAbs1: return "log";
    case FuncKind::AcoshAbs1: return "acosh";
    case FuncKind::Asinh: return "asinh";
    case FuncKind::Atan: return "atan";
    }
    return {};
}

void GenConfig::validate() const {
    if (c_min < 1) throw InvalidParams("c_min must be >= 1", "c_min");
    if (c_max < c_min) throw InvalidParams("c_max must be >= c_min", "c_max");
    if (d_min < 1) throw InvalidParams("d_min must be >= 1", "d_min");
    if (d_max < d_min) throw InvalidParams("d_max must be >= d_min", "d_max");
    if (!(wrap_p >= 0.0 && wrap_p <= 1.0)) throw InvalidParams("wrap_p must lie in [0,1]", "wrap_p");
}

namespace {

std::size_t pick(Rng& rng, std::size_t k) {
    const auto i = static_cast<std::size_t>(rng.next_unit() * static_cast<double>(k));
    return std::min(i, k - 1);
}

int pick_between(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(pick(rng, static_cast<std::size_t>(hi - lo + 1)));
}

} // namespace

Equation generate_equation(Rng& rng, const GenConfig& cfg) {
    cfg.validate();
    Equation eq;
    const int n = pick_between(rng, cfg.c_min, cfg.c_max);
    eq.dist = kDistributions[pick(rng, kDistributions.size())];
    eq.terms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Term t;
        const int d = pick_between(rng, cfg.d_min, cfg.d_max);
        t.atom = static_cast<ArgKind>(pick(rng, kArgCount));
        // Drawn innermost first; the chain is stored outermost first.
        t.chain.resize(static_cast<std::size_t>(d));
        for (int j = d - 1; j >= 0; --j)
            t.chain[static_cast<std::size_t>(j)] = kGeneratorFunctions[pick(rng, kGeneratorFunctions.size())];
        eq.terms.push_back(std::move(t));
        if (i + 1 < n) eq.ops.push_back(kOperators[pick(rng, kOperators.size())]);
    }
    if (rng.next_unit() < cfg.wrap_p)
        eq.wrap = kGeneratorFunctions[pick(rng, kGeneratorFunctions.size())];
    return eq;
}

namespace {

void append_application(std::string& out, FuncKind f, const std::string& inner) {
    switch (f) {
    case FuncKind::Identity:
        out += '(';
        out += inner;
        out += ')';
        return;
    case FuncKind::SqrtAbs:
        out += "sqrt(abs(";
        out += inner;
        out += "))";
        return;
    case FuncKind::LogAbs1:
    case FuncKind::AcoshAbs1:
        out += func_name(f);
        out += "(abs(";
        out += inner;
        out += ")+1)";
        return;
    default:
        out += func_name(f);
        out += '(';
        out += inner;
        out += ')';
        return;
    }
}

std::string link_text(const Term& t, std::size_t k, std::string_view token) {
    std::string inner = k + 1 < t.chain.size() ? link_text(t, k + 1, token)
                                               : std::string(arg_text(t.atom));
    std::string out(token);
    out += '*';
    append_application(out, t.chain[k], inner);
    return out;
}

} // namespace

std::string serialize(const Equation& eq) {
    const auto token = sampler_token(eq.dist);
    std::string body;
    for (std::size_t i = 0; i < eq.terms.size(); ++i) {
        if (i > 0) body += op_text(eq.ops[i - 1]);
        body += link_text(eq.terms[i], 0, token);
    }
    if (!eq.wrap) return body;
    // A wrapped single term would read as a deeper chain without the extra pair.
    if (eq.terms.size() == 1) body = "(" + body + ")";
    std::string out(token);
    out += '*';
    append_application(out, *eq.wrap, body);
    return out;
}

std::size_t count_samples(const Equation& eq) noexcept {
    std::size_t n = eq.wrap ? 1 : 0;
    for (const auto& t : eq.terms) n += t.depth();
    return n;
}

bool within_bounds(const Equation& eq, const GenConfig& cfg) noexcept {
    const auto n = static_cast<int>(eq.terms.size());
    if (n < cfg.c_min || n > cfg.c_max) return false;
    if (eq.ops.size() + 1 != eq.terms.size()) return false;
    return std::all_of(eq.terms.begin(), eq.terms.end(), [&](const Term& t) {
        const auto d = static_cast<int>(t.depth());
        return d >= cfg.d_min && d <= cfg.d_max;
    });
}

} // namespace duoseed
