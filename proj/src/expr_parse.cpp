// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <charconv>
#include <memory>
#include <variant>

#include "duoseed/error.hpp"
#include "duoseed/expr.hpp"

namespace duoseed {

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, Pow, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (ident_start(c)) {
            // Dotted names ("math.floor") stay one token.
            while (i < s.size() && (ident_char(s[i]) || (s[i] == '.' && i + 1 < s.size() && ident_start(s[i + 1]))))
                ++i;
            out.push_back({Tok::Ident, s.substr(start, i - start), start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
            out.push_back({Tok::Number, s.substr(start, i - start), start});
            continue;
        }
        Tok kind;
        std::size_t len = 1;
        switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*':
            if (i + 1 < s.size() && s[i + 1] == '*') {
                kind = Tok::Pow;
                len = 2;
            } else {
                kind = Tok::Star;
            }
            break;
        case '/': kind = Tok::Slash; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        default: throw ParseError("unexpected character", std::string(1, c), start);
        }
        out.push_back({kind, s.substr(start, len), start});
        i += len;
    }
    out.push_back({Tok::End, {}, s.size()});
    return out;
}

struct NamedSampler {
    std::string_view name;
    Distribution dist;
    double a, b;
};

constexpr NamedSampler kSamplers[] = {
    {"uniform", Distribution::Uniform, -1, 1},
    {"gauss", Distribution::Gaussian, 0, 1},
    {"betavariate", Distribution::Betavariate, 1, 1},
    {"gammavariate", Distribution::Gammavariate, 1, 1},
    {"lognormvariate", Distribution::Lognormvariate, 0, 1},
};

struct NamedFunc {
    std::string_view name;
    FuncKind func;
};

// Plain one-argument spellings. sqrt/log/acosh only appear in their
// abs-wrapped forms and are handled separately.
constexpr NamedFunc kFuncs[] = {
    {"tanh", FuncKind::Tanh}, {"cos", FuncKind::Cos},     {"sin", FuncKind::Sin},
    {"abs", FuncKind::Abs},   {"fabs", FuncKind::Abs},    {"ceil", FuncKind::Ceil},
    {"floor", FuncKind::Floor}, {"tan", FuncKind::Tan},   {"erf", FuncKind::Erf},
    {"asinh", FuncKind::Asinh}, {"arcsinh", FuncKind::Asinh},
    {"atan", FuncKind::Atan},   {"arctan", FuncKind::Atan},
};

/// Splits "prefix.name". Returns the name when the prefix is empty or the
/// allowed one, otherwise an empty view.
std::string_view unprefixed(std::string_view ident, std::string_view allowed) {
    const auto dot = ident.rfind('.');
    if (dot == std::string_view::npos) return ident;
    if (ident.substr(0, dot) != allowed) return {};
    return ident.substr(dot + 1);
}

const NamedSampler* find_sampler(std::string_view ident) {
    const auto name = unprefixed(ident, "random");
    for (const auto& s : kSamplers)
        if (s.name == name) return &s;
    return nullptr;
}

bool is_composite_name(std::string_view name) {
    return name == "sqrt" || name == "log" || name == "acosh" || name == "arccosh";
}

// ---- atom sub-expressions ------------------------------------------------

struct AtomNode {
    char op = 0; // 0 for leaves; '+', '-', '*', '/', '^'
    std::string leaf;
    std::unique_ptr<AtomNode> lhs, rhs;
};

int precedence(const AtomNode& n) {
    switch (n.op) {
    case '+': case '-': return 1;
    case '*': case '/': return 2;
    case '^': return 3;
    default: return 4;
    }
}

void print_atom(const AtomNode& n, std::string& out) {
    if (n.op == 0) {
        out += n.leaf;
        return;
    }
    const int p = precedence(n);
    const bool right_assoc = n.op == '^';
    const bool lparen = precedence(*n.lhs) < p || (right_assoc && precedence(*n.lhs) == p);
    const bool rparen = precedence(*n.rhs) < p || (!right_assoc && precedence(*n.rhs) == p);
    if (lparen) out += '(';
    print_atom(*n.lhs, out);
    if (lparen) out += ')';
    if (n.op == '^')
        out += "**";
    else
        out += n.op;
    if (rparen) out += '(';
    print_atom(*n.rhs, out);
    if (rparen) out += ')';
}

// ---- equation parser -----------------------------------------------------

struct Body;

/// One parsed top-level unit: either an ordinary term or f_r*f(<body>).
struct WrapTerm {
    FuncKind func;
    std::unique_ptr<Body> inner;
    std::size_t offset;
};
using Unit = std::variant<Term, WrapTerm>;

struct Body {
    std::vector<Unit> units;
    std::vector<OpKind> ops;
    std::size_t offset = 0;
};

class Parser {
public:
    Parser(std::string_view text, Dialect dialect) : dialect_(dialect), toks_(lex(text)) {
        match_.assign(toks_.size(), 0);
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < toks_.size(); ++i) {
            if (toks_[i].kind == Tok::LParen) {
                stack.push_back(i);
            } else if (toks_[i].kind == Tok::RParen) {
                if (stack.empty()) fail("mismatched parentheses", i);
                match_[stack.back()] = i;
                match_[i] = stack.back();
                stack.pop_back();
            }
        }
        if (!stack.empty()) fail("mismatched parentheses", stack.back());
    }

    Equation run() {
        const std::size_t end = toks_.size() - 1;
        if (end == 0) throw ParseError("empty input", "", 0);
        Body body = parse_body(0, end);
        Equation eq;
        eq.dist = dist_.value_or(Distribution::Uniform);
        if (body.units.size() == 1 && std::holds_alternative<WrapTerm>(body.units.front())) {
            auto& w = std::get<WrapTerm>(body.units.front());
            eq.wrap = w.func;
            flatten(*w.inner, eq);
        } else {
            flatten(body, eq);
        }
        return eq;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t i) const {
        const auto& t = toks_[i];
        throw ParseError(msg, t.kind == Tok::End ? std::string("<end>") : std::string(t.text), t.offset);
    }

    const Token& at(std::size_t i) const { return toks_[i]; }

    void expect(Tok kind, std::size_t& i, std::size_t end, const char* what) {
        if (i >= end || at(i).kind != kind) fail(std::string("expected ") + what, std::min(i, end));
        ++i;
    }

    void flatten(Body& body, Equation& eq) const {
        for (auto& unit : body.units) {
            if (auto* w = std::get_if<WrapTerm>(&unit)) {
                throw ParseError("nested equation is not derivable from the grammar", "", w->offset);
            }
            eq.terms.push_back(std::move(std::get<Term>(unit)));
        }
        eq.ops = std::move(body.ops);
    }

    Body parse_body(std::size_t begin, std::size_t end) {
        Body body;
        body.offset = at(begin).offset;
        std::size_t i = begin;
        body.units.push_back(parse_term(i, end));
        while (i < end) {
            OpKind op;
            switch (at(i).kind) {
            case Tok::Plus: op = OpKind::Add; break;
            case Tok::Minus: op = OpKind::Sub; break;
            case Tok::Star: op = OpKind::Mul; break;
            case Tok::Slash: op = OpKind::Div; break;
            default: fail("expected operator", i);
            }
            ++i;
            body.ops.push_back(op);
            body.units.push_back(parse_term(i, end));
        }
        return body;
    }

    void parse_sampler(std::size_t& i, std::size_t end) {
        if (i >= end) fail("expected sampler", std::min(i, end));
        const Token& name_tok = at(i);
        if (name_tok.kind != Tok::Ident) fail("expected sampler", i);
        const NamedSampler* s = find_sampler(name_tok.text);
        if (!s) {
            if (find_function(name_tok.text) || is_composite_name(unprefixed(name_tok.text, "math")))
                fail("expected sampler before function", i);
            fail("unknown sampler", i);
        }
        const std::size_t name_index = i++;
        expect(Tok::LParen, i, end, "'(' after sampler");
        const double a = parse_signed(i, end);
        expect(Tok::Comma, i, end, "','");
        const double b = parse_signed(i, end);
        expect(Tok::RParen, i, end, "')'");
        if (a != s->a || b != s->b) fail("unsupported sampler parameters", name_index);
        if (dist_ && *dist_ != s->dist) fail("mixed distributions in one equation", name_index);
        dist_ = s->dist;
    }

    double parse_signed(std::size_t& i, std::size_t end) {
        bool negative = false;
        if (i < end && at(i).kind == Tok::Minus) {
            negative = true;
            ++i;
        }
        if (i >= end || at(i).kind != Tok::Number) fail("expected number", std::min(i, end));
        double v = 0;
        const auto text = at(i).text;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) fail("malformed number", i);
        ++i;
        return negative ? -v : v;
    }

    std::optional<FuncKind> find_function(std::string_view ident) const {
        const auto name = unprefixed(ident, "math");
        for (const auto& f : kFuncs) {
            if (f.name != name) continue;
            if (f.func == FuncKind::Atan && dialect_ != Dialect::Legacy) return std::nullopt;
            return f.func;
        }
        return std::nullopt;
    }

    Unit parse_term(std::size_t& i, std::size_t end) {
        parse_sampler(i, end);
        expect(Tok::Star, i, end, "'*' after sampler");
        if (i >= end) fail("expected function", std::min(i, end));

        // Legacy "s*s*f(a)": identity applied to the following term.
        if (at(i).kind == Tok::Ident && find_sampler(at(i).text)) {
            const std::size_t where = i;
            Unit inner = parse_term(i, end);
            auto* t = std::get_if<Term>(&inner);
            if (!t) fail("nested equation is not derivable from the grammar", where);
            t->chain.insert(t->chain.begin(), FuncKind::Identity);
            return inner;
        }

        const std::size_t head = i;
        FuncKind func;
        std::size_t lp, rp;
        if (at(i).kind == Tok::LParen) {
            func = FuncKind::Identity;
            lp = i;
            rp = match_[lp];
            i = rp + 1;
        } else if (at(i).kind == Tok::Ident) {
            const auto name = unprefixed(at(i).text, "math");
            if (is_composite_name(name)) {
                func = name == "sqrt" ? FuncKind::SqrtAbs
                     : name == "log"  ? FuncKind::LogAbs1
                                      : FuncKind::AcoshAbs1;
                ++i;
                expect(Tok::LParen, i, end, "'('");
                if (i >= end || at(i).kind != Tok::Ident || unprefixed(at(i).text, "math") != "abs")
                    fail(std::string("unsupported form: ") + std::string(name) + " takes abs(...)", head);
                ++i;
                if (i >= end || at(i).kind != Tok::LParen) fail("expected '('", std::min(i, end));
                lp = i;
                rp = match_[lp];
                i = rp + 1;
                if (func != FuncKind::SqrtAbs) {
                    expect(Tok::Plus, i, end, "'+1'");
                    if (i >= end || at(i).kind != Tok::Number || parse_signed(i, end) != 1.0)
                        fail(std::string("unsupported form: ") + std::string(name) + " takes abs(...)+1", head);
                }
                expect(Tok::RParen, i, end, "')'");
            } else {
                const auto f = find_function(at(i).text);
                if (!f) fail("unknown function", i);
                func = *f;
                ++i;
                if (i >= end || at(i).kind != Tok::LParen) fail("expected '('", std::min(i, end));
                lp = i;
                rp = match_[lp];
                i = rp + 1;
            }
        } else {
            fail("expected function", i);
        }
        if (rp >= end) fail("mismatched parentheses", lp);
        return apply_argument(func, lp, rp, head);
    }

    /// Argument between tokens lp and rp (exclusive).
    Unit apply_argument(FuncKind func, std::size_t lp, std::size_t rp, std::size_t head) {
        const std::size_t b = lp + 1, e = rp;
        if (b == e) fail("empty argument", rp);
        bool atom_only = true;
        for (std::size_t k = b; k < e; ++k) {
            if (at(k).kind == Tok::Ident && at(k).text != "x" && at(k).text != "y") {
                atom_only = false;
                break;
            }
        }
        if (atom_only) return Term{{func}, parse_atom(b, e)};

        if (at(b).kind == Tok::LParen && match_[b] == e - 1) {
            auto body = std::make_unique<Body>(parse_body(b + 1, e - 1));
            return WrapTerm{func, std::move(body), at(head).offset};
        }
        Body body = parse_body(b, e);
        if (body.units.size() == 1) {
            auto* t = std::get_if<Term>(&body.units.front());
            if (!t) fail("nested equation is not derivable from the grammar", b);
            Term out = std::move(*t);
            out.chain.insert(out.chain.begin(), func);
            return out;
        }
        return WrapTerm{func, std::make_unique<Body>(std::move(body)), at(head).offset};
    }

    ArgKind parse_atom(std::size_t b, std::size_t e) {
        std::size_t i = b;
        auto node = atom_sum(i, e);
        if (i != e) fail("unexpected token in argument", i);
        std::string text;
        print_atom(*node, text);
        for (std::size_t k = 0; k < kArgCount; ++k) {
            const auto a = static_cast<ArgKind>(k);
            if (arg_text(a) == text) return a;
        }
        throw ParseError("unsupported argument", text, at(b).offset);
    }

    std::unique_ptr<AtomNode> atom_sum(std::size_t& i, std::size_t e) {
        auto lhs = atom_product(i, e);
        while (i < e && (at(i).kind == Tok::Plus || at(i).kind == Tok::Minus)) {
            auto n = std::make_unique<AtomNode>();
            n->op = at(i).kind == Tok::Plus ? '+' : '-';
            ++i;
            n->lhs = std::move(lhs);
            n->rhs = atom_product(i, e);
            lhs = std::move(n);
        }
        return lhs;
    }

    std::unique_ptr<AtomNode> atom_product(std::size_t& i, std::size_t e) {
        auto lhs = atom_power(i, e);
        while (i < e && (at(i).kind == Tok::Star || at(i).kind == Tok::Slash)) {
            auto n = std::make_unique<AtomNode>();
            n->op = at(i).kind == Tok::Star ? '*' : '/';
            ++i;
            n->lhs = std::move(lhs);
            n->rhs = atom_power(i, e);
            lhs = std::move(n);
        }
        return lhs;
    }

    std::unique_ptr<AtomNode> atom_power(std::size_t& i, std::size_t e) {
        auto base = atom_primary(i, e);
        if (i < e && at(i).kind == Tok::Pow) {
            auto n = std::make_unique<AtomNode>();
            n->op = '^';
            ++i;
            n->lhs = std::move(base);
            n->rhs = atom_power(i, e);
            return n;
        }
        return base;
    }

    std::unique_ptr<AtomNode> atom_primary(std::size_t& i, std::size_t e) {
        if (i >= e) fail("incomplete argument", std::min(i, e));
        const Token& t = at(i);
        if (t.kind == Tok::Ident || t.kind == Tok::Number) {
            auto n = std::make_unique<AtomNode>();
            n->leaf = std::string(t.text);
            ++i;
            return n;
        }
        if (t.kind == Tok::LParen) {
            const std::size_t close = match_[i];
            if (close >= e) fail("mismatched parentheses", i);
            ++i;
            auto inner = atom_sum(i, close);
            if (i != close) fail("unexpected token in argument", i);
            i = close + 1;
            return inner;
        }
        fail("unexpected token in argument", i);
    }

    Dialect dialect_;
    std::vector<Token> toks_;
    std::vector<std::size_t> match_;
    std::optional<Distribution> dist_;
};

} // namespace

Equation parse(std::string_view text, Dialect dialect) {
    Parser p(text, dialect);
    return p.run();
}

} // namespace duoseed
