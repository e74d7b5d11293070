#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "wsm/expr/expr.hpp"

namespace wsm::expr {

namespace {

struct parser {
    const std::string& src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(pos, msg); }

    node_ptr make(node n) { return std::make_shared<const node>(std::move(n)); }

    node_ptr lit(double v) {
        node n;
        n.kind = node_kind::literal;
        n.lit = v;
        return make(std::move(n));
    }

    node_ptr binary(node_kind k, node_ptr a, node_ptr b) {
        node n;
        n.kind = k;
        n.a = std::move(a);
        n.b = std::move(b);
        return make(std::move(n));
    }

    node_ptr parse_expr() {
        node_ptr left = parse_term();
        for (;;) {
            if (eat('+')) left = binary(node_kind::add, left, parse_term());
            else if (eat('-')) left = binary(node_kind::sub, left, parse_term());
            else return left;
        }
    }

    node_ptr parse_term() {
        node_ptr left = parse_unary();
        for (;;) {
            if (eat('*')) left = binary(node_kind::mul, left, parse_unary());
            else if (eat('/')) left = binary(node_kind::div, left, parse_unary());
            else return left;
        }
    }

    node_ptr parse_unary() {
        if (eat('-')) {
            node_ptr inner = parse_unary();
            if (inner->kind == node_kind::literal) return lit(-inner->lit);
            node n;
            n.kind = node_kind::neg;
            n.a = std::move(inner);
            return make(std::move(n));
        }
        return parse_power();
    }

    node_ptr parse_power() {
        node_ptr base = parse_primary();
        if (!eat('^')) return base;
        const std::size_t at = pos;
        node_ptr expo = parse_unary(); // right-associative via recursion
        auto [num, den] = fold_rational(expo, at);
        node n;
        n.kind = node_kind::pow;
        n.a = std::move(base);
        n.pnum = num;
        n.pden = den;
        return make(std::move(n));
    }

    /// Exponents must fold to a rational with denominator 1, 2 or 3.
    std::pair<long long, int> fold_rational(const node_ptr& e, std::size_t at) {
        const std::optional<double> v = fold_const(e);
        if (!v) throw parse_error(at, "exponent must be a constant");
        for (int den = 1; den <= 3; ++den) {
            const double scaled = *v * den;
            const double rounded = std::round(scaled);
            if (std::abs(scaled - rounded) < 1e-12 && std::abs(rounded) <= 128.0) {
                long long num = static_cast<long long>(rounded);
                int d = den;
                // reduce: keeps ^2 printed as 2, ^(2/2) as 1
                for (int g = 3; g >= 2; --g)
                    if (d % g == 0 && num % g == 0) {
                        num /= g;
                        d /= g;
                    }
                return {num, d};
            }
        }
        throw parse_error(at, "exponent is not a rational with denominator 1, 2 or 3");
    }

    std::optional<double> fold_const(const node_ptr& e) {
        switch (e->kind) {
            case node_kind::literal: return e->lit;
            case node_kind::pi_const: return 3.14159265358979323846;
            case node_kind::neg: {
                auto a = fold_const(e->a);
                return a ? std::optional<double>(-*a) : std::nullopt;
            }
            case node_kind::add:
            case node_kind::sub:
            case node_kind::mul:
            case node_kind::div: {
                auto a = fold_const(e->a), b = fold_const(e->b);
                if (!a || !b) return std::nullopt;
                switch (e->kind) {
                    case node_kind::add: return *a + *b;
                    case node_kind::sub: return *a - *b;
                    case node_kind::mul: return *a * *b;
                    default: return *b == 0.0 ? std::nullopt : std::optional<double>(*a / *b);
                }
            }
            case node_kind::pow: {
                auto a = fold_const(e->a);
                if (!a) return std::nullopt;
                return std::pow(*a, static_cast<double>(e->pnum) / e->pden);
            }
            default: return std::nullopt;
        }
    }

    node_ptr parse_primary() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input");
        const char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '(') {
            ++pos;
            node_ptr inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    node_ptr parse_number() {
        const char* begin = src.data() + pos;
        const char* end = src.data() + src.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc()) fail("malformed number");
        pos += static_cast<std::size_t>(ptr - begin);
        return lit(v);
    }

    node_ptr parse_ident() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string name = src.substr(start, pos - start);
        if (name == "pi") {
            node n;
            n.kind = node_kind::pi_const;
            return make(std::move(n));
        }
        static const std::pair<const char*, func> funcs[] = {
            {"sin", func::sin},       {"cos", func::cos},     {"sinh", func::sinh},
            {"cosh", func::cosh},     {"tanh", func::tanh},   {"exp", func::exp},
            {"log", func::log},       {"sqrt", func::sqrt},   {"arcsin", func::arcsin},
            {"arctan", func::arctan}, {"asin", func::arcsin}, {"atan", func::arctan},
        };
        for (auto [fname, f] : funcs) {
            if (name == fname) {
                if (!eat('(')) fail("expected '(' after function name");
                node_ptr arg = parse_expr();
                if (!eat(')')) fail("expected ')'");
                node n;
                n.kind = node_kind::call;
                n.fn = f;
                n.a = std::move(arg);
                return make(std::move(n));
            }
        }
        node n;
        n.kind = node_kind::variable;
        n.name = std::move(name);
        return make(std::move(n));
    }
};

} // namespace

expression parse(const std::string& source) {
    parser p{source};
    node_ptr root = p.parse_expr();
    p.skip_ws();
    if (p.pos != source.size()) p.fail("unexpected trailing input");
    return expression(std::move(root));
}

expression expression::literal(double v) {
    node n;
    n.kind = node_kind::literal;
    n.lit = v;
    return expression(std::make_shared<const node>(std::move(n)));
}

expression expression::variable(std::string name) {
    node n;
    n.kind = node_kind::variable;
    n.name = std::move(name);
    return expression(std::make_shared<const node>(std::move(n)));
}

} // namespace wsm::expr
