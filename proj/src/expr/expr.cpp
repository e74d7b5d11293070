#include <charconv>
#include <cmath>
#include <set>

#include "wsm/errors.hpp"
#include "wsm/expr/expr.hpp"

namespace wsm::expr {

namespace {

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

// Printing precedence; parenthesize a child when its level is below the
// context requirement. Negative literals get level 0 so every non-root
// context wraps them (otherwise "-3^2" would reparse as -(3^2)).
int level(const node& n) {
    switch (n.kind) {
        case node_kind::add:
        case node_kind::sub: return 1;
        case node_kind::mul:
        case node_kind::div: return 2;
        case node_kind::neg: return 3;
        case node_kind::pow: return 4;
        case node_kind::literal: return std::signbit(n.lit) ? 0 : 5;
        default: return 5;
    }
}

const char* func_name(func f) {
    switch (f) {
        case func::sin: return "sin";
        case func::cos: return "cos";
        case func::sinh: return "sinh";
        case func::cosh: return "cosh";
        case func::tanh: return "tanh";
        case func::exp: return "exp";
        case func::log: return "log";
        case func::sqrt: return "sqrt";
        case func::arcsin: return "arcsin";
        case func::arctan: return "arctan";
    }
    return "?";
}

std::string print(const node_ptr& e, int min_level) {
    std::string s;
    switch (e->kind) {
        case node_kind::literal: s = format_double(e->lit); break;
        case node_kind::variable: s = e->name; break;
        case node_kind::pi_const: s = "pi"; break;
        case node_kind::neg: s = "-" + print(e->a, 3); break;
        case node_kind::add: s = print(e->a, 1) + " + " + print(e->b, 2); break;
        case node_kind::sub: s = print(e->a, 1) + " - " + print(e->b, 2); break;
        case node_kind::mul: s = print(e->a, 2) + "*" + print(e->b, 3); break;
        case node_kind::div: s = print(e->a, 2) + "/" + print(e->b, 3); break;
        case node_kind::pow: {
            s = print(e->a, 5) + "^";
            if (e->pden == 1 && e->pnum >= 0) s += std::to_string(e->pnum);
            else if (e->pden == 1) s += "(" + std::to_string(e->pnum) + ")";
            else s += "(" + std::to_string(e->pnum) + "/" + std::to_string(e->pden) + ")";
            break;
        }
        case node_kind::call: s = std::string(func_name(e->fn)) + "(" + print(e->a, 0) + ")"; break;
    }
    if (level(*e) < min_level) s = "(" + s + ")";
    return s;
}

bool equal(const node_ptr& x, const node_ptr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case node_kind::literal: return x->lit == y->lit;
        case node_kind::variable: return x->name == y->name;
        case node_kind::pi_const: return true;
        case node_kind::neg: return equal(x->a, y->a);
        case node_kind::pow: return x->pnum == y->pnum && x->pden == y->pden && equal(x->a, y->a);
        case node_kind::call: return x->fn == y->fn && equal(x->a, y->a);
        default: return equal(x->a, y->a) && equal(x->b, y->b);
    }
}

node_ptr make(node n) { return std::make_shared<const node>(std::move(n)); }

node_ptr lit(double v) {
    node n;
    n.kind = node_kind::literal;
    n.lit = v;
    return make(std::move(n));
}

bool is_lit(const node_ptr& e, double v) { return e->kind == node_kind::literal && e->lit == v; }

node_ptr mk_neg(node_ptr a) {
    if (a->kind == node_kind::literal) return lit(-a->lit);
    if (a->kind == node_kind::neg) return a->a;
    node n;
    n.kind = node_kind::neg;
    n.a = std::move(a);
    return make(std::move(n));
}

node_ptr mk_add(node_ptr a, node_ptr b) {
    if (is_lit(a, 0.0)) return b;
    if (is_lit(b, 0.0)) return a;
    if (a->kind == node_kind::literal && b->kind == node_kind::literal) return lit(a->lit + b->lit);
    node n;
    n.kind = node_kind::add;
    n.a = std::move(a);
    n.b = std::move(b);
    return make(std::move(n));
}

node_ptr mk_sub(node_ptr a, node_ptr b) {
    if (is_lit(b, 0.0)) return a;
    if (is_lit(a, 0.0)) return mk_neg(std::move(b));
    if (a->kind == node_kind::literal && b->kind == node_kind::literal) return lit(a->lit - b->lit);
    node n;
    n.kind = node_kind::sub;
    n.a = std::move(a);
    n.b = std::move(b);
    return make(std::move(n));
}

node_ptr mk_mul(node_ptr a, node_ptr b) {
    if (is_lit(a, 0.0) || is_lit(b, 0.0)) return lit(0.0);
    if (is_lit(a, 1.0)) return b;
    if (is_lit(b, 1.0)) return a;
    if (a->kind == node_kind::literal && b->kind == node_kind::literal) return lit(a->lit * b->lit);
    node n;
    n.kind = node_kind::mul;
    n.a = std::move(a);
    n.b = std::move(b);
    return make(std::move(n));
}

node_ptr mk_div(node_ptr a, node_ptr b) {
    if (is_lit(a, 0.0)) return lit(0.0);
    if (is_lit(b, 1.0)) return a;
    if (a->kind == node_kind::literal && b->kind == node_kind::literal && b->lit != 0.0)
        return lit(a->lit / b->lit);
    node n;
    n.kind = node_kind::div;
    n.a = std::move(a);
    n.b = std::move(b);
    return make(std::move(n));
}

node_ptr mk_pow(node_ptr a, long long num, int den) {
    if (num == 0) return lit(1.0);
    if (num == den) return a;
    node n;
    n.kind = node_kind::pow;
    n.a = std::move(a);
    n.pnum = num;
    n.pden = den;
    return make(std::move(n));
}

node_ptr mk_call(func f, node_ptr a) {
    node n;
    n.kind = node_kind::call;
    n.fn = f;
    n.a = std::move(a);
    return make(std::move(n));
}

node_ptr diff(const node_ptr& e, const std::string& var) {
    switch (e->kind) {
        case node_kind::literal:
        case node_kind::pi_const: return lit(0.0);
        case node_kind::variable: return lit(e->name == var ? 1.0 : 0.0);
        case node_kind::neg: return mk_neg(diff(e->a, var));
        case node_kind::add: return mk_add(diff(e->a, var), diff(e->b, var));
        case node_kind::sub: return mk_sub(diff(e->a, var), diff(e->b, var));
        case node_kind::mul:
            return mk_add(mk_mul(diff(e->a, var), e->b), mk_mul(e->a, diff(e->b, var)));
        case node_kind::div:
            return mk_div(mk_sub(mk_mul(diff(e->a, var), e->b), mk_mul(e->a, diff(e->b, var))),
                          mk_pow(e->b, 2, 1));
        case node_kind::pow: {
            // d(a^(p/q)) = (p/q) a^((p-q)/q) da; the denominator never grows.
            const double coef = static_cast<double>(e->pnum) / e->pden;
            return mk_mul(mk_mul(lit(coef), mk_pow(e->a, e->pnum - e->pden, e->pden)),
                          diff(e->a, var));
        }
        case node_kind::call: {
            node_ptr da = diff(e->a, var);
            switch (e->fn) {
                case func::sin: return mk_mul(mk_call(func::cos, e->a), da);
                case func::cos: return mk_neg(mk_mul(mk_call(func::sin, e->a), da));
                case func::sinh: return mk_mul(mk_call(func::cosh, e->a), da);
                case func::cosh: return mk_mul(mk_call(func::sinh, e->a), da);
                case func::tanh:
                    return mk_mul(mk_sub(lit(1.0), mk_pow(mk_call(func::tanh, e->a), 2, 1)), da);
                case func::exp: return mk_mul(mk_call(func::exp, e->a), da);
                case func::log: return mk_div(da, e->a);
                case func::sqrt: return mk_div(da, mk_mul(lit(2.0), mk_call(func::sqrt, e->a)));
                case func::arcsin:
                    return mk_div(da, mk_call(func::sqrt, mk_sub(lit(1.0), mk_pow(e->a, 2, 1))));
                case func::arctan: return mk_div(da, mk_add(lit(1.0), mk_pow(e->a, 2, 1)));
            }
            break;
        }
    }
    throw error(errc::config, "derivative: unknown node");
}

void collect(const node_ptr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == node_kind::variable) out.insert(e->name);
    collect(e->a, out);
    collect(e->b, out);
}

jets::jet eval_node(const node_ptr& e, const std::map<std::string, jets::jet>& env) {
    using jets::jet;
    switch (e->kind) {
        case node_kind::literal: {
            const jet& model = env.begin()->second;
            return jet::constant(e->lit, model.num_vars(), model.degree());
        }
        case node_kind::pi_const: {
            const jet& model = env.begin()->second;
            return jet::constant(3.14159265358979323846, model.num_vars(), model.degree());
        }
        case node_kind::variable: {
            auto it = env.find(e->name);
            if (it == env.end()) {
                std::string declared;
                for (const auto& [k, v] : env) declared += (declared.empty() ? "" : ", ") + k;
                throw error(errc::config,
                            "unbound variable '" + e->name + "'; declared: " + declared);
            }
            return it->second;
        }
        case node_kind::neg: return -eval_node(e->a, env);
        case node_kind::add: return eval_node(e->a, env) + eval_node(e->b, env);
        case node_kind::sub: return eval_node(e->a, env) - eval_node(e->b, env);
        case node_kind::mul: return eval_node(e->a, env) * eval_node(e->b, env);
        case node_kind::div: return eval_node(e->a, env) / eval_node(e->b, env);
        case node_kind::pow: {
            jet base = eval_node(e->a, env);
            if (e->pden == 1) return jets::pow_int(base, e->pnum);
            return jets::pow(base, static_cast<double>(e->pnum) / e->pden);
        }
        case node_kind::call: {
            jet a = eval_node(e->a, env);
            switch (e->fn) {
                case func::sin: return jets::sin(a);
                case func::cos: return jets::cos(a);
                case func::sinh: return jets::sinh(a);
                case func::cosh: return jets::cosh(a);
                case func::tanh: return jets::tanh(a);
                case func::exp: return jets::exp(a);
                case func::log: return jets::log(a);
                case func::sqrt: return jets::sqrt(a);
                case func::arcsin: return jets::asin(a);
                case func::arctan: return jets::atan(a);
            }
            break;
        }
    }
    throw error(errc::config, "eval: unknown node");
}

} // namespace

std::string expression::str() const { return print(root_, 0); }

bool operator==(const expression& x, const expression& y) { return equal(x.root_, y.root_); }

expression expression::derivative(const std::string& var) const {
    return expression(diff(root_, var));
}

std::vector<std::string> expression::variables() const {
    std::set<std::string> s;
    collect(root_, s);
    return {s.begin(), s.end()};
}

jets::jet expression::eval(const std::map<std::string, jets::jet>& env) const {
    if (env.empty()) throw error(errc::config, "eval requires a non-empty environment");
    return eval_node(root_, env);
}

double expression::eval_scalar(const std::map<std::string, double>& env) const {
    std::map<std::string, jets::jet> jenv;
    for (const auto& [k, v] : env) jenv.emplace(k, jets::jet::constant(v, 1, 0));
    if (jenv.empty()) jenv.emplace("_", jets::jet::constant(0.0, 1, 0));
    return eval(jenv).value();
}

} // namespace wsm::expr
