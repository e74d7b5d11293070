#pragma once

/** \file
 *  \brief Closed-form expression language for warps and immersion components.
 *
 *  Operators: + - * / unary-minus, ^ with constant rational exponents
 *  (denominators 1, 2, 3). Functions: sin cos sinh cosh tanh exp log sqrt
 *  arcsin arctan. Named constant: pi. Evaluation runs in jet arithmetic, so
 *  one tree yields values and derivatives to any supported order.
 */

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wsm/jets/jet.hpp"

namespace wsm::expr {

enum class node_kind { literal, variable, pi_const, neg, add, sub, mul, div, pow, call };

enum class func { sin, cos, sinh, cosh, tanh, exp, log, sqrt, arcsin, arctan };

struct node;
using node_ptr = std::shared_ptr<const node>;

struct node {
    node_kind kind{};
    double lit = 0.0;       // literal
    std::string name;       // variable
    long long pnum = 0;     // pow: exponent numerator
    int pden = 1;           // pow: exponent denominator, in {1, 2, 3}
    func fn{};              // call
    node_ptr a, b;
};

/// Immutable expression value; cheap to copy.
class expression {
public:
    expression() = default;
    explicit expression(node_ptr root) : root_(std::move(root)) {}

    static expression literal(double v);
    static expression variable(std::string name);

    bool empty() const noexcept { return root_ == nullptr; }
    const node_ptr& root() const noexcept { return root_; }

    /// Canonical text form; parse(str()) reproduces the tree exactly.
    std::string str() const;

    /// Structural equality.
    friend bool operator==(const expression& x, const expression& y);

    /// Symbolic partial derivative with respect to `var`.
    expression derivative(const std::string& var) const;

    /// Free variable names, sorted, unique.
    std::vector<std::string> variables() const;

    /// Evaluate in jet arithmetic; all free variables must be bound.
    jets::jet eval(const std::map<std::string, jets::jet>& env) const;

    /// Scalar convenience evaluation (degree-0 jets underneath).
    double eval_scalar(const std::map<std::string, double>& env) const;

private:
    node_ptr root_;
};

/// Parse source text; throws parse_error with a byte offset on bad syntax.
expression parse(const std::string& source);

} // namespace wsm::expr
