#pragma once

/**
 * @file expression.hpp
 * @brief Small arithmetic expression language over named variables.
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary (('*' | '/') unary)*
 *     unary   := ('+' | '-') unary | power
 *     power   := primary ('^' unary)?          right associative
 *     primary := number | name | func '(' expr ')' | '(' expr ')'
 *     func    := exp | log | sin | cos
 *
 * `pi` and `e` are predefined constants. Derivatives of any order are
 * obtained by truncated Taylor arithmetic, not symbolic rewriting.
 */

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace genfrac {

class Expression {
public:
    /// Throws ParseError with the offending position.
    static Expression parse(std::string_view text, std::vector<std::string> variables = {"t"});

    /// Values are given in the order of the variable list.
    double evaluate(std::span<const double> values) const;
    double operator()(double v) const { return evaluate(std::span<const double>(&v, 1)); }
    double operator()(double v0, double v1) const {
        const double values[2] = {v0, v1};
        return evaluate(values);
    }

    /// Taylor coefficients c_0..c_order in variable `var` about `point`.
    std::vector<double> taylor(std::size_t var, std::span<const double> point, std::size_t order) const;

    /// Derivatives d^k/dvar^k for k = 0..order at `point`.
    std::vector<double> derivatives(std::size_t var, std::span<const double> point,
                                    std::size_t order) const;

    const std::string& text() const noexcept { return text_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }

    struct Node;

private:
    Expression(std::string text, std::vector<std::string> variables, std::shared_ptr<const Node> root);

    std::string text_;
    std::vector<std::string> variables_;
    std::shared_ptr<const Node> root_;
};

}  // namespace genfrac
