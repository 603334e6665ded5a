#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genfrac/expression.hpp"
#include "genfrac/sampled.hpp"

namespace genfrac::cli {

/// A function given on the command line:
///
///   const:c  power:mu  poly:c0,c1,...  exp:k   measured from the interval start a
///   csv:FILE                                  t,value rows on the output grid
///   expr:TEXT                                 expression in one variable
class InputFunction {
public:
    /// Throws ParseError on a malformed description.
    static InputFunction parse(std::string_view text, double a, const std::string& variable = "t");

    bool pointwise() const noexcept { return kind_ != Kind::csv; }

    SampledFunction sample(double a, double b, std::size_t intervals) const;

    /// Only for pointwise functions.
    double value(double x) const;
    /// d^m/dx^m at x. Only for pointwise functions.
    double derivative(int m, double x) const;

    /// Derivatives 0..M sampled on the grid. CSV input falls back to
    /// finite differences and is limited to M <= 3.
    std::vector<SampledFunction> derivative_grids(double a, double b, std::size_t intervals, int M) const;

private:
    enum class Kind { closed_form, expression, csv };

    explicit InputFunction(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::optional<ClosedFormFunction> closed_;
    std::optional<Expression> expr_;
    std::string path_;
};

}  // namespace genfrac::cli
