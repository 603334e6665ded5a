#include "input_function.hpp"

#include <charconv>
#include <fstream>

#include "genfrac/errors.hpp"
#include "genfrac/rl_oracle.hpp"

namespace genfrac::cli {

namespace {

double number(std::string_view text, std::string_view whole, std::size_t offset) {
    std::string_view v = text;
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
        throw ParseError("function '" + std::string(whole) + "': expected a number at position " +
                             std::to_string(offset) + ", got '" + std::string(text) + "'",
                         offset);
    }
    return value;
}

}  // namespace

InputFunction InputFunction::parse(std::string_view text, double a, const std::string& variable) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("function '" + std::string(text) +
                             "': expected const:, power:, poly:, exp:, csv: or expr:",
                         0);
    }
    const std::string_view kind = text.substr(0, colon);
    const std::string_view body = text.substr(colon + 1);
    const std::size_t at = colon + 1;

    if (kind == "expr") {
        InputFunction f(Kind::expression);
        try {
            f.expr_ = Expression::parse(body, {variable});
        } catch (const ParseError& e) {
            throw ParseError(std::string("function expression: ") + e.what(), at + e.position());
        }
        return f;
    }
    if (kind == "csv") {
        if (body.empty()) throw ParseError("function 'csv:' needs a file name", at);
        InputFunction f(Kind::csv);
        f.path_ = std::string(body);
        return f;
    }

    InputFunction f(Kind::closed_form);
    if (kind == "const") {
        f.closed_ = ClosedFormFunction::constant(number(body, text, at), a);
    } else if (kind == "power") {
        f.closed_ = ClosedFormFunction::power(number(body, text, at), a);
    } else if (kind == "exp") {
        f.closed_ = ClosedFormFunction::exponential(number(body, text, at), a);
    } else if (kind == "poly") {
        std::vector<double> coeffs;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            coeffs.push_back(number(body.substr(start, comma - start), text, at + start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        f.closed_ = ClosedFormFunction::polynomial(std::move(coeffs), a);
    } else {
        throw ParseError("function '" + std::string(text) + "': unknown kind '" + std::string(kind) +
                             "', expected const, power, poly, exp, csv or expr",
                         0);
    }
    return f;
}

SampledFunction InputFunction::sample(double a, double b, std::size_t intervals) const {
    if (kind_ == Kind::csv) {
        std::ifstream in(path_);
        if (!in) throw ParseError("cannot open function file '" + path_ + "'", 0);
        SampledFunction f = read_csv_on_grid(in, a, b, intervals);
        if (f.first_node() != 0) {
            throw DomainError("function file '" + path_ + "' has no value at t = " + std::to_string(a));
        }
        return f;
    }
    return SampledFunction::sample(a, b, intervals, [this](double t) { return value(t); });
}

double InputFunction::value(double x) const {
    if (closed_) return (*closed_)(x);
    if (expr_) return (*expr_)(x);
    throw DomainError("function file '" + path_ + "' has values on its grid only");
}

double InputFunction::derivative(int m, double x) const {
    if (m < 0) throw DomainError("negative derivative order");
    if (closed_) return closed_->derivative(static_cast<std::size_t>(m), x);
    if (expr_) {
        const double point[1] = {x};
        return expr_->derivatives(0, point, static_cast<std::size_t>(m)).back();
    }
    throw DomainError("function file '" + path_ + "' has values on its grid only");
}

std::vector<SampledFunction> InputFunction::derivative_grids(double a, double b, std::size_t intervals,
                                                             int M) const {
    std::vector<SampledFunction> grids;
    if (kind_ == Kind::csv) {
        if (M > 3) throw DomainError("derivatives of tabulated functions are limited to order 3");
        const SampledFunction g = sample(a, b, intervals);
        grids.push_back(g);
        for (int m = 1; m <= M; ++m) grids.push_back(finite_difference(g, m));
        return grids;
    }
    if (expr_) {
        std::vector<std::vector<double>> columns(static_cast<std::size_t>(M) + 1,
                                                 std::vector<double>(intervals + 1));
        const SampledFunction grid = SampledFunction::zeros(a, b, intervals);
        for (std::size_t i = 0; i <= intervals; ++i) {
            const double point[1] = {grid.node(i)};
            const auto d = expr_->derivatives(0, point, static_cast<std::size_t>(M));
            for (int m = 0; m <= M; ++m) columns[m][i] = d[m];
        }
        for (auto& column : columns) grids.emplace_back(a, b, std::move(column));
        return grids;
    }
    for (int m = 0; m <= M; ++m) {
        grids.push_back(SampledFunction::sample(
            a, b, intervals, [this, m](double t) { return derivative(m, t); }));
    }
    return grids;
}

}  // namespace genfrac::cli
