#include "genfrac/sampled.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "genfrac/errors.hpp"

namespace genfrac {

SampledFunction::SampledFunction(double a, double b, std::vector<double> values,
                                 std::size_t first_node)
    : a_(a), b_(b), values_(std::move(values)), first_node_(first_node) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw DomainError("sampled function: need finite a < b");
    }
    if (values_.size() < 3) throw DomainError("sampled function: need at least 2 intervals");
    if (first_node_ >= values_.size() - 1) {
        throw DomainError("sampled function: first_node leaves fewer than 2 nodes");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i < first_node_) {
            values_[i] = 0.0;
        } else if (!std::isfinite(values_[i])) {
            throw DomainError("sampled function: non-finite value at node " + std::to_string(i));
        }
    }
}

SampledFunction SampledFunction::sample(double a, double b, std::size_t intervals,
                                        const std::function<double(double)>& f,
                                        std::size_t first_node) {
    SampledFunction grid = zeros(a, b, intervals);
    std::vector<double> values(intervals + 1, 0.0);
    for (std::size_t i = first_node; i <= intervals; ++i) values[i] = f(grid.node(i));
    return SampledFunction(a, b, std::move(values), first_node);
}

SampledFunction SampledFunction::zeros(double a, double b, std::size_t intervals) {
    return SampledFunction(a, b, std::vector<double>(intervals + 1, 0.0));
}

double SampledFunction::node(std::size_t i) const noexcept {
    const std::size_t n = intervals();
    if (i >= n) return b_;
    return a_ + (b_ - a_) * static_cast<double>(i) / static_cast<double>(n);
}

std::vector<double> SampledFunction::nodes() const {
    std::vector<double> t(values_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = node(i);
    return t;
}

bool SampledFunction::same_grid(const SampledFunction& other) const noexcept {
    return a_ == other.a_ && b_ == other.b_ && values_.size() == other.values_.size();
}

double SampledFunction::max_abs() const noexcept {
    double m = 0.0;
    for (std::size_t i = first_node_; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i]));
    return m;
}

double max_abs_diff(const SampledFunction& f, const SampledFunction& g, std::size_t from,
                    std::size_t to) {
    if (!f.same_grid(g)) throw DomainError("max_abs_diff: grids differ");
    to = std::min(to, f.intervals());
    double m = 0.0;
    for (std::size_t i = from; i <= to; ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
}

double discrete_l1(const SampledFunction& f) {
    double sum = 0.0;
    for (std::size_t i = f.first_node(); i + 1 < f.size(); ++i) {
        sum += 0.5 * (std::abs(f[i]) + std::abs(f[i + 1]));
    }
    return sum * f.h();
}

ClosedFormFunction::ClosedFormFunction(Kind kind, double a, double param,
                                       std::vector<double> coeffs)
    : kind_(kind), a_(a), param_(param), coeffs_(std::move(coeffs)) {}

ClosedFormFunction ClosedFormFunction::power(double mu, double a) {
    if (!(mu > -1.0)) throw DomainError("power function: exponent must exceed -1");
    return ClosedFormFunction(Kind::power, a, mu, {});
}

ClosedFormFunction ClosedFormFunction::exponential(double k, double a) {
    return ClosedFormFunction(Kind::exponential, a, k, {});
}

ClosedFormFunction ClosedFormFunction::polynomial(std::vector<double> coeffs, double a) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    return ClosedFormFunction(Kind::polynomial, a, 0.0, std::move(coeffs));
}

ClosedFormFunction ClosedFormFunction::constant(double c, double a) {
    return ClosedFormFunction(Kind::constant, a, c, {});
}

double ClosedFormFunction::operator()(double t) const {
    return derivative(0, t);
}

double ClosedFormFunction::derivative(std::size_t m, double t) const {
    const double x = t - a_;
    switch (kind_) {
        case Kind::constant:
            return m == 0 ? param_ : 0.0;
        case Kind::exponential:
            return std::pow(param_, static_cast<double>(m)) * std::exp(param_ * x);
        case Kind::power: {
            double factor = 1.0;
            for (std::size_t i = 0; i < m; ++i) factor *= param_ - static_cast<double>(i);
            if (factor == 0.0) return 0.0;
            return factor * std::pow(x, param_ - static_cast<double>(m));
        }
        case Kind::polynomial: {
            double sum = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > m;) {
                double factor = 1.0;
                for (std::size_t j = 0; j < m; ++j) factor *= static_cast<double>(i - j);
                sum = sum * x + factor * coeffs_[i];
            }
            return sum;
        }
    }
    return 0.0;
}

SampledFunction ClosedFormFunction::sample(double b, std::size_t intervals) const {
    return SampledFunction::sample(a_, b, intervals, [this](double t) { return (*this)(t); });
}

void write_csv(std::ostream& out, const SampledFunction& f) {
    out << "t,value\n";
    char buffer[64];
    for (std::size_t i = f.first_node(); i < f.size(); ++i) {
        std::snprintf(buffer, sizeof buffer, "%.17g,%.17g\n", f.node(i), f[i]);
        out << buffer;
    }
}

namespace {

double parse_field(std::string_view text, std::size_t line) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("csv: malformed number '" + std::string(text) + "' on line " +
                             std::to_string(line),
                         line);
    }
    return value;
}

}  // namespace

std::vector<std::pair<double, double>> read_csv(std::istream& in) {
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line_no == 1 && line.find_first_of("0123456789") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("csv: expected 't,value' on line " + std::to_string(line_no), line_no);
        }
        std::string_view view(line);
        rows.emplace_back(parse_field(view.substr(0, comma), line_no),
                          parse_field(view.substr(comma + 1), line_no));
    }
    return rows;
}

SampledFunction read_csv_on_grid(std::istream& in, double a, double b, std::size_t intervals) {
    const auto rows = read_csv(in);
    SampledFunction grid = SampledFunction::zeros(a, b, intervals);
    if (rows.empty() || rows.size() > intervals + 1) {
        throw DomainError("csv: expected up to " + std::to_string(intervals + 1) + " rows, got " +
                          std::to_string(rows.size()));
    }
    const std::size_t first = intervals + 1 - rows.size();
    const double tol = 1e-9 * grid.h();
    std::vector<double> values(intervals + 1, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t i = first + r;
        if (std::abs(rows[r].first - grid.node(i)) > tol) {
            throw DomainError("csv: row " + std::to_string(r + 1) + " has t = " +
                              std::to_string(rows[r].first) + ", expected grid node " +
                              std::to_string(grid.node(i)));
        }
        values[i] = rows[r].second;
    }
    return SampledFunction(a, b, std::move(values), first);
}

}  // namespace genfrac
