#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

namespace genfrac {

/// Function values on the uniform grid t_i = a + i (b - a) / N, i = 0..N.
///
/// Nodes below first_node() carry no data (a singular or excluded left end);
/// their stored value is 0 and the CSV writer skips them.
class SampledFunction {
public:
    SampledFunction(double a, double b, std::vector<double> values, std::size_t first_node = 0);

    static SampledFunction sample(double a, double b, std::size_t intervals,
                                  const std::function<double(double)>& f,
                                  std::size_t first_node = 0);
    static SampledFunction zeros(double a, double b, std::size_t intervals);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t intervals() const noexcept { return values_.size() - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    double h() const noexcept { return (b_ - a_) / static_cast<double>(intervals()); }
    std::size_t first_node() const noexcept { return first_node_; }

    double node(std::size_t i) const noexcept;
    std::vector<double> nodes() const;

    double operator[](std::size_t i) const noexcept { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Same a, b and node count.
    bool same_grid(const SampledFunction& other) const noexcept;

    /// max |f(t_i)| over nodes with data.
    double max_abs() const noexcept;

private:
    double a_;
    double b_;
    std::vector<double> values_;
    std::size_t first_node_;
};

/// max_i |f_i - g_i| for i in [from, to]. `to` defaults to the last node.
double max_abs_diff(const SampledFunction& f, const SampledFunction& g, std::size_t from = 0,
                    std::size_t to = std::numeric_limits<std::size_t>::max());

/// Trapezoid approximation of int_a^b |f|.
double discrete_l1(const SampledFunction& f);

/// Oracle basis of closed-form test functions, measured from a reference point a:
/// power (t-a)^mu, exponential e^{k(t-a)}, polynomial sum c_i (t-a)^i, constant c.
class ClosedFormFunction {
public:
    enum class Kind { power, exponential, polynomial, constant };

    static ClosedFormFunction power(double mu, double a = 0.0);
    static ClosedFormFunction exponential(double k, double a = 0.0);
    static ClosedFormFunction polynomial(std::vector<double> coeffs, double a = 0.0);
    static ClosedFormFunction constant(double c, double a = 0.0);

    Kind kind() const noexcept { return kind_; }
    double reference() const noexcept { return a_; }
    double parameter() const noexcept { return param_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }

    double operator()(double t) const;
    /// m-th derivative at t.
    double derivative(std::size_t m, double t) const;

    SampledFunction sample(double b, std::size_t intervals) const;

private:
    ClosedFormFunction(Kind kind, double a, double param, std::vector<double> coeffs);

    Kind kind_;
    double a_;
    double param_;
    std::vector<double> coeffs_;
};

/// Writes `t,value` with 17 significant digits, skipping nodes below first_node.
void write_csv(std::ostream& out, const SampledFunction& f);

/// Reads `t,value` rows (header optional). Throws ParseError on malformed rows.
std::vector<std::pair<double, double>> read_csv(std::istream& in);

/// Reads CSV rows and checks they sit on the grid of `intervals` uniform
/// intervals over [a, b], ending at b. Leading nodes may be absent.
SampledFunction read_csv_on_grid(std::istream& in, double a, double b, std::size_t intervals);

}  // namespace genfrac
