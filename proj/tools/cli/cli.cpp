#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "genfrac/calculus_rules.hpp"
#include "genfrac/cauchy.hpp"
#include "genfrac/errors.hpp"
#include "genfrac/kernel.hpp"
#include "genfrac/operator.hpp"
#include "genfrac/problem_file.hpp"
#include "genfrac/psi.hpp"
#include "genfrac/sampled.hpp"
#include "genfrac/transforms.hpp"
#include "input_function.hpp"

namespace genfrac::cli {

namespace {

const char* const footer = R"(Functions (--f, --g, --inner, --outer):
  const:C        constant C
  power:MU       (t - a)^MU
  poly:C0,C1,..  sum C_i (t - a)^i
  exp:K          exp(K (t - a))
  csv:FILE       t,value rows on the output grid (header optional)
  expr:TEXT      expression in t (in x for --outer) with + - * / ^,
                 unary minus, exp log sin cos, constants pi and e

Kernels (--kernel): name[:key=value,...], see `genfrac catalog`.

Output is CSV `t,value` with 17 significant digits.
Exit codes: 0 success, 1 internal error, 2 usage error, 3 numerical failure, 4 domain error.)";

struct Flags {
    std::string kernel = "rl";
    double alpha = 0.0;
    double beta = 0.0;
    std::string interval = "0,1";
    std::size_t n = 1024;
    std::size_t max_terms = 64;
    double tail_tol = 1e-12;
    std::string out;

    std::string f;
    std::string g;
    std::string method;
    std::string type = "rl";
    int M = 4;
    std::string inner;
    std::string outer;
    std::string kind = "laplace";
    double s = 0.0;
    double s_imag = 0.0;
    double k = 0.0;
    double c = 0.0;
    double tol = 1e-10;
    std::size_t max_iter = 200;
    std::string problem;
    std::size_t n_per_step = 256;
    std::size_t max_picard = 200;
    std::string psi;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    std::size_t kmax = 16;
};

void add_truncation(CLI::App* sub, Flags& flags) {
    sub->add_option("--max-terms", flags.max_terms, "Series term cap")->capture_default_str();
    sub->add_option("--tail-tol", flags.tail_tol, "Series tail tolerance")->capture_default_str();
}

void add_kernel(CLI::App* sub, Flags& flags, bool alpha_required = true) {
    sub->add_option("--kernel", flags.kernel, "Kernel spec")->capture_default_str();
    auto* alpha = sub->add_option("--alpha", flags.alpha, "Order alpha > 0");
    if (alpha_required) alpha->required();
    sub->add_option("--beta", flags.beta, "Order beta >= 0")->capture_default_str();
    add_truncation(sub, flags);
}

void add_grid(CLI::App* sub, Flags& flags) {
    sub->add_option("--interval", flags.interval, "Interval a,b")->capture_default_str();
    sub->add_option("--n", flags.n, "Number of grid intervals")->capture_default_str();
    sub->add_option("--out", flags.out, "Write CSV here instead of stdout");
}

void add_operator(CLI::App* sub, Flags& flags) {
    add_kernel(sub, flags);
    add_grid(sub, flags);
}

std::pair<double, double> parse_interval(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("--interval expects a,b, got '" + text + "'", 0);
    try {
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string left = text.substr(0, comma);
        const std::string right = text.substr(comma + 1);
        const double a = std::stod(left, &used_a);
        const double b = std::stod(right, &used_b);
        if (used_a != left.size() || used_b != right.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw ParseError("--interval expects a,b, got '" + text + "'", 0);
    }
}

TruncationPolicy truncation(const Flags& flags) {
    TruncationPolicy trunc;
    trunc.max_terms = flags.max_terms;
    trunc.tail_tol = flags.tail_tol;
    trunc.validate();
    return trunc;
}

GenOperator make_operator(const Flags& flags) {
    const auto [a, b] = parse_interval(flags.interval);
    return GenOperator(parse_kernel_spec(flags.kernel), OrderPair(flags.alpha, flags.beta), a, b,
                       truncation(flags));
}

void require_grid(const Flags& flags) {
    if (flags.n < 2) throw DomainError("--n must be at least 2");
}

void write_residuals(std::ostream& out, const std::vector<double>& residuals) {
    out << "k,residual\n";
    char buffer[64];
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        std::snprintf(buffer, sizeof buffer, "%.17g", residuals[k]);
        out << k << ',' << buffer << '\n';
    }
}

std::string format_number(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

std::string format_complex(std::complex<double> z) {
    if (z.imag() == 0.0) return format_number(z.real());
    std::string text = format_number(z.real());
    text += z.imag() < 0.0 ? "-" : "+";
    text += format_number(std::abs(z.imag()));
    text += "i";
    return text;
}

void cmd_integrate(const Flags& flags, std::ostream& out, std::ostream&) {
    require_grid(flags);
    const GenOperator op = make_operator(flags);
    const auto f = InputFunction::parse(flags.f, op.a()).sample(op.a(), op.b(), flags.n);
    write_csv(out, flags.method == "direct" ? integral_direct(op, f) : integral_series(op, f));
}

void cmd_differentiate(const Flags& flags, std::ostream& out, std::ostream&) {
    require_grid(flags);
    const DerivOperator op(make_operator(flags), flags.type == "caputo" ? DerivativeFlavor::caputo_type
                                                                         : DerivativeFlavor::rl_type);
    const auto f = InputFunction::parse(flags.f, op.base().a()).sample(op.base().a(), op.base().b(), flags.n);
    write_csv(out, derivative(op, f));
}

void cmd_leibniz(const Flags& flags, std::ostream& out, std::ostream&) {
    require_grid(flags);
    const GenOperator op = make_operator(flags);
    const auto f = InputFunction::parse(flags.f, op.a()).sample(op.a(), op.b(), flags.n);
    const auto g = InputFunction::parse(flags.g, op.a()).derivative_grids(op.a(), op.b(), flags.n, flags.M);
    write_csv(out, leibniz_series(op, f, g, flags.M));
}

void cmd_chain(const Flags& flags, std::ostream& out, std::ostream&) {
    require_grid(flags);
    const GenOperator op = make_operator(flags);
    const auto outer = InputFunction::parse(flags.outer, 0.0, "x");
    const auto inner = InputFunction::parse(flags.inner, op.a());
    if (!outer.pointwise() || !inner.pointwise()) {
        throw DomainError("chain: --outer and --inner need closed-form or expression functions");
    }
    write_csv(out, chain_series(
                       op, [&](int r, double x) { return outer.derivative(r, x); },
                       [&](int j, double t) { return inner.derivative(j, t); }, flags.M, flags.n));
}

void cmd_symbol(const Flags& flags, std::ostream& out, std::ostream&) {
    const KernelSpec kernel = parse_kernel_spec(flags.kernel);
    const OrderPair order(flags.alpha, flags.beta);
    const TruncationPolicy trunc = truncation(flags);
    const std::complex<double> value =
        flags.kind == "fourier" ? fourier_symbol(kernel, order, flags.k, trunc)
                                : laplace_symbol(kernel, order, {flags.s, flags.s_imag}, trunc);
    const bool real_axis = flags.kind == "laplace" && flags.s_imag == 0.0 && flags.s > 0.0;
    out << (real_axis ? format_number(value.real()) : format_complex(value)) << '\n';
}

void cmd_solve_linear(const Flags& flags, std::ostream& out, std::ostream& err) {
    require_grid(flags);
    const GenOperator op = make_operator(flags);
    const auto g = InputFunction::parse(flags.g, op.a()).sample(op.a(), op.b(), flags.n);
    const LinearSolveResult result = solve_linear_integral_eq(op, flags.c, g, flags.tol, flags.max_iter);
    err << "iterations " << result.iterations << ", residual " << format_number(result.residual)
        << ", ratio bound " << format_number(result.ratio_bound) << '\n';
    write_csv(out, result.solution);
}

void cmd_solve_cauchy(const Flags& flags, std::ostream& out, std::ostream& err) {
    std::ifstream in(flags.problem);
    if (!in) throw ParseError("cannot open problem file '" + flags.problem + "'", 0);
    CauchyProblem p = read_problem(in);
    p.trunc = truncation(flags);
    const CauchySolution sol = solve_cauchy(p, flags.n_per_step, flags.tol, flags.max_picard);
    err << "windows " << sol.windows.size() << ", step " << format_number(sol.step) << ", h_max "
        << format_number(sol.h_max) << ", residual " << format_number(sol.residual) << '\n';
    for (const auto& w : sol.windows) {
        err << "  [" << format_number(w.t_start) << ", " << format_number(w.t_end) << "] "
            << w.iterations << " sweeps, ratio " << format_number(w.ratio_bound) << '\n';
    }
    write_csv(out, sol.u);
}

void cmd_psi_integrate(const Flags& flags, std::ostream& out, std::ostream&) {
    require_grid(flags);
    const GenOperator op = make_operator(flags);
    const PsiFunction psi = parse_psi_spec(flags.psi);
    const auto f = InputFunction::parse(flags.f, op.a()).sample(op.a(), op.b(), flags.n);
    write_csv(out, flags.method == "nodal" ? psi_integral_nodal(op, psi, f) : psi_integral(op, psi, f));
}

void cmd_check_semigroup(const Flags& flags, std::ostream& out, std::ostream& err) {
    const auto residuals =
        semigroup_residual(parse_kernel_spec(flags.kernel), flags.alpha1, flags.alpha2, flags.beta, flags.kmax);
    write_residuals(out, residuals);
    err << "max residual " << format_number(*std::max_element(residuals.begin(), residuals.end())) << '\n';
}

void cmd_check_inverse(const Flags& flags, std::ostream& out, std::ostream& err) {
    const OrderPair order(flags.alpha, flags.beta);
    const int m = static_cast<int>(std::floor(flags.alpha)) + 1;
    const auto residuals = reciprocal_identity_residual(parse_kernel_spec(flags.kernel), order, m, flags.kmax);
    write_residuals(out, residuals);
    err << "m " << m << ", max residual " << format_number(*std::max_element(residuals.begin(), residuals.end()))
        << '\n';
}

void cmd_catalog(const Flags&, std::ostream& out, std::ostream&) {
    out << "family,parameters,kernel\n"
           "rl,,1/Gamma(alpha)\n"
           "prabhakar,rho;omega,E^rho_{beta;alpha}(omega x)\n"
           "ab,B (default 1),B/(1-beta) E_beta(-beta x/(1-beta)); beta in (0;1)\n"
           "gpf,rho in (0;1],exp((rho-1) x/rho)/(rho^alpha Gamma(alpha))\n"
           "ml,beta;alpha;rho (default 1),E^rho_{beta;alpha}(x)\n"
           "explicit,coeffs=[...];radius (default inf),sum coeffs[n] x^n\n";
}

const char* numerical_kind(const NumericalError& e) {
    if (dynamic_cast<const OutOfRegionError*>(&e)) return "OutOfRegionError";
    if (dynamic_cast<const DivergenceError*>(&e)) return "DivergenceError";
    if (dynamic_cast<const TruncationError*>(&e)) return "TruncationError";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
    return "NumericalError";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Generalised fractional operators with analytic kernels", "genfrac");
    app.require_subcommand(1);
    app.footer(footer);
    Flags flags;

    using Handler = std::function<void(const Flags&, std::ostream&, std::ostream&)>;
    std::map<CLI::App*, Handler> handlers;

    auto* integrate = app.add_subcommand("integrate", "Apply I[A; alpha, beta] to a function");
    add_operator(integrate, flags);
    integrate->add_option("--f", flags.f, "Input function")->required();
    flags.method = "series";
    integrate->add_option("--method", flags.method, "series or direct")
        ->check(CLI::IsMember({"series", "direct"}))
        ->capture_default_str();
    handlers[integrate] = cmd_integrate;

    auto* differentiate = app.add_subcommand("differentiate", "Apply the RL- or Caputo-type derivative");
    add_operator(differentiate, flags);
    differentiate->add_option("--f", flags.f, "Input function")->required();
    differentiate->add_option("--type", flags.type, "rl or caputo")
        ->check(CLI::IsMember({"rl", "caputo"}))
        ->capture_default_str();
    handlers[differentiate] = cmd_differentiate;

    auto* leibniz = app.add_subcommand("leibniz", "Leibniz series for I(f g)");
    add_operator(leibniz, flags);
    leibniz->add_option("--f", flags.f, "Function f")->required();
    leibniz->add_option("--g", flags.g, "Smooth multiplier g")->required();
    leibniz->add_option("--M", flags.M, "Highest derivative of g")->capture_default_str()->check(CLI::Range(0, 64));
    handlers[leibniz] = cmd_leibniz;

    auto* chain = app.add_subcommand("chain", "Chain-rule series for I applied to 1 * F(g(t)), a = 0");
    add_operator(chain, flags);
    chain->add_option("--outer", flags.outer, "Outer function F(x)")->required();
    chain->add_option("--inner", flags.inner, "Inner function g(t)")->required();
    chain->add_option("--M", flags.M, "Highest derivative order")->capture_default_str()->check(CLI::Range(0, 12));
    handlers[chain] = cmd_chain;

    auto* symbol = app.add_subcommand("symbol", "Laplace or Fourier symbol of the operator");
    add_kernel(symbol, flags);
    symbol->add_option("--kind", flags.kind, "laplace or fourier")
        ->check(CLI::IsMember({"laplace", "fourier"}))
        ->capture_default_str();
    symbol->add_option("--s", flags.s, "Real part of s");
    symbol->add_option("--s-imag", flags.s_imag, "Imaginary part of s")->capture_default_str();
    symbol->add_option("--k", flags.k, "Fourier frequency");
    handlers[symbol] = cmd_symbol;

    auto* solve_linear = app.add_subcommand("solve-linear", "Solve I f + c f = g by fixed-point iteration");
    add_operator(solve_linear, flags);
    solve_linear->add_option("--c", flags.c, "Constant c != 0")->required();
    solve_linear->add_option("--g", flags.g, "Right-hand side")->required();
    solve_linear->add_option("--tol", flags.tol, "Stopping tolerance")->capture_default_str();
    solve_linear->add_option("--max-iter", flags.max_iter, "Iteration cap")->capture_default_str();
    handlers[solve_linear] = cmd_solve_linear;

    auto* solve_cauchy_cmd = app.add_subcommand("solve-cauchy", "Solve a Cauchy-type problem from a file");
    solve_cauchy_cmd->add_option("--problem", flags.problem, "Problem file")->required();
    solve_cauchy_cmd->add_option("--n-per-step", flags.n_per_step, "Grid intervals per window")
        ->capture_default_str();
    solve_cauchy_cmd->add_option("--tol", flags.tol, "Picard tolerance")->capture_default_str();
    solve_cauchy_cmd->add_option("--max-picard", flags.max_picard, "Sweeps per window")->capture_default_str();
    solve_cauchy_cmd->add_option("--out", flags.out, "Write CSV here instead of stdout");
    add_truncation(solve_cauchy_cmd, flags);
    handlers[solve_cauchy_cmd] = cmd_solve_cauchy;

    auto* psi_integrate = app.add_subcommand("psi-integrate", "Apply the operator with respect to psi");
    add_operator(psi_integrate, flags);
    psi_integrate->add_option("--psi", flags.psi, "identity, log, power:rho=R or powsigma:sigma=S")
        ->required();
    psi_integrate->add_option("--f", flags.f, "Input function")->required();
    psi_integrate->add_option("--method", flags.method, "resample or nodal")
        ->check(CLI::IsMember({"resample", "nodal"}));
    handlers[psi_integrate] = cmd_psi_integrate;

    auto* semigroup = app.add_subcommand("check-semigroup", "Residuals of the coefficient semigroup identity");
    semigroup->add_option("--kernel", flags.kernel, "Kernel spec")->capture_default_str();
    semigroup->add_option("--alpha1", flags.alpha1, "First order")->required();
    semigroup->add_option("--alpha2", flags.alpha2, "Second order")->required();
    semigroup->add_option("--beta", flags.beta, "Order beta")->capture_default_str();
    semigroup->add_option("--kmax", flags.kmax, "Highest coefficient index")->capture_default_str();
    semigroup->add_option("--out", flags.out, "Write CSV here instead of stdout");
    handlers[semigroup] = cmd_check_semigroup;

    auto* inverse = app.add_subcommand("check-inverse", "Residuals of the reciprocal-kernel identity");
    inverse->add_option("--kernel", flags.kernel, "Kernel spec")->capture_default_str();
    inverse->add_option("--alpha", flags.alpha, "Order alpha")->required();
    inverse->add_option("--beta", flags.beta, "Order beta")->capture_default_str();
    inverse->add_option("--kmax", flags.kmax, "Highest coefficient index")->capture_default_str();
    inverse->add_option("--out", flags.out, "Write CSV here instead of stdout");
    handlers[inverse] = cmd_check_inverse;

    auto* catalog = app.add_subcommand("catalog", "List the kernel families");
    handlers[catalog] = cmd_catalog;

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        if (chosen == psi_integrate && flags.method == "series") flags.method = "resample";
        if (chosen == symbol) {
            if (flags.kind == "laplace" && symbol->count("--s") == 0) throw ParseError("symbol: --s is required", 0);
            if (flags.kind == "fourier" && symbol->count("--k") == 0) throw ParseError("symbol: --k is required", 0);
        }
        std::ostringstream buffer;
        handlers.at(chosen)(flags, buffer, err);
        if (flags.out.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(flags.out);
            if (!file || !(file << buffer.str())) throw ParseError("cannot write '" + flags.out + "'", 0);
        }
        return exit_ok;
    } catch (const ParseError& e) {
        err << "genfrac: ParseError: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError& e) {
        err << "genfrac: DomainError: " << e.what() << '\n';
        return exit_domain;
    } catch (const NumericalError& e) {
        err << "genfrac: " << numerical_kind(e) << ": " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "genfrac: internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

}  // namespace genfrac::cli
