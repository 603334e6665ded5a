#include "genfrac/problem_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <vector>

#include "genfrac/errors.hpp"
#include "genfrac/expression.hpp"

namespace genfrac {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_number(const std::string& text, std::size_t line, const std::string& key) {
    std::string_view v = text;
    if (!v.empty() && v.front() == '+') v.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
        throw ParseError("problem file line " + std::to_string(line) + ": '" + key +
                             "' expects a number, got '" + text + "'",
                         line);
    }
    return value;
}

std::vector<double> parse_list(const std::string& text, std::size_t line, const std::string& key) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw ParseError("problem file line " + std::to_string(line) + ": '" + key +
                             "' expects a bracketed list like [1,2]",
                         line);
    }
    std::vector<double> values;
    const std::string body = text.substr(1, text.size() - 2);
    if (trim(body).empty()) return values;
    std::size_t start = 0;
    while (true) {
        const auto comma = body.find(',', start);
        values.push_back(parse_number(trim(body.substr(start, comma - start)), line, key));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

}  // namespace

CauchyProblem read_problem(std::istream& in) {
    std::map<std::string, std::pair<std::string, std::size_t>> entries;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ParseError("problem file line " + std::to_string(line) + ": expected key=value", line);
        }
        const std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string value = trim(std::string_view(text).substr(eq + 1));
        static const char* known[] = {"kernel", "alpha",     "beta",    "gamma",
                                      "constants", "rhs",    "lipschitz", "interval"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw ParseError("problem file line " + std::to_string(line) + ": unknown key '" + key + "'",
                             line);
        }
        if (entries.count(key)) {
            throw ParseError("problem file line " + std::to_string(line) + ": duplicate key '" + key + "'",
                             line);
        }
        entries[key] = {value, line};
    }

    auto require = [&](const char* key) -> const std::pair<std::string, std::size_t>& {
        auto it = entries.find(key);
        if (it == entries.end()) {
            throw ParseError(std::string("problem file: missing key '") + key + "'", line);
        }
        return it->second;
    };

    const auto& kernel_entry = require("kernel");
    std::optional<KernelSpec> kernel;
    try {
        kernel = parse_kernel_spec(kernel_entry.first);
    } catch (const ParseError& e) {
        throw ParseError("problem file line " + std::to_string(kernel_entry.second) + ": " + e.what(),
                         kernel_entry.second);
    }

    CauchyProblem p(*kernel);
    p.alpha = parse_number(require("alpha").first, require("alpha").second, "alpha");
    if (auto it = entries.find("beta"); it != entries.end()) {
        p.beta = parse_number(it->second.first, it->second.second, "beta");
    }
    p.gamma = parse_number(require("gamma").first, require("gamma").second, "gamma");
    p.constants = parse_list(require("constants").first, require("constants").second, "constants");
    p.lipschitz = parse_number(require("lipschitz").first, require("lipschitz").second, "lipschitz");
    if (auto it = entries.find("interval"); it != entries.end()) {
        const auto bounds = parse_list(it->second.first, it->second.second, "interval");
        if (bounds.size() != 2) {
            throw ParseError("problem file line " + std::to_string(it->second.second) +
                                 ": interval needs exactly two numbers",
                             it->second.second);
        }
        p.a = bounds[0];
        p.b = bounds[1];
    }
    const auto& rhs_entry = require("rhs");
    try {
        const Expression rhs = Expression::parse(rhs_entry.first, {"t", "u"});
        p.rhs = [rhs](double t, double u) { return rhs(t, u); };
    } catch (const ParseError& e) {
        throw ParseError("problem file line " + std::to_string(rhs_entry.second) + ": " + e.what(),
                         rhs_entry.second);
    }
    p.validate();
    return p;
}

CauchyProblem read_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open problem file '" + path + "'");
    return read_problem(in);
}

}  // namespace genfrac
