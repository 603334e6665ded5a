#include "genfrac/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "genfrac/errors.hpp"

namespace genfrac {

struct Expression::Node {
    enum class Kind { number, variable, add, sub, mul, div, pow, neg, exp, log, sin, cos };
    Kind kind;
    double value = 0.0;
    std::size_t index = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Jet = std::vector<double>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = v;
    return n;
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip();
        if (pos_ < text_.size()) fail("an operator or end of input");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& expected) {
        const std::string found =
            pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        throw ParseError("expression: expected " + expected + " at position " + std::to_string(pos_) +
                             ", found " + found,
                         pos_);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (accept('+')) lhs = make(Node::Kind::add, lhs, term());
            else if (accept('-')) lhs = make(Node::Kind::sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (accept('*')) lhs = make(Node::Kind::mul, lhs, unary());
            else if (accept('/')) lhs = make(Node::Kind::div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Kind::neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Node::Kind::pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= text_.size()) fail("a number, name or '('");
        const char c = text_[pos_];
        if (accept('(')) {
            NodePtr inner = expr();
            if (!accept(')')) fail("')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        fail("a number, name or '('");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("a number");
        }
        return make_number(v);
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string id(text_.substr(start, pos_ - start));
        static const std::pair<const char*, Node::Kind> functions[] = {
            {"exp", Node::Kind::exp}, {"log", Node::Kind::log},
            {"sin", Node::Kind::sin}, {"cos", Node::Kind::cos}};
        for (const auto& [fname, kind] : functions) {
            if (id == fname) {
                if (!accept('(')) fail("'(' after " + id);
                NodePtr arg = expr();
                if (!accept(')')) fail("')'");
                return make(kind, arg);
            }
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (id == vars_[i]) {
                auto n = std::make_shared<Node>();
                n->kind = Node::Kind::variable;
                n->index = i;
                return n;
            }
        }
        if (id == "pi") return make_number(std::numbers::pi);
        if (id == "e") return make_number(std::numbers::e);
        pos_ = start;
        std::string expected = "a known name (exp, log, sin, cos, pi, e";
        for (const auto& v : vars_) expected += ", " + v;
        fail(expected + ")");
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, std::span<const double> values) {
    switch (n.kind) {
        case Node::Kind::number: return n.value;
        case Node::Kind::variable: return values[n.index];
        case Node::Kind::add: return eval_node(*n.lhs, values) + eval_node(*n.rhs, values);
        case Node::Kind::sub: return eval_node(*n.lhs, values) - eval_node(*n.rhs, values);
        case Node::Kind::mul: return eval_node(*n.lhs, values) * eval_node(*n.rhs, values);
        case Node::Kind::div: return eval_node(*n.lhs, values) / eval_node(*n.rhs, values);
        case Node::Kind::pow: return std::pow(eval_node(*n.lhs, values), eval_node(*n.rhs, values));
        case Node::Kind::neg: return -eval_node(*n.lhs, values);
        case Node::Kind::exp: return std::exp(eval_node(*n.lhs, values));
        case Node::Kind::log: return std::log(eval_node(*n.lhs, values));
        case Node::Kind::sin: return std::sin(eval_node(*n.lhs, values));
        case Node::Kind::cos: return std::cos(eval_node(*n.lhs, values));
    }
    return 0.0;
}

bool is_constant(const Jet& a) {
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (a[k] != 0.0) return false;
    }
    return true;
}

Jet mul(const Jet& a, const Jet& b) {
    Jet r(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t j = 0; j <= k; ++j) r[k] += a[j] * b[k - j];
    }
    return r;
}

Jet div(const Jet& a, const Jet& b) {
    if (b[0] == 0.0) throw DomainError("expression: division by zero in derivative evaluation");
    Jet q(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        double s = a[k];
        for (std::size_t j = 1; j <= k; ++j) s -= b[j] * q[k - j];
        q[k] = s / b[0];
    }
    return q;
}

Jet jet_exp(const Jet& a) {
    Jet e(a.size(), 0.0);
    e[0] = std::exp(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
        e[k] = s / static_cast<double>(k);
    }
    return e;
}

Jet jet_log(const Jet& a) {
    if (!(a[0] > 0.0)) throw DomainError("expression: log of a non-positive value");
    Jet l(a.size(), 0.0);
    l[0] = std::log(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * l[j] * a[k - j];
        l[k] = (a[k] - s / static_cast<double>(k)) / a[0];
    }
    return l;
}

std::pair<Jet, Jet> jet_sincos(const Jet& a) {
    Jet s(a.size(), 0.0);
    Jet c(a.size(), 0.0);
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double ss = 0.0;
        double cc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            ss += static_cast<double>(j) * a[j] * c[k - j];
            cc += static_cast<double>(j) * a[j] * s[k - j];
        }
        s[k] = ss / static_cast<double>(k);
        c[k] = -cc / static_cast<double>(k);
    }
    return {s, c};
}

Jet jet_pow(const Jet& a, const Jet& b) {
    if (!is_constant(b)) return jet_exp(mul(b, jet_log(a)));
    const double r = b[0];
    if (r == std::floor(r) && std::abs(r) <= 64.0) {
        Jet result(a.size(), 0.0);
        result[0] = 1.0;
        for (int i = 0; i < static_cast<int>(std::abs(r)); ++i) result = mul(result, a);
        if (r < 0.0) {
            Jet one(a.size(), 0.0);
            one[0] = 1.0;
            return div(one, result);
        }
        return result;
    }
    if (!(a[0] > 0.0)) {
        throw DomainError("expression: non-integer power of a non-positive value in derivative evaluation");
    }
    Jet p(a.size(), 0.0);
    p[0] = std::pow(a[0], r);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            s += (r * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * p[k - j];
        }
        p[k] = s / (static_cast<double>(k) * a[0]);
    }
    return p;
}

Jet eval_jet(const Node& n, std::size_t var, std::span<const double> point, std::size_t len) {
    switch (n.kind) {
        case Node::Kind::number: {
            Jet r(len, 0.0);
            r[0] = n.value;
            return r;
        }
        case Node::Kind::variable: {
            Jet r(len, 0.0);
            r[0] = point[n.index];
            if (n.index == var && len > 1) r[1] = 1.0;
            return r;
        }
        case Node::Kind::add:
        case Node::Kind::sub: {
            Jet l = eval_jet(*n.lhs, var, point, len);
            const Jet r = eval_jet(*n.rhs, var, point, len);
            const double sign = n.kind == Node::Kind::add ? 1.0 : -1.0;
            for (std::size_t k = 0; k < len; ++k) l[k] += sign * r[k];
            return l;
        }
        case Node::Kind::mul:
            return mul(eval_jet(*n.lhs, var, point, len), eval_jet(*n.rhs, var, point, len));
        case Node::Kind::div:
            return div(eval_jet(*n.lhs, var, point, len), eval_jet(*n.rhs, var, point, len));
        case Node::Kind::pow:
            return jet_pow(eval_jet(*n.lhs, var, point, len), eval_jet(*n.rhs, var, point, len));
        case Node::Kind::neg: {
            Jet r = eval_jet(*n.lhs, var, point, len);
            for (double& v : r) v = -v;
            return r;
        }
        case Node::Kind::exp: return jet_exp(eval_jet(*n.lhs, var, point, len));
        case Node::Kind::log: return jet_log(eval_jet(*n.lhs, var, point, len));
        case Node::Kind::sin: return jet_sincos(eval_jet(*n.lhs, var, point, len)).first;
        case Node::Kind::cos: return jet_sincos(eval_jet(*n.lhs, var, point, len)).second;
    }
    return Jet(len, 0.0);
}

}  // namespace

Expression::Expression(std::string text, std::vector<std::string> variables,
                       std::shared_ptr<const Node> root)
    : text_(std::move(text)), variables_(std::move(variables)), root_(std::move(root)) {}

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
    Parser parser(text, variables);
    NodePtr root = parser.parse();
    return Expression(std::string(text), std::move(variables), std::move(root));
}

double Expression::evaluate(std::span<const double> values) const {
    if (values.size() != variables_.size()) {
        throw DomainError("expression: expected " + std::to_string(variables_.size()) + " values");
    }
    return eval_node(*root_, values);
}

std::vector<double> Expression::taylor(std::size_t var, std::span<const double> point,
                                       std::size_t order) const {
    if (point.size() != variables_.size() || var >= variables_.size()) {
        throw DomainError("expression: bad variable or point size for Taylor evaluation");
    }
    return eval_jet(*root_, var, point, order + 1);
}

std::vector<double> Expression::derivatives(std::size_t var, std::span<const double> point,
                                            std::size_t order) const {
    std::vector<double> c = taylor(var, point, order);
    double factorial = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        factorial *= static_cast<double>(k);
        c[k] *= factorial;
    }
    return c;
}

}  // namespace genfrac
