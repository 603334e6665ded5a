#include <cctype>
#include <charconv>
#include <string>

#include "genfrac/errors.hpp"
#include "genfrac/kernel.hpp"

namespace genfrac {

namespace {

class SpecLexer {
public:
    explicit SpecLexer(std::string_view text) : text_(text) {}

    bool at_end() const { return pos_ >= text_.size(); }
    std::size_t pos() const { return pos_; }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = at_end() ? "end of input" : "'" + std::string(1, peek()) + "'";
        throw ParseError("kernel spec: expected " + expected + " at position " +
                             std::to_string(pos_) + ", found " + found,
                         pos_);
    }

    void expect(char c) {
        if (peek() != c) fail("'" + std::string(1, c) + "'");
        ++pos_;
    }

    std::string identifier(const std::string& what) {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        if (pos_ == start) fail(what);
        return std::string(text_.substr(start, pos_ - start));
    }

    double number() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                             peek() == '-' || peek() == '+')) {
            // Stop a sign that does not follow an exponent marker.
            if ((peek() == '-' || peek() == '+') && pos_ != start) {
                const char prev = text_[pos_ - 1];
                if (prev != 'e' && prev != 'E') break;
            }
            ++pos_;
        }
        std::string_view token = text_.substr(start, pos_ - start);
        if (!token.empty() && token.front() == '+') token.remove_prefix(1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
            pos_ = start;
            fail("a number");
        }
        return value;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

KernelFamily family_from_name(const std::string& name, std::size_t position) {
    if (name == "rl") return KernelFamily::rl;
    if (name == "prabhakar") return KernelFamily::prabhakar;
    if (name == "ab") return KernelFamily::ab;
    if (name == "gpf") return KernelFamily::gpf;
    if (name == "ml") return KernelFamily::ml;
    if (name == "explicit") return KernelFamily::explicit_list;
    throw ParseError("kernel spec: unknown kernel '" + name +
                         "', expected one of rl, prabhakar, ab, gpf, ml, explicit",
                     position);
}

}  // namespace

KernelSpec parse_kernel_spec(std::string_view text) {
    SpecLexer lex(text);
    const std::string name = lex.identifier("a kernel name");
    const KernelFamily family = family_from_name(name, 0);

    KernelParams params;
    if (!lex.at_end()) {
        lex.expect(':');
        while (true) {
            const std::size_t key_pos = lex.pos();
            const std::string key = lex.identifier("a parameter name");
            if (params.count(key)) {
                throw ParseError("kernel spec: duplicate parameter '" + key + "' at position " +
                                     std::to_string(key_pos),
                                 key_pos);
            }
            lex.expect('=');
            if (lex.peek() == '[') {
                lex.expect('[');
                std::vector<double> values;
                if (lex.peek() != ']') {
                    values.push_back(lex.number());
                    while (lex.peek() == ',') {
                        lex.expect(',');
                        values.push_back(lex.number());
                    }
                }
                lex.expect(']');
                params[key] = std::move(values);
            } else {
                params[key] = lex.number();
            }
            if (lex.at_end()) break;
            lex.expect(',');
        }
    }
    return make_kernel(family, params);
}

}  // namespace genfrac
