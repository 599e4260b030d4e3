#include "bergman/poly_format.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <string_view>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view s) {
    if (s.empty()) throw InvalidParams("empty number in coefficient list");
    if (s == "+") return 1.0;   // bare sign before 'i'
    if (s == "-") return -1.0;
    double sign = 1.0;
    if (s.front() == '+') s.remove_prefix(1);  // from_chars rejects a leading plus
    else if (s.front() == '-') {
        sign = -1.0;
        s.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidParams("bad number '" + std::string(s) + "' in coefficient list");
    return sign * value;
}

Complex parse_coeff(std::string_view token) {
    token = strip(token);
    if (token.empty()) throw InvalidParams("empty coefficient");
    if (token.back() == 'i' || token.back() == 'I') {
        std::string_view body = token.substr(0, token.size() - 1);
        // split at the last +/- that is not a leading sign or an exponent sign
        std::size_t split = std::string_view::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string_view::npos) return Complex(0.0, parse_real(body));  // pure imaginary
        return Complex(parse_real(body.substr(0, split)), parse_real(body.substr(split)));
    }
    return Complex(parse_real(token), 0.0);
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ComplexPoly parse_poly(const std::string& text) {
    std::vector<Complex> coeffs;
    std::string_view rest = text;
    while (true) {
        std::size_t comma = rest.find(',');
        coeffs.push_back(parse_coeff(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (coeffs.empty()) throw InvalidParams("empty coefficient list");
    return ComplexPoly(std::move(coeffs));
}

std::string format_complex(Complex c) {
    if (c.imag() == 0.0) return format_real(c.real());
    std::string out = format_real(c.real());
    if (c.imag() >= 0.0) out += "+";
    out += format_real(c.imag());
    out += "i";
    return out;
}

std::string format_poly(const ComplexPoly& poly) {
    std::string out;
    for (int i = 0; i <= poly.degree(); ++i) {
        if (i > 0) out += ",";
        out += format_complex(poly.coeff(i));
    }
    return out;
}

}  // namespace bergman
