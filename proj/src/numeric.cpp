#include "mvop/numeric.hpp"

#include <cctype>
#include <charconv>

#include "mvop/errors.hpp"

namespace mvop {

Rational ratio(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational out{mpz_class(num), mpz_class(den)};
    out.canonicalize();
    return out;
}

Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return Rational(0);
    }
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(out);
}

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw DomainError("malformed number: '" + std::string(whole) + "'");
    }
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw DomainError("malformed number: '" + std::string(whole) + "'");
        }
    }
    return mpz_class(std::string(digits), 10);
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = text.substr(e + 1);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        mpz_class ev = parse_integer(exp_part, whole);
        if (ev > 4096) {
            throw DomainError("exponent out of range: '" + std::string(whole) + "'");
        }
        exponent = ev.get_si() * (exp_negative ? -1 : 1);
        text = text.substr(0, e);
    }
    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view frac = text.substr(dot + 1);
        std::string_view integral = text.substr(0, dot);
        if (integral.empty() && frac.empty()) {
            throw DomainError("malformed number: '" + std::string(whole) + "'");
        }
        digits = std::string(integral) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        digits = std::string(text);
    }
    Rational value(parse_integer(digits, whole));
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0) {
        value /= Rational(ten_pow);
    } else {
        value *= Rational(ten_pow);
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) {
        throw DomainError("empty number");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash), text);
        Rational den = parse_decimal(text.substr(slash + 1), text);
        if (sgn(den) == 0) {
            throw DomainError("zero denominator: '" + std::string(text) + "'");
        }
        Rational out = num / den;
        out.canonicalize();
        return out;
    }
    return parse_decimal(text, text);
}

std::string format_number(const Rational& v) { return v.get_str(); }

std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_number(const Extended& v) { return v.str(36); }

}  // namespace mvop
