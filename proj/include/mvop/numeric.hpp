#pragma once

// Numeric backends. Every algorithm in the library is a template over the
// scalar type and is instantiated for `double` (real backend), `Rational`
// (exact backend, GMP rationals) and `Extended` (113-bit binary floating
// point, used where the block recurrence outruns double precision).

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace mvop {

using Rational = mpq_class;
using Extended = boost::multiprecision::cpp_bin_float_quad;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

enum class Backend { real, rational };

template <class T>
T from_rational(const Rational& r) {
    if constexpr (is_exact_v<T>) {
        return r;
    } else if constexpr (std::is_same_v<T, Extended>) {
        return Extended(r.get_num().get_str()) / Extended(r.get_den().get_str());
    } else {
        return static_cast<T>(r.get_d());
    }
}

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(const Extended& v) { return v.convert_to<double>(); }

inline double magnitude(double v) { return std::fabs(v); }
inline Rational magnitude(const Rational& v) { return Rational(abs(v)); }
inline Extended magnitude(const Extended& v) { return abs(v); }

template <class T>
bool is_zero(const T& v) {
    if constexpr (is_exact_v<T>) {
        return sgn(v) == 0;
    } else {
        return v == 0.0;
    }
}

/// num/den in canonical form. Throws DomainError for den == 0.
Rational ratio(long num, long den);

/// Exact binomial coefficient; zero when k < 0 or k > n.
Rational binomial(int n, int k);

/// Parses "7", "-2/5", "0.3", "1.5e-3" into an exact rational. A decimal
/// string is read as the decimal fraction it denotes, not its nearest double.
Rational parse_rational(std::string_view text);

/// Exact rationals print as "p/q" (or "p"); doubles in the shortest form
/// that reads back to the same value.
std::string format_number(const Rational& v);
std::string format_number(double v);
std::string format_number(const Extended& v);

}  // namespace mvop
