#pragma once

// Scalar backends. Every algorithm in ssq is templated on the field type:
// `Rational` (GMP rationals, exact) or `double` (IEEE binary64).

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ssq {

using Rational = mpq_class;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  // Absolute tolerance used by predicates in the barycentric frame, where all
  // coordinates are O(1).
  static constexpr double zero_tol = 1e-12;
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

template <class S>
S ratio(long num, long den = 1) {
  if constexpr (is_exact_v<S>) {
    return make_rational(num, den);
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

inline double to_double(const Rational& q);

template <class S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return q;
  } else {
    return to_double(q);
  }
}

// Nearest double (get_d truncates toward zero).
inline double to_double(const Rational& q) {
  const double d = q.get_d();
  if (!std::isfinite(d)) return d;
  const double toward = sgn(q) >= 0 ? std::nextafter(d, HUGE_VAL) : std::nextafter(d, -HUGE_VAL);
  if (!std::isfinite(toward)) return d;
  const Rational err_d = abs(q - Rational(d));
  const Rational err_t = abs(q - Rational(toward));
  return err_t < err_d ? toward : d;
}
inline double to_double(double x) { return x; }

inline Rational abs_value(const Rational& q) { return abs(q); }
inline double abs_value(double x) { return std::fabs(x); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x, double tol = scalar_traits<double>::zero_tol) {
  return std::fabs(x) <= tol;
}

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(double x, double tol = scalar_traits<double>::zero_tol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
// Shortest decimal that reads back to the same double.
inline std::string to_string(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Short decimal rendering for human-readable tables.
inline std::string to_decimal(double x, int digits = 12) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}
inline std::string to_decimal(const Rational& q, int digits = 12) {
  return to_decimal(q.get_d(), digits);
}

// Parses "p/q", integers, and decimals with optional exponent ("-0.125e-3")
// exactly. Throws std::invalid_argument on malformed text.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_len;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    std::string exp_text(text.substr(pos + 1));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    }
    if (used != exp_text.size()) {
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    }
  }
  mpz_class num(digits, 10);
  long shift = exponent - frac_len;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

template <class S>
S parse_scalar(std::string_view text) {
  return from_rational<S>(parse_rational(text));
}

}  // namespace ssq
