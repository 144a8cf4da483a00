#pragma once

// Exact complex rationals for the symbolic layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include "fredholm/error.hpp"

namespace fredholm {

// expression templates off so that auto, ?: and std::max see plain values
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

struct Complex {
  Rational re;
  Rational im;

  Complex() = default;
  Complex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  Complex(int r) : re(r) {}                                                              // NOLINT

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

/// |z|^2, exact.
inline Rational norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }

/// |re| + |im|, an exact upper bound on |z|.
inline Rational abs1(const Complex& z) { return abs(z.re) + abs(z.im); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline std::complex<double> to_double(const Complex& z) { return {to_double(z.re), to_double(z.im)}; }

/// Integer, "p/q", or decimal with optional exponent ("-0.05", "1e-3").
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'"); };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw fail();

  auto parse_int = [&](std::string_view t) -> BigInt {
    std::size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    if (i == t.size()) throw fail();
    BigInt v = 0;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw fail();
      v = v * 10 + (t[i] - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt den = parse_int(std::string_view(s).substr(slash + 1));
    if (den == 0) throw fail();
    return Rational(parse_int(std::string_view(s).substr(0, slash))) / Rational(den);
  }

  std::string_view sv(s);
  long exponent = 0;
  if (auto e = sv.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<long>(parse_int(sv.substr(e + 1)));
    sv = sv.substr(0, e);
  }
  bool neg = false;
  if (!sv.empty() && (sv.front() == '+' || sv.front() == '-')) {
    neg = sv.front() == '-';
    sv.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : sv) {
    if (c == '.') {
      if (seen_dot) throw fail();
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  Rational value(parse_int(digits));
  const long shift = exponent - frac_digits;
  const Rational scale(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift)));
  value = shift < 0 ? value / scale : value * scale;
  return neg ? Rational(-value) : value;
}

/// "p" when integral, otherwise "p/q" in lowest terms.
inline std::string to_string(const Rational& q) {
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline std::string to_string(const Complex& z) {
  if (z.im == 0) return to_string(z.re);
  return to_string(z.re) + (z.im < 0 ? "-" : "+") + to_string(Rational(abs(z.im))) + "i";
}

inline std::ostream& operator<<(std::ostream& os, const Complex& z) { return os << to_string(z); }

}  // namespace fredholm
