#pragma once

// Exact arithmetic on N u {inf} and Z u {+inf, -inf}.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "fredholm/error.hpp"

namespace fredholm {

/// Nonnegative integer or the countable infinity.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtNat inf() {
    ExtNat x;
    x.inf_ = true;
    return x;
  }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }

  constexpr std::uint64_t value() const {
    if (inf_) throw Error(ErrorCode::InvalidArgument, "value() of an infinite ExtNat");
    return value_;
  }

  friend constexpr bool operator==(const ExtNat&, const ExtNat&) = default;

  // x <= inf for every x, and inf <= inf.
  friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint64_t value_ = 0;
  bool inf_ = false;
};

inline constexpr ExtNat INF = ExtNat::inf();

constexpr ExtNat ext_add(ExtNat a, ExtNat b) {
  if (a.is_inf() || b.is_inf()) return INF;
  return ExtNat(a.value() + b.value());
}

constexpr ExtNat operator+(ExtNat a, ExtNat b) { return ext_add(a, b); }
constexpr ExtNat& operator+=(ExtNat& a, ExtNat b) { return a = ext_add(a, b); }

constexpr bool ext_leq(ExtNat a, ExtNat b) { return a <= b; }
constexpr bool ext_lt(ExtNat a, ExtNat b) { return !ext_leq(b, a); }

/// Integer or a signed infinity.
class ExtInt {
 public:
  enum class Kind { Finite, PosInf, NegInf };

  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
  static constexpr ExtInt neg_inf() { return ExtInt(Kind::NegInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }

  constexpr std::int64_t value() const {
    if (kind_ != Kind::Finite) throw Error(ErrorCode::InvalidArgument, "value() of an infinite ExtInt");
    return value_;
  }

  friend constexpr bool operator==(const ExtInt&, const ExtInt&) = default;

  friend constexpr std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    auto rank = [](const ExtInt& x) { return x.kind_ == Kind::NegInf ? 0 : x.kind_ == Kind::Finite ? 1 : 2; };
    if (auto c = rank(a) <=> rank(b); c != 0) return c;
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  constexpr ExtInt operator-() const {
    switch (kind_) {
      case Kind::PosInf: return neg_inf();
      case Kind::NegInf: return pos_inf();
      case Kind::Finite: break;
    }
    return ExtInt(-value_);
  }

 private:
  explicit constexpr ExtInt(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  std::int64_t value_ = 0;
};

/// a - b; defined only when at least one operand is finite.
inline ExtInt ext_sub(ExtNat a, ExtNat b) {
  if (a.is_inf() && b.is_inf()) throw Error(ErrorCode::BothInfinite, "inf - inf is undefined");
  if (a.is_inf()) return ExtInt::pos_inf();
  if (b.is_inf()) return ExtInt::neg_inf();
  return ExtInt(static_cast<std::int64_t>(a.value()) - static_cast<std::int64_t>(b.value()));
}

inline std::string to_string(ExtNat x) { return x.is_inf() ? "inf" : std::to_string(x.value()); }

inline std::string to_string(ExtInt x) {
  switch (x.kind()) {
    case ExtInt::Kind::PosInf: return "+inf";
    case ExtInt::Kind::NegInf: return "-inf";
    case ExtInt::Kind::Finite: break;
  }
  return std::to_string(x.value());
}

inline std::ostream& operator<<(std::ostream& os, ExtNat x) { return os << to_string(x); }
inline std::ostream& operator<<(std::ostream& os, ExtInt x) { return os << to_string(x); }

}  // namespace fredholm
