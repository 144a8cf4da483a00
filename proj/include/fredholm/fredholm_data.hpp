#pragma once

// Pointwise invariants of a single operator and the classes they determine.

#include <optional>
#include <ostream>

#include "fredholm/extmath.hpp"

namespace fredholm {

/// Nullity, dimension of the adjoint's kernel, and closedness of the range.
///
/// The deficiency (codimension of the range) is derived, never stored: it is
/// beta_star when the range is closed and infinite otherwise, since a bounded
/// operator whose range has finite codimension has closed range. Storing
/// beta_star keeps adjoint_data an exact involution for non-closed ranges.
struct FredholmData {
  ExtNat alpha;
  ExtNat beta_star;
  bool range_closed = true;

  friend bool operator==(const FredholmData&, const FredholmData&) = default;
};

struct ClassSet {
  bool in_phi_plus = false;
  bool in_phi_minus = false;
  bool in_phi = false;
  bool in_upper_weyl = false;
  bool in_lower_weyl = false;

  friend bool operator==(const ClassSet&, const ClassSet&) = default;
};

inline ExtNat deficiency(const FredholmData& fd) { return fd.range_closed ? fd.beta_star : INF; }

/// alpha - deficiency, or nullopt when both are infinite.
inline std::optional<ExtInt> index(const FredholmData& fd) {
  const ExtNat beta = deficiency(fd);
  if (fd.alpha.is_inf() && beta.is_inf()) return std::nullopt;
  return ext_sub(fd.alpha, beta);
}

inline bool in_phi_plus(const FredholmData& fd) { return fd.alpha.is_finite() && fd.range_closed; }
inline bool in_phi_minus(const FredholmData& fd) { return deficiency(fd).is_finite(); }

inline ClassSet classify(const FredholmData& fd) {
  ClassSet c;
  c.in_phi_plus = in_phi_plus(fd);
  c.in_phi_minus = in_phi_minus(fd);
  c.in_phi = c.in_phi_plus && c.in_phi_minus;
  const auto ind = index(fd);
  c.in_upper_weyl = c.in_phi_plus && ind && *ind <= ExtInt(0);
  c.in_lower_weyl = c.in_phi_minus && ind && *ind >= ExtInt(0);
  return c;
}

inline FredholmData adjoint_data(const FredholmData& fd) { return {fd.beta_star, fd.alpha, fd.range_closed}; }

/// The invertible operator's data.
inline constexpr FredholmData kInvertible{ExtNat(0), ExtNat(0), true};

inline std::ostream& operator<<(std::ostream& os, const FredholmData& fd) {
  return os << "(alpha=" << fd.alpha << ", beta*=" << fd.beta_star << ", " << (fd.range_closed ? "closed" : "not closed")
            << ")";
}

}  // namespace fredholm
