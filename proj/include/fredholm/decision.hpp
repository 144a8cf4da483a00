#pragma once

// Sufficient and necessary conditions for completing T_n^d(A) into a target
// class, and the three-way verdict they bracket.

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fredholm/fredholm_data.hpp"

namespace fredholm {

enum class Target { UpperWeyl, LowerWeyl, UpperFredholm, LowerFredholm, Fredholm };

inline constexpr Target kAllTargets[] = {Target::UpperWeyl, Target::LowerWeyl, Target::UpperFredholm,
                                         Target::LowerFredholm, Target::Fredholm};

inline std::string_view to_string(Target t) {
  switch (t) {
    case Target::UpperWeyl: return "upper-weyl";
    case Target::LowerWeyl: return "lower-weyl";
    case Target::UpperFredholm: return "upper-fredholm";
    case Target::LowerFredholm: return "lower-fredholm";
    case Target::Fredholm: return "fredholm";
  }
  return "?";
}

inline Target parse_target(std::string_view s) {
  for (Target t : kAllTargets)
    if (to_string(t) == s) return t;
  throw Error(ErrorCode::ParseError, "unknown target '" + std::string(s) + "'");
}

inline bool is_lower(Target t) { return t == Target::LowerWeyl || t == Target::LowerFredholm; }

/// The target whose conditions on reversed adjoints match t's.
inline Target dual_target(Target t) {
  switch (t) {
    case Target::UpperWeyl: return Target::LowerWeyl;
    case Target::LowerWeyl: return Target::UpperWeyl;
    case Target::UpperFredholm: return Target::LowerFredholm;
    case Target::LowerFredholm: return Target::UpperFredholm;
    case Target::Fredholm: return Target::Fredholm;
  }
  return t;
}

/// How a completion is built. Indices are 1-based block positions.
struct Strategy {
  enum class Kind { ZeroCompletion, RowConstruction, ColumnConstruction, FredholmPair };
  Kind kind = Kind::ZeroCompletion;
  std::size_t j = 0;  // row (RowConstruction, FredholmPair) or column (ColumnConstruction)
  std::size_t k = 0;  // FredholmPair column

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

inline std::string to_string(const Strategy& s) {
  switch (s.kind) {
    case Strategy::Kind::ZeroCompletion: return "zero";
    case Strategy::Kind::RowConstruction: return "row(" + std::to_string(s.j) + ")";
    case Strategy::Kind::ColumnConstruction: return "column(" + std::to_string(s.j) + ")";
    case Strategy::Kind::FredholmPair: return "pair(" + std::to_string(s.j) + "," + std::to_string(s.k) + ")";
  }
  return "?";
}

enum class Verdict { Exists, NotExists, Indeterminate };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Exists: return "Exists";
    case Verdict::NotExists: return "NotExists";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

struct DecisionOutcome {
  Verdict verdict = Verdict::NotExists;
  std::optional<Strategy> strategy;  // set iff verdict == Exists
  bool condition_i = false;
  bool condition_iii = false;

  friend bool operator==(const DecisionOutcome&, const DecisionOutcome&) = default;
};

using Diagonals = std::span<const FredholmData>;

namespace detail {

struct Eval {
  bool holds = false;
  std::optional<Strategy> strategy;
};

inline void check_arity(Diagonals d) {
  if (d.size() < 2) throw Error(ErrorCode::BadArity, "need at least two diagonal entries, got " + std::to_string(d.size()));
}

// D[s] with 1-based s
struct View {
  Diagonals d;
  std::size_t n() const { return d.size(); }
  const FredholmData& operator[](std::size_t s) const { return d[s - 1]; }
  ExtNat alpha(std::size_t s) const { return d[s - 1].alpha; }
  ExtNat beta(std::size_t s) const { return deficiency(d[s - 1]); }
  bool closed(std::size_t s) const { return d[s - 1].range_closed; }
  bool plus(std::size_t s) const { return in_phi_plus(d[s - 1]); }
  bool minus(std::size_t s) const { return in_phi_minus(d[s - 1]); }

  template <class P>
  bool all(std::size_t lo, std::size_t hi, P pred) const {
    for (std::size_t s = lo; s <= hi; ++s)
      if (!pred(s)) return false;
    return true;
  }
  ExtNat sum_alpha() const {
    ExtNat acc = 0;
    for (std::size_t s = 1; s <= n(); ++s) acc += alpha(s);
    return acc;
  }
  ExtNat sum_beta() const {
    ExtNat acc = 0;
    for (std::size_t s = 1; s <= n(); ++s) acc += beta(s);
    return acc;
  }
};

inline Eval upper(const View& v, bool weyl, bool require_closed) {
  const std::size_t n = v.n();
  if (!v.plus(1)) return {};
  if (v.all(2, n, [&](std::size_t s) { return v.plus(s); }) && (!weyl || ext_leq(v.sum_alpha(), v.sum_beta())))
    return {true, Strategy{Strategy::Kind::ZeroCompletion}};
  if (require_closed && !v.all(2, n, [&](std::size_t s) { return v.closed(s); })) return {};
  for (std::size_t j = 1; j <= n - 1; ++j) {
    if (j >= 2 && v.alpha(j).is_inf()) break;  // alpha(D_s) < inf for 2 <= s <= j
    if (v.beta(j).is_inf()) return {true, Strategy{Strategy::Kind::RowConstruction, j}};
  }
  return {};
}

inline Eval lower(const View& v, bool weyl, bool require_closed) {
  const std::size_t n = v.n();
  if (!v.minus(n)) return {};
  if (v.all(1, n - 1, [&](std::size_t s) { return v.minus(s); }) && (!weyl || ext_leq(v.sum_beta(), v.sum_alpha())))
    return {true, Strategy{Strategy::Kind::ZeroCompletion}};
  if (require_closed && !v.all(1, n - 1, [&](std::size_t s) { return v.closed(s); })) return {};
  for (std::size_t j = n; j >= 2; --j) {
    if (j <= n - 1 && v.beta(j).is_inf()) break;  // beta(D_s) < inf for j <= s <= n-1
    if (v.alpha(j).is_inf()) return {true, Strategy{Strategy::Kind::ColumnConstruction, j}};
  }
  return {};
}

inline bool all_fredholm_branch(const View& v) {
  const std::size_t n = v.n();
  return v.all(2, n, [&](std::size_t s) { return v.plus(s); }) && v.all(1, n - 1, [&](std::size_t s) { return v.minus(s); });
}

inline Eval fredholm_i(const View& v) {
  const std::size_t n = v.n();
  if (!(v.plus(1) && v.minus(n))) return {};
  if (all_fredholm_branch(v)) return {true, Strategy{Strategy::Kind::ZeroCompletion}};
  if (!v.all(2, n - 1, [&](std::size_t s) { return v.closed(s); })) return {};
  auto both_finite = [&](std::size_t s) { return v.alpha(s).is_finite() && v.beta(s).is_finite(); };
  for (std::size_t j = 1; j <= n - 1; ++j) {
    if (!(v.beta(j).is_inf() && v.alpha(j).is_finite() && v.all(1, j - 1, both_finite))) continue;
    for (std::size_t k = j + 1; k <= n; ++k)
      if (v.alpha(k).is_inf() && v.beta(k).is_finite() && v.all(k + 1, n, both_finite))
        return {true, Strategy{Strategy::Kind::FredholmPair, j, k}};
  }
  return {};
}

inline bool fredholm_iii(const View& v) {
  const std::size_t n = v.n();
  if (!(v.plus(1) && v.minus(n))) return false;
  if (all_fredholm_branch(v)) return true;
  for (std::size_t j = 1; j <= n - 1; ++j) {
    if (!(v.beta(j).is_inf() && v.all(2, j, [&](std::size_t s) { return v.alpha(s).is_finite(); }))) continue;
    for (std::size_t k = j + 1; k <= n; ++k)
      if (v.alpha(k).is_inf() && v.all(k, n - 1, [&](std::size_t s) { return v.beta(s).is_finite(); })) return true;
  }
  return false;
}

// n = 2: D1 in Phi+, D2 in Phi-, and either beta(D1) = alpha(D2) = inf or
// D2 in Phi+ and D1 in Phi-.
inline Eval fredholm_two(const View& v) {
  if (!(v.plus(1) && v.minus(2))) return {};
  if (v.plus(2) && v.minus(1)) return {true, Strategy{Strategy::Kind::ZeroCompletion}};
  if (v.beta(1).is_inf() && v.alpha(2).is_inf()) return {true, Strategy{Strategy::Kind::FredholmPair, 1, 2}};
  return {};
}

inline Eval evaluate_i(Target t, const View& v) {
  switch (t) {
    case Target::UpperWeyl: return upper(v, true, true);
    case Target::UpperFredholm: return upper(v, false, true);
    case Target::LowerWeyl: return lower(v, true, true);
    case Target::LowerFredholm: return lower(v, false, true);
    case Target::Fredholm: return v.n() == 2 ? fredholm_two(v) : fredholm_i(v);
  }
  return {};
}

}  // namespace detail

/// The sufficient condition (i).
inline bool condition_i(Target t, Diagonals d) {
  detail::check_arity(d);
  return detail::evaluate_i(t, detail::View{d}).holds;
}

/// The necessary condition (iii).
inline bool condition_iii(Target t, Diagonals d) {
  detail::check_arity(d);
  const detail::View v{d};
  switch (t) {
    case Target::UpperWeyl: return detail::upper(v, true, false).holds;
    case Target::UpperFredholm: return detail::upper(v, false, false).holds;
    case Target::LowerWeyl: return detail::lower(v, true, false).holds;
    case Target::LowerFredholm: return detail::lower(v, false, false).holds;
    case Target::Fredholm: return v.n() == 2 ? detail::fredholm_two(v).holds : detail::fredholm_iii(v);
  }
  return false;
}

inline DecisionOutcome decide(Target t, Diagonals d) {
  detail::check_arity(d);
  DecisionOutcome out;
  const detail::Eval e = detail::evaluate_i(t, detail::View{d});
  out.condition_i = e.holds;
  out.condition_iii = condition_iii(t, d);
  if (out.condition_i && !out.condition_iii)
    throw Error(ErrorCode::ConsistencyViolation, "condition (i) holds but (iii) fails for " + std::string(to_string(t)));
  if (out.condition_i) {
    out.verdict = Verdict::Exists;
    out.strategy = e.strategy;
  } else {
    out.verdict = out.condition_iii ? Verdict::Indeterminate : Verdict::NotExists;
  }
  return out;
}

/// D_n*, ..., D_1*: the diagonal of the adjoint matrix read from the bottom.
inline std::vector<FredholmData> reversed_adjoints(Diagonals d) {
  std::vector<FredholmData> out;
  for (auto it = d.rbegin(); it != d.rend(); ++it) out.push_back(adjoint_data(*it));
  return out;
}

/// Decide t by deciding its dual target on the reversed adjoint diagonal.
/// Strategies are translated back: row j of the dual is column n+1-j here.
inline DecisionOutcome decide_by_duality(Target t, Diagonals d) {
  detail::check_arity(d);
  const auto dual = reversed_adjoints(d);
  DecisionOutcome out = decide(dual_target(t), dual);
  if (out.strategy) {
    Strategy& s = *out.strategy;
    const std::size_t n = d.size();
    switch (s.kind) {
      case Strategy::Kind::ZeroCompletion: break;
      case Strategy::Kind::RowConstruction: s = {Strategy::Kind::ColumnConstruction, n + 1 - s.j}; break;
      case Strategy::Kind::ColumnConstruction: s = {Strategy::Kind::RowConstruction, n + 1 - s.j}; break;
      case Strategy::Kind::FredholmPair: s = {Strategy::Kind::FredholmPair, n + 1 - s.k, n + 1 - s.j}; break;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const DecisionOutcome& o) {
  os << to_string(o.verdict);
  if (o.strategy) os << " " << to_string(*o.strategy);
  return os << " (i)=" << o.condition_i << " (iii)=" << o.condition_iii;
}

}  // namespace fredholm
