#pragma once

// Pointwise spectral sets of the diagonal and the two-sided bounds they give
// for the intersection over all completions.

#include <string>
#include <string_view>
#include <vector>

#include "fredholm/decision.hpp"
#include "fredholm/model_op.hpp"
#include "fredholm/parallel.hpp"

namespace fredholm {

enum class Corollary { AW, SW, SFPlus, SFMinus, E, E2 };

inline constexpr Corollary kAllCorollaries[] = {Corollary::AW, Corollary::SW, Corollary::SFPlus,
                                                Corollary::SFMinus, Corollary::E, Corollary::E2};

inline std::string_view to_string(Corollary c) {
  switch (c) {
    case Corollary::AW: return "aw";
    case Corollary::SW: return "sw";
    case Corollary::SFPlus: return "sf+";
    case Corollary::SFMinus: return "sf-";
    case Corollary::E: return "e";
    case Corollary::E2: return "e2";
  }
  return "?";
}

inline Corollary parse_corollary(std::string_view s) {
  for (Corollary c : kAllCorollaries)
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::ParseError, "unknown corollary '" + std::string(s) + "'");
}

/// The completion target whose spectrum the corollary brackets.
inline Target corollary_target(Corollary c) {
  switch (c) {
    case Corollary::AW: return Target::UpperWeyl;
    case Corollary::SW: return Target::LowerWeyl;
    case Corollary::SFPlus: return Target::UpperFredholm;
    case Corollary::SFMinus: return Target::LowerFredholm;
    case Corollary::E:
    case Corollary::E2: return Target::Fredholm;
  }
  return Target::Fredholm;
}

/// One named point set; rhs_only sets appear in the upper bound only.
struct NamedFlag {
  std::string name;
  bool value = false;
  bool rhs_only = false;

  friend bool operator==(const NamedFlag&, const NamedFlag&) = default;
};

/// Membership of lambda in every set the corollary names, in a fixed order.
inline std::vector<NamedFlag> delta_sets(Corollary c, Diagonals d) {
  const std::size_t n = d.size();
  if (n < 2 || (c == Corollary::E2 && n != 2))
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(c)) + " does not apply to n=" + std::to_string(n));
  auto alpha = [&](std::size_t s) { return d[s - 1].alpha; };
  auto beta = [&](std::size_t s) { return deficiency(d[s - 1]); };
  auto not_closed = [&](std::size_t s) { return !d[s - 1].range_closed; };
  auto sum_alpha = [&](std::size_t lo, std::size_t hi) {
    ExtNat acc = 0;
    for (std::size_t s = lo; s <= hi; ++s) acc += alpha(s);
    return acc;
  };
  auto sum_beta = [&](std::size_t lo, std::size_t hi) {
    ExtNat acc = 0;
    for (std::size_t s = lo; s <= hi; ++s) acc += beta(s);
    return acc;
  };
  // alpha(D_k) = inf with finite deficiencies above it, and the mirror image
  auto kernel_delta = [&](std::size_t k) { return alpha(k).is_inf() && sum_beta(1, k - 1).is_finite(); };
  auto cokernel_delta = [&](std::size_t k) { return beta(k).is_inf() && sum_alpha(k + 1, n).is_finite(); };

  const bool two = n == 2;
  auto idx = [](std::string base, std::size_t k) { return base + "_" + std::to_string(k); };
  std::vector<NamedFlag> out;
  const bool sf_plus_d1 = !in_phi_plus(d[0]);
  const bool sf_minus_dn = !in_phi_minus(d[n - 1]);

  switch (c) {
    case Corollary::AW:
    case Corollary::SFPlus: {
      const bool weyl = c == Corollary::AW;
      out.push_back({"sf_plus_d1", sf_plus_d1});
      for (std::size_t k = 2; k <= n; ++k) out.push_back({two ? "delta" : idx("delta", k), kernel_delta(k)});
      if (weyl) out.push_back({two ? "delta_prime" : idx("delta", n + 1), ext_lt(sum_beta(1, n), sum_alpha(1, n))});
      for (std::size_t k = 2; k <= n; ++k)
        out.push_back({two ? (weyl ? "delta_dprime" : "delta_prime") : idx("delta_prime", k), not_closed(k), true});
      break;
    }
    case Corollary::SW:
    case Corollary::SFMinus: {
      const bool weyl = c == Corollary::SW;
      out.push_back({"sf_minus_dn", sf_minus_dn});
      for (std::size_t k = 1; k <= n - 1; ++k) out.push_back({two ? "delta" : idx("delta", k), cokernel_delta(k)});
      if (weyl) out.push_back({two ? "delta_prime" : idx("delta", n + 1), ext_lt(sum_alpha(1, n), sum_beta(1, n))});
      for (std::size_t k = 1; k <= n - 1; ++k)
        out.push_back({two ? (weyl ? "delta_dprime" : "delta_prime") : idx("delta_prime", k), not_closed(k), true});
      break;
    }
    case Corollary::E:
    case Corollary::E2: {
      out.push_back({"sf_plus_d1", sf_plus_d1});
      out.push_back({"sf_minus_dn", sf_minus_dn});
      for (std::size_t k = 2; k <= n - 1; ++k) out.push_back({idx("delta", k), kernel_delta(k) || cokernel_delta(k)});
      out.push_back({two ? "delta" : idx("delta", n), kernel_delta(n) || cokernel_delta(1)});
      for (std::size_t k = 2; k <= n - 1; ++k) out.push_back({idx("delta_prime", k), not_closed(k), true});
      break;
    }
  }
  return out;
}

/// Exact rectangular grid re_min + p*step, im_min + q*step.
struct Grid {
  Rational re_min, re_max, im_min, im_max, step;

  void validate() const {
    if (step <= 0) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
    if (re_max < re_min || im_max < im_min) throw Error(ErrorCode::InvalidArgument, "grid bounds are reversed");
  }
  std::uint64_t count_re() const { return steps(re_max - re_min) + 1; }
  std::uint64_t count_im() const { return steps(im_max - im_min) + 1; }
  std::uint64_t size() const { return count_re() * count_im(); }

  std::uint64_t steps(const Rational& width) const {
    const Rational q = width / step;
    return static_cast<std::uint64_t>(BigInt(numerator(q) / denominator(q)));
  }

  /// Row-major: imaginary part outer, real part inner, both ascending.
  std::vector<Complex> points() const {
    validate();
    std::vector<Complex> out;
    const std::uint64_t nr = count_re(), ni = count_im();
    out.reserve(nr * ni);
    for (std::uint64_t q = 0; q < ni; ++q)
      for (std::uint64_t p = 0; p < nr; ++p) out.emplace_back(re_min + step * p, im_min + step * q);
    return out;
  }
};

/// "re0:re1:im0:im1:step" with exact decimal or p/q fields.
inline Grid parse_grid(std::string_view spec) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  if (fields.size() != 5) throw Error(ErrorCode::ParseError, "grid must be re0:re1:im0:im1:step");
  Grid g{parse_rational(fields[0]), parse_rational(fields[1]), parse_rational(fields[2]), parse_rational(fields[3]),
         parse_rational(fields[4])};
  g.validate();
  return g;
}

inline std::string to_string(const Grid& g) {
  return to_string(g.re_min) + ":" + to_string(g.re_max) + ":" + to_string(g.im_min) + ":" + to_string(g.im_max) + ":" +
         to_string(g.step);
}

struct PointReport {
  Complex lambda;
  std::vector<FredholmData> data;
  std::vector<NamedFlag> deltas;
  bool in_lhs = false;
  bool in_rhs = false;
  bool cond_i = false;
  bool cond_iii = false;
  Verdict verdict = Verdict::NotExists;
};

struct SandwichReport {
  Corollary corollary = Corollary::AW;
  Target target = Target::UpperWeyl;
  std::vector<PointReport> points;
  std::vector<std::size_t> violations;  // points breaking a nesting or bracket assertion
  std::size_t lhs_divergence = 0;       // points where lhs differs from the complement of (iii)
  std::size_t rhs_divergence = 0;       // points where rhs differs from the complement of (i)
};

/// Evaluate the corollary at one point. The nesting lhs => rhs and the
/// brackets lhs => not (iii), not rhs => (i) are what `consistent` checks.
inline PointReport evaluate_point(Corollary c, const std::vector<ModelOp>& diagonals, const Complex& lambda) {
  PointReport r;
  r.lambda = lambda;
  for (const auto& op : diagonals) r.data.push_back(point_data(op, lambda));
  r.deltas = delta_sets(c, r.data);
  for (const auto& f : r.deltas) {
    if (f.value && !f.rhs_only) r.in_lhs = true;
    if (f.value) r.in_rhs = true;
  }
  const DecisionOutcome o = decide(corollary_target(c), r.data);
  r.cond_i = o.condition_i;
  r.cond_iii = o.condition_iii;
  r.verdict = o.verdict;
  return r;
}

inline bool consistent(const PointReport& r, Corollary c) {
  if (r.in_lhs && !r.in_rhs) return false;
  if (r.in_lhs && r.cond_iii) return false;
  if (!r.in_rhs && !r.cond_i) return false;
  if (c == Corollary::E2 && r.in_lhs != r.in_rhs) return false;
  return true;
}

inline SandwichReport sandwich_report(Corollary c, Target target, const std::vector<ModelOp>& diagonals, const Grid& grid) {
  if (target != corollary_target(c))
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(c)) + " brackets the " +
                                                std::string(to_string(corollary_target(c))) + " target");
  const auto lambdas = grid.points();
  SandwichReport rep;
  rep.corollary = c;
  rep.target = target;
  rep.points.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) { rep.points[i] = evaluate_point(c, diagonals, lambdas[i]); });
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const PointReport& p = rep.points[i];
    if (!consistent(p, c)) rep.violations.push_back(i);
    if (p.in_lhs != !p.cond_iii) ++rep.lhs_divergence;
    if (p.in_rhs != !p.cond_i) ++rep.rhs_divergence;
  }
  return rep;
}

inline SandwichReport sandwich_report(Corollary c, const std::vector<ModelOp>& diagonals, const Grid& grid) {
  return sandwich_report(c, corollary_target(c), diagonals, grid);
}

/// Throws ConsistencyViolation naming the first offending point.
inline void require_consistent(const SandwichReport& rep) {
  if (rep.violations.empty()) return;
  const PointReport& p = rep.points[rep.violations.front()];
  std::string msg = std::to_string(rep.violations.size()) + " inconsistent point(s); first at lambda=" + to_string(p.lambda) +
                    " lhs=" + std::to_string(p.in_lhs) + " rhs=" + std::to_string(p.in_rhs) +
                    " (i)=" + std::to_string(p.cond_i) + " (iii)=" + std::to_string(p.cond_iii);
  throw Error(ErrorCode::ConsistencyViolation, msg);
}

}  // namespace fredholm
