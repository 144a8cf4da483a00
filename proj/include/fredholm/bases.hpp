#pragma once

// Orthonormal bases of kernels and cokernels of model operators.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "fredholm/model_op.hpp"

namespace fredholm {

/// Coefficients below this are dropped when a basis vector is materialized.
inline constexpr double kCoefficientCutoff = 1e-17;

/// An orthonormal family v_0, v_1, ... (finite or countable) with random
/// access to each vector and to the coordinates e_t it touches.
class VectorFamily {
 public:
  /// Canonical coordinates: a finite sorted head, then base + period*q + residue.
  struct Coordinates {
    std::vector<std::uint64_t> head;
    std::vector<std::uint64_t> residues;  // sorted, empty when there is no tail
    std::uint64_t base = 0;
    std::uint64_t period = 1;
  };
  /// One geometric vector per summand of a shift: v_p = c * sum_q r^q e_(p,q).
  struct Geometric {
    ShiftIndexing indexing;
    cdouble ratio;
  };
  /// Round-robin merge over direct-sum parts.
  struct Merge {
    std::vector<VectorFamily> parts;
  };

  VectorFamily() : node_(std::make_shared<Node>(Coordinates{})) {}
  explicit VectorFamily(Coordinates c) : node_(std::make_shared<Node>(std::move(c))) {}
  explicit VectorFamily(Geometric g) : node_(std::make_shared<Node>(g)) {}
  explicit VectorFamily(Merge m) : node_(std::make_shared<Node>(std::move(m))) {}

  ExtNat count() const {
    return std::visit(
        [](const auto& n) -> ExtNat {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Coordinates>) {
            return n.residues.empty() ? ExtNat(n.head.size()) : INF;
          } else if constexpr (std::is_same_v<T, Geometric>) {
            return n.indexing.mult;
          } else {
            ExtNat c = 0;
            for (const auto& p : n.parts) c += p.count();
            return c;
          }
        },
        *node_);
  }

  /// v_s in canonical coordinates, sorted by index.
  SparseVector vector(std::uint64_t s) const {
    check(s);
    SparseVector out;
    append(s, out, 1, 0);
    detail::compact(out);
    return out;
  }

  /// All (s, <e_t, v_s>) with a nonzero coefficient.
  std::vector<std::pair<std::uint64_t, cdouble>> components_at(std::uint64_t t) const {
    std::vector<std::pair<std::uint64_t, cdouble>> out;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Coordinates>) {
            if (auto s = position(n, t)) out.emplace_back(*s, 1.0);
          } else if constexpr (std::is_same_v<T, Geometric>) {
            const auto [p, q] = n.indexing.split(t);
            if (n.ratio == cdouble(0)) {
              if (q == 0) out.emplace_back(p, 1.0);
            } else {
              const cdouble v = norm_factor(n.ratio) * std::pow(n.ratio, static_cast<double>(q));
              if (std::abs(v) >= kCoefficientCutoff) out.emplace_back(p, v);
            }
          } else {
            const std::uint64_t r = n.parts.size();
            const std::uint64_t part = t % r;
            for (const auto& [ls, v] : n.parts[part].components_at(t / r)) out.emplace_back(merged_index(n, part, ls), v);
          }
        },
        *node_);
    return out;
  }

 private:
  using Node = std::variant<Coordinates, Geometric, Merge>;

  static double norm_factor(cdouble r) { return std::sqrt(1.0 - std::norm(r)); }

  void check(std::uint64_t s) const {
    if (!ext_lt(ExtNat(s), count())) throw Error(ErrorCode::NotAvailable, "basis index out of range");
  }

  static std::uint64_t coordinate(const Coordinates& c, std::uint64_t s) {
    if (s < c.head.size()) return c.head[s];
    const std::uint64_t k = s - c.head.size();
    const std::uint64_t r = c.residues.size();
    return c.base + c.period * (k / r) + c.residues[k % r];
  }

  static std::optional<std::uint64_t> position(const Coordinates& c, std::uint64_t t) {
    if (auto it = std::lower_bound(c.head.begin(), c.head.end(), t); it != c.head.end() && *it == t)
      return static_cast<std::uint64_t>(it - c.head.begin());
    if (c.residues.empty() || t < c.base) return std::nullopt;
    const std::uint64_t q = (t - c.base) / c.period;
    const std::uint64_t rem = (t - c.base) % c.period;
    auto it = std::lower_bound(c.residues.begin(), c.residues.end(), rem);
    if (it == c.residues.end() || *it != rem) return std::nullopt;
    return c.head.size() + q * c.residues.size() + static_cast<std::uint64_t>(it - c.residues.begin());
  }

  // Global index of local vector rho of part i: every part with more than
  // rho vectors contributes min(count, rho) before it, then rank in round rho.
  static std::uint64_t merged_index(const Merge& m, std::uint64_t part, std::uint64_t rho) {
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i < m.parts.size(); ++i) {
      const ExtNat c = m.parts[i].count();
      s += c.is_inf() ? rho : std::min(c.value(), rho);
      if (i < part && ext_lt(ExtNat(rho), c)) ++s;
    }
    return s;
  }

  static std::pair<std::uint64_t, std::uint64_t> merged_split(const Merge& m, std::uint64_t s) {
    std::vector<ExtNat> counts;
    for (const auto& p : m.parts) counts.push_back(p.count());
    std::uint64_t rho = 0;
    for (;;) {
      std::vector<std::uint64_t> active;
      std::optional<std::uint64_t> next_drop;
      for (std::uint64_t i = 0; i < counts.size(); ++i) {
        if (!ext_lt(ExtNat(rho), counts[i])) continue;
        active.push_back(i);
        if (counts[i].is_finite()) next_drop = std::min(next_drop.value_or(counts[i].value()), counts[i].value());
      }
      if (active.empty()) throw Error(ErrorCode::NotAvailable, "basis index out of range");
      // skip whole rounds while the active set is unchanged
      const std::uint64_t a = active.size();
      const std::uint64_t rounds = next_drop ? *next_drop - rho : s / a;
      if (s >= rounds * a && rounds > 0) {
        s -= rounds * a;
        rho += rounds;
        continue;
      }
      return {active[s % a], rho + s / a};
    }
  }

  void append(std::uint64_t s, SparseVector& out, std::uint64_t stride, std::uint64_t offset) const {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Coordinates>) {
            out.push_back({coordinate(n, s) * stride + offset, 1.0});
          } else if constexpr (std::is_same_v<T, Geometric>) {
            if (n.ratio == cdouble(0)) {
              out.push_back({n.indexing.join(s, 0) * stride + offset, 1.0});
              return;
            }
            cdouble v = norm_factor(n.ratio);
            for (std::uint64_t q = 0; std::abs(v) >= kCoefficientCutoff; ++q, v *= n.ratio)
              out.push_back({n.indexing.join(s, q) * stride + offset, v});
          } else {
            const std::uint64_t r = n.parts.size();
            const auto [part, rho] = merged_split(n, s);
            n.parts[part].append(rho, out, stride * r, offset + stride * part);
          }
        },
        *node_);
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

inline VectorFamily diagonal_kernel(const SeqSpec& seq, const Complex& lambda) {
  VectorFamily::Coordinates c;
  switch (seq.kind) {
    case SeqSpec::Kind::FiniteThenConstant:
      for (std::uint64_t i = 0; i < seq.values.size(); ++i)
        if (seq.values[i] == lambda) c.head.push_back(i);
      if (seq.scalar == lambda) {
        c.base = seq.values.size();
        c.residues = {0};
      }
      break;
    case SeqSpec::Kind::Harmonic: {
      const Complex gap = lambda - seq.scalar;
      if (gap.im == 0 && gap.re > 0 && numerator(gap.re) == 1)
        c.head.push_back(static_cast<std::uint64_t>(denominator(gap.re)) - 1);
      break;
    }
    case SeqSpec::Kind::Periodic:
      for (std::uint64_t i = 0; i < seq.values.size(); ++i)
        if (seq.values[i] == lambda) c.residues.push_back(i);
      c.period = seq.values.size();
      break;
  }
  return VectorFamily(std::move(c));
}

}  // namespace detail

/// Orthonormal basis of N(op - lambda) in canonical order.
inline VectorFamily kernel_basis(const ModelOp& op, const Complex& lambda) {
  using K = ModelOp::Kind;
  switch (op.kind()) {
    case K::Diagonal: return detail::diagonal_kernel(op.seq(), lambda);
    case K::ForwardShift: return VectorFamily();
    case K::BackwardShift:
      if (norm2(lambda) >= 1) return VectorFamily();
      return VectorFamily(VectorFamily::Geometric{ShiftIndexing{op.multiplicity()}, to_double(lambda)});
    case K::DirectSum: {
      VectorFamily::Merge m;
      for (const auto& p : op.parts()) m.parts.push_back(kernel_basis(p, lambda));
      return VectorFamily(std::move(m));
    }
    case K::Scaled:
      if (op.scalar().is_zero()) {
        if (!lambda.is_zero()) return VectorFamily();
        return VectorFamily(VectorFamily::Coordinates{{}, {0}, 0, 1});
      }
      return kernel_basis(op.inner(), lambda / op.scalar());
    case K::Shifted: return kernel_basis(op.inner(), lambda - op.scalar());
  }
  return VectorFamily();
}

/// Orthonormal basis of R(op - lambda)^perp, i.e. of N(op* - conj(lambda)).
inline VectorFamily cokernel_family(const ModelOp& op, const Complex& lambda) {
  return kernel_basis(adjoint(op), conj(lambda));
}

/// Descriptor of one cokernel basis vector: the summand path through nested
/// direct sums and the coordinate index inside the innermost operator.
struct BasisDescriptor {
  std::vector<std::uint64_t> summand_path;
  std::uint64_t coordinate = 1;  // 1-based, as in e_1, e_2, ...
  SparseVector vector;  // the same vector in canonical coordinates of the whole space

  friend bool operator==(const BasisDescriptor& a, const BasisDescriptor& b) {
    return a.summand_path == b.summand_path && a.coordinate == b.coordinate;
  }
};

namespace detail {

// Walk down direct sums to name where the leading coordinate of a vector lives.
inline void describe(const ModelOp& op, std::uint64_t t, BasisDescriptor& d) {
  using K = ModelOp::Kind;
  switch (op.kind()) {
    case K::DirectSum: {
      const std::uint64_t r = op.parts().size();
      d.summand_path.push_back(t % r);
      describe(op.parts()[t % r], t / r, d);
      return;
    }
    case K::Scaled:
    case K::Shifted: describe(op.inner(), t, d); return;
    case K::ForwardShift:
    case K::BackwardShift: {
      const auto [p, q] = ShiftIndexing{op.multiplicity()}.split(t);
      d.summand_path.push_back(p);
      d.coordinate = q + 1;
      return;
    }
    case K::Diagonal: d.coordinate = t + 1; return;
  }
}

}  // namespace detail

/// The first `count` cokernel basis vectors of op - lambda.
inline std::vector<BasisDescriptor> cokernel_basis(const ModelOp& op, const Complex& lambda, std::uint64_t count) {
  const FredholmData fd = point_data(op, lambda);
  if (!fd.range_closed) throw Error(ErrorCode::NotAvailable, "range is not closed");
  if (!ext_leq(ExtNat(count), fd.beta_star)) throw Error(ErrorCode::NotAvailable, "count exceeds the cokernel dimension");
  const VectorFamily fam = cokernel_family(op, lambda);
  std::vector<BasisDescriptor> out;
  for (std::uint64_t s = 0; s < count; ++s) {
    BasisDescriptor d;
    d.vector = fam.vector(s);
    detail::describe(op, d.vector.front().index, d);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace fredholm
