#pragma once

// Finitely described operators on l2 with exact pointwise invariants.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "fredholm/error.hpp"
#include "fredholm/extmath.hpp"
#include "fredholm/fredholm_data.hpp"
#include "fredholm/rational.hpp"

namespace fredholm {

using cdouble = std::complex<double>;

/// Diagonal entries d_1, d_2, ... of a diagonal operator.
struct SeqSpec {
  enum class Kind { FiniteThenConstant, Harmonic, Periodic };

  Kind kind = Kind::FiniteThenConstant;
  std::vector<Complex> values;  // prefix, or the repeating block
  Complex scalar;               // tail, or the harmonic center

  static SeqSpec finite_then_constant(std::vector<Complex> prefix, Complex tail) {
    return {Kind::FiniteThenConstant, std::move(prefix), std::move(tail)};
  }
  static SeqSpec harmonic(Complex center) { return {Kind::Harmonic, {}, std::move(center)}; }
  static SeqSpec periodic(std::vector<Complex> block) {
    if (block.empty()) throw Error(ErrorCode::InvalidArgument, "periodic block must be nonempty");
    return {Kind::Periodic, std::move(block), Complex()};
  }

  /// d_k, k >= 1.
  Complex at(std::uint64_t k) const {
    switch (kind) {
      case Kind::FiniteThenConstant: return k <= values.size() ? values[k - 1] : scalar;
      case Kind::Harmonic: return scalar + Complex(Rational(1) / Rational(k));
      case Kind::Periodic: return values[(k - 1) % values.size()];
    }
    return scalar;
  }

  /// d_k as a double, without going through the rationals on the hot path.
  cdouble at_double(std::uint64_t k) const {
    if (kind == Kind::Harmonic) return to_double(scalar) + cdouble(1.0 / static_cast<double>(k), 0.0);
    return to_double(at(k));
  }

  friend bool operator==(const SeqSpec& a, const SeqSpec& b) {
    return a.kind == b.kind && a.values == b.values && a.scalar == b.scalar;
  }
};

class ModelOp {
 public:
  enum class Kind { Diagonal, ForwardShift, BackwardShift, DirectSum, Scaled, Shifted };

  static ModelOp diagonal(SeqSpec seq) {
    ModelOp op(Kind::Diagonal);
    op.seq_ = std::move(seq);
    return op;
  }
  static ModelOp forward_shift(ExtNat mult) { return shift(Kind::ForwardShift, mult); }
  static ModelOp backward_shift(ExtNat mult) { return shift(Kind::BackwardShift, mult); }
  static ModelOp direct_sum(std::vector<ModelOp> parts) {
    if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "direct sum needs at least one part");
    ModelOp op(Kind::DirectSum);
    op.parts_ = std::move(parts);
    return op;
  }
  static ModelOp scaled(ModelOp inner, Complex factor) { return wrap(Kind::Scaled, std::move(inner), std::move(factor)); }
  static ModelOp shifted(ModelOp inner, Complex offset) { return wrap(Kind::Shifted, std::move(inner), std::move(offset)); }
  static ModelOp identity() { return diagonal(SeqSpec::finite_then_constant({}, Complex(1))); }

  Kind kind() const { return kind_; }
  const SeqSpec& seq() const { return seq_; }
  ExtNat multiplicity() const { return mult_; }
  const std::vector<ModelOp>& parts() const { return parts_; }
  const ModelOp& inner() const { return parts_.front(); }
  /// Scaled factor or Shifted offset.
  const Complex& scalar() const { return scalar_; }

  friend bool operator==(const ModelOp& a, const ModelOp& b) {
    return a.kind_ == b.kind_ && a.seq_ == b.seq_ && a.mult_ == b.mult_ && a.parts_ == b.parts_ &&
           a.scalar_ == b.scalar_;
  }

 private:
  explicit ModelOp(Kind k) : kind_(k) {}

  static ModelOp shift(Kind k, ExtNat mult) {
    if (mult == ExtNat(0)) throw Error(ErrorCode::InvalidArgument, "shift multiplicity must be >= 1");
    ModelOp op(k);
    op.mult_ = mult;
    return op;
  }
  static ModelOp wrap(Kind k, ModelOp inner, Complex c) {
    ModelOp op(k);
    op.parts_.push_back(std::move(inner));
    op.scalar_ = std::move(c);
    return op;
  }

  Kind kind_;
  SeqSpec seq_;
  ExtNat mult_ = 1;
  std::vector<ModelOp> parts_;
  Complex scalar_;
};

// ---------------------------------------------------------------------------
// Pointwise data

namespace detail {

inline FredholmData diagonal_point_data(const SeqSpec& seq, const Complex& lambda) {
  switch (seq.kind) {
    case SeqSpec::Kind::FiniteThenConstant: {
      if (seq.scalar == lambda) return {INF, INF, true};
      const auto hits = static_cast<std::uint64_t>(std::count(seq.values.begin(), seq.values.end(), lambda));
      return {hits, hits, true};
    }
    case SeqSpec::Kind::Harmonic: {
      const Complex gap = lambda - seq.scalar;
      if (gap.is_zero()) return {0, 0, false};
      // lambda = c + 1/k for a positive integer k
      if (gap.im == 0 && gap.re > 0 && numerator(gap.re) == 1) return {1, 1, true};
      return {0, 0, true};
    }
    case SeqSpec::Kind::Periodic: {
      const bool hit = std::find(seq.values.begin(), seq.values.end(), lambda) != seq.values.end();
      return hit ? FredholmData{INF, INF, true} : FredholmData{0, 0, true};
    }
  }
  return kInvertible;
}

inline FredholmData forward_shift_point_data(ExtNat mult, const Complex& lambda) {
  const Rational r2 = norm2(lambda);
  if (r2 < 1) return {0, mult, true};
  if (r2 == 1) return {0, 0, false};
  return {0, 0, true};
}

}  // namespace detail

/// Exact (alpha, beta*, closed) of op - lambda.
inline FredholmData point_data(const ModelOp& op, const Complex& lambda) {
  using K = ModelOp::Kind;
  switch (op.kind()) {
    case K::Diagonal: return detail::diagonal_point_data(op.seq(), lambda);
    case K::ForwardShift: return detail::forward_shift_point_data(op.multiplicity(), lambda);
    case K::BackwardShift: return adjoint_data(detail::forward_shift_point_data(op.multiplicity(), conj(lambda)));
    case K::DirectSum: {
      FredholmData acc{0, 0, true};
      for (const auto& part : op.parts()) {
        const FredholmData fd = point_data(part, lambda);
        acc.alpha += fd.alpha;
        acc.beta_star += fd.beta_star;
        acc.range_closed = acc.range_closed && fd.range_closed;
      }
      return acc;
    }
    case K::Scaled:
      if (op.scalar().is_zero()) return lambda.is_zero() ? FredholmData{INF, INF, true} : kInvertible;
      return point_data(op.inner(), lambda / op.scalar());
    case K::Shifted: return point_data(op.inner(), lambda - op.scalar());
  }
  return kInvertible;
}

/// The Hilbert adjoint, again a model operator.
inline ModelOp adjoint(const ModelOp& op) {
  using K = ModelOp::Kind;
  switch (op.kind()) {
    case K::Diagonal: {
      SeqSpec s = op.seq();
      for (auto& v : s.values) v = conj(v);
      s.scalar = conj(s.scalar);
      return ModelOp::diagonal(std::move(s));
    }
    case K::ForwardShift: return ModelOp::backward_shift(op.multiplicity());
    case K::BackwardShift: return ModelOp::forward_shift(op.multiplicity());
    case K::DirectSum: {
      std::vector<ModelOp> parts;
      for (const auto& p : op.parts()) parts.push_back(adjoint(p));
      return ModelOp::direct_sum(std::move(parts));
    }
    case K::Scaled: return ModelOp::scaled(adjoint(op.inner()), conj(op.scalar()));
    case K::Shifted: return ModelOp::shifted(adjoint(op.inner()), conj(op.scalar()));
  }
  return op;
}

/// Rational upper bound on the operator norm.
inline Rational norm_bound(const ModelOp& op) {
  using K = ModelOp::Kind;
  switch (op.kind()) {
    case K::Diagonal: {
      const SeqSpec& s = op.seq();
      Rational best = s.kind == SeqSpec::Kind::Periodic ? Rational(0) : abs1(s.scalar);
      if (s.kind == SeqSpec::Kind::Harmonic) best += 1;
      for (const auto& v : s.values) best = std::max(best, abs1(v));
      return best;
    }
    case K::ForwardShift:
    case K::BackwardShift: return 1;
    case K::DirectSum: {
      Rational best = 0;
      for (const auto& p : op.parts()) best = std::max(best, norm_bound(p));
      return best;
    }
    case K::Scaled: return abs1(op.scalar()) * norm_bound(op.inner());
    case K::Shifted: return norm_bound(op.inner()) + abs1(op.scalar());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Canonical enumeration of the basis

/// Position (summand p, coordinate q) of a shift of multiplicity m, both 0-based.
/// Finite m interleaves the summands; infinite m walks the antidiagonals.
struct ShiftIndexing {
  ExtNat mult;

  std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t t) const {
    if (mult.is_finite()) return {t % mult.value(), t / mult.value()};
    auto d = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(t) + 1.0) - 1.0) / 2.0);
    while (d * (d + 1) / 2 > t) --d;
    while ((d + 1) * (d + 2) / 2 <= t) ++d;
    const std::uint64_t p = t - d * (d + 1) / 2;
    return {p, d - p};
  }

  std::uint64_t join(std::uint64_t p, std::uint64_t q) const {
    if (mult.is_finite()) return p + mult.value() * q;
    const std::uint64_t d = p + q;
    return d * (d + 1) / 2 + p;
  }
};

struct SparseEntry {
  std::uint64_t index;
  cdouble value;
  bool operator==(const SparseEntry&) const = default;
};
using SparseVector = std::vector<SparseEntry>;

namespace detail {

inline void add_column(const ModelOp& op, std::uint64_t t, cdouble scale, SparseVector& out,
                       std::uint64_t stride = 1, std::uint64_t offset = 0) {
  using K = ModelOp::Kind;
  auto emit = [&](std::uint64_t u, cdouble v) {
    if (v != cdouble(0)) out.push_back({u * stride + offset, scale * v});
  };
  switch (op.kind()) {
    case K::Diagonal: emit(t, op.seq().at_double(t + 1)); return;
    case K::ForwardShift: {
      const ShiftIndexing ix{op.multiplicity()};
      const auto [p, q] = ix.split(t);
      emit(ix.join(p, q + 1), 1.0);
      return;
    }
    case K::BackwardShift: {
      const ShiftIndexing ix{op.multiplicity()};
      const auto [p, q] = ix.split(t);
      if (q > 0) emit(ix.join(p, q - 1), 1.0);
      return;
    }
    case K::DirectSum: {
      const std::uint64_t r = op.parts().size();
      add_column(op.parts()[t % r], t / r, scale, out, stride * r, offset + stride * (t % r));
      return;
    }
    case K::Scaled: add_column(op.inner(), t, scale * to_double(op.scalar()), out, stride, offset); return;
    case K::Shifted:
      add_column(op.inner(), t, scale, out, stride, offset);
      emit(t, to_double(op.scalar()));
      return;
  }
}

inline void compact(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  SparseVector merged;
  for (const auto& e : v) {
    if (!merged.empty() && merged.back().index == e.index)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const SparseEntry& e) { return e.value == cdouble(0); });
  v = std::move(merged);
}

}  // namespace detail

/// (op - lambda) e_t in canonical coordinates, sorted by index.
inline SparseVector column(const ModelOp& op, std::uint64_t t, cdouble lambda = 0.0) {
  SparseVector out;
  detail::add_column(op, t, 1.0, out);
  if (lambda != cdouble(0)) out.push_back({t, -lambda});
  detail::compact(out);
  return out;
}

/// Compression of op to the span of the first n canonical basis vectors.
inline Eigen::MatrixXcd truncate(const ModelOp& op, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "truncation size must be >= 1");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& e : column(op, t))
      if (e.index < n) m(static_cast<Eigen::Index>(e.index), static_cast<Eigen::Index>(t)) = e.value;
  return m;
}

}  // namespace fredholm
