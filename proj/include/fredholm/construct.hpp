#pragma once

// Explicit completions A = (A_ij) stored as index arithmetic on orthonormal bases.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fredholm/bases.hpp"
#include "fredholm/decision.hpp"
#include "fredholm/model_op.hpp"

namespace fredholm {

/// Positions stride*s + offset for s = 1, 2, ... (positions are 1-based).
struct Progression {
  std::uint64_t stride = 1;
  std::int64_t offset = 0;

  std::uint64_t at(std::uint64_t s) const {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(stride * s) + offset);
  }
  /// s with at(s) == position, if any.
  std::optional<std::uint64_t> index_of(std::uint64_t position) const {
    const std::int64_t d = static_cast<std::int64_t>(position) - offset;
    if (d <= 0 || d % static_cast<std::int64_t>(stride) != 0) return std::nullopt;
    return static_cast<std::uint64_t>(d) / stride;
  }

  friend bool operator==(const Progression&, const Progression&) = default;
};

enum class SourceBasis { Space, Kernel };
enum class TargetBasis { Space, Cokernel };

/// Sends source basis vector number from.at(s) to target basis vector number
/// to.at(s), and vanishes on the orthogonal complement of the sources.
/// Space is the canonical basis; Kernel and Cokernel are the bases of
/// N(D_j - lambda) and R(D_i - lambda)^perp.
struct BasisMap {
  SourceBasis source = SourceBasis::Space;
  Progression from;
  TargetBasis target = TargetBasis::Cokernel;
  Progression to;

  friend bool operator==(const BasisMap&, const BasisMap&) = default;
};

/// A_ij with 1 <= i < j <= n; entries not listed are zero.
struct CertificateEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  BasisMap map;

  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

struct PredictedInvariants {
  ExtNat alpha_T;
  ExtNat beta_T;
  bool range_closed_T = true;
  std::vector<ExtNat> kernel_shape;    // per block; empty when the kernel is not a direct sum of block kernels
  std::vector<ExtNat> cokernel_shape;  // same for the kernel of the adjoint

  friend bool operator==(const PredictedInvariants&, const PredictedInvariants&) = default;
};

struct CompletionCertificate {
  std::size_t n = 0;
  Target target = Target::UpperWeyl;
  Strategy strategy;
  Complex lambda;
  std::vector<CertificateEntry> entries;
  PredictedInvariants predicted;

  friend bool operator==(const CompletionCertificate&, const CompletionCertificate&) = default;
};

namespace detail {

inline std::vector<FredholmData> point_data_all(const std::vector<ModelOp>& ops, const Complex& lambda) {
  std::vector<FredholmData> out;
  for (const auto& op : ops) out.push_back(point_data(op, lambda));
  return out;
}

inline ExtNat finite_or_zero(ExtNat x) { return x.is_finite() ? x : ExtNat(0); }

}  // namespace detail

/// Build A realizing condition (i) for the target at lambda.
inline CompletionCertificate construct(Target target, const std::vector<ModelOp>& diagonals, const Complex& lambda) {
  const std::size_t n = diagonals.size();
  const auto fd = detail::point_data_all(diagonals, lambda);
  const DecisionOutcome outcome = decide(target, fd);
  if (outcome.verdict != Verdict::Exists)
    throw Error(ErrorCode::NotConstructible, std::string(to_string(target)) + " verdict is " + std::string(to_string(outcome.verdict)));

  CompletionCertificate cert;
  cert.n = n;
  cert.target = target;
  cert.strategy = *outcome.strategy;
  cert.lambda = lambda;
  PredictedInvariants& p = cert.predicted;
  auto alpha = [&](std::size_t s) { return fd[s - 1].alpha; };
  auto beta = [&](std::size_t s) { return deficiency(fd[s - 1]); };
  auto need_cokernel = [&](std::size_t s) {
    if (beta(s).is_finite() || !fd[s - 1].range_closed)
      throw Error(ErrorCode::MissingCokernel, "block " + std::to_string(s) + " has no infinite closed cokernel");
  };
  auto need_kernel = [&](std::size_t s) {
    if (alpha(s).is_finite()) throw Error(ErrorCode::MissingCokernel, "block " + std::to_string(s) + " has finite nullity");
  };

  switch (cert.strategy.kind) {
    case Strategy::Kind::ZeroCompletion: {
      p.alpha_T = 0;
      p.beta_T = 0;
      for (std::size_t s = 1; s <= n; ++s) {
        p.alpha_T += alpha(s);
        p.beta_T += beta(s);
        p.range_closed_T = p.range_closed_T && fd[s - 1].range_closed;
        p.kernel_shape.push_back(alpha(s));
        p.cokernel_shape.push_back(beta(s));
      }
      break;
    }
    case Strategy::Kind::RowConstruction: {
      // all of H_(k+m) goes isometrically onto every n-th cokernel vector of D_k
      const std::size_t k = cert.strategy.j;
      need_cokernel(k);
      for (std::size_t m = 1; m <= n - k; ++m)
        cert.entries.push_back({k, k + m, {SourceBasis::Space, {1, 0}, TargetBasis::Cokernel, {n, static_cast<std::int64_t>(m) - 1}}});
      p.alpha_T = 0;
      for (std::size_t s = 1; s <= n; ++s) {
        p.kernel_shape.push_back(s <= k ? alpha(s) : ExtNat(0));
        if (s <= k) p.alpha_T += alpha(s);
      }
      p.beta_T = INF;
      break;
    }
    case Strategy::Kind::ColumnConstruction: {
      // every n-th kernel vector of D_j goes onto all of H_(j-m)
      const std::size_t j = cert.strategy.j;
      need_kernel(j);
      for (std::size_t m = 1; m <= j - 1; ++m)
        cert.entries.push_back({j - m, j, {SourceBasis::Kernel, {n, static_cast<std::int64_t>(m) - 1}, TargetBasis::Space, {1, 0}}});
      p.alpha_T = INF;
      p.beta_T = 0;
      for (std::size_t s = 1; s <= n; ++s) {
        p.cokernel_shape.push_back(s >= j ? beta(s) : ExtNat(0));
        if (s >= j) p.beta_T += beta(s);
      }
      break;
    }
    case Strategy::Kind::FredholmPair: {
      // Infinite kernels between j and k, plus a share of N(D_k), fill R(D_j)^perp;
      // the rest of N(D_k) fills the infinite cokernels between j and k.
      const std::size_t j = cert.strategy.j, k = cert.strategy.k;
      need_cokernel(j);
      need_kernel(k);
      std::vector<std::size_t> mk, mc;
      for (std::size_t s = j + 1; s < k; ++s) {
        if (alpha(s).is_inf()) mk.push_back(s);
        if (beta(s).is_inf()) mc.push_back(s);
      }
      const auto R = static_cast<std::int64_t>(mk.size() + 1);
      const auto Q = static_cast<std::int64_t>(mc.size() + 1);
      for (std::size_t r = 0; r < mk.size(); ++r)
        cert.entries.push_back({j, mk[r], {SourceBasis::Kernel, {1, 0}, TargetBasis::Cokernel,
                                           {static_cast<std::uint64_t>(R), static_cast<std::int64_t>(r) + 1 - R}}});
      cert.entries.push_back(
          {j, k, {SourceBasis::Kernel, {static_cast<std::uint64_t>(Q), 1 - Q}, TargetBasis::Cokernel, {static_cast<std::uint64_t>(R), 0}}});
      for (std::size_t q = 1; q <= mc.size(); ++q)
        cert.entries.push_back({mc[q - 1], k, {SourceBasis::Kernel, {static_cast<std::uint64_t>(Q), static_cast<std::int64_t>(q) + 1 - Q},
                                               TargetBasis::Cokernel, {1, 0}}});
      p.alpha_T = 0;
      p.beta_T = 0;
      for (std::size_t s = 1; s <= n; ++s) {
        p.kernel_shape.push_back(detail::finite_or_zero(alpha(s)));
        p.cokernel_shape.push_back(detail::finite_or_zero(beta(s)));
        p.alpha_T += detail::finite_or_zero(alpha(s));
        p.beta_T += detail::finite_or_zero(beta(s));
      }
      break;
    }
  }
  std::sort(cert.entries.begin(), cert.entries.end(),
            [](const CertificateEntry& a, const CertificateEntry& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  return cert;
}

/// The certificate of the adjoint matrix, read as an upper triangular matrix
/// over the reversed adjoint diagonal D_n*, ..., D_1* at conj(lambda).
inline CompletionCertificate adjoint_certificate(const CompletionCertificate& c) {
  CompletionCertificate a;
  const std::size_t n = c.n;
  a.n = n;
  a.target = dual_target(c.target);
  a.lambda = conj(c.lambda);
  a.strategy = c.strategy;
  switch (c.strategy.kind) {
    case Strategy::Kind::ZeroCompletion: break;
    case Strategy::Kind::RowConstruction: a.strategy = {Strategy::Kind::ColumnConstruction, n + 1 - c.strategy.j}; break;
    case Strategy::Kind::ColumnConstruction: a.strategy = {Strategy::Kind::RowConstruction, n + 1 - c.strategy.j}; break;
    case Strategy::Kind::FredholmPair: a.strategy = {Strategy::Kind::FredholmPair, n + 1 - c.strategy.k, n + 1 - c.strategy.j}; break;
  }
  for (const auto& e : c.entries) {
    BasisMap m;
    m.source = e.map.target == TargetBasis::Cokernel ? SourceBasis::Kernel : SourceBasis::Space;
    m.from = e.map.to;
    m.target = e.map.source == SourceBasis::Kernel ? TargetBasis::Cokernel : TargetBasis::Space;
    m.to = e.map.from;
    a.entries.push_back({n + 1 - e.j, n + 1 - e.i, m});
  }
  std::sort(a.entries.begin(), a.entries.end(),
            [](const CertificateEntry& x, const CertificateEntry& y) { return std::pair(x.i, x.j) < std::pair(y.i, y.j); });
  a.predicted.alpha_T = c.predicted.beta_T;
  a.predicted.beta_T = c.predicted.alpha_T;
  a.predicted.range_closed_T = c.predicted.range_closed_T;
  a.predicted.kernel_shape.assign(c.predicted.cokernel_shape.rbegin(), c.predicted.cokernel_shape.rend());
  a.predicted.cokernel_shape.assign(c.predicted.kernel_shape.rbegin(), c.predicted.kernel_shape.rend());
  return a;
}

inline std::vector<ModelOp> reversed_adjoints(const std::vector<ModelOp>& ops) {
  std::vector<ModelOp> out;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.push_back(adjoint(*it));
  return out;
}

/// Which positions of a basis are hit by a union of progressions.
struct ResidueDescription {
  std::uint64_t modulus = 1;
  std::uint64_t start = 1;  // from here on membership depends on the residue only
  std::vector<std::uint64_t> covered_residues;
  std::vector<std::uint64_t> uncovered_residues;
  std::vector<std::uint64_t> uncovered_before_start;

  bool complement_infinite() const { return !uncovered_residues.empty(); }
  bool covers(std::uint64_t position) const {
    if (position < start) return std::find(uncovered_before_start.begin(), uncovered_before_start.end(), position) == uncovered_before_start.end();
    return std::binary_search(covered_residues.begin(), covered_residues.end(), position % modulus);
  }
};

inline ResidueDescription describe_progressions(const std::vector<Progression>& progs) {
  ResidueDescription d;
  for (const auto& p : progs) {
    d.modulus = std::lcm(d.modulus, p.stride);
    d.start = std::max<std::uint64_t>(d.start, p.at(1));
  }
  auto hit = [&](std::uint64_t pos) {
    return std::any_of(progs.begin(), progs.end(), [&](const Progression& p) { return p.index_of(pos).has_value(); });
  };
  for (std::uint64_t r = 0; r < d.modulus; ++r) {
    // the representative of r at or after start decides the residue class
    const std::uint64_t pos = d.start + (r + d.modulus - d.start % d.modulus) % d.modulus;
    (hit(pos) ? d.covered_residues : d.uncovered_residues).push_back(r);
  }
  for (std::uint64_t pos = 1; pos < d.start; ++pos)
    if (!hit(pos)) d.uncovered_before_start.push_back(pos);
  return d;
}

/// Cokernel positions of D_row that the certificate's maps land on.
inline ResidueDescription covered_indices(const CompletionCertificate& cert, std::size_t row) {
  std::vector<Progression> progs;
  for (const auto& e : cert.entries)
    if (e.i == row && e.map.target == TargetBasis::Cokernel) progs.push_back(e.map.to);
  if (progs.empty()) throw Error(ErrorCode::InvalidArgument, "row " + std::to_string(row) + " has no cokernel maps");
  return describe_progressions(progs);
}

/// A vector of the block space H_1 + ... + H_n, one sparse part per block.
using BlockVector = std::vector<SparseVector>;

/// T_n^d(A) - lambda for a certificate, evaluated column by column.
class CompletedOperator {
 public:
  CompletedOperator(std::vector<ModelOp> diagonals, CompletionCertificate cert)
      : diagonals_(std::move(diagonals)), cert_(std::move(cert)) {
    if (diagonals_.size() != cert_.n) throw Error(ErrorCode::ArityMismatch, "certificate and diagonal sizes differ");
    kernels_.resize(cert_.n);
    cokernels_.resize(cert_.n);
    for (const auto& e : cert_.entries) {
      if (e.i < 1 || e.i >= e.j || e.j > cert_.n) throw Error(ErrorCode::InvalidArgument, "entry outside the strict upper triangle");
      if (e.map.source == SourceBasis::Kernel && !kernels_[e.j - 1])
        kernels_[e.j - 1] = kernel_basis(diagonals_[e.j - 1], cert_.lambda);
      if (e.map.target == TargetBasis::Cokernel && !cokernels_[e.i - 1])
        cokernels_[e.i - 1] = cokernel_family(diagonals_[e.i - 1], cert_.lambda);
    }
  }

  std::size_t n() const { return cert_.n; }
  const std::vector<ModelOp>& diagonals() const { return diagonals_; }
  const CompletionCertificate& certificate() const { return cert_; }

  /// (T - lambda) applied to e_t of block b (1-based), blockwise and sorted.
  BlockVector column(std::size_t b, std::uint64_t t, cdouble lambda) const {
    BlockVector out(cert_.n);
    out[b - 1] = fredholm::column(diagonals_[b - 1], t, lambda);
    for (const auto& e : cert_.entries)
      if (e.j == b) apply_entry(e, t, out[e.i - 1]);
    for (auto& v : out) detail::compact(v);
    return out;
  }

  /// The images of source basis vectors of entry e under A_ij, restricted
  /// to the first `count` columns of block j: (source vector, target vector).
  std::vector<std::pair<SparseVector, SparseVector>> entry_pairs(const CertificateEntry& e, std::uint64_t count) const {
    std::vector<std::pair<SparseVector, SparseVector>> out;
    for (std::uint64_t s = 1;; ++s) {
      const std::uint64_t pos = e.map.from.at(s);
      SparseVector src;
      if (e.map.source == SourceBasis::Space) {
        if (pos > count) break;
        src = {{pos - 1, 1.0}};
      } else {
        const VectorFamily& fam = *kernels_[e.j - 1];
        if (!ext_leq(ExtNat(pos), fam.count())) break;
        src = fam.vector(pos - 1);
        if (src.front().index >= count) break;
      }
      out.emplace_back(std::move(src), target_vector(e, s));
    }
    return out;
  }

 private:
  SparseVector target_vector(const CertificateEntry& e, std::uint64_t s) const {
    const std::uint64_t pos = e.map.to.at(s);
    if (e.map.target == TargetBasis::Space) return {{pos - 1, 1.0}};
    const VectorFamily& fam = *cokernels_[e.i - 1];
    if (!ext_leq(ExtNat(pos), fam.count()))
      throw Error(ErrorCode::MissingCokernel, "target position " + std::to_string(pos) + " beyond the cokernel of block " + std::to_string(e.i));
    return fam.vector(pos - 1);
  }

  void apply_entry(const CertificateEntry& e, std::uint64_t t, SparseVector& out) const {
    auto emit = [&](std::uint64_t src_pos, cdouble coeff) {
      const auto s = e.map.from.index_of(src_pos);
      if (!s) return;
      for (const auto& x : target_vector(e, *s)) out.push_back({x.index, coeff * x.value});
    };
    if (e.map.source == SourceBasis::Space) {
      emit(t + 1, 1.0);
      return;
    }
    // <v_s, e_t> = conj(v_s[t])
    for (const auto& [s0, c] : kernels_[e.j - 1]->components_at(t)) emit(s0 + 1, std::conj(c));
  }

  std::vector<ModelOp> diagonals_;
  CompletionCertificate cert_;
  std::vector<std::optional<VectorFamily>> kernels_;
  std::vector<std::optional<VectorFamily>> cokernels_;
};

/// (T_n^d(A) - lambda) x for a finitely supported x.
inline BlockVector apply_certificate(const CompletionCertificate& cert, const std::vector<ModelOp>& diagonals,
                                     const Complex& lambda, const BlockVector& x) {
  if (x.size() != cert.n) throw Error(ErrorCode::ArityMismatch, "vector has the wrong number of blocks");
  const CompletedOperator op(diagonals, cert);
  const cdouble l = to_double(lambda);
  BlockVector out(cert.n);
  for (std::size_t b = 1; b <= cert.n; ++b)
    for (const auto& [t, v] : x[b - 1]) {
      const BlockVector col = op.column(b, t, l);
      for (std::size_t i = 0; i < cert.n; ++i)
        for (const auto& e : col[i]) out[i].push_back({e.index, v * e.value});
    }
  for (auto& v : out) detail::compact(v);
  return out;
}

}  // namespace fredholm
