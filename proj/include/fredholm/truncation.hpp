#pragma once

// Numerical cross-checks on finite sections of the completed operator.
//
// A section keeps the first N canonical basis vectors of every block as
// columns and every coordinate they touch as rows. Its kernel is exactly
// N(T) restricted to those columns, so kernel dimensions can be compared to
// the symbolic nullity without the boundary artefacts of square compressions.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fredholm/construct.hpp"
#include "fredholm/parallel.hpp"

namespace fredholm {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kIsometryTol = 1e-12;
/// sigma_min may shrink by at most this factor between the two largest sizes.
inline constexpr double kClosedRangeRatio = 0.5;

struct SectionSpectrum {
  std::uint64_t columns = 0;
  std::uint64_t rows = 0;
  std::vector<double> singular_values;  // descending, padded with zeros to `columns`
};

/// Singular values of the section with N columns per block. col(b, t) must
/// return the blockwise image of e_t in block b (1-based).
template <class ColumnFn>
SectionSpectrum section_spectrum(std::size_t blocks, std::uint64_t N, ColumnFn&& col) {
  std::vector<BlockVector> images;
  std::map<std::pair<std::size_t, std::uint64_t>, Eigen::Index> row_of;
  bool real = true;
  for (std::size_t b = 1; b <= blocks; ++b)
    for (std::uint64_t t = 0; t < N; ++t) {
      images.push_back(col(b, t));
      for (std::size_t i = 0; i < blocks; ++i)
        for (const auto& e : images.back()[i]) {
          row_of.emplace(std::pair(i, e.index), 0);
          real = real && e.value.imag() == 0.0;
        }
    }
  Eigen::Index r = 0;
  for (auto& [key, idx] : row_of) idx = r++;

  SectionSpectrum out;
  out.columns = images.size();
  out.rows = row_of.size();
  out.singular_values.assign(out.columns, 0.0);
  if (row_of.empty()) return out;

  auto fill = [&](auto& m) {
    for (std::size_t c = 0; c < images.size(); ++c)
      for (std::size_t i = 0; i < blocks; ++i)
        for (const auto& e : images[c][i]) {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Eigen::MatrixXd>)
            m(row_of.at({i, e.index}), static_cast<Eigen::Index>(c)) = e.value.real();
          else
            m(row_of.at({i, e.index}), static_cast<Eigen::Index>(c)) = e.value;
        }
  };
  const auto rows = static_cast<Eigen::Index>(out.rows), cols = static_cast<Eigen::Index>(out.columns);
  Eigen::VectorXd sv;
  if (real) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    fill(m);
    sv = Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
  } else {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
    fill(m);
    sv = Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
  }
  for (Eigen::Index i = 0; i < sv.size() && i < cols; ++i) out.singular_values[static_cast<std::size_t>(i)] = sv(i);
  return out;
}

/// Section of a single model operator minus lambda.
inline SectionSpectrum section_spectrum(const ModelOp& op, std::uint64_t N, cdouble lambda) {
  return section_spectrum(1, N, [&](std::size_t, std::uint64_t t) { return BlockVector{column(op, t, lambda)}; });
}

inline SectionSpectrum section_spectrum(const CompletedOperator& op, std::uint64_t N, cdouble lambda) {
  return section_spectrum(op.n(), N, [&](std::size_t b, std::uint64_t t) { return op.column(b, t, lambda); });
}

/// Number of singular values below tol * sigma_max.
inline std::uint64_t numerical_kernel(const SectionSpectrum& s, double tol) {
  const double smax = s.singular_values.empty() ? 0.0 : s.singular_values.front();
  if (!(smax > 0.0)) throw Error(ErrorCode::NumericalIllConditioned, "section has sigma_max = 0");
  return static_cast<std::uint64_t>(
      std::count_if(s.singular_values.begin(), s.singular_values.end(), [&](double v) { return v < tol * smax; }));
}

/// Smallest singular value once `deflate` smallest ones are removed.
inline double sigma_min_after(const SectionSpectrum& s, std::uint64_t deflate) {
  if (deflate >= s.columns) return 0.0;
  return s.singular_values[s.columns - deflate - 1];
}

struct TruncationReport {
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> kernel_dims;
  std::vector<double> sigma_min_complement;
  std::vector<double> sigma_max;
  std::vector<std::uint64_t> adjoint_kernel_dims;  // empty unless the cokernel was checked numerically
  std::optional<double> partial_isometry_residual;
  std::optional<bool> cokernel_infinite;  // symbolic, from covered_indices
  bool via_adjoint = false;
  double tol = kDefaultTol;
  double isometry_tol = kIsometryTol;
  bool pass = false;
  std::vector<std::string> failures;
};

namespace detail {

inline void check_sizes(const std::vector<std::uint64_t>& sizes, std::size_t min_count) {
  if (sizes.size() < min_count) throw Error(ErrorCode::InvalidArgument, "need at least " + std::to_string(min_count) + " sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] == 0 || (i > 0 && sizes[i] <= sizes[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "sizes must be positive and strictly ascending");
}

template <class SpectrumFn>
std::vector<SectionSpectrum> spectra_at(const std::vector<std::uint64_t>& sizes, SpectrumFn&& fn) {
  std::vector<SectionSpectrum> out(sizes.size());
  parallel_for(sizes.size(), [&](std::size_t i) { out[i] = fn(sizes[i]); });
  return out;
}

// max |G - I| for the Gram matrix of a family of sparse vectors
inline double gram_residual(const std::vector<SparseVector>& vs) {
  if (vs.empty()) return 0.0;
  std::map<std::uint64_t, Eigen::Index> row_of;
  for (const auto& v : vs)
    for (const auto& e : v) row_of.emplace(e.index, 0);
  Eigen::Index r = 0;
  for (auto& [k, idx] : row_of) idx = r++;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c)
    for (const auto& e : vs[c]) m(row_of.at(e.index), static_cast<Eigen::Index>(c)) = e.value;
  const Eigen::MatrixXcd g = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.cols(), m.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Worst deviation from orthonormality among the sources of each block and
/// among the targets of each block, over sources inside the first N columns.
inline double partial_isometry_residual(const CompletedOperator& op, std::uint64_t N) {
  std::vector<std::vector<SparseVector>> sources(op.n()), targets(op.n());
  for (const auto& e : op.certificate().entries)
    for (auto& [src, dst] : op.entry_pairs(e, N)) {
      sources[e.j - 1].push_back(std::move(src));
      targets[e.i - 1].push_back(std::move(dst));
    }
  double worst = 0.0;
  for (std::size_t b = 0; b < op.n(); ++b)
    worst = std::max({worst, detail::gram_residual(sources[b]), detail::gram_residual(targets[b])});
  return worst;
}

/// Compare numerical kernels of op - lambda with the symbolic point data.
inline TruncationReport verify_point_data(const ModelOp& op, const Complex& lambda, const std::vector<std::uint64_t>& sizes,
                                          double tol = kDefaultTol) {
  detail::check_sizes(sizes, 1);
  const FredholmData fd = point_data(op, lambda);
  const cdouble l = to_double(lambda);
  const auto spectra = detail::spectra_at(sizes, [&](std::uint64_t N) { return section_spectrum(op, N, l); });

  TruncationReport rep;
  rep.sizes = sizes;
  rep.tol = tol;
  for (const auto& s : spectra) {
    const std::uint64_t k = numerical_kernel(s, tol);
    rep.kernel_dims.push_back(k);
    rep.sigma_max.push_back(s.singular_values.front());
    rep.sigma_min_complement.push_back(sigma_min_after(s, fd.alpha.is_finite() ? fd.alpha.value() : k));
  }
  const std::size_t last = sizes.size() - 1;
  if (fd.alpha.is_finite()) {
    if (rep.kernel_dims[last] != fd.alpha.value())
      rep.failures.push_back("kernel " + std::to_string(rep.kernel_dims[last]) + " != alpha " + to_string(fd.alpha));
  } else if (sizes.size() >= 2 && rep.kernel_dims[last] <= rep.kernel_dims[last - 1]) {
    rep.failures.push_back("infinite alpha but the kernel does not grow");
  }
  if (fd.range_closed && fd.alpha.is_finite() && sizes.size() >= 2 &&
      rep.sigma_min_complement[last] < kClosedRangeRatio * rep.sigma_min_complement[last - 1])
    rep.failures.push_back("closed range but sigma_min decays");
  if (!fd.range_closed && sizes.size() >= 3)
    for (std::size_t i = 1; i < sizes.size(); ++i)
      if (!(rep.sigma_min_complement[i] < rep.sigma_min_complement[i - 1]))
        rep.failures.push_back("range not closed but sigma_min does not decay at N=" + std::to_string(sizes[i]));
  rep.pass = rep.failures.empty();
  return rep;
}

namespace detail {

inline void kernel_series(const std::vector<SectionSpectrum>& spectra, double tol, std::optional<std::uint64_t> deflate,
                          std::vector<std::uint64_t>& dims, std::vector<double>* sigma_min, std::vector<double>* sigma_max) {
  for (const auto& s : spectra) {
    const std::uint64_t k = numerical_kernel(s, tol);
    dims.push_back(k);
    if (sigma_min) sigma_min->push_back(sigma_min_after(s, deflate.value_or(k)));
    if (sigma_max) sigma_max->push_back(s.singular_values.front());
  }
}

inline bool cokernel_infinite_symbolic(const CompletionCertificate& cert, const std::vector<ModelOp>& diagonals) {
  for (std::size_t i = 1; i <= cert.n; ++i) {
    const FredholmData fd = point_data(diagonals[i - 1], cert.lambda);
    if (!(fd.range_closed && fd.beta_star.is_inf())) continue;
    const bool mapped = std::any_of(cert.entries.begin(), cert.entries.end(),
                                    [&](const CertificateEntry& e) { return e.i == i && e.map.target == TargetBasis::Cokernel; });
    if (!mapped || covered_indices(cert, i).complement_infinite()) return true;
  }
  return false;
}

}  // namespace detail

/// Check a certificate's predicted invariants on sections of growing size.
inline TruncationReport verify_completion(const std::vector<ModelOp>& diagonals, const CompletionCertificate& cert,
                                          const Complex& lambda, const std::vector<std::uint64_t>& sizes,
                                          double tol = kDefaultTol) {
  detail::check_sizes(sizes, 2);
  if (diagonals.size() != cert.n) throw Error(ErrorCode::ArityMismatch, "certificate and diagonal sizes differ");
  if (cert.predicted.alpha_T.is_inf()) {
    // infinite nullity cannot stabilize; check the adjoint instead
    TruncationReport rep =
        verify_completion(reversed_adjoints(diagonals), adjoint_certificate(cert), conj(lambda), sizes, tol);
    rep.via_adjoint = true;
    return rep;
  }

  const CompletedOperator op(diagonals, cert);
  const cdouble l = to_double(lambda);
  const auto spectra = detail::spectra_at(sizes, [&](std::uint64_t N) { return section_spectrum(op, N, l); });

  TruncationReport rep;
  rep.sizes = sizes;
  rep.tol = tol;
  const PredictedInvariants& p = cert.predicted;
  detail::kernel_series(spectra, tol, p.alpha_T.value(), rep.kernel_dims, &rep.sigma_min_complement, &rep.sigma_max);

  const std::size_t last = sizes.size() - 1;
  for (std::size_t i : {last - 1, last})
    if (rep.kernel_dims[i] != p.alpha_T.value())
      rep.failures.push_back("kernel " + std::to_string(rep.kernel_dims[i]) + " at N=" + std::to_string(sizes[i]) +
                             " != predicted " + to_string(p.alpha_T));
  if (p.range_closed_T && rep.sigma_min_complement[last] < kClosedRangeRatio * rep.sigma_min_complement[last - 1])
    rep.failures.push_back("sigma_min on the complement decays");

  rep.partial_isometry_residual = partial_isometry_residual(op, sizes.back());
  if (!(*rep.partial_isometry_residual < kIsometryTol)) rep.failures.push_back("certificate maps are not a partial isometry");

  if (p.beta_T.is_inf()) {
    rep.cokernel_infinite = detail::cokernel_infinite_symbolic(cert, diagonals);
    if (!*rep.cokernel_infinite) rep.failures.push_back("predicted infinite cokernel is covered by the maps");
  } else {
    const CompletedOperator adj(reversed_adjoints(diagonals), adjoint_certificate(cert));
    const auto adj_spectra = detail::spectra_at(sizes, [&](std::uint64_t N) { return section_spectrum(adj, N, std::conj(l)); });
    detail::kernel_series(adj_spectra, tol, std::nullopt, rep.adjoint_kernel_dims, nullptr, nullptr);
    for (std::size_t i : {last - 1, last})
      if (rep.adjoint_kernel_dims[i] != p.beta_T.value())
        rep.failures.push_back("adjoint kernel " + std::to_string(rep.adjoint_kernel_dims[i]) + " at N=" +
                               std::to_string(sizes[i]) + " != predicted " + to_string(p.beta_T));
  }
  rep.pass = rep.failures.empty();
  return rep;
}

/// Whether sections suggest T - lambda is upper semi-Fredholm: the kernel has
/// settled and the complement's sigma_min does not decay.
inline bool looks_upper_semi_fredholm(const std::vector<SectionSpectrum>& spectra, double tol) {
  std::vector<std::uint64_t> dims;
  std::vector<double> smin;
  detail::kernel_series(spectra, tol, std::nullopt, dims, &smin, nullptr);
  const std::size_t last = spectra.size() - 1;
  return dims[last] == dims[last - 1] && smin[last] >= kClosedRangeRatio * smin[last - 1];
}

struct CornerSample {
  Complex lambda;
  bool in_sf_plus_d1 = false;   // D_1 - lambda is not upper semi-Fredholm
  bool in_sf_minus_dn = false;  // D_n - lambda is not lower semi-Fredholm
  std::vector<std::uint64_t> kernel_dims;
  std::vector<std::uint64_t> adjoint_kernel_dims;
  bool certified_plus = false;
  bool certified_minus = false;
};

struct CornerCheckResult {
  bool ok = true;
  std::optional<Complex> falsifying;
  std::vector<CornerSample> samples;
};

/// Spectral points of the corner entries must stay spectral for the completion:
/// where D_1 - lambda is not in Phi+, the sections must not look upper
/// semi-Fredholm, and dually for D_n through the adjoint.
inline CornerCheckResult diagonal_corner_check(const std::vector<ModelOp>& diagonals, const CompletionCertificate& cert,
                                               const std::vector<Complex>& lambdas, const std::vector<std::uint64_t>& sizes,
                                               double tol = kDefaultTol) {
  detail::check_sizes(sizes, 2);
  const CompletedOperator op(diagonals, cert);
  const CompletedOperator adj(reversed_adjoints(diagonals), adjoint_certificate(cert));
  CornerCheckResult res;
  for (const auto& lambda : lambdas) {
    CornerSample s;
    s.lambda = lambda;
    s.in_sf_plus_d1 = !in_phi_plus(point_data(diagonals.front(), lambda));
    s.in_sf_minus_dn = !in_phi_minus(point_data(diagonals.back(), lambda));
    const cdouble l = to_double(lambda);
    if (s.in_sf_plus_d1) {
      const auto sp = detail::spectra_at(sizes, [&](std::uint64_t N) { return section_spectrum(op, N, l); });
      detail::kernel_series(sp, tol, std::nullopt, s.kernel_dims, nullptr, nullptr);
      s.certified_plus = looks_upper_semi_fredholm(sp, tol);
    }
    if (s.in_sf_minus_dn) {
      const auto sp = detail::spectra_at(sizes, [&](std::uint64_t N) { return section_spectrum(adj, N, std::conj(l)); });
      detail::kernel_series(sp, tol, std::nullopt, s.adjoint_kernel_dims, nullptr, nullptr);
      s.certified_minus = looks_upper_semi_fredholm(sp, tol);
    }
    if ((s.certified_plus || s.certified_minus) && res.ok) {
      res.ok = false;
      res.falsifying = lambda;
    }
    res.samples.push_back(std::move(s));
  }
  return res;
}

}  // namespace fredholm
