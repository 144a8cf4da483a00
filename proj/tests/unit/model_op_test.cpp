#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace fredholm;
using namespace testing_helpers;

TEST(PointData, Examples) {
  EXPECT_EQ(point_data(FS(1), 0), fd(0, 1));
  EXPECT_EQ(point_data(harmonic(0), 0), fd(0, 0, false));
  EXPECT_EQ(point_data(ftc({0, 0, 0}, 1), 0), fd(3, 3));
}

TEST(PointData, Shifts) {
  EXPECT_EQ(point_data(FS(3), Complex(q("1/2"), q("1/2"))), fd(0, 3));
  EXPECT_EQ(point_data(FS(INF), Complex(q("3/5"), q("4/5"))), fd(0, 0, false));
  EXPECT_EQ(point_data(FS(2), Complex(q("3/5"), q("5/6"))), fd(0, 0));
  EXPECT_EQ(point_data(BS(INF), 0), fd(INF, 0));
  EXPECT_EQ(point_data(BS(2), Complex(0, -1)), fd(0, 0, false));
}

TEST(PointData, Diagonals) {
  // tail hit: infinitely many zeros of d_k - lambda
  EXPECT_EQ(point_data(ftc({0, 0, 0}, 1), 1), fd(INF, INF));
  EXPECT_EQ(point_data(periodic({1, 2}), 2), fd(INF, INF));
  EXPECT_EQ(point_data(periodic({1, 2}), 3), fd(0, 0));
  EXPECT_EQ(point_data(harmonic(0), q("1/3")), fd(1, 1));
  EXPECT_EQ(point_data(harmonic(0), q("2/5")), fd(0, 0));
  EXPECT_EQ(point_data(harmonic(Complex(1, 1)), Complex(2, 1)), fd(1, 1));
}

TEST(PointData, AffineWrappers) {
  EXPECT_EQ(point_data(ModelOp::scaled(FS(1), 0), 0), fd(INF, INF));
  EXPECT_EQ(point_data(ModelOp::scaled(FS(1), 0), 1), fd(0, 0));
  EXPECT_EQ(point_data(ModelOp::scaled(BS(1), 2), q("3/2")), fd(1, 0));
  EXPECT_EQ(point_data(ModelOp::shifted(FS(1), q("1/2")), q("1/2")), fd(0, 1));
  EXPECT_EQ(point_data(ModelOp::identity(), 1), fd(INF, INF));
}

TEST(PointData, RespectsAdjoint) {
  const std::vector<ModelOp> zoo = {
      FS(1), FS(INF), BS(3), ftc({0, Complex(0, 1)}, 1), harmonic(Complex(q("1/2"), 0)), periodic({1, Complex(0, 2)}),
      ModelOp::direct_sum({FS(2), harmonic(0)}), ModelOp::scaled(BS(1), Complex(0, 2)),
      ModelOp::shifted(FS(INF), Complex(1, 1))};
  const std::vector<Complex> lambdas = {0, 1, Complex(0, 1), Complex(q("1/2"), q("1/2")), Complex(q("3/2"), 1), 2,
                                        Complex(0, 2), q("1/2")};
  for (const auto& op : zoo)
    for (const auto& l : lambdas) EXPECT_EQ(point_data(adjoint(op), conj(l)), adjoint_data(point_data(op, l)));
}

TEST(PointData, DirectSumAdditivity) {
  const std::vector<ModelOp> parts = {FS(1), BS(2), harmonic(0), ftc({1}, 0)};
  for (const Complex l : {Complex(0), Complex(1), Complex(q("1/2")), Complex(2)}) {
    const FredholmData a = point_data(parts[0], l), b = point_data(parts[1], l);
    const FredholmData c = point_data(parts[2], l), d = point_data(parts[3], l);
    const FredholmData s = point_data(ModelOp::direct_sum(parts), l);
    EXPECT_EQ(s.alpha, a.alpha + b.alpha + c.alpha + d.alpha);
    EXPECT_EQ(s.beta_star, a.beta_star + b.beta_star + c.beta_star + d.beta_star);
    EXPECT_EQ(s.range_closed, a.range_closed && b.range_closed && c.range_closed && d.range_closed);
  }
}

TEST(NormBound, DominatesModulus) {
  EXPECT_EQ(norm_bound(FS(INF)), Rational(1));
  EXPECT_EQ(norm_bound(periodic({1, Complex(0, -3)})), Rational(3));
  EXPECT_EQ(norm_bound(ModelOp::scaled(BS(1), 2)), Rational(2));
  EXPECT_GE(norm_bound(harmonic(Complex(1, 1))), Rational(2));
}

TEST(Truncate, Examples) {
  const Eigen::MatrixXcd s = truncate(FS(1), 3);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(3, 3);
  want(1, 0) = want(2, 1) = 1.0;
  EXPECT_EQ(s, want);

  const Eigen::MatrixXcd p = truncate(periodic({1, 2}), 4);
  Eigen::VectorXcd diag(4);
  diag << 1.0, 2.0, 1.0, 2.0;
  EXPECT_EQ(p, Eigen::MatrixXcd(diag.asDiagonal()));
}

TEST(Truncate, DirectSumIsInterleavedBlocks) {
  const ModelOp a = FS(1), b = ftc({Complex(0, 1), 3}, q("1/2"));
  const Eigen::MatrixXcd sum = truncate(ModelOp::direct_sum({a, b}), 8);
  Eigen::MatrixXcd blocks = Eigen::MatrixXcd::Zero(8, 8);
  blocks.topLeftCorner(4, 4) = truncate(a, 4);
  blocks.bottomRightCorner(4, 4) = truncate(b, 4);
  // interleaved index 2u+i sits at block position 4i+u
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(8, 8);
  for (int i = 0; i < 2; ++i)
    for (int u = 0; u < 4; ++u) P(2 * u + i, 4 * i + u) = 1.0;
  EXPECT_EQ(sum, P * blocks * P.transpose());
}

TEST(CokernelBasis, Examples) {
  const auto one = cokernel_basis(FS(1), 0, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].coordinate, 1u);
  ASSERT_EQ(one[0].vector.size(), 1u);
  EXPECT_EQ(one[0].vector[0].index, 0u);

  const auto three = cokernel_basis(FS(INF), 0, 3);
  ASSERT_EQ(three.size(), 3u);
  for (std::uint64_t p = 0; p < 3; ++p) {
    EXPECT_EQ(three[p].summand_path, std::vector<std::uint64_t>{p});
    EXPECT_EQ(three[p].coordinate, 1u);
  }

  try {
    (void)cokernel_basis(harmonic(0), 0, 1);
    FAIL() << "expected NotAvailable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAvailable);
  }
  EXPECT_THROW((void)cokernel_basis(FS(2), 0, 3), Error);
}

TEST(CokernelBasis, VectorsSpanTheNumericalCokernel) {
  // orthonormal, and annihilated by the adjoint of the section
  const ModelOp op = ModelOp::direct_sum({FS(2), ftc({0}, 1)});
  const auto basis = cokernel_basis(op, 0, 3);
  const Eigen::MatrixXcd m = truncate(op, 60);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(60);
    for (const auto& e : basis[a].vector) v(static_cast<Eigen::Index>(e.index)) = e.value;
    EXPECT_NEAR(v.norm(), 1.0, 1e-14);
    EXPECT_LT((m.adjoint() * v).norm(), 1e-14);
  }
}

TEST(KernelBasis, GeometricVectorsAreKernelVectors) {
  const Complex l(q("1/2"), q("-1/4"));
  const VectorFamily fam = kernel_basis(BS(3), l);
  ASSERT_EQ(fam.count(), ExtNat(3));
  for (std::uint64_t s = 0; s < 3; ++s) {
    const SparseVector v = fam.vector(s);
    double norm = 0;
    for (const auto& e : v) norm += std::norm(e.value);
    EXPECT_NEAR(norm, 1.0, 1e-12);
    // (BS - lambda) v, column by column
    std::map<std::uint64_t, cdouble> image;
    for (const auto& e : v)
      for (const auto& c : column(BS(3), e.index, to_double(l))) image[c.index] += e.value * c.value;
    for (const auto& [idx, val] : image) EXPECT_LT(std::abs(val), 1e-15) << idx;
  }
}

TEST(Sections, MatchFrozenReference) {
  const auto frozen = load_frozen("sections.json");
  for (const auto& row : frozen.at("rows")) {
    const ModelOp op = io::model_op_from_json(row.at("op"));
    const cdouble l = to_double(io::complex_from_json(row.at("lambda")));
    const auto& sizes = row.at("sizes");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const SectionSpectrum s = section_spectrum(op, sizes[i].get<std::uint64_t>(), l);
      const std::uint64_t k = numerical_kernel(s, kDefaultTol);
      const std::string where = row.at("name").get<std::string>() + " at " + row.at("lambda").dump();
      EXPECT_EQ(k, row.at("kernel_dims")[i].get<std::uint64_t>()) << where;
      const double want = row.at("sigma_min")[i].get<double>();
      EXPECT_NEAR(sigma_min_after(s, k), want, 1e-9 + 1e-8 * want) << where;
    }
  }
}

TEST(Sections, KernelSettlesAtFiniteClosedAlpha) {
  // threshold: the geometric kernel vector of BS(m) needs ratio^(N/m) below tol
  struct Case {
    ModelOp op;
    Complex lambda;
    std::uint64_t threshold;
  };
  const std::vector<Case> cases = {{FS(1), 0, 1},           {BS(1), 0, 2},
                                   {BS(3), q("1/2"), 120},   {ftc({0, 0, 0}, 1), 0, 4},
                                   {harmonic(0), q("1/2"), 2}, {ModelOp::direct_sum({BS(1), FS(2)}), q("1/4"), 40}};
  for (const auto& c : cases) {
    const FredholmData d = point_data(c.op, c.lambda);
    ASSERT_TRUE(d.alpha.is_finite() && d.range_closed);
    for (std::uint64_t N : {c.threshold, c.threshold + 17, 2 * c.threshold + 50}) {
      const auto s = section_spectrum(c.op, N, to_double(c.lambda));
      EXPECT_EQ(numerical_kernel(s, kDefaultTol), d.alpha.value()) << "N=" << N;
    }
  }
}
