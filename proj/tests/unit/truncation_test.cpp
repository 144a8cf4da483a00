#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "helpers.hpp"

using namespace fredholm;
using namespace testing_helpers;

TEST(VerifyPointData, HarmonicSigmaMinIsOneOverN) {
  const auto r = verify_point_data(harmonic(0), 0, {50, 100, 200});
  EXPECT_TRUE(r.pass) << ::testing::PrintToString(r.failures);
  EXPECT_EQ(r.kernel_dims, (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_NEAR(r.sigma_min_complement[0], 1.0 / 50, 1e-15);
  EXPECT_NEAR(r.sigma_min_complement[1], 1.0 / 100, 1e-15);
  EXPECT_NEAR(r.sigma_min_complement[2], 1.0 / 200, 1e-15);
}

TEST(VerifyPointData, ForwardShiftAndIdentity) {
  for (const ModelOp& op : {FS(1), ModelOp::identity()}) {
    const auto r = verify_point_data(op, 0, {32, 64, 128});
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.kernel_dims, (std::vector<std::uint64_t>{0, 0, 0}));
    for (double s : r.sigma_min_complement) EXPECT_NEAR(s, 1.0, 1e-14);
  }
}

TEST(VerifyPointData, Zoo) {
  const std::vector<std::pair<ModelOp, Complex>> cases = {
      {BS(1), q("1/2")},          {BS(INF), 0},
      {ftc({0, 0, 0}, 1), 0},     {ftc({0, 0, 0}, 1), 1},
      {periodic({1, 2}), 2},      {harmonic(0), q("1/4")},
      {FS(INF), Complex(0, 1)},   {ModelOp::direct_sum({BS(2), FS(1)}), Complex(q("-1/2"), 0)},
      {ModelOp::scaled(FS(1), 3), Complex(3, 0)}};
  for (const auto& [op, l] : cases) {
    const auto r = verify_point_data(op, l, {100, 200, 400});
    EXPECT_TRUE(r.pass) << io::to_json(op).dump() << " at " << to_string(l) << ": " << ::testing::PrintToString(r.failures);
  }
}

TEST(VerifyPointData, ZeroOperatorIsIllConditioned) {
  try {
    (void)verify_point_data(ModelOp::scaled(FS(1), 0), 0, {8, 16});
    FAIL() << "expected NumericalIllConditioned";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NumericalIllConditioned);
  }
}

TEST(VerifyCompletion, ShiftPair) {
  const std::vector<ModelOp> ops = {FS(INF), BS(INF)};
  const auto c = construct(Target::UpperWeyl, ops, 0);
  const auto r = verify_completion(ops, c, 0, {64, 128, 256}, 1e-10);
  EXPECT_TRUE(r.pass) << ::testing::PrintToString(r.failures);
  EXPECT_EQ(r.kernel_dims, (std::vector<std::uint64_t>{0, 0, 0}));
  ASSERT_TRUE(r.partial_isometry_residual.has_value());
  EXPECT_LT(*r.partial_isometry_residual, 1e-12);
  EXPECT_TRUE(r.cokernel_infinite.value_or(false));
}

TEST(VerifyCompletion, ZeroCertificateOverInvertibles) {
  const std::vector<ModelOp> ops = {ModelOp::identity(), periodic({2, 3}), FS(2)};
  const Complex l = 5;
  const auto c = construct(Target::Fredholm, ops, l);
  const auto r = verify_completion(ops, c, l, {32, 64, 128});
  EXPECT_TRUE(r.pass) << ::testing::PrintToString(r.failures);
  EXPECT_EQ(r.kernel_dims, (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_EQ(r.adjoint_kernel_dims, (std::vector<std::uint64_t>{0, 0, 0}));
  for (double s : r.sigma_min_complement) EXPECT_GT(s, 1.0);
}

TEST(VerifyCompletion, CorruptedCertificateFails) {
  const std::vector<ModelOp> ops = {FS(INF), BS(INF), BS(INF)};
  auto c = construct(Target::UpperWeyl, ops, 0);
  ASSERT_EQ(c.entries.size(), 2u);
  EXPECT_TRUE(verify_completion(ops, c, 0, {32, 64}).pass);
  // both maps onto f_3s
  c.entries[1].map.to.offset = c.entries[0].map.to.offset;
  const auto r = verify_completion(ops, c, 0, {32, 64});
  EXPECT_FALSE(r.pass);
  EXPECT_GT(*r.partial_isometry_residual, 0.5);
}

TEST(VerifyCompletion, ColumnCertificatesGoThroughTheAdjoint) {
  const std::vector<ModelOp> ops = {FS(INF), BS(INF)};
  const auto c = construct(Target::LowerWeyl, ops, 0);
  EXPECT_EQ(c.strategy, (Strategy{Strategy::Kind::ColumnConstruction, 2}));
  const auto r = verify_completion(ops, c, 0, {32, 64, 128});
  EXPECT_TRUE(r.via_adjoint);
  EXPECT_TRUE(r.pass) << ::testing::PrintToString(r.failures);
}

TEST(VerifyCompletion, ToleranceRobustness) {
  for (const auto& f : fixtures::constructions()) {
    const auto c = construct(f.target, f.diagonals, 0);
    std::vector<bool> verdicts;
    for (double tol : {1e-8, 1e-10, 1e-12}) verdicts.push_back(verify_completion(f.diagonals, c, 0, {32, 64, 128}, tol).pass);
    EXPECT_EQ(verdicts, std::vector<bool>(3, true)) << f.name;
  }
}

TEST(VerifyCompletion, RejectsBadSizes) {
  const std::vector<ModelOp> ops = {FS(INF), BS(INF)};
  const auto c = construct(Target::UpperWeyl, ops, 0);
  EXPECT_THROW((void)verify_completion(ops, c, 0, {64}), Error);
  EXPECT_THROW((void)verify_completion(ops, c, 0, {64, 32}), Error);
  EXPECT_THROW((void)verify_completion({FS(INF)}, c, 0, {32, 64}), Error);
}

TEST(Truncation, AdjointSymmetry) {
  const std::vector<ModelOp> zoo = {FS(1), BS(INF), ftc({0, Complex(1, 1)}, q("1/2")), harmonic(Complex(0, 1)),
                                    ModelOp::direct_sum({FS(2), periodic({1, Complex(0, 3)})}),
                                    ModelOp::shifted(ModelOp::scaled(FS(INF), Complex(1, -1)), 2)};
  for (const auto& op : zoo) {
    const Eigen::MatrixXcd t = truncate(op, 40);
    EXPECT_EQ(truncate(adjoint(op), 40), Eigen::MatrixXcd(t.adjoint()));
    const Eigen::VectorXd a = Eigen::BDCSVD<Eigen::MatrixXcd>(t).singularValues();
    const Eigen::VectorXd b = Eigen::BDCSVD<Eigen::MatrixXcd>(truncate(adjoint(op), 40)).singularValues();
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CornerCheck, InfiniteNullityKeepsGrowing) {
  const auto ops = fixtures::corner_fixture();
  const auto cert = construct(Target::UpperWeyl, ops, 0);
  const auto res = diagonal_corner_check(ops, cert, {1, 5}, {100, 200, 400});
  EXPECT_TRUE(res.ok);
  ASSERT_EQ(res.samples.size(), 2u);
  const auto& k = res.samples[0].kernel_dims;
  ASSERT_EQ(k.size(), 3u);
  EXPECT_GE(k[2], 2 * k[0]);
  EXPECT_LT(k[0], k[1]);
  // lambda = 5 is a resolvent point of both corners
  EXPECT_FALSE(res.samples[1].in_sf_plus_d1 || res.samples[1].in_sf_minus_dn);
}

TEST(CornerCheck, UnitCircleSigmaMinDecays) {
  const std::vector<ModelOp> ops = {FS(1), BS(1)};
  const auto cert = construct(Target::UpperFredholm, ops, 0);
  // sigma_min ~ 1/N here, so a plain doubling sits right at the factor-2 proxy
  const auto res = diagonal_corner_check(ops, cert, {1}, {100, 400});
  EXPECT_TRUE(res.ok);
  EXPECT_TRUE(res.samples[0].in_sf_plus_d1);
  std::vector<double> smin;
  const CompletedOperator op(ops, cert);
  for (std::uint64_t N : {100, 200, 400}) smin.push_back(sigma_min_after(section_spectrum(op, N, 1.0), 0));
  EXPECT_LT(smin[1], smin[0]);
  EXPECT_LT(smin[2], smin[1]);
  EXPECT_LT(smin[2], 0.05);
}
