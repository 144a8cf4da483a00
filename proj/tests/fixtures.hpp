#pragma once

// Operator fixtures shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "fredholm/fredholm.hpp"

namespace fixtures {

using namespace fredholm;

inline ModelOp one() { return ModelOp::identity(); }
inline ModelOp diag_ftc(std::vector<Complex> prefix, Complex tail) {
  return ModelOp::diagonal(SeqSpec::finite_then_constant(std::move(prefix), std::move(tail)));
}

struct Construction {
  std::string name;
  Target target;
  std::vector<ModelOp> diagonals;
  Strategy strategy;
  ExtNat alpha_T;
  ExtNat beta_T;
};

/// Row and pair constructions at lambda = 0 whose kernels are known by hand.
inline std::vector<Construction> constructions() {
  const ModelOp fs = ModelOp::forward_shift(INF), bs = ModelOp::backward_shift(INF);
  using K = Strategy::Kind;
  return {
      {"shift pair", Target::UpperWeyl, {fs, bs}, {K::RowConstruction, 1}, 0, INF},
      // N(D1) = span e_1 survives
      {"n3 one zero", Target::UpperWeyl, {diag_ftc({0}, 1), fs, bs}, {K::RowConstruction, 2}, 1, INF},
      // D2 = FS(inf) + diag(0,0,2,2,...): two kernel vectors in row 2
      {"n3 two zeros",
       Target::UpperWeyl,
       {ModelOp::forward_shift(1), ModelOp::direct_sum({fs, diag_ftc({0, 0}, 2)}), ModelOp::scaled(bs, 2)},
       {K::RowConstruction, 2},
       2,
       INF},
      {"n3 mixed sums",
       Target::UpperFredholm,
       {ModelOp::diagonal(SeqSpec::periodic({1, 2})), ModelOp::direct_sum({ModelOp::forward_shift(2), fs}),
        ModelOp::direct_sum({bs, ModelOp::diagonal(SeqSpec::harmonic(5))})},
       {K::RowConstruction, 2},
       0,
       INF},
      {"n4 fredholm pair",
       Target::Fredholm,
       {fs, bs, ModelOp::direct_sum({diag_ftc({0}, 2), fs}), bs},
       {K::FredholmPair, 1, 4},
       1,
       0},
  };
}

/// D1 = diag(1,2,1,2,...) + FS(inf), D2 = BS(inf): alpha(D1 - 1) is infinite.
inline std::vector<ModelOp> corner_fixture() {
  return {ModelOp::direct_sum({ModelOp::diagonal(SeqSpec::periodic({1, 2})), ModelOp::forward_shift(INF)}),
          ModelOp::backward_shift(INF)};
}

}  // namespace fixtures
