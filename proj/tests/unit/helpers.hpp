#pragma once

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fredholm/fredholm.hpp"
#include "fredholm/json_io.hpp"
#include "oracles/theorem_oracle.hpp"

namespace testing_helpers {

using namespace fredholm;

inline FredholmData fd(ExtNat a, ExtNat b, bool closed = true) { return {a, b, closed}; }

inline ModelOp FS(ExtNat m) { return ModelOp::forward_shift(m); }
inline ModelOp BS(ExtNat m) { return ModelOp::backward_shift(m); }
inline ModelOp ftc(std::vector<Complex> prefix, Complex tail) {
  return ModelOp::diagonal(SeqSpec::finite_then_constant(std::move(prefix), std::move(tail)));
}
inline ModelOp harmonic(Complex c) { return ModelOp::diagonal(SeqSpec::harmonic(std::move(c))); }
inline ModelOp periodic(std::vector<Complex> block) { return ModelOp::diagonal(SeqSpec::periodic(std::move(block))); }

inline Rational q(const char* s) { return parse_rational(s); }

inline io::json load_frozen(const std::string& name) {
  std::ifstream in(std::string(FROZEN_DIR) + "/" + name);
  return io::json::parse(in);
}

inline oracle::Diag to_oracle(const std::vector<FredholmData>& d) {
  oracle::Diag out;
  for (const auto& x : d)
    out.push_back({x.alpha.is_inf() ? oracle::kInf : static_cast<double>(x.alpha.value()),
                   x.beta_star.is_inf() ? oracle::kInf : static_cast<double>(x.beta_star.value()), x.range_closed});
  return out;
}

/// alpha, beta_star from {0,1,2,3,inf}, closed with probability 3/4.
inline FredholmData random_fd(std::mt19937_64& rng) {
  static const ExtNat values[] = {0, 1, 2, 3, INF};
  std::uniform_int_distribution<int> pick(0, 4);
  std::bernoulli_distribution closed(0.75);
  const ExtNat a = values[pick(rng)];
  const ExtNat b = values[pick(rng)];
  return {a, b, closed(rng)};
}

inline std::vector<FredholmData> random_diagonal(std::mt19937_64& rng, std::size_t n) {
  std::vector<FredholmData> d;
  for (std::size_t s = 0; s < n; ++s) d.push_back(random_fd(rng));
  return d;
}

}  // namespace testing_helpers
