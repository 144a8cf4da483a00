#pragma once

// JSON forms of the library's values. Optional: only this header needs nlohmann::json.

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fredholm/construct.hpp"
#include "fredholm/spectral.hpp"
#include "fredholm/truncation.hpp"

namespace fredholm::io {

using nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

// ExtNat: nonnegative integer or "inf"

inline json to_json(ExtNat x) { return x.is_inf() ? json("inf") : json(x.value()); }

inline ExtNat ext_nat_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return INF;
  if (j.is_number_unsigned()) return ExtNat(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return ExtNat(static_cast<std::uint64_t>(j.get<std::int64_t>()));
  parse_fail("expected a nonnegative integer or \"inf\", got " + j.dump());
}

inline json to_json(const FredholmData& fd) {
  return {{"alpha", to_json(fd.alpha)}, {"beta_star", to_json(fd.beta_star)}, {"range_closed", fd.range_closed}};
}

inline FredholmData fredholm_data_from_json(const json& j) {
  const json& closed = field(j, "range_closed");
  if (!closed.is_boolean()) parse_fail("range_closed must be a boolean");
  return {ext_nat_from_json(field(j, "alpha")), ext_nat_from_json(field(j, "beta_star")), closed.get<bool>()};
}

// Rationals: integers stay JSON integers, everything else is a "p/q" string.

inline json to_json(const Rational& q) {
  if (denominator(q) == 1 && abs(numerator(q)) < BigInt(1) << 62) return json(static_cast<std::int64_t>(numerator(q)));
  return json(to_string(q));
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) return parse_rational(j.dump());
  parse_fail("expected a rational, got " + j.dump());
}

inline json to_json(const Complex& z) { return json::array({to_json(z.re), to_json(z.im)}); }

/// [re, im], or a bare real number.
inline Complex complex_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) parse_fail("complex numbers are [re, im]");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return {rational_from_json(j), Rational(0)};
}

inline json to_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

inline std::vector<Complex> complex_list_from_json(const json& j) {
  if (!j.is_array()) parse_fail("expected a list of complex numbers");
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

// Operators

inline json to_json(const SeqSpec& s) {
  switch (s.kind) {
    case SeqSpec::Kind::FiniteThenConstant:
      return {{"kind", "finite_then_constant"}, {"prefix", to_json(s.values)}, {"tail", to_json(s.scalar)}};
    case SeqSpec::Kind::Harmonic: return {{"kind", "harmonic"}, {"center", to_json(s.scalar)}};
    case SeqSpec::Kind::Periodic: return {{"kind", "periodic"}, {"block", to_json(s.values)}};
  }
  return {};
}

inline SeqSpec seq_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "finite_then_constant")
    return SeqSpec::finite_then_constant(j.contains("prefix") ? complex_list_from_json(j.at("prefix")) : std::vector<Complex>{},
                                         complex_from_json(field(j, "tail")));
  if (kind == "harmonic") return SeqSpec::harmonic(complex_from_json(field(j, "center")));
  if (kind == "periodic") return SeqSpec::periodic(complex_list_from_json(field(j, "block")));
  parse_fail("unknown sequence kind '" + kind + "'");
}

inline json to_json(const ModelOp& op) {
  using K = ModelOp::Kind;
  switch (op.kind()) {
    case K::Diagonal: return {{"kind", "diag"}, {"seq", to_json(op.seq())}};
    case K::ForwardShift: return {{"kind", "fwd_shift"}, {"mult", to_json(op.multiplicity())}};
    case K::BackwardShift: return {{"kind", "bwd_shift"}, {"mult", to_json(op.multiplicity())}};
    case K::DirectSum: {
      json parts = json::array();
      for (const auto& p : op.parts()) parts.push_back(to_json(p));
      return {{"kind", "direct_sum"}, {"parts", parts}};
    }
    case K::Scaled: return {{"kind", "scaled"}, {"op", to_json(op.inner())}, {"factor", to_json(op.scalar())}};
    case K::Shifted: return {{"kind", "shifted"}, {"op", to_json(op.inner())}, {"offset", to_json(op.scalar())}};
  }
  return {};
}

inline ModelOp model_op_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  auto mult = [&] { return j.contains("mult") ? ext_nat_from_json(j.at("mult")) : ExtNat(1); };
  if (kind == "diag") return ModelOp::diagonal(seq_from_json(field(j, "seq")));
  if (kind == "identity") return ModelOp::identity();
  if (kind == "fwd_shift") return ModelOp::forward_shift(mult());
  if (kind == "bwd_shift") return ModelOp::backward_shift(mult());
  if (kind == "direct_sum") {
    std::vector<ModelOp> parts;
    for (const auto& p : field(j, "parts")) parts.push_back(model_op_from_json(p));
    return ModelOp::direct_sum(std::move(parts));
  }
  if (kind == "scaled") return ModelOp::scaled(model_op_from_json(field(j, "op")), complex_from_json(field(j, "factor")));
  if (kind == "shifted") return ModelOp::shifted(model_op_from_json(field(j, "op")), complex_from_json(field(j, "offset")));
  parse_fail("unknown operator kind '" + kind + "'");
}

// Decisions and certificates

inline json to_json(const Strategy& s) {
  switch (s.kind) {
    case Strategy::Kind::ZeroCompletion: return {{"kind", "zero"}};
    case Strategy::Kind::RowConstruction: return {{"kind", "row"}, {"j", s.j}};
    case Strategy::Kind::ColumnConstruction: return {{"kind", "column"}, {"j", s.j}};
    case Strategy::Kind::FredholmPair: return {{"kind", "pair"}, {"j", s.j}, {"k", s.k}};
  }
  return {};
}

inline Strategy strategy_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  auto idx = [&](const char* key) { return field(j, key).get<std::size_t>(); };
  if (kind == "zero") return {Strategy::Kind::ZeroCompletion};
  if (kind == "row") return {Strategy::Kind::RowConstruction, idx("j")};
  if (kind == "column") return {Strategy::Kind::ColumnConstruction, idx("j")};
  if (kind == "pair") return {Strategy::Kind::FredholmPair, idx("j"), idx("k")};
  parse_fail("unknown strategy '" + kind + "'");
}

inline json to_json(const DecisionOutcome& o) {
  return {{"verdict", to_string(o.verdict)},
          {"strategy", o.strategy ? to_json(*o.strategy) : json(nullptr)},
          {"condition_i", o.condition_i},
          {"condition_iii", o.condition_iii}};
}

inline json to_json(const BasisMap& m) {
  // stride/offset at the top level describe the target progression
  return {{"stride", m.to.stride},
          {"offset", m.to.offset},
          {"target", m.target == TargetBasis::Cokernel ? "cokernel" : "space"},
          {"source", {{"basis", m.source == SourceBasis::Kernel ? "kernel" : "space"}, {"stride", m.from.stride}, {"offset", m.from.offset}}}};
}

inline BasisMap basis_map_from_json(const json& j) {
  BasisMap m;
  m.to = {field(j, "stride").get<std::uint64_t>(), field(j, "offset").get<std::int64_t>()};
  const std::string target = j.value("target", "cokernel");
  if (target != "cokernel" && target != "space") parse_fail("unknown map target '" + target + "'");
  m.target = target == "cokernel" ? TargetBasis::Cokernel : TargetBasis::Space;
  if (j.contains("source")) {
    const json& s = j.at("source");
    const std::string basis = s.value("basis", "space");
    if (basis != "kernel" && basis != "space") parse_fail("unknown map source '" + basis + "'");
    m.source = basis == "kernel" ? SourceBasis::Kernel : SourceBasis::Space;
    m.from = {s.value("stride", std::uint64_t{1}), s.value("offset", std::int64_t{0})};
  }
  if (m.to.stride == 0 || m.from.stride == 0) parse_fail("map strides must be positive");
  return m;
}

inline json to_json(const PredictedInvariants& p) {
  json ks = json::array(), cs = json::array();
  for (auto x : p.kernel_shape) ks.push_back(to_json(x));
  for (auto x : p.cokernel_shape) cs.push_back(to_json(x));
  return {{"alpha_T", to_json(p.alpha_T)},
          {"beta_T", to_json(p.beta_T)},
          {"range_closed_T", p.range_closed_T},
          {"kernel_shape", ks},
          {"cokernel_shape", cs}};
}

inline json to_json(const CompletionCertificate& c) {
  json entries = json::array();
  for (const auto& e : c.entries) entries.push_back({{"i", e.i}, {"j", e.j}, {"map", to_json(e.map)}});
  return {{"n", c.n},
          {"target", to_string(c.target)},
          {"strategy", to_json(c.strategy)},
          {"lambda", to_json(c.lambda)},
          {"entries", entries},
          {"predicted", to_json(c.predicted)}};
}

inline CompletionCertificate certificate_from_json(const json& j) {
  CompletionCertificate c;
  c.n = field(j, "n").get<std::size_t>();
  c.target = parse_target(field(j, "target").get<std::string>());
  c.strategy = strategy_from_json(field(j, "strategy"));
  c.lambda = complex_from_json(field(j, "lambda"));
  for (const auto& e : field(j, "entries")) {
    CertificateEntry ce{field(e, "i").get<std::size_t>(), field(e, "j").get<std::size_t>(), basis_map_from_json(field(e, "map"))};
    if (ce.i < 1 || ce.i >= ce.j || ce.j > c.n) parse_fail("entry (" + std::to_string(ce.i) + "," + std::to_string(ce.j) + ") is not strictly upper");
    c.entries.push_back(ce);
  }
  const json& p = field(j, "predicted");
  c.predicted.alpha_T = ext_nat_from_json(field(p, "alpha_T"));
  c.predicted.beta_T = ext_nat_from_json(field(p, "beta_T"));
  c.predicted.range_closed_T = field(p, "range_closed_T").get<bool>();
  if (p.contains("kernel_shape"))
    for (const auto& x : p.at("kernel_shape")) c.predicted.kernel_shape.push_back(ext_nat_from_json(x));
  if (p.contains("cokernel_shape"))
    for (const auto& x : p.at("cokernel_shape")) c.predicted.cokernel_shape.push_back(ext_nat_from_json(x));
  return c;
}

inline json to_json(const ResidueDescription& r) {
  return {{"modulus", r.modulus},
          {"start", r.start},
          {"covered_residues", r.covered_residues},
          {"uncovered_residues", r.uncovered_residues},
          {"uncovered_before_start", r.uncovered_before_start},
          {"complement_infinite", r.complement_infinite()}};
}

inline json to_json(const TruncationReport& r) {
  json j = {{"sizes", r.sizes},
            {"kernel_dims", r.kernel_dims},
            {"sigma_min_complement", r.sigma_min_complement},
            {"sigma_max", r.sigma_max},
            {"tol", r.tol},
            {"via_adjoint", r.via_adjoint},
            {"pass", r.pass},
            {"failures", r.failures}};
  if (!r.adjoint_kernel_dims.empty()) j["adjoint_kernel_dims"] = r.adjoint_kernel_dims;
  if (r.partial_isometry_residual) {
    j["partial_isometry_residual"] = *r.partial_isometry_residual;
    j["isometry_tol"] = r.isometry_tol;
  }
  if (r.cokernel_infinite) j["cokernel_infinite"] = *r.cokernel_infinite;
  return j;
}

/// A problem names the diagonal either as operators or as raw triples.
struct Problem {
  std::variant<std::vector<ModelOp>, std::vector<FredholmData>> diagonals;
  std::optional<Complex> lambda;
  std::optional<Target> target;
  std::optional<Grid> grid;
  std::optional<Corollary> corollary;

  std::size_t n() const {
    return std::visit([](const auto& v) { return v.size(); }, diagonals);
  }
  bool has_operators() const { return std::holds_alternative<std::vector<ModelOp>>(diagonals); }

  const std::vector<ModelOp>& operators() const {
    if (!has_operators()) throw Error(ErrorCode::InvalidArgument, "raw triples allow decide and classify only");
    return std::get<std::vector<ModelOp>>(diagonals);
  }

  /// Pointwise data at lambda (ignored for raw triples).
  std::vector<FredholmData> data_at(const Complex& at) const {
    if (!has_operators()) return std::get<std::vector<FredholmData>>(diagonals);
    return detail::point_data_all(operators(), at);
  }
};

inline Problem problem_from_json(const json& j) {
  Problem p;
  const json& diags = field(j, "diagonals");
  if (!diags.is_array() || diags.empty()) parse_fail("diagonals must be a nonempty list");
  const bool raw = diags.front().is_object() && diags.front().contains("alpha");
  if (raw) {
    std::vector<FredholmData> v;
    for (const auto& d : diags) {
      if (!d.contains("alpha")) parse_fail("diagonals mix raw triples and operators");
      v.push_back(fredholm_data_from_json(d));
    }
    p.diagonals = std::move(v);
  } else {
    std::vector<ModelOp> v;
    for (const auto& d : diags) {
      if (d.contains("alpha")) parse_fail("diagonals mix raw triples and operators");
      v.push_back(model_op_from_json(d));
    }
    p.diagonals = std::move(v);
  }
  if (j.contains("n") && field(j, "n").get<std::size_t>() != p.n())
    throw Error(ErrorCode::ArityMismatch, "n = " + j.at("n").dump() + " but " + std::to_string(p.n()) + " diagonals given");
  if (j.contains("lambda")) p.lambda = complex_from_json(j.at("lambda"));
  if (j.contains("target")) p.target = parse_target(j.at("target").get<std::string>());
  if (j.contains("grid")) p.grid = parse_grid(j.at("grid").get<std::string>());
  if (j.contains("corollary")) p.corollary = parse_corollary(j.at("corollary").get<std::string>());
  return p;
}

}  // namespace fredholm::io
