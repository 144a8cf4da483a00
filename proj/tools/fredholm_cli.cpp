// Command line front end: classify, decide, construct, verify, spectra.
//
// Exit status: 0 success, 2 NotExists, 3 Indeterminate (decide only), 1 on
// any error, failed verification, or inconsistent sandwich point.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fredholm/fredholm.hpp"
#include "fredholm/json_io.hpp"

#ifndef FREDHOLM_VERSION
#define FREDHOLM_VERSION "0.0.0"
#endif

namespace {

using namespace fredholm;
using io::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + out_path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// "re" or "re,im".
Complex parse_lambda(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_rational(s), Rational(0)};
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

std::vector<std::uint64_t> parse_sizes(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad size '" + item + "'");
    }
  }
  return out;
}

struct Options {
  std::string problem, certificate, out, target, lambda, grid, sizes = "64,128,256", corollary;
  double tol = kDefaultTol;
};

Complex lambda_of(const Options& o, const io::Problem& p) {
  if (!o.lambda.empty()) return parse_lambda(o.lambda);
  return p.lambda.value_or(Complex(0));
}

Target target_of(const Options& o, const io::Problem& p) {
  if (!o.target.empty()) return parse_target(o.target);
  if (p.target) return *p.target;
  throw Error(ErrorCode::InvalidArgument, "no target given (use --target or a \"target\" field)");
}

int run_classify(const Options& o) {
  const io::Problem p = io::problem_from_json(read_json(o.problem));
  const Complex lambda = lambda_of(o, p);
  json rows = json::array();
  for (const auto& fd : p.data_at(lambda)) {
    const ClassSet c = classify(fd);
    const auto ind = index(fd);
    rows.push_back({{"data", io::to_json(fd)},
                    {"deficiency", io::to_json(deficiency(fd))},
                    {"index", ind ? json(to_string(*ind)) : json(nullptr)},
                    {"phi_plus", c.in_phi_plus},
                    {"phi_minus", c.in_phi_minus},
                    {"phi", c.in_phi},
                    {"upper_weyl", c.in_upper_weyl},
                    {"lower_weyl", c.in_lower_weyl}});
  }
  emit(o.out, dump({{"lambda", io::to_json(lambda)}, {"diagonals", rows}}));
  return 0;
}

int run_decide(const Options& o) {
  const io::Problem p = io::problem_from_json(read_json(o.problem));
  const Complex lambda = lambda_of(o, p);
  const Target t = target_of(o, p);
  const DecisionOutcome d = decide(t, p.data_at(lambda));
  json j = io::to_json(d);
  j["target"] = to_string(t);
  if (p.has_operators()) j["lambda"] = io::to_json(lambda);
  emit(o.out, dump(j));
  switch (d.verdict) {
    case Verdict::Exists: return 0;
    case Verdict::NotExists: return 2;
    case Verdict::Indeterminate: return 3;
  }
  return 1;
}

int run_construct(const Options& o) {
  const io::Problem p = io::problem_from_json(read_json(o.problem));
  const CompletionCertificate c = construct(target_of(o, p), p.operators(), lambda_of(o, p));
  emit(o.out, dump(io::to_json(c)));
  return 0;
}

int run_verify(const Options& o) {
  const io::Problem p = io::problem_from_json(read_json(o.problem));
  const CompletionCertificate c = io::certificate_from_json(read_json(o.certificate));
  const Complex lambda = o.lambda.empty() ? c.lambda : parse_lambda(o.lambda);
  const TruncationReport r = verify_completion(p.operators(), c, lambda, parse_sizes(o.sizes), o.tol);
  emit(o.out, dump(io::to_json(r)));
  return r.pass ? 0 : 1;
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

int run_spectra(const Options& o) {
  const io::Problem p = io::problem_from_json(read_json(o.problem));
  Corollary c;
  if (!o.corollary.empty())
    c = parse_corollary(o.corollary);
  else if (p.corollary)
    c = *p.corollary;
  else
    throw Error(ErrorCode::InvalidArgument, "no corollary given (use --corollary)");
  Grid g;
  if (!o.grid.empty())
    g = parse_grid(o.grid);
  else if (p.grid)
    g = *p.grid;
  else
    throw Error(ErrorCode::InvalidArgument, "no grid given (use --grid)");

  const SandwichReport rep = sandwich_report(c, p.operators(), g);
  std::ostringstream csv;
  csv << "# fredholm " << FREDHOLM_VERSION << "\n";
  csv << "re,im";
  for (std::size_t s = 1; s <= p.n(); ++s) csv << ",alpha_" << s << ",beta_" << s << ",closed_" << s;
  if (!rep.points.empty())
    for (const auto& f : rep.points.front().deltas) csv << "," << f.name;
  csv << ",in_lhs,in_rhs,cond_i,cond_iii,verdict\n";
  for (const auto& pt : rep.points) {
    csv << to_string(pt.lambda.re) << "," << to_string(pt.lambda.im);
    for (const auto& fd : pt.data) csv << "," << to_string(fd.alpha) << "," << to_string(deficiency(fd)) << "," << csv_bool(fd.range_closed);
    for (const auto& f : pt.deltas) csv << "," << csv_bool(f.value);
    csv << "," << csv_bool(pt.in_lhs) << "," << csv_bool(pt.in_rhs) << "," << csv_bool(pt.cond_i) << ","
        << csv_bool(pt.cond_iii) << "," << to_string(pt.verdict) << "\n";
  }
  emit(o.out, csv.str());
  if (!rep.violations.empty()) {
    require_consistent(rep);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Completions of partial upper triangular operator matrices"};
  app.set_version_flag("--version", FREDHOLM_VERSION);
  app.require_subcommand(1);
  Options o;

  auto add_problem = [&](CLI::App* sub) { sub->add_option("--problem", o.problem, "Problem JSON file")->required(); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (default stdout)"); };
  auto add_lambda = [&](CLI::App* sub) { sub->add_option("--lambda", o.lambda, "Point as re or re,im (exact decimals or p/q)"); };
  auto add_target = [&](CLI::App* sub) {
    sub->add_option("--target", o.target, "upper-weyl, lower-weyl, upper-fredholm, lower-fredholm or fredholm");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Pointwise invariants and classes of each diagonal entry");
  add_problem(classify_cmd);
  add_lambda(classify_cmd);
  add_out(classify_cmd);

  auto* decide_cmd = app.add_subcommand("decide", "Evaluate conditions (i) and (iii) for a target");
  add_problem(decide_cmd);
  add_target(decide_cmd);
  add_lambda(decide_cmd);
  add_out(decide_cmd);

  auto* construct_cmd = app.add_subcommand("construct", "Build a completion certificate");
  add_problem(construct_cmd);
  add_target(construct_cmd);
  add_lambda(construct_cmd);
  add_out(construct_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate on finite sections");
  add_problem(verify_cmd);
  verify_cmd->add_option("--certificate", o.certificate, "Certificate JSON file")->required();
  verify_cmd->add_option("--sizes", o.sizes, "Comma separated section sizes per block");
  verify_cmd->add_option("--tol", o.tol, "Relative singular value threshold");
  add_lambda(verify_cmd);
  add_out(verify_cmd);

  auto* spectra_cmd = app.add_subcommand("spectra", "Sandwich sets of a corollary over a grid, as CSV");
  add_problem(spectra_cmd);
  spectra_cmd->add_option("--corollary", o.corollary, "aw, sw, sf+, sf-, e or e2");
  spectra_cmd->add_option("--grid", o.grid, "re0:re1:im0:im1:step")->allow_extra_args(false);
  add_out(spectra_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd) return run_classify(o);
    if (*decide_cmd) return run_decide(o);
    if (*construct_cmd) return run_construct(o);
    if (*verify_cmd) return run_verify(o);
    if (*spectra_cmd) return run_spectra(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
