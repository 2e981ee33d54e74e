// tsl: command-line front end. Every subcommand writes one JSON document.
//
// Exit codes: 0 pass, 1 failed check, 2 bad input, 3 inconclusive.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsl/json_io.hpp"
#include "tsl/tsl.hpp"

namespace {

using tsl::json;

enum Exit { kPass = 0, kFail = 1, kBadInput = 2, kInconclusive = 3 };

struct InputFlags {
  std::string group;
  std::string rational;
  std::string coeffs;
  std::string model;
  std::string spec;
  bool sqrt_fixture = false;
};

struct RunFlags {
  InputFlags in;
  long horizon = 512;
  unsigned precision = 0;
  std::string tolerance;
  int h_max = 24;
  std::string emit_ratios;
  bool strict = false;
  std::string out;
  int h = 2;
  int length = 12;
  std::string scale = "3/2";
  std::uint64_t seed = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

tsl::QPoly parse_poly(const std::string& s) {
  std::vector<tsl::Rational> c;
  for (const auto& tok : split(s, ',')) c.push_back(tsl::parse_rational(tok));
  if (c.empty()) throw tsl::Error(tsl::ErrorCode::invalid_input, "empty coefficient list");
  return tsl::QPoly(std::move(c));
}

// "h:r1,r2" | "squares" | "powers_of_two"
tsl::IndexSet parse_index_set(const std::string& s) {
  if (s == "squares") return {tsl::NamedIndexSet::squares};
  if (s == "powers_of_two") return {tsl::NamedIndexSet::powers_of_two};
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw tsl::Error(tsl::ErrorCode::invalid_input, "index set must be h:r1,r2,... or a name");
  std::vector<int> res;
  for (const auto& tok : split(s.substr(colon + 1), ',')) res.push_back(std::stoi(tok));
  return {tsl::RationalSubset(std::stoi(s.substr(0, colon)), res)};
}

tsl::SeriesSpec build_spec(const InputFlags& f) {
  int given = !f.group.empty() + !f.rational.empty() + !f.coeffs.empty() + !f.model.empty() + !f.spec.empty() + f.sqrt_fixture;
  if (given != 1)
    throw tsl::Error(tsl::ErrorCode::invalid_input,
                     "exactly one of --group, --rational, --coeffs, --model, --spec, --sqrt-fixture is required");
  try {
    if (!f.group.empty()) {
      std::vector<int> orders;
      for (const auto& tok : split(f.group, ',')) orders.push_back(std::stoi(tok));
      return tsl::SeriesSpec::free_product(orders);
    }
    if (!f.rational.empty()) {
      const auto parts = split(f.rational, ';');
      if (parts.size() != 2) throw tsl::Error(tsl::ErrorCode::invalid_input, "--rational expects \"n0,n1,...;d0,d1,...\"");
      return tsl::SeriesSpec::rational(parse_poly(parts[0]), parse_poly(parts[1]));
    }
    if (!f.coeffs.empty()) return tsl::SeriesSpec::explicit_coeffs(tsl::read_coeffs_csv(f.coeffs));
    if (!f.model.empty()) {
      const auto parts = split(f.model, ';');
      if (parts.size() != 3) throw tsl::Error(tsl::ErrorCode::invalid_input, "--model expects \"U;a;b\"");
      return tsl::SeriesSpec::oscillating(parse_index_set(parts[0]), tsl::Gaussian(tsl::parse_rational(parts[1])),
                                          tsl::Gaussian(tsl::parse_rational(parts[2])));
    }
    if (f.sqrt_fixture) return tsl::SeriesSpec::sqrt_fixture();
    std::ifstream in(f.spec);
    json j;
    if (in) {
      j = json::parse(in);
    } else {
      j = json::parse(f.spec);
    }
    return tsl::spec_from_json(j);
  } catch (const std::invalid_argument&) {
    throw tsl::Error(tsl::ErrorCode::invalid_input, "malformed integer in input flags");
  } catch (const json::exception& e) {
    throw tsl::Error(tsl::ErrorCode::invalid_input, std::string("malformed JSON: ") + e.what());
  }
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw tsl::Error(tsl::ErrorCode::invalid_input, "cannot write " + out);
  f << j.dump(2) << '\n';
}

int exit_for(tsl::ErrorCode c) {
  switch (c) {
    case tsl::ErrorCode::invalid_input:
    case tsl::ErrorCode::zero_constant_term:
    case tsl::ErrorCode::guard_exceeded:
    case tsl::ErrorCode::non_meromorphic:
      return kBadInput;
    case tsl::ErrorCode::not_tame:
    case tsl::ErrorCode::inconclusive:
    case tsl::ErrorCode::undecidable_boundary:
    case tsl::ErrorCode::sample_budget:
      return kInconclusive;
    default:
      return kFail;
  }
}

tsl::Real parse_tolerance(const std::string& s, const char* fallback) {
  const tsl::Real t(s.empty() ? std::string(fallback) : s);
  if (!(t > 0)) throw tsl::Error(tsl::ErrorCode::invalid_input, "tolerance must be positive");
  return t;
}

tsl::DetectionOptions detection_options(const RunFlags& f) {
  if (f.horizon < 8) throw tsl::Error(tsl::ErrorCode::invalid_input, "horizon must be at least 8");
  if (f.h_max < 1) throw tsl::Error(tsl::ErrorCode::invalid_input, "h-max must be positive");
  tsl::DetectionOptions o;
  o.horizon = f.horizon;
  o.h_max = f.h_max;
  return o;
}

json opposite_algebra_json(const tsl::AccumulationReport& rep) {
  json j;
  if (auto ex = rep.exact_real_initials()) {
    const auto pair = tsl::denominator_pair(*ex);
    const auto red = tsl::reduced_numerators(*ex, pair);
    json nums = json::array(), b = json::array();
    for (const auto& p : tsl::numerators(*ex)) nums.push_back(tsl::to_json(p, "s"));
    for (const auto& p : red.b) b.push_back(tsl::to_json(p, "s"));
    j = {{"exact", true},
         {"numerators", nums},
         {"delta", tsl::to_json(pair.delta, "s")},
         {"delta_op", tsl::to_json(pair.delta_op, "s")},
         {"d_P", pair.d_P},
         {"rank_M", pair.rank_M},
         {"discriminant", tsl::to_json(tsl::discriminant(*ex))},
         {"reduced_numerators", b},
         {"span_rank", red.span_rank},
         {"sigma_action", red.sigma_action}};
    bool positive = true;
    for (const auto& a : *ex) positive = positive && a > 0;
    if (positive && rep.h_P <= 8) {
      std::vector<tsl::RealCyclotomic> field;
      for (const auto& a : *ex) field.emplace_back(a);
      j["stratum"] = tsl::stratum_classify(field).to_string();
    }
  } else {
    const auto nums = tsl::numerators(rep.initial_values());
    json jn = json::array();
    for (const auto& p : nums) jn.push_back(tsl::to_json(p));
    const auto res = tsl::residue_matrix(nums, rep.A, tsl::Real("1e-20"));
    j = {{"exact", false},
         {"numerators", jn},
         {"delta_op", tsl::to_json(res.delta_op)},
         {"d_P", res.delta_op.degree()},
         {"numeric_rank", res.numeric_rank}};
  }
  json tau = json::array();
  for (int e = 0; e < rep.h_P; ++e) {
    const auto t = tsl::tau_omega(tsl::opposite_rational_form(rep, e), rep);
    tau.push_back({{"from", e}, {"to", t.form.e}, {"residual", tsl::to_json(t.residual)}, {"exact_match", t.exact_match}});
  }
  j["tau"] = tau;
  return j;
}

int cmd_analyze(const RunFlags& f) {
  const tsl::SeriesSpec spec = build_spec(f.in);
  const tsl::CoefficientStream stream(spec);
  auto opt = detection_options(f);
  opt.tolerance = parse_tolerance(f.tolerance, "1e-30");
  json j = {{"command", "analyze"}, {"input", tsl::describe(spec)}, {"precision_bits", tsl::working_precision_bits()}};
  int code = kPass;
  try {
    j["tameness"] = tsl::to_json(tsl::certify_tameness(stream, std::min<long>(128, opt.horizon), opt.tameness));
    j["radius"] = tsl::to_json(tsl::radius_bounds(stream, opt.horizon));
    const auto rep = tsl::detect_accumulation(stream, opt);
    j["accumulation"] = tsl::to_json(rep);
    if (rep.finite_rational()) {
      j["omega1"] = tsl::to_json(tsl::omega1_summary(rep));
      j["opposite"] = opposite_algebra_json(rep);
    } else {
      code = kInconclusive;
    }
    if (!f.emit_ratios.empty()) {
      std::ofstream csv(f.emit_ratios);
      if (!csv) throw tsl::Error(tsl::ErrorCode::invalid_input, "cannot write " + f.emit_ratios);
      tsl::write_ratio_csv(csv, stream, rep.horizon, rep.N_P, std::max(rep.h_P, 1));
    }
  } catch (const tsl::Error& e) {
    if (e.code() != tsl::ErrorCode::not_tame) throw;
    j["accumulation"] = {{"verdict", "not-tame"}, {"diagnostics", {e.what()}}};
    code = kInconclusive;
  }
  emit(j, f.out);
  return code;
}

int cmd_duality(const RunFlags& f) {
  const tsl::SeriesSpec spec = build_spec(f.in);
  tsl::DualityOptions opt;
  opt.detection = detection_options(f);
  opt.tolerance = parse_tolerance(f.tolerance, "1e-20");
  opt.strict = f.strict;
  json j = {{"command", "duality"}, {"input", tsl::describe(spec)}};
  if (tsl::non_meromorphic(spec)) {
    j["report"] = {{"verdict", "refused"}, {"diagnostics", {"non-meromorphic input"}}};
    emit(j, f.out);
    std::cerr << "tsl: non-meromorphic input\n";
    return kBadInput;
  }
  const auto rep = tsl::verify_duality(tsl::CoefficientStream(spec), opt);
  j["report"] = tsl::to_json(rep);
  emit(j, f.out);
  if (rep.verdict == "pass") return kPass;
  if (rep.verdict == "fail") return kFail;
  return kInconclusive;
}

int cmd_sections(const RunFlags& f) {
  const tsl::SeriesSpec spec = build_spec(f.in);
  const auto rep = tsl::as_rational(spec);
  if (!rep) throw tsl::Error(tsl::ErrorCode::invalid_input, "sections need a rational input");
  if (f.h < 1) throw tsl::Error(tsl::ErrorCode::invalid_input, "--modulus must be positive");
  const auto reduced = tsl::reduce(*rep);
  json secs = json::array();
  for (const auto& s : tsl::all_sections(reduced, f.h)) secs.push_back({{"e", s.e}, {"section", tsl::to_json(s.result)}});
  const auto rec = tsl::operator_identity_suite(reduced, f.h);
  json j = {{"command", "sections"}, {"input", tsl::to_json(reduced)}, {"h", f.h}, {"sections", secs},
            {"identities", tsl::to_json(rec)}};
  emit(j, f.out);
  return rec.all_passed() ? kPass : kFail;
}

int cmd_stratify(const RunFlags& f) {
  if (f.h < 1 || f.h > 8) throw tsl::Error(tsl::ErrorCode::invalid_input, "stratify supports 1 <= h <= 8");
  const tsl::Rational scale = tsl::parse_rational(f.scale);
  if (scale <= 0) throw tsl::Error(tsl::ErrorCode::invalid_input, "--scale must be positive");
  json labels = json::array();
  int code = kPass;
  std::uint64_t seed = f.seed;
  for (const auto& label : tsl::all_labels(f.h)) {
    json entry = {{"label", label.to_string()}};
    try {
      const auto a = tsl::stratum_sample(label, tsl::RealCyclotomic(scale), seed++);
      json sample = json::array();
      for (const auto& x : a) sample.push_back(x.to_string());
      const auto back = tsl::stratum_classify(a);
      entry["sample"] = sample;
      entry["verified"] = back == label;
      if (!(back == label)) code = kFail;
    } catch (const tsl::Error& e) {
      if (e.code() != tsl::ErrorCode::sample_budget) throw;
      entry["sample"] = nullptr;
      entry["verified"] = false;
      entry["error"] = e.what();
      code = std::max(code, static_cast<int>(kInconclusive));
    }
    labels.push_back(entry);
  }
  emit({{"command", "stratify"}, {"h", f.h}, {"scale", tsl::to_json(scale)}, {"labels", labels}}, f.out);
  return code;
}

int cmd_oracle(const RunFlags& f) {
  if (f.in.group.empty()) throw tsl::Error(tsl::ErrorCode::invalid_input, "oracle needs --group");
  std::vector<int> orders;
  for (const auto& tok : split(f.in.group, ',')) orders.push_back(std::stoi(tok));
  const tsl::FreeProductSpec spec{orders};
  const auto g = tsl::growth_series(spec);
  const auto series = tsl::taylor(g.cumulative, f.length);
  const auto bfs = tsl::bfs_counts(spec, f.length);
  json a = json::array(), b = json::array();
  bool equal = true;
  for (int n = 0; n <= f.length; ++n) {
    a.push_back(tsl::to_string(series[static_cast<std::size_t>(n)]));
    b.push_back(bfs[static_cast<std::size_t>(n)].str());
    equal = equal && series[static_cast<std::size_t>(n)] == tsl::Rational(bfs[static_cast<std::size_t>(n)]);
  }
  emit({{"command", "oracle"},
        {"orders", orders},
        {"growth_series", tsl::to_json(g.cumulative)},
        {"series_counts", a},
        {"bfs_counts", b},
        {"equal", equal}},
       f.out);
  return equal ? kPass : kFail;
}

void add_input(CLI::App* app, InputFlags& in) {
  app->add_option("--group", in.group, "free product of cyclic groups, orders as CSV (e.g. 2,3)");
  app->add_option("--rational", in.rational, "rational function \"n0,n1,...;d0,d1,...\" (ascending, p/q tokens)");
  app->add_option("--coeffs", in.coeffs, "coefficient CSV with header n,numerator,denominator");
  app->add_option("--model", in.model, "oscillating model \"U;a;b\" with U = h:r1,r2 | squares | powers_of_two");
  app->add_option("--spec", in.spec, "series spec as a JSON file or inline JSON");
  app->add_flag("--sqrt-fixture", in.sqrt_fixture, "sqrt((1+t)/(1-t))");
}

void add_run(CLI::App* app, RunFlags& f) {
  app->add_option("--horizon", f.horizon, "number of coefficients examined")->capture_default_str();
  app->add_option("--tolerance", f.tolerance, "convergence (analyze) or pass (duality) tolerance");
  app->add_option("--h-max", f.h_max, "largest period tried")->capture_default_str();
  app->add_option("--out", f.out, "write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opposite series, boundary poles and their duality for tame power series"};
  app.require_subcommand(1);
  app.fallthrough();
  RunFlags f;
  app.add_option("--precision", f.precision, "working precision in bits (>= 64; default TSL_PRECISION_BITS or 256)");

  auto* analyze = app.add_subcommand("analyze", "detect finite rational accumulation of the opposite series");
  add_input(analyze, f.in);
  add_run(analyze, f);
  analyze->add_option("--emit-ratios", f.emit_ratios, "write n,class,ratio_re,ratio_im CSV here");

  auto* duality = app.add_subcommand("duality", "compare Delta^op with the top boundary poles");
  add_input(duality, f.in);
  add_run(duality, f);
  duality->add_flag("--strict", f.strict, "re-run at doubled precision");

  auto* sections = app.add_subcommand("sections", "sections T^[e] of a rational function and the identity suite");
  add_input(sections, f.in);
  sections->add_option("--modulus", f.h, "modulus h")->capture_default_str();
  sections->add_option("--out", f.out, "write JSON here instead of stdout");

  auto* stratify = app.add_subcommand("stratify", "strata of positive initials for period h");
  stratify->add_option("--period", f.h, "period h (1..8)")->capture_default_str();
  stratify->add_option("--scale", f.scale, "sample scale r, the samples have A = r^h")->capture_default_str();
  stratify->add_option("--seed", f.seed, "sampling seed")->capture_default_str();
  stratify->add_option("--out", f.out, "write JSON here instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "growth series against word enumeration");
  oracle->add_option("--group", f.in.group, "orders as CSV")->required();
  oracle->add_option("--length", f.length, "largest word length")->capture_default_str();
  oracle->add_option("--out", f.out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kBadInput;
  }

  try {
    const unsigned bits = f.precision ? f.precision : tsl::precision_from_env();
    if (bits < 64) throw tsl::Error(tsl::ErrorCode::invalid_input, "precision must be at least 64 bits");
    tsl::PrecisionScope scope(bits);
    if (*analyze) return cmd_analyze(f);
    if (*duality) return cmd_duality(f);
    if (*sections) return cmd_sections(f);
    if (*stratify) return cmd_stratify(f);
    return cmd_oracle(f);
  } catch (const tsl::Error& e) {
    std::cerr << "tsl: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "tsl: " << e.what() << '\n';
    return kBadInput;
  }
}
