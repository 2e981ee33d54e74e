#ifndef TSL_JSON_IO_HPP
#define TSL_JSON_IO_HPP

// JSON reading of series specs and writing of reports. Rationals are {"num","den"} with
// integer strings, reals are decimal strings at the working precision, complex values are {"re","im"}.

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsl/duality.hpp"
#include "tsl/errors.hpp"
#include "tsl/opposite_algebra.hpp"
#include "tsl/opposite_space.hpp"
#include "tsl/rational_operators.hpp"
#include "tsl/sequence.hpp"

namespace tsl {

using json = nlohmann::ordered_json;

inline int json_digits() { return static_cast<int>(bits_to_digits10(working_precision_bits())); }

inline json to_json(const Rational& q) { return {{"num", numerator(q).str()}, {"den", denominator(q).str()}}; }
inline json to_json(const Real& x) { return to_string(x, json_digits()); }
inline json to_json(const Complex& z) { return {{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }
inline json to_json(const Gaussian& g) { return {{"re", to_json(g.re)}, {"im", to_json(g.im)}}; }

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

inline json to_json(const QPoly& p, const std::string& var) {
  json c = json::array();
  for (const auto& x : p.coeffs()) c.push_back(to_json(x));
  return {{"text", p.to_string(var)}, {"coefficients", c}};
}

inline json to_json(const Poly<Complex>& p) {
  json c = json::array();
  for (const auto& x : p.coeffs()) c.push_back(to_json(x));
  return c;
}

inline json to_json(const RationalFunction& f) {
  json n = json::array(), d = json::array();
  for (const auto& x : f.num.coeffs()) n.push_back(to_json(x));
  for (const auto& x : f.den.coeffs()) d.push_back(to_json(x));
  return {{"text", f.to_string("t")}, {"num", n}, {"den", d}};
}

inline json to_json(const Matrix<Complex>& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& v : r) row.push_back(to_json(v));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Input

/// Accepts {"num","den"}, "p/q" or an integer.
inline Rational rational_from_json(const json& j) {
  if (j.is_object()) {
    const auto part = [&](const char* k) {
      const json& v = j.at(k);
      return v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long long>());
    };
    return make_rational(part("num"), part("den"));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error(ErrorCode::invalid_input, "expected a rational as string or integer, got " + j.dump());
}

inline Gaussian gaussian_from_json(const json& j) {
  if (j.is_object() && j.contains("re"))
    return {rational_from_json(j.at("re")), j.contains("im") ? rational_from_json(j.at("im")) : Rational(0)};
  return Gaussian(rational_from_json(j));
}

inline QPoly qpoly_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::invalid_input, "expected a coefficient array");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return QPoly(std::move(c));
}

inline RationalSubset subset_from_json(const json& j) {
  std::set<long> added, removed;
  if (j.contains("added"))
    for (const auto& x : j.at("added")) added.insert(x.get<long>());
  if (j.contains("removed"))
    for (const auto& x : j.at("removed")) removed.insert(x.get<long>());
  return RationalSubset(j.at("h").get<int>(), j.at("residues").get<std::vector<int>>(), added, removed);
}

inline IndexSet index_set_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "squares") return {NamedIndexSet::squares};
    if (s == "powers_of_two") return {NamedIndexSet::powers_of_two};
    throw Error(ErrorCode::invalid_input, "unknown index set '" + s + "'");
  }
  return {subset_from_json(j)};
}

/// {"type": "group"|"rational"|"coeffs"|"oscillating"|"sqrt"|"derivative"|"sum"|"rescale"|"section", ...}
inline SeriesSpec spec_from_json(const json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "group") return SeriesSpec::free_product(j.at("orders").get<std::vector<int>>());
    if (type == "rational") return SeriesSpec::rational(qpoly_from_json(j.at("num")), qpoly_from_json(j.at("den")));
    if (type == "coeffs") {
      std::vector<Rational> v;
      for (const auto& x : j.at("values")) v.push_back(rational_from_json(x));
      return SeriesSpec::explicit_coeffs(std::move(v));
    }
    if (type == "oscillating")
      return SeriesSpec::oscillating(index_set_from_json(j.at("U")), gaussian_from_json(j.at("a")), gaussian_from_json(j.at("b")));
    if (type == "sqrt") return SeriesSpec::sqrt_fixture();
    if (type == "derivative") return SeriesSpec::derivative(spec_from_json(j.at("inner")), j.value("order", 1));
    if (type == "sum") return SeriesSpec::sum(spec_from_json(j.at("left")), spec_from_json(j.at("right")));
    if (type == "rescale") return SeriesSpec::rescale(spec_from_json(j.at("inner")), rational_from_json(j.at("c")));
    if (type == "section") return SeriesSpec::section(spec_from_json(j.at("inner")), subset_from_json(j.at("U")));
    throw Error(ErrorCode::invalid_input, "unknown spec type '" + type + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("malformed spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const RationalSubset& u) {
  return {{"h", u.period()}, {"residues", u.residues()}, {"added", u.added()}, {"removed", u.removed()}};
}

inline json to_json(const TamenessCertificate& c) {
  return {{"u", to_json(c.u)},         {"v", to_json(c.v)},           {"N_P", c.N_P},
          {"verified_up_to", c.verified_up_to}, {"tail_from", c.tail_from}, {"tail_u", to_json(c.tail_u)},
          {"tail_v", to_json(c.tail_v)}};
}

inline json to_json(const RadiusBounds& b) {
  json j = {{"r", to_json(b.r)}, {"r_error", to_json(b.r_error)}, {"R", to_json(b.R)}, {"R_error", to_json(b.R_error)},
            {"exact", b.exact}, {"method", b.method}};
  if (b.r_power) j["r_power"] = {{"power", b.r_power->power}, {"value", to_json(b.r_power->value)}};
  else j["r_power"] = nullptr;
  return j;
}

inline json to_json(const AccumulationReport& r) {
  json initials = json::array();
  for (const auto& c : r.initials)
    initials.push_back({{"e", c.e},
                        {"value", to_json(c.value)},
                        {"error", to_json(c.error)},
                        {"mode", c.mode},
                        {"terms", c.terms},
                        {"reconstructed", c.reconstructed ? to_json(*c.reconstructed) : json(nullptr)},
                        {"exact", c.reconstructed && c.reconstructed->is_real() ? to_json(c.reconstructed->re) : json(nullptr)}});
  json trials = json::array();
  for (const auto& t : r.trials) trials.push_back({{"h", t.h}, {"passed", t.passed}, {"reason", t.reason}});
  json j = {{"verdict", r.verdict},
            {"h_P", r.h_P},
            {"first_passing_h", r.first_passing_h},
            {"N_P", r.N_P},
            {"horizon", r.horizon},
            {"tolerance", to_json(r.tolerance)},
            {"h_max", r.h_max},
            {"initials", initials},
            {"A", r.finite_rational() ? to_json(r.A) : json(nullptr)},
            {"A_error", r.finite_rational() ? to_json(r.A_error) : json(nullptr)},
            {"A_exact", r.A_exact ? to_json(*r.A_exact) : json(nullptr)},
            {"trials", trials},
            {"suggested_horizon", r.suggested_horizon ? json(*r.suggested_horizon) : json(nullptr)},
            {"diagnostics", r.diagnostics}};
  return j;
}

inline json to_json(const Omega1Summary& s) {
  json v = json::array();
  for (std::size_t i = 0; i < s.values.size(); ++i)
    v.push_back({{"value", to_json(s.values[i])},
                 {"exact", s.exact[i] ? to_json(*s.exact[i]) : json(nullptr)},
                 {"classes", s.multiplicity[i]}});
  return {{"values", v}, {"non_injective", s.non_injective}};
}

inline json to_json(const TransitionMatrix& m) {
  json x = json::array();
  for (const auto& v : m.x) x.push_back(to_json(v));
  return {{"side", m.side}, {"x", x}, {"entries", to_json(m.entries)}, {"error", to_json(m.error)},
          {"numeric_rank", m.numeric_rank}};
}

inline json to_json(const DualityReport& r) {
  json j = {{"verdict", r.verdict}, {"precision_bits", r.precision_bits}};
  if (r.series) {
    const auto& s = *r.series;
    j["series"] = {{"accumulation", to_json(s.detection)},
                   {"h_P", s.h},
                   {"A", to_json(s.A)},
                   {"A_exact", optional_json(s.A_exact)},
                   {"d_P", s.d_P},
                   {"delta_op", to_json(s.delta_op)},
                   {"delta_op_exact", s.delta_op_exact ? to_json(*s.delta_op_exact, "s") : json(nullptr)},
                   {"delta_exact", s.delta_exact ? to_json(*s.delta_exact, "s") : json(nullptr)},
                   {"excluded_max", to_json(s.residues.excluded_max)},
                   {"expansion_residual", to_json(s.residues.expansion_residual)},
                   {"matrix", to_json(s.matrix)}};
  } else {
    j["series"] = nullptr;
  }
  if (r.pole) {
    const auto& p = *r.pole;
    json top = json::array();
    for (const auto& x : p.polar.top_poles) top.push_back(to_json(x));
    json poles = json::array();
    for (const auto& q : p.poles.poles)
      poles.push_back({{"re", to_json(q.center.re)}, {"im", to_json(q.center.im)}, {"radius", to_json(q.radius)},
                       {"multiplicity", q.multiplicity}, {"boundary", q.boundary}});
    json sections = json::array();
    for (const auto& s : p.sections) sections.push_back({{"e", s.e}, {"section", to_json(s.result)}});
    j["pole"] = {{"r", to_json(p.poles.r)},
                 {"r_error", to_json(p.poles.r_error)},
                 {"r_exact", p.poles.r_exact ? json{{"power", p.poles.r_exact->power}, {"value", to_json(p.poles.r_exact->value)}}
                                             : json(nullptr)},
                 {"d_m", p.poles.d_m},
                 {"h", p.h},
                 {"A", to_json(p.A)},
                 {"d_P", p.d_P},
                 {"poles", poles},
                 {"top_poles", top},
                 {"delta_p", to_json(p.polar.delta_p)},
                 {"delta_top", to_json(p.polar.delta_top)},
                 {"delta_p_exact", p.polar.delta_p_exact ? to_json(*p.polar.delta_p_exact, "t") : json(nullptr)},
                 {"delta_top_exact", p.polar.delta_top_exact ? to_json(*p.polar.delta_top_exact, "t") : json(nullptr)},
                 {"sections", sections},
                 {"matrix", to_json(p.matrix)}};
  } else {
    j["pole"] = nullptr;
  }
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"skipped", c.skipped}, {"residual", to_json(c.residual)},
                      {"detail", c.detail}});
  j["checks"] = checks;
  j["reversal_residual"] = r.reversal_residual >= 0 ? to_json(r.reversal_residual) : json(nullptr);
  j["matrix_distance"] = r.matrix_distance >= 0 ? to_json(r.matrix_distance) : json(nullptr);
  j["series_determinant"] = r.series_determinant ? to_json(*r.series_determinant) : json(nullptr);
  j["pole_determinant"] = r.pole_determinant ? to_json(*r.pole_determinant) : json(nullptr);
  j["diagnostics"] = r.diagnostics;
  return j;
}

inline json to_json(const IdentityRecord& rec) {
  json checks = json::array();
  for (const auto& c : rec.checks)
    checks.push_back({{"name", c.name}, {"e", c.e}, {"passed", c.passed}, {"residual", c.residual}});
  return {{"h", rec.h}, {"all_passed", rec.all_passed()}, {"checks", checks}};
}

}  // namespace tsl

#endif  // TSL_JSON_IO_HPP
