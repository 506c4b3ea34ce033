#include "addcomb/report.hpp"

#include "addcomb/io.hpp"

namespace addcomb {

namespace {

Json hex_list(const std::vector<Code>& codes) {
  Json out = Json::array();
  for (Code c : codes) out.push_back(hex(c));
  return out;
}

Json matrix_rows(const BitMatrix& m) {
  Json rows = Json::array();
  for (unsigned r = 0; r < m.rows(); ++r) rows.push_back(hex(m.row(r)));
  return rows;
}

Json quadratic_json(const QuadraticForm& q) { return to_json(q); }

}  // namespace

Json rational_json(const Rational& r) {
  return Json{{"exact", to_string(r)}, {"value", to_double(r)}};
}

Json to_json(const BoundCheck& c) {
  Json j{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
  if (!c.lhs_exact.empty()) j["lhs_exact"] = c.lhs_exact;
  if (!c.rhs_exact.empty()) j["rhs_exact"] = c.rhs_exact;
  return j;
}

Json checks_json(const std::vector<BoundCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

Json to_json(const SetStats& s) {
  Json j{{"size", s.size},
         {"sumset_size", s.sumset_size},
         {"doubling", rational_json(s.doubling)},
         {"span_size", s.span_size}};
  j["ruzsa_bound"] = s.ruzsa_bound ? Json(s.ruzsa_bound->str()) : Json(nullptr);
  j["ruzsa_bound_log2"] = s.ruzsa_bound_log2;
  j["greentao_exponent"] = rational_json(s.greentao_exponent);
  return j;
}

Json to_json(const DiffSet& d) {
  return Json{{"codom_dim", d.codom_dim}, {"k_delta", d.size()}, {"values", hex_list(d.values)}};
}

Json to_json(const GowersResult& g) {
  Json j{{"d", g.d},
         {"value", g.value},
         {"mode", g.mode == GowersMode::kExact ? "exact" : "sampled"},
         {"samples", g.samples},
         {"std_error", g.std_error},
         {"mean", g.mean}};
  if (g.pre_root) j["pre_root_exact"] = to_string(*g.pre_root);
  return j;
}

Json to_json(const std::vector<SpectrumEntry>& top) {
  Json out = Json::array();
  for (const auto& e : top) out.push_back(Json{{"alpha", hex(e.alpha)}, {"coeff", e.coeff}});
  return out;
}

Json to_json(const LevelChain& chain) {
  Json steps = Json::array();
  for (const auto& s : chain.steps()) {
    steps.push_back(Json{{"level", s.level},
                         {"shift", hex(s.shift)},
                         {"previous_density", rational_json(s.previous_density)},
                         {"doubled_density", rational_json(s.doubled_density)},
                         {"density", rational_json(s.density)}});
  }
  return Json{{"k", chain.k()},
              {"shifts", hex_list(chain.shifts())},
              {"density", rational_json(chain.density())},
              {"steps", steps}};
}

Json to_json(const DecompositionReport& r) {
  return Json{{"ell", matrix_rows(r.ell)},
              {"shift_c", hex(r.shift_c)},
              {"agreement_eps", rational_json(r.agreement_eps)},
              {"error_image", hex_list(r.error_image)},
              {"error_image_size", r.error_image_size},
              {"k_delta", r.k_delta},
              {"cover", hex_list(r.cover)},
              {"cover_size", r.cover_size},
              {"cover_image", hex_list(r.cover_image)},
              {"bound", rational_json(r.bound)},
              {"translates_disjoint", r.translates_disjoint},
              {"cover_maximal", r.cover_maximal},
              {"image_contained", r.image_contained}};
}

Json to_json(const PfrReport& r) {
  Json j{{"k_delta", r.k_delta},
         {"lifted_u3", to_json(r.lifted_u3)},
         {"quadratic", quadratic_json(r.quadratic)},
         {"quadratic_source", r.oracle ? "exhaustive" : "supplied"},
         {"oracle_agreement", rational_json(r.oracle_agreement)},
         {"oracle_bias", rational_json(r.oracle_bias)},
         {"bilinear", matrix_rows(r.bilinear)}};
  Json d = to_json(r.decomposition);
  for (auto& [k, v] : d.items()) j[k] = v;
  j["bounds"] = checks_json(r.checks);
  return j;
}

Json to_json(const InverseReport& r) {
  Json j;
  j["step1"] = Json{{"tau", r.tau}, {"good_fraction", r.good_fraction}, {"mean_u2", r.mean_u2}};
  j["step2"] = Json{{"mean_agreement", r.mean_agreement}};
  j["step3"] = Json{{"additivity", rational_json(r.additivity)}};
  j["step4"] = Json{{"s_size", r.s_size},
                    {"tau_fallback", r.tau_fallback},
                    {"energy", rational_json(r.energy)}};
  j["step5"] = Json{{"size", r.bsg_size},
                    {"doubling", rational_json(r.bsg_doubling)},
                    {"rounds", r.bsg_rounds},
                    {"low_quality", r.bsg_low_quality}};
  j["step6"] = Json{{"size", r.trimmed_size}, {"span_size", r.trimmed_span}};
  j["step7"] = Json{{"linear_map", matrix_rows(r.linear_map)},
                    {"coverage", rational_json(r.coverage)}};
  j["step8"] = Json{{"quadratic", quadratic_json(r.integration.form)},
                    {"agreement", rational_json(r.integration.agreement)},
                    {"correlation", r.integration.correlation},
                    {"u3", to_json(r.u3)}};
  return j;
}

}  // namespace addcomb
