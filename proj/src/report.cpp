#include "amlab/report.hpp"

namespace amlab {

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json inequality(const Inequality& q) {
  return {{"name", q.name}, {"lhs", q.lhs}, {"rhs", q.rhs}, {"holds", q.holds()}};
}

json block(const Block& b) { return json(b); }

}  // namespace

json to_json(const Rational& r) { return to_string(r); }

json to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}

json scheme_info(const Scheme& s) {
  json j;
  j["name"] = s.name();
  j["family"] = s.family() == Family::Hamming ? "hamming" : "johnson";
  j["D"] = s.classes();
  if (s.family() == Family::Hamming) j["q"] = s.alphabet();
  else j["N"] = s.ground_set();
  j["order"] = s.order().get_str();
  json val = json::array(), mult = json::array();
  for (const auto& v : s.valencies()) val.push_back(v.get_str());
  for (const auto& m : s.multiplicities()) mult.push_back(m.get_str());
  j["valencies"] = val;
  j["multiplicities"] = mult;
  j["P"] = to_json(s.P());
  j["Q"] = to_json(s.Q());
  j["metric_ordering"] = s.metric_ordering();
  j["cometric_ordering"] = s.cometric_ordering();
  j["addressable"] = s.addressable();
  return j;
}

json to_json(const CodeParameters& p, const Scheme& s) {
  json j;
  j["base"] = s.format_id(p.base);
  j["delta_x"] = p.delta_x;
  j["s_x"] = p.s_x;
  j["dual_delta"] = p.dual_delta;
  j["dual_s"] = p.dual_s;
  j["delta"] = opt(p.delta);
  j["s"] = opt(p.s);
  j["delta_down"] = opt(p.delta_down);
  j["dual_delta_down"] = opt(p.dual_delta_down);
  j["refined_s_x"] = p.refined_s_x;
  j["refined_dual_s"] = p.refined_dual_s;
  return j;
}

json to_json(const DistanceDistribution& d) { return {{"a", to_json(d.a)}, {"b", to_json(d.b)}}; }

json to_json(const DesignLevelReport& r) {
  json idx = json::array();
  for (const auto& v : r.per_index) {
    idx.push_back({{"index", v.index},
                   {"dependent", v.dependent ? json(*v.dependent) : json(nullptr)},
                   {"residual", to_string(v.residual)}});
  }
  return {{"max_level", r.max_level}, {"undecided_above", opt(r.undecided_above)}, {"per_index", idx}};
}

json to_json(const TDesignResult& r) {
  json j{{"t", r.t}, {"is_design", r.is_design}, {"lambda", opt(r.lambda)}};
  if (r.witness) {
    j["witness"] = {{"first", block(r.witness->first)},
                    {"first_count", r.witness_counts.first},
                    {"second", block(r.witness->second)},
                    {"second_count", r.witness_counts.second}};
  }
  return j;
}

json to_json(const SemilatticeVerdict& v) {
  json j{{"holds", v.holds}};
  if (v.witness) {
    auto side = [](const SemilatticeVerdict::Side& s) {
      return json{{"object", s.object}, {"meet_rank", s.meet_rank}, {"sum", to_string(s.sum)}};
    };
    j["witness"] = {side(v.witness->first), side(v.witness->second)};
  }
  return j;
}

json to_json(const AMReport& r) {
  json j;
  j["theorem"] = std::string(theorem_name(r.theorem));
  j["base"] = r.base_text;
  j["t"] = r.t;
  j["requested_t"] = opt(r.requested_t);
  j["requested_pass"] = r.requested_pass;
  j["refined"] = r.refined;
  j["catalog"] = opt(r.catalog_source);
  json ledger = json::array();
  for (const auto& row : r.ledger) {
    json terms = json::array();
    for (const auto& q : row.terms) terms.push_back(inequality(q));
    ledger.push_back({{"r", row.r}, {"subject", row.subject}, {"inequalities", terms},
                      {"requirements", row.requirements}, {"pass", row.pass}});
  }
  j["ledger"] = ledger;
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"subject", c.subject}, {"property", c.property}, {"required", c.required},
                      {"measured", c.measured}, {"undecided_above", opt(c.undecided_above)}, {"ok", c.ok()}});
  }
  j["checks"] = checks;
  json designs = json::array();
  for (const auto& d : r.designs) {
    json dj{{"shell", d.shell}, {"t", d.t}, {"v", d.v}, {"k", d.k}, {"blocks", d.blocks}, {"distinct", d.distinct}};
    dj["verdict"] = d.result ? to_json(*d.result) : json(nullptr);
    if (!d.note.empty()) dj["note"] = d.note;
    designs.push_back(dj);
  }
  j["designs"] = designs;
  j["notes"] = r.notes;
  j["status"] = std::string(verification_name(r.status));
  return j;
}

json to_json(const MartinOutcome& m) {
  json j;
  j["side"] = m.side == MartinSide::P ? "P" : "Q";
  j["t"] = m.t;
  j["delta"] = m.delta;
  j["dual_delta"] = m.dual_delta;
  j["s"] = m.s;
  j["dual_s"] = m.dual_s;
  j["applicable"] = m.applicable;
  if (!m.applicable) j["reason"] = m.reason;
  j["branch"] = std::string(martin_branch_name(m.branch));
  j["clauses"] = {{"bipartite_half", m.bipartite_half},
                  {"antipodal_pair", m.antipodal_pair},
                  {"distance_clause", m.distance_clause}};
  if (m.applicable) {
    j["bound"] = inequality(m.bound);
    j["exempt"] = m.exempt;
    if (m.exempt) j["exemption"] = m.exemption;
  }
  j["violation"] = m.violation();
  j["notes"] = m.notes;
  return j;
}

json to_json(const ModuleCatalogEntry& e) {
  return {{"r", e.r},
          {"dual_r", e.dual_r},
          {"d", e.d},
          {"eta", e.eta},
          {"support", e.support},
          {"dual_support", e.dual_support},
          {"thin", e.thin},
          {"dual_thin", e.dual_thin},
          {"dimension", e.dimension},
          {"multiplicity", e.multiplicity},
          {"source", e.source == CatalogSource::ClosedForm ? "closed-form" : "dense"}};
}

json to_json(const ModuleSignature& s) {
  return {{"r", s.r},       {"dual_r", s.dual_r},         {"d", s.d},
          {"dual_d", s.dual_d}, {"thin", s.thin},         {"dual_thin", s.dual_thin},
          {"shell_dims", s.shell_dims}, {"eigen_dims", s.eigen_dims}};
}

json to_json(const LabVerdict& v) {
  return {{"pass", v.pass}, {"max_residual", v.max_residual}, {"min_required_norm", v.min_required_norm},
          {"failures", v.failures}};
}

json to_json(const SplitReport& s) {
  return {{"dims", s.dims}, {"tilde_dims", s.tilde_dims}, {"displacement_dims", s.displacement_dims},
          {"verdict", to_json(s.verdict)}};
}

json to_json(const OrthogonalityVerdict& v) {
  return {{"module_level", v.module_level},   {"operator_level", v.operator_level},
          {"module_holds", v.module_holds},   {"operator_holds", v.operator_holds},
          {"equivalent", v.equivalent},       {"worst_word", v.worst_word}};
}

json to_json(const CorpusEntry& e) {
  json fp;
  const Fingerprint& f = e.fingerprint;
  if (f.size) fp["size"] = *f.size;
  if (!f.weights.empty()) {
    json w = json::object();
    for (const auto& [k, n] : f.weights) w[std::to_string(k)] = n;
    fp["weights"] = w;
  }
  if (f.delta) fp["delta"] = *f.delta;
  if (f.s) fp["s"] = *f.s;
  if (f.dual_delta) fp["dual_delta"] = *f.dual_delta;
  if (f.dual_s) fp["dual_s"] = *f.dual_s;
  if (f.base_delta) fp["delta_x_at_zero"] = *f.base_delta;
  if (!f.dual_zero.empty()) fp["dual_zero"] = f.dual_zero;
  if (!f.dual_support.empty()) fp["dual_support"] = f.dual_support;
  return {{"name", e.name}, {"scheme", e.scheme}, {"note", e.note}, {"fingerprint", fp}};
}

json envelope(const json& config, const json& result) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"config", config}, {"result", result}};
}

json error_json(const Error& e) { return {{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}}; }

}  // namespace amlab
