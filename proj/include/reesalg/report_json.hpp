#pragma once

#include <json.hpp>

#include "reesalg/instance_io.hpp"
#include "reesalg/theorems.hpp"

namespace reesalg::json {

// nlohmann::json keeps object keys in a std::map, so dumps are sorted and
// byte-stable.
using Json = nlohmann::json;

inline Json bidegree(BiDegree b) { return Json::array({b.x, b.y}); }

inline Json table(const BidegreeTable& t) {
  Json rows = Json::array();
  for (auto it = t.counts.rbegin(); it != t.counts.rend(); ++it)
    rows.push_back({{"bidegree", bidegree(it->first)}, {"count", it->second}});
  return {{"entries", rows}, {"total", t.total()}, {"warnings", t.warnings}};
}

inline Json matrix(const PolyMatrix& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

inline Json polys(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline Json instance(const Instance& inst) {
  return {{"label", inst.label},
          {"x_vars", inst.ring->x_names()},
          {"y_vars", inst.ring->y_names()},
          {"quotient", polys(inst.quotient_rels)},
          {"phi", matrix(inst.phi)}};
}

inline Json prediction(const PredictionReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"component", r.component},
                    {"count", r.count},
                    {"bidegree", bidegree(r.bidegree)},
                    {"status", status_name(r.status)},
                    {"count_unconditional", r.count_unconditional},
                    {"reason", r.reason}});
  Json strands = Json::array();
  for (const auto& s : rep.strands)
    strands.push_back({{"t", s.t},
                       {"component", rep.delta - s.t},
                       {"coker_rank", s.coker_rank},
                       {"count", s.count},
                       {"bidegree", bidegree(s.bidegree)},
                       {"shift", s.shift},
                       {"certified", s.certified},
                       {"reason", s.reason}});
  return {{"setting", setting_name(rep.setting)},
          {"d", rep.d},
          {"delta", rep.delta},
          {"tau", rep.tau},
          {"rows", rows},
          {"strands", strands},
          {"top_generator", rep.top_generator ? Json(rep.top_generator->to_string()) : Json()},
          {"heights", rep.heights},
          {"notes", rep.notes}};
}

inline Json det_check(const DetGeneratorReport& d) {
  return {{"det", d.det.to_string()},
          {"bidegree", bidegree(d.bidegree)},
          {"expected", bidegree(d.expected)},
          {"skipped", d.skipped},
          {"in_J", d.in_J},
          {"outside_L", d.outside_L},
          {"kills_x", d.kills_x},
          {"colon_matches", d.colon_matches},
          {"bidegree_matches", d.bidegree_matches},
          {"piece_is_line", d.piece_is_line},
          {"passed", d.passed()},
          {"notice", d.notice}};
}

inline Json window(const BidegreeWindow& w) { return {{"max_x", w.max_x}, {"max_y", w.max_y}}; }

inline Json t_tables(const std::map<int, BidegreeTable>& ts) {
  Json out = Json::object();
  for (const auto& [i, t] : ts) out[std::to_string(i)] = table(t);
  return out;
}

inline Json verify(const VerifyReport& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"component", c.row.component},
                      {"status", status_name(c.row.status)},
                      {"predicted", {{"count", c.row.count}, {"bidegree", bidegree(c.row.bidegree)}}},
                      {"observed", table(c.observed)},
                      {"certified", c.certified},
                      {"agrees", c.agrees},
                      {"count_agrees", c.count_agrees},
                      {"message", c.message}});
  return {{"prediction", prediction(v.prediction)},
          {"window", window(v.window)},
          {"saturation_exponent", v.exponent},
          {"oracle", table(v.oracle)},
          {"oracle_T", t_tables(v.oracle_T)},
          {"checks", checks},
          {"det_check", v.det ? det_check(*v.det) : Json()},
          {"warnings", v.warnings},
          {"failed", v.failed}};
}

inline Json hypotheses(const HypothesisReport& h) {
  Json fitting = Json::array();
  for (const auto& f : h.fitting)
    fitting.push_back({{"index", f.index}, {"height", f.height}, {"required", f.required}, {"ok", f.ok}});
  Json gs = Json::object();
  for (auto [s, ok] : h.gs) gs["G_" + std::to_string(s)] = ok;
  return {{"num_x", h.num_x},
          {"quotient_height", h.quotient_height},
          {"dim_ring", h.dim_ring},
          {"rank", h.rank},
          {"rank_full", h.rank_full},
          {"max_minor_height", h.max_minor_height},
          {"pd_one", h.pd_one},
          {"entries_generate_m", h.entries_generate_m},
          {"mu_matches", h.mu_matches},
          {"fitting", fitting},
          {"gs", gs},
          {"warnings", h.warnings}};
}

inline Json fiber(const SpecialFiber& sf) {
  return {{"generators", polys(reduced_ideal(sf.fiber_ideal).generators())},
          {"analytic_spread", sf.analytic_spread}};
}

inline Json strand(const StrandAnalysis& a) {
  const auto& K = a.strand;
  Json modules = Json::array();
  for (std::size_t k = 0; k < K.modules.size(); ++k) {
    Json tw = Json::object();
    for (auto [deg, n] : K.modules[k].twist_multiset()) tw[std::to_string(deg)] = n;
    modules.push_back({{"k", k}, {"rank", K.rank(k)}, {"twists", tw}});
  }
  Json out = {{"t", K.t},
              {"modules", modules},
              {"ranks", a.be.ranks},
              {"heights", a.be.heights},
              {"composition_zero", a.be.composition_zero},
              {"rank_condition", a.be.rank_condition},
              {"grade_condition", a.be.grade_condition},
              {"acyclic", a.be.acyclic()},
              {"coker_rank", a.be.coker_rank}};
  if (a.multipliers) {
    out["shifts"] = a.multipliers->shifts;
    out["degrees_consistent"] = a.multipliers->degrees_consistent;
  }
  if (a.km)
    out["km"] = {{"coker_rank", a.km->coker_rank},
                 {"generator_count", a.km->generator_count},
                 {"shift", a.km->shift},
                 {"composes_to_zero", a.km->composes_to_zero},
                 {"predicted", bidegree(a.km->predicted)}};
  if (a.certificate)
    out["certificate"] = {{"granted", a.certificate->granted},
                          {"multiplier_height", a.certificate->multiplier_height},
                          {"sigma_heights", a.certificate->sigma_heights},
                          {"reason", a.certificate->reason}};
  return out;
}

inline Json probe(const ProbeReport& p) {
  return {{"label", p.label},
          {"refused", p.refused},
          {"notice", p.notice},
          {"minors_height", p.minors_height},
          {"rho_height", p.rho_height},
          {"fiber_degree", p.fiber_degree ? Json(*p.fiber_degree) : Json()},
          {"consistent", p.consistent}};
}

inline Json duality(const DualityReport& d) {
  Json rows = Json::array();
  for (const auto& r : d.rows) rows.push_back({{"j", r.j}, {"oracle", r.oracle}, {"kernel", r.kernel}});
  return {{"t", d.t}, {"component", d.component}, {"rows", rows}, {"mismatches", d.mismatches}};
}

// Envelope shared by every CLI command.
inline Json run_report(const std::string& command, const std::string& label, const std::vector<std::string>& warnings,
                       Json result, std::optional<double> wall_seconds = std::nullopt) {
  Json out = {{"command", command}, {"instance", label}, {"warnings", warnings}, {"result", std::move(result)}};
  if (wall_seconds) out["wall_seconds"] = *wall_seconds;
  return out;
}

}  // namespace reesalg::json
