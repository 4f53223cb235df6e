#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "reesalg/report_json.hpp"

using namespace reesalg;
using reesalg::json::Json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

struct Flags {
  std::string target;
  std::optional<int> strand;
  std::optional<int> xbound;
  std::optional<int> ybound;
  std::string format = "text";
  std::optional<std::size_t> budget;
  std::uint64_t seed = 11;
  std::size_t count = 5;
  std::string forms;
  bool no_oracle = false;
  bool timing = false;
};

struct Outcome {
  std::string label;
  std::vector<std::string> warnings;
  Json payload;
  std::string text;
  int exit = kOk;
};

Instance load(const std::string& target) {
  if (target.empty()) fail(ErrorCode::ParseError, "an instance file or built-in example name is required");
  if (auto ex = find_example(target)) return ex->instance;
  if (target == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return parse_instance(buf.str(), "stdin");
  }
  return read_instance_file(target).instance;
}

std::optional<BidegreeWindow> window_of(const Flags& f, const Instance& inst) {
  if (!f.xbound && !f.ybound) return std::nullopt;
  BidegreeWindow w = default_window(inst);
  if (f.xbound) w.max_x = *f.xbound;
  if (f.ybound) w.max_y = *f.ybound;
  if (w.max_x < 0 || w.max_y < 0) fail(ErrorCode::SizeOutOfRange, "window bounds must be nonnegative");
  return w;
}

std::string row_text(const PredictionRow& r) {
  std::ostringstream s;
  s << "  A_" << r.component << ": " << r.count << " x " << bidegree_string(r.bidegree) << "  [" << status_name(r.status)
    << "]";
  if (!r.reason.empty()) s << "  " << r.reason;
  return s.str();
}

std::string prediction_text(const PredictionReport& p) {
  std::ostringstream s;
  s << "setting " << setting_name(p.setting) << "  d = " << p.d << "  delta = " << p.delta << "  tau = " << p.tau << "\n";
  for (const auto& r : p.rows) s << row_text(r) << "\n";
  for (const auto& st : p.strands) {
    s << "  strand " << st.t << " -> A_" << p.delta - st.t << ": coker rank " << st.coker_rank;
    if (st.count) s << ", " << st.count << " x " << bidegree_string(st.bidegree) << ", shift " << st.shift;
    s << (st.certified ? "  [certified]" : "  [not certified]") << "\n";
  }
  for (const auto& [k, h] : p.heights) s << "  " << k << " = " << h << "\n";
  if (p.top_generator) s << "  top generator: " << p.top_generator->to_string() << "\n";
  for (const auto& n : p.notes) s << "  note: " << n << "\n";
  return s.str();
}

Outcome cmd_predict(const Flags& f) {
  Instance inst = load(f.target);
  auto p = predict(inst);
  return {inst.label, {}, json::prediction(p), prediction_text(p)};
}

Outcome cmd_oracle(const Flags& f) {
  Instance inst = load(f.target);
  BidegreeWindow w = window_of(f, inst).value_or(default_window(inst));
  ReesIdeal ri = rees_ideal(inst);
  auto B = minimal_generators_B(ri.J, ri.L, w);
  std::map<int, BidegreeTable> T;
  for (int i = 0; i <= w.max_x; ++i) T[i] = minimal_generators_T(ri.J, ri.L, i, w);
  Outcome o{inst.label, ri.warnings, {}, {}};
  for (const auto& x : B.warnings) o.warnings.push_back(x);
  o.payload = {{"window", json::window(w)},
               {"saturation_exponent", ri.exponent},
               {"B_minimal", json::table(B)},
               {"T_minimal", json::t_tables(T)}};
  std::ostringstream s;
  s << "window x <= " << w.max_x << ", y <= " << w.max_y << "  saturation exponent " << ri.exponent << "\n";
  s << "A (B-minimal): " << B.to_string() << "\n";
  for (const auto& [i, t] : T)
    if (!t.empty()) s << "A_" << i << " (T-minimal): " << t.to_string() << "\n";
  o.text = s.str();
  return o;
}

Outcome cmd_verify(const Flags& f) {
  Instance inst = load(f.target);
  auto v = verify_instance(inst, window_of(f, inst));
  Outcome o{inst.label, v.warnings, json::verify(v), {}, v.failed ? kVerifyFailed : kOk};
  std::ostringstream s;
  s << prediction_text(v.prediction);
  s << "oracle (B-minimal): " << v.oracle.to_string() << "  saturation exponent " << v.exponent << "\n";
  for (const auto& c : v.checks) s << "  A_" << c.row.component << ": " << c.message << "\n";
  if (v.det)
    s << "  det check at " << bidegree_string(v.det->bidegree) << ": "
      << (v.det->skipped ? "skipped" : v.det->passed() ? "passed" : "FAILED") << "\n";
  s << (v.failed ? "FAILURE" : "OK") << "\n";
  o.text = s.str();
  return o;
}

Outcome cmd_koszul(const Flags& f) {
  Instance inst = load(f.target);
  auto gens = strand_generators(inst);
  DeltaTau dt = delta_tau(gens, inst.num_x());
  std::vector<int> ts;
  if (f.strand) {
    if (*f.strand < 0) fail(ErrorCode::SizeOutOfRange, "strand index must be nonnegative");
    ts.push_back(*f.strand);
  } else {
    for (int t = 0; t <= dt.delta; ++t) ts.push_back(t);
  }
  Json strands = Json::array();
  std::ostringstream s;
  s << "delta = " << dt.delta << "  tau = " << dt.tau << "\n";
  for (int t : ts) {
    auto a = analyze_strand(gens, t, dt);
    strands.push_back(json::strand(a));
    s << "strand " << t << ": ranks";
    for (std::size_t k = 0; k < a.strand.modules.size(); ++k) s << " " << a.strand.rank(k);
    s << "  matrix ranks";
    for (auto r : a.be.ranks) s << " " << r;
    s << "  heights";
    for (auto h : a.be.heights) s << " " << h;
    s << "  coker " << a.be.coker_rank << (a.be.acyclic() ? "  acyclic" : "  not acyclic") << "\n";
    if (a.multipliers) {
      s << "  shifts";
      for (int x : a.multipliers->shifts) s << " " << x;
      s << "\n";
    }
    if (a.km)
      s << "  KM: " << a.km->generator_count << " x " << bidegree_string(a.km->predicted)
        << (a.certificate && a.certificate->granted ? "  [certified]" : "  [not certified]") << "\n";
  }
  return {inst.label, {}, {{"delta", dt.delta}, {"tau", dt.tau}, {"strands", strands}}, s.str()};
}

Outcome cmd_jacdual(const Flags& f) {
  Instance inst = load(f.target);
  Json out = {{"jacobian_dual", json::matrix(jacobian_dual(inst.phi))}};
  std::ostringstream s;
  s << "B(phi):\n" << jacobian_dual(inst.phi).to_string() << "\n";
  if (!inst.quotient_rels.empty()) {
    auto M = modified_jacobian_dual(inst.phi, inst.quotient_rels);
    out["modified_jacobian_dual"] = json::matrix(M);
    s << "modified:\n" << M.to_string() << "\n";
  }
  if (auto B = top_dual(inst)) {
    auto det = determinant(*B);
    out["det"] = det.to_string();
    s << "det = " << det.to_string() << "\n";
  }
  return {inst.label, {}, out, s.str()};
}

Outcome cmd_hypotheses(const Flags& f) {
  Instance inst = load(f.target);
  auto h = hypothesis_report(inst);
  std::ostringstream s;
  s << "rank " << h.rank << "  pd one " << h.pd_one << "  I_1 = m " << h.entries_generate_m << "  mu matches "
    << h.mu_matches << "\n";
  for (const auto& r : h.fitting)
    s << "  Fitt_" << r.index << ": height " << r.height << " (needs " << r.required << ")" << (r.ok ? "" : "  fails")
      << "\n";
  for (auto [gs, ok] : h.gs) s << "  G_" << gs << (ok ? " holds" : " fails") << "\n";
  return {inst.label, h.warnings, json::hypotheses(h), s.str()};
}

Outcome cmd_fiber(const Flags& f) {
  Instance inst = load(f.target);
  auto sf = special_fiber(inst);
  std::ostringstream s;
  s << "analytic spread " << sf.analytic_spread << "\n";
  for (const auto& g : reduced_ideal(sf.fiber_ideal).generators()) s << "  " << g.to_string() << "\n";
  return {inst.label, {}, json::fiber(sf), s.str()};
}

Outcome cmd_probe(const Flags& f) {
  std::vector<std::pair<Polynomial, Polynomial>> pairs;
  std::string label;
  if (!f.forms.empty()) {
    auto R = standard_ring(4, 4);
    auto comma = f.forms.find(',');
    if (comma == std::string::npos) fail(ErrorCode::ParseError, "--forms expects f,g");
    pairs.emplace_back(Polynomial::parse(R, f.forms.substr(0, comma)), Polynomial::parse(R, f.forms.substr(comma + 1)));
    label = "forms";
  } else {
    pairs = random_quadric_pairs(f.count, f.seed);
    label = "seed " + std::to_string(f.seed);
  }
  Json reports = Json::array();
  std::ostringstream s;
  bool consistent = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& [a, b] = pairs[i];
    auto p = conjecture_probe(a, b, !f.no_oracle, "pair-" + std::to_string(i + 1));
    Json j = json::probe(p);
    j["f"] = a.to_string();
    j["g"] = b.to_string();
    reports.push_back(j);
    consistent = consistent && p.consistent;
    s << p.label << ": f = " << a.to_string() << ", g = " << b.to_string() << "\n";
    if (p.refused) {
      s << "  refused: " << p.notice << "\n";
      continue;
    }
    s << "  ht I_2(Theta) = " << p.minors_height << "  ht I(rho) = " << p.rho_height;
    if (p.fiber_degree) s << "  A_0 degree " << *p.fiber_degree;
    s << (p.consistent ? "" : "  INCONSISTENT") << "\n";
  }
  return {label, {}, {{"pairs", reports}, {"consistent", consistent}}, s.str(), consistent ? kOk : kVerifyFailed};
}

Outcome cmd_examples(const Flags& f) {
  if (!f.target.empty()) {
    auto ex = find_example(f.target);
    if (!ex) fail(ErrorCode::ParseError, "no built-in example named '" + f.target + "'");
    Json mats = Json::object();
    for (const auto& [k, M] : ex->matrices) mats[k] = json::matrix(M);
    Json out = {{"instance", json::instance(ex->instance)},
                {"expected_table", json::table(ex->expected.table)},
                {"facts", ex->expected.facts},
                {"provenance", ex->expected.provenance},
                {"matrices", mats}};
    return {ex->name, {}, out, serialize(ex->instance)};
  }
  Json names = Json::array();
  std::ostringstream s;
  for (const auto& r : example_registry()) {
    names.push_back(r.name);
    s << r.name;
    if (!r.expected.provenance.empty()) s << "  " << r.expected.provenance.front();
    s << "\n";
  }
  return {"", {}, {{"examples", names}}, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Defining equations of Rees algebras: Groebner oracle and duality predictions"};
  app.require_subcommand(1);
  Flags flags;

  auto common = [&](CLI::App* sub, bool with_target) {
    if (with_target) sub->add_option("instance", flags.target, "instance file, '-' for stdin, or built-in example name");
    sub->add_option("--strand", flags.strand, "strand index t");
    sub->add_option("--xbound", flags.xbound, "largest x-degree searched");
    sub->add_option("--ybound", flags.ybound, "largest y-degree searched");
    sub->add_option("--format", flags.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--budget", flags.budget, "S-pair budget per Groebner run")->envname("REESALG_BUDGET");
    sub->add_option("--seed", flags.seed, "seed for probes");
    sub->add_flag("--timing", flags.timing, "include wall time in the report");
    return sub;
  };

  using Handler = Outcome (*)(const Flags&);
  std::vector<std::pair<CLI::App*, Handler>> commands = {
      {common(app.add_subcommand("predict", "theorem-backed prediction of the defining equations"), true), cmd_predict},
      {common(app.add_subcommand("oracle", "minimal generators of A from the saturation"), true), cmd_oracle},
      {common(app.add_subcommand("verify", "compare predictions with the oracle"), true), cmd_verify},
      {common(app.add_subcommand("koszul", "Koszul strands, ranks, multipliers and KM counts"), true), cmd_koszul},
      {common(app.add_subcommand("jacdual", "Jacobian dual and its determinant"), true), cmd_jacdual},
      {common(app.add_subcommand("hypotheses", "pd-one, I_1 and G_s checks"), true), cmd_hypotheses},
      {common(app.add_subcommand("fiber", "special fiber ideal and analytic spread"), true), cmd_fiber},
      {common(app.add_subcommand("probe", "height of I(rho) on seeded quadric pairs"), false), cmd_probe},
      {common(app.add_subcommand("examples", "list built-in examples or dump one"), true), cmd_examples},
  };
  for (auto& [sub, h] : commands) {
    if (sub->get_name() == "probe") {
      sub->add_option("--count", flags.count, "number of seeded pairs");
      sub->add_option("--forms", flags.forms, "a single pair 'f,g' in x1..x4");
      sub->add_flag("--no-oracle", flags.no_oracle, "skip the fiber degree");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (flags.budget) default_pair_budget() = *flags.budget;

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = handler(flags);
      std::optional<double> wall;
      if (flags.timing) wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (flags.format == "json") {
        std::cout << json::run_report(sub->get_name(), o.label, o.warnings, std::move(o.payload), wall).dump(2) << "\n";
      } else {
        if (!o.label.empty()) std::cout << "# " << sub->get_name() << " " << o.label << "\n";
        std::cout << o.text;
        for (const auto& w : o.warnings) std::cout << "warning: " << w << "\n";
        if (wall) std::cout << "wall time " << *wall << " s\n";
      }
      return o.exit;
    } catch (const BudgetExceeded& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kBudget;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return kUsage;
}
