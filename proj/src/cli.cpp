#include "congames/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "congames/document.hpp"
#include "congames/dsl.hpp"
#include "congames/report.hpp"
#include "congames/sampling.hpp"

namespace congames {

namespace {

struct Options {
  std::string file, doc, out_file;
  std::string game, strategy, sigma, tau, valuation;
  std::string qes, config, family, fam1, fam2, f, g, map, s1, s2, fam_a, fam_b;
  std::string mode = "expected";
  std::vector<std::string> sigmas, taus;
  bool dot = false, receptive = false, innocent = false, deterministic = false, racefree = false, winning = false,
       levels = false, expected = false, values = false, minimax = false, real = false;
  std::size_t max_configs = 0;
  int fuel = 64;
  double tolerance = 1e-9;
  unsigned seed = 1;
  int samples = 100;
  int max_events = -1;
};

struct Outcome {
  int code = kExitHolds;
  Json json;
  std::string text;  // DOT, when set
};

Outcome report(Json j, bool holds = true) { return {holds ? kExitHolds : kExitFails, std::move(j), {}}; }

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("io", "", "cannot open '" + path + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Json validity(const Report& r) { return Json{{"valid", r.empty()}, {"violations", report_json(r)}}; }

ConfigValuation valuation_for(const Document& d, const Options& o, const Strategy& s) {
  ConfigTable table;
  if (!o.valuation.empty()) {
    const ValuationDef& v = d.valuation(o.valuation);
    if (v.strategy != o.strategy) throw InputError("valuation '" + o.valuation + "' belongs to '" + v.strategy + "'");
    table = v.table;
  } else if (s.valuation) {
    table = *s.valuation;
  } else {
    throw InputError("strategy '" + o.strategy + "' has no valuation");
  }
  bool opponent = !s.inner.negative().empty();
  ConfigValuation v = opponent ? strategy_valuation(s.inner, table) : ConfigValuation{s.inner.es, table, {}, {}};
  return v;
}

RealValuation to_real(const ConfigValuation& v) {
  RealValuation r{v.subject, {}, v.mode, v.polarity};
  for (const auto& [x, p] : v.values) r.values[x] = to_double(p);
  return r;
}

// ---------------------------------------------------------------- commands

Outcome cmd_validate(const Options& o) {
  Document d = load_document(o.file);
  Json warnings = Json::array();
  for (const auto& [name, s] : d.strategies)
    for (const auto& w : s.value.warnings) warnings.push_back(name + ": " + w);
  Json counts{{"games", d.games.size()},         {"strategies", d.strategies.size()},
              {"valuations", d.valuations.size()}, {"maps", d.maps.size()},
              {"quantum", d.quantum.size()},       {"symmetries", d.symmetries.size()}};
  return report(Json{{"valid", true}, {"counts", counts}, {"warnings", warnings}});
}

Outcome cmd_configs(const Options& o) {
  Document d = load_document(o.file);
  if (o.game.empty() == o.strategy.empty()) throw InputError("give exactly one of --game and --strategy");
  const EventStructure& es = o.game.empty() ? d.strategy(o.strategy).inner.es : d.game(o.game).es;
  auto cs = o.max_events >= 0 ? configurations(es, o.max_events) : configurations(es);
  Json list = Json::array();
  for (const auto& x : cs) list.push_back(config_json(es, x));
  return report(Json{{"count", cs.size()}, {"configurations", list}});
}

Outcome strategy_out(const Strategy& s, const Options& o, const std::string& name) {
  if (o.dot) return {kExitHolds, {}, strategy_dot(s, name)};
  return report(Json{{"strategy", strategy_json(s)}});
}

Outcome cmd_copycat(const Options& o) {
  Document d = load_document(o.file);
  return strategy_out(copycat(d.game(o.game)), o, "copycat_" + o.game);
}

Outcome cmd_compose(const Options& o) {
  Document d = load_document(o.file);
  Composition c = compose_full(d.strategy(o.sigma), d.strategy(o.tau));
  if (o.dot) return {kExitHolds, {}, strategy_dot(c.hidden, o.tau + "_after_" + o.sigma)};
  return report(Json{{"strategy", strategy_json(c.hidden)}, {"interaction_events", c.interaction.apex.size()}});
}

Json race_json(const Game& g, const RaceWitness& w) {
  return Json{{"config", config_json(g.es, w.x)}, {"events", Json::array({g.es.name(w.e1), g.es.name(w.e2)})}};
}

Outcome cmd_check(const Options& o) {
  Document d = load_document(o.file);
  bool any = o.receptive || o.innocent || o.deterministic || o.racefree || o.winning || o.levels;
  Json checks = Json::object();
  bool holds = true;
  if (o.strategy.empty()) {
    if (o.game.empty()) throw InputError("give --strategy or --game");
    if (o.receptive || o.innocent || o.deterministic || o.winning)
      throw InputError("strategy checks need --strategy");
    const Game& g = d.game(o.game);
    if (o.racefree || !any) {
      auto race = find_race(g);
      checks["racefree"] = Json{{"holds", !race}};
      if (race) checks["racefree"]["witness"] = race_json(g, *race);
      holds = holds && !race;
    }
    if (o.levels) {
      if (!d.levels) throw InputError("document has no level order");
      Report r = check_levels(*d.levels, g);
      checks["levels"] = Json{{"holds", r.empty()}, {"violations", report_json(r)}};
      holds = holds && r.empty();
    }
    return report(Json{{"game", o.game}, {"holds", holds}, {"checks", checks}}, holds);
  }
  const Strategy& s = d.strategy(o.strategy);
  auto add = [&](const char* name, const CheckResult& c) {
    checks[name] = check_json(c);
    holds = holds && c.holds;
  };
  if (o.receptive || !any) add("receptive", check_receptive(s));
  if (o.innocent || !any) add("innocent", check_innocent(s));
  if (o.deterministic || !any) add("deterministic", check_deterministic(s));
  if (o.racefree) {
    auto race = find_race(s.target);
    checks["racefree"] = Json{{"holds", !race}};
    if (race) checks["racefree"]["witness"] = race_json(s.target, *race);
    holds = holds && !race;
  }
  if (o.winning) {
    WinResult w = check_winning(s, winning_of(s.target));
    checks["winning"] = Json{{"holds", w.winning}};
    if (w.witness) checks["winning"]["witness"] = Json{{"config", config_json(s.inner.es, *w.witness)}};
    holds = holds && w.winning;
  }
  if (o.levels) {
    if (!d.levels) throw InputError("document has no level order");
    Report r = check_levels(*d.levels, s);
    checks["levels"] = Json{{"holds", r.empty()}, {"violations", report_json(r)}};
    holds = holds && r.empty();
  }
  return report(Json{{"strategy", o.strategy}, {"holds", holds}, {"checks", checks}}, holds);
}

Outcome cmd_prob_validate(const Options& o) {
  Document d = load_document(o.file);
  const Strategy& s = d.strategy(o.strategy);
  ConfigValuation v = valuation_for(d, o, s);
  Report r = o.real ? validate_valuation(to_real(v), o.tolerance) : validate_valuation(v);
  Json j = validity(r);
  j["mode"] = v.mode == ValuationMode::kStrategy ? "strategy" : "all-positive";
  j["arithmetic"] = o.real ? "double" : "rational";
  return report(j, r.empty());
}

Outcome cmd_prob_dist(const Options& o) {
  Document d = load_document(o.file);
  const Strategy& s = d.strategy(o.strategy);
  ConfigValuation v = valuation_for(d, o, s);
  Json rows = Json::array();
  if (o.real) {
    double total = 0;
    for (const auto& [z, p] : outcome_distribution(to_real(v), o.tolerance)) {
      rows.push_back(Json{{"config", config_json(s.inner.es, z)}, {"p", p}});
      total += p;
    }
    return report(Json{{"distribution", rows}, {"total", total}});
  }
  Rational total = 0;
  for (const auto& [z, p] : outcome_distribution(v)) {
    rows.push_back(Json{{"config", config_json(s.inner.es, z)}, {"p", rational_json(p)}});
    total += p;
  }
  return report(Json{{"distribution", rows}, {"total", rational_json(total)}});
}

// Single-extension drop validation against the full-cover brute force on
// random all-positive valuations.
Outcome cmd_prob_sweep(const Options& o) {
  std::mt19937 rng(o.seed);
  int max_events = o.max_events >= 0 ? o.max_events : 4;
  std::uniform_int_distribution<int> size(1, std::max(1, max_events));
  int agree = 0, valid = 0;
  Json disagreements = Json::array();
  for (int i = 0; i < o.samples; ++i) {
    EventStructure es = random_es(rng, size(rng));
    ConfigValuation v = random_valuation(rng, es);
    Report quick = validate_valuation(v);
    bool structural = std::all_of(quick.begin(), quick.end(), [](const Violation& x) { return x.rule == "drop"; });
    bool fast = quick.empty();
    bool full = structural && full_drop_check(v).empty();
    if (fast) ++valid;
    if (fast == full) {
      ++agree;
    } else if (disagreements.size() < 5) {
      disagreements.push_back(Json{{"structure", es_json(es)}, {"single_extension", fast}, {"full_cover", full}});
    }
  }
  return report(Json{{"seed", o.seed}, {"samples", o.samples}, {"valid", valid}, {"agree", agree},
                     {"disagreements", disagreements}},
                agree == o.samples);
}

Json exact_number(const Rational& r) {
  if (denominator(r) == 1) return rational_json(r);
  return to_double(r);
}

Outcome cmd_payoff(const Options& o) {
  Document d = load_document(o.file);
  int modes = int(o.expected) + int(o.values) + int(o.minimax);
  if (modes != 1) throw InputError("give exactly one of --expected, --values, --minimax");
  if (o.minimax) {
    auto sig = o.sigmas.empty() ? std::vector<std::string>{o.sigma} : o.sigmas;
    auto tau = o.taus.empty() ? std::vector<std::string>{o.tau} : o.taus;
    std::vector<Strategy> ss, ts;
    for (const auto& n : sig) ss.push_back(d.strategy(n));
    for (const auto& n : tau) ts.push_back(d.strategy(n));
    ValueMode mode = o.mode == "optimistic"    ? ValueMode::kOptimistic
                     : o.mode == "pessimistic" ? ValueMode::kPessimistic
                                               : ValueMode::kExpected;
    if (o.mode != "expected" && o.mode != "optimistic" && o.mode != "pessimistic")
      throw InputError("--mode must be expected, optimistic or pessimistic");
    ValueReport v = value_over_sets(ss, ts, payoff_of(ss.at(0).target), mode);
    Json matrix = Json::array();
    for (const auto& row : v.matrix) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(rational_json(x));
      matrix.push_back(r);
    }
    return report(Json{{"sigmas", sig},
                       {"taus", tau},
                       {"mode", o.mode},
                       {"supinf", rational_json(v.supinf)},
                       {"infsup", rational_json(v.infsup)},
                       {"determined", v.determined},
                       {"argmax", sig.at(v.argmax)},
                       {"matrix", matrix}});
  }
  const Strategy& s = d.strategy(o.sigma);
  const Strategy& t = d.strategy(o.tau);
  PayoffSpec x = payoff_of(s.target);
  if (o.values) {
    auto [hi, lo] = play_values(s, t, x);
    return report(Json{{"max", rational_json(hi)}, {"min", rational_json(lo)}});
  }
  ExpectedPayoff e = expected_payoff(s, t, x);
  Json j{{"expected", exact_number(e.expected)}};
  if (e.win_prob) j["win_prob"] = exact_number(*e.win_prob);
  j["exact"] = Json{{"expected", to_string(e.expected)}};
  if (e.win_prob) j["exact"]["win_prob"] = to_string(*e.win_prob);
  Json dist = Json::array();
  const auto& apex = e.interaction.pb.apex;
  for (const auto& [z, p] : e.distribution)
    if (p != 0)
      dist.push_back(Json{{"play", config_json(s.target.es, e.interaction.to_game.apply(z))},
                          {"interaction", config_json(apex, z)},
                          {"p", rational_json(p)}});
  j["distribution"] = dist;
  return report(j);
}

Outcome cmd_quantum_validate(const Options& o) {
  Document d = load_document(o.file);
  const QuantumES& q = d.qes(o.qes).value;
  Report r = validate_qes(q, o.tolerance);
  Json j = validity(r);
  j["tolerance"] = Json{{"structural", o.tolerance}, {"serialization", kSerializationTolerance}};
  bool local_ok = true;
  if (r.empty()) {
    Json failures = Json::array();
    for (const auto& w : configurations(q.es)) {
      Report l = local_valuation_check(q, w, o.tolerance);
      if (!l.empty()) {
        local_ok = false;
        failures.push_back(Json{{"config", config_json(q.es, w)}, {"violations", report_json(l)}});
      }
    }
    Report whole = whole_valuation_check(q, o.tolerance);
    j["local_valuation"] = Json{{"holds", local_ok}, {"failures", failures}};
    j["whole_valuation"] = Json{{"holds", whole.empty()}, {"violations", report_json(whole)}};
  }
  return report(j, r.empty() && local_ok);
}

Outcome cmd_quantum_weight(const Options& o) {
  Document d = load_document(o.file);
  const QuantumES& q = d.qes(o.qes).value;
  Report r = validate_qes(q, o.tolerance);
  if (!r.empty()) throw InputError("invalid quantum structure: " + r.front().rule + ": " + r.front().detail);
  Configuration x = q.es.set_of(split(o.config));
  ConfigOperator a = config_operator_and_weight(q, x);
  Json m = Json::array();
  for (int i = 0; i < a.a.dim(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < a.a.dim(); ++k) row.push_back(Json::array({a.a(i, k).real(), a.a(i, k).imag()}));
    m.push_back(row);
  }
  return report(Json{{"config", config_json(q.es, x)}, {"weight", a.weight}, {"operator", m}});
}

Outcome cmd_sym_validate(const Options& o) {
  Document d = load_document(o.file);
  Report r = validate_isofamily(d.symmetry(o.family).family);
  return report(validity(r), r.empty());
}

Json bijection_json(const EventStructure& a, const EventStructure& b, const Bijection& p) {
  Json j = Json::array();
  for (const auto& [l, r] : p) j.push_back(Json::array({a.name(l), b.name(r)}));
  return j;
}

Outcome cmd_sym_preserves(const Options& o) {
  Document d = load_document(o.file);
  const EsMap& f = d.map(o.map).map;
  const IsoFamily& fa = d.symmetry(o.fam_a).family;
  const IsoFamily& fb = d.symmetry(o.fam_b).family;
  const EsMap* g = o.g.empty() ? nullptr : &d.map(o.g).map;
  SymmetryReport r = map_symmetry(f, fa, fb, g);
  Json j{{"preserves", r.preserves}};
  if (r.broken) j["broken"] = bijection_json(fa.subject, fa.subject, *r.broken);
  if (r.similar) j["similar"] = *r.similar;
  if (r.dissimilar_at) j["dissimilar_at"] = config_json(f.source, *r.dissimilar_at);
  return report(j, r.preserves && r.similar.value_or(true));
}

Outcome cmd_sym_pseudopb(const Options& o) {
  Document d = load_document(o.file);
  const EsMap& f = d.map(o.f).map;
  const EsMap& g = d.map(o.g).map;
  IsoFamily fam = o.family.empty() ? identity_family(f.target) : d.symmetry(o.family).family;
  Pullback p = pseudo_pullback(f, g, fam);
  Json pi1 = Json::object(), pi2 = Json::object();
  for (int e = 0; e < p.apex.size(); ++e) {
    pi1[p.apex.name(e)] = f.source.name(p.pi1(e));
    pi2[p.apex.name(e)] = g.source.name(p.pi2(e));
  }
  return report(Json{{"apex", es_json(p.apex)},
                     {"configurations", configurations(p.apex).size()},
                     {"pi1", pi1},
                     {"pi2", pi2}});
}

Outcome cmd_sym_similar(const Options& o) {
  Document d = load_document(o.file);
  const Strategy& a = d.strategy(o.s1);
  const Strategy& b = d.strategy(o.s2);
  const IsoFamily* f1 = o.fam1.empty() ? nullptr : &d.symmetry(o.fam1).family;
  const IsoFamily* f2 = o.fam2.empty() ? nullptr : &d.symmetry(o.fam2).family;
  auto sim = strategies_similar(a, b, f1, f2);
  Json j{{"similar", sim.has_value()}};
  if (sim) {
    Json f = Json::object(), g = Json::object();
    for (int e = 0; e < a.inner.size(); ++e) f[a.inner.es.name(e)] = b.inner.es.name(sim->f[static_cast<std::size_t>(e)]);
    for (int e = 0; e < b.inner.size(); ++e) g[b.inner.es.name(e)] = a.inner.es.name(sim->g[static_cast<std::size_t>(e)]);
    j["f"] = f;
    j["g"] = g;
  }
  return report(j, sim.has_value());
}

dsl::Env dsl_env(const Options& o) {
  dsl::Env env = o.doc.empty() ? dsl::Env{} : load_document(o.doc).env();
  env.fuel = o.fuel;
  return env;
}

Json contexts_json(const dsl::Contexts& c) {
  auto side = [](const std::vector<dsl::TypedBinding>& bs) {
    Json j = Json::array();
    for (const auto& b : bs) j.push_back(Json{{"var", b.var}, {"game", game_json(b.game)}});
    return j;
  };
  return Json{{"left", side(c.left)}, {"right", side(c.right)}};
}

Outcome cmd_dsl_check(const Options& o) {
  dsl::Judgement j = dsl::parse(read_file(o.file));
  dsl::Contexts c = dsl::typecheck(j, dsl_env(o));
  return report(Json{{"judgement", dsl::pretty(j)}, {"contexts", contexts_json(c)}});
}

Outcome cmd_dsl_eval(const Options& o) {
  dsl::Judgement j = dsl::parse(read_file(o.file));
  Strategy s = dsl::elaborate(j, dsl_env(o));
  if (o.dot) return {kExitHolds, {}, strategy_dot(s, "term")};
  StrategyReport r = check_strategy(s);
  return report(Json{{"judgement", dsl::pretty(j)},
                     {"strategy", strategy_json(s)},
                     {"checks",
                      {{"receptive", check_json(r.receptive)},
                       {"innocent", check_json(r.innocent)},
                       {"deterministic", check_json(r.deterministic)}}}});
}

Json error_json(const std::string& kind, const std::string& message, const std::string& pointer = "",
                const Report& violations = {}) {
  Json e{{"kind", kind}, {"message", message}};
  if (!pointer.empty() || kind == "schema" || kind == "validation") e["pointer"] = pointer;
  if (!violations.empty()) e["violations"] = report_json(violations);
  return e;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Concurrent games and strategies on finite event structures", "congames"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "congames 0.1.0");
  app.add_option("--max-configs", o.max_configs, "Enumeration ceiling (default 1000000, or CONGAMES_MAX_CONFIGS)");
  app.add_option("--fuel", o.fuel, "Fixpoint iteration bound for mu")->check(CLI::PositiveNumber);
  app.add_option("--tolerance", o.tolerance, "Tolerance for floating-point checks");
  app.add_option("--seed", o.seed, "Seed for randomized sweeps");
  app.add_option("-o,--output", o.out_file, "Write the report to FILE");
  std::function<Outcome(const Options&)> run;

  auto file = [&](CLI::App* c, const char* what = "Document (JSON)") {
    c->add_option("file", o.file, what)->required();
  };

  auto* validate = app.add_subcommand("validate", "Load and validate a document");
  file(validate);
  validate->callback([&] { run = cmd_validate; });

  auto* configs = app.add_subcommand("configs", "List the configurations of a game or strategy");
  file(configs);
  configs->add_option("--game", o.game);
  configs->add_option("--strategy", o.strategy);
  configs->add_option("--max-events", o.max_events, "Only configurations with at most N events");
  configs->callback([&] { run = cmd_configs; });

  auto* cc = app.add_subcommand("copycat", "Copy-cat strategy of a game");
  file(cc);
  cc->add_option("--game", o.game)->required();
  cc->add_flag("--dot", o.dot, "Emit DOT instead of JSON");
  cc->callback([&] { run = cmd_copycat; });

  auto* comp = app.add_subcommand("compose", "Compose two strategies (tau after sigma)");
  file(comp);
  comp->add_option("--sigma", o.sigma)->required();
  comp->add_option("--tau", o.tau)->required();
  comp->add_flag("--dot", o.dot);
  comp->callback([&] { run = cmd_compose; });

  auto* check = app.add_subcommand("check", "Check strategy or game properties (all strategy checks by default)");
  file(check);
  check->add_option("--strategy", o.strategy);
  check->add_option("--game", o.game);
  check->add_flag("--receptive", o.receptive);
  check->add_flag("--innocent", o.innocent);
  check->add_flag("--deterministic", o.deterministic);
  check->add_flag("--racefree", o.racefree);
  check->add_flag("--winning", o.winning);
  check->add_flag("--levels", o.levels);
  check->callback([&] { run = cmd_check; });

  auto* prob = app.add_subcommand("prob", "Probabilistic strategies");
  prob->require_subcommand(1);
  for (const char* name : {"validate", "dist"}) {
    auto* c = prob->add_subcommand(name, std::string(name) == "validate" ? "Validate a valuation"
                                                                         : "Outcome distribution of a valuation");
    file(c);
    c->add_option("--strategy", o.strategy)->required();
    c->add_option("--valuation", o.valuation, "Named valuation (default: the strategy's own)");
    c->add_flag("--double", o.real, "Floating-point arithmetic with --tolerance");
    bool is_validate = std::string(name) == "validate";
    c->callback([&, is_validate] { run = is_validate ? cmd_prob_validate : cmd_prob_dist; });
  }
  auto* sweep = prob->add_subcommand("sweep", "Compare drop checks on random valuations");
  sweep->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  sweep->add_option("--max-events", o.max_events);
  sweep->callback([&] { run = cmd_prob_sweep; });

  auto* pay = app.add_subcommand("payoff", "Payoffs of strategy profiles");
  file(pay);
  pay->add_option("--sigma", o.sigma);
  pay->add_option("--tau", o.tau);
  pay->add_option("--sigmas", o.sigmas)->delimiter(',');
  pay->add_option("--taus", o.taus)->delimiter(',');
  pay->add_option("--mode", o.mode, "expected | optimistic | pessimistic (with --minimax)");
  pay->add_flag("--expected", o.expected);
  pay->add_flag("--values", o.values);
  pay->add_flag("--minimax", o.minimax);
  pay->callback([&] { run = cmd_payoff; });

  auto* qu = app.add_subcommand("quantum", "Quantum event structures");
  qu->require_subcommand(1);
  auto* qv = qu->add_subcommand("validate", "Structural and valuation checks");
  file(qv);
  qv->add_option("--qes", o.qes)->required();
  qv->callback([&] { run = cmd_quantum_validate; });
  auto* qw = qu->add_subcommand("weight", "Operator and weight of a configuration");
  file(qw);
  qw->add_option("--qes", o.qes)->required();
  qw->add_option("--config", o.config, "Comma-separated events");
  qw->callback([&] { run = cmd_quantum_weight; });

  auto* sym = app.add_subcommand("sym", "Symmetry");
  sym->require_subcommand(1);
  auto* sv = sym->add_subcommand("validate", "Check the isomorphism-family axioms");
  file(sv);
  sv->add_option("--family", o.family)->required();
  sv->callback([&] { run = cmd_sym_validate; });
  auto* sp = sym->add_subcommand("preserves", "Does a map preserve symmetry (and is it similar to --g)");
  file(sp);
  sp->add_option("--map", o.map)->required();
  sp->add_option("--fam-a", o.fam_a)->required();
  sp->add_option("--fam-b", o.fam_b)->required();
  sp->add_option("--g", o.g);
  sp->callback([&] { run = cmd_sym_preserves; });
  auto* pp = sym->add_subcommand("pseudopb", "Pseudo-pullback of two maps");
  file(pp);
  pp->add_option("--f", o.f)->required();
  pp->add_option("--g", o.g)->required();
  pp->add_option("--family", o.family, "Family on the common target (default: identities)");
  pp->callback([&] { run = cmd_sym_pseudopb; });
  auto* ss = sym->add_subcommand("similar", "Strategy equivalence up to symmetry");
  file(ss);
  ss->add_option("--s1", o.s1)->required();
  ss->add_option("--s2", o.s2)->required();
  ss->add_option("--fam1", o.fam1);
  ss->add_option("--fam2", o.fam2);
  ss->callback([&] { run = cmd_sym_similar; });

  auto* dsl_cmd = app.add_subcommand("dsl", "Strategy term language");
  dsl_cmd->require_subcommand(1);
  for (const char* name : {"check", "eval"}) {
    bool is_check = std::string(name) == "check";
    auto* c = dsl_cmd->add_subcommand(name, is_check ? "Parse and typecheck" : "Elaborate to a strategy");
    file(c, "Source file (.sdsl)");
    c->add_option("--doc", o.doc, "Document supplying games and maps");
    if (!is_check) c->add_flag("--dot", o.dot);
    c->callback([&, is_check] { run = is_check ? cmd_dsl_check : cmd_dsl_eval; });
  }
  std::function<void(CLI::App*)> fallthrough = [&](CLI::App* c) {
    for (auto* sub : c->get_subcommands({})) {
      sub->fallthrough();
      fallthrough(sub);
    }
  };
  fallthrough(&app);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "congames: " << e.what() << "\n";
    return kExitError;
  }

  std::string command;
  for (CLI::App* c = &app; !c->get_subcommands().empty();) {
    c = c->get_subcommands().front();
    command += (command.empty() ? "" : " ") + c->get_name();
  }

  // The ceiling is process-wide; restore it for the next caller.
  struct CeilingGuard {
    std::size_t saved = enumeration_ceiling();
    ~CeilingGuard() { set_enumeration_ceiling(saved); }
  } guard;
  Outcome result;
  try {
    if (const char* env = std::getenv("CONGAMES_MAX_CONFIGS"); env && o.max_configs == 0) {
      try {
        o.max_configs = std::stoull(env);
      } catch (const std::exception&) {
        throw InputError(std::string("CONGAMES_MAX_CONFIGS is not a number: '") + env + "'");
      }
    }
    if (o.max_configs > 0) set_enumeration_ceiling(o.max_configs);
    result = run(o);
  } catch (const DocumentError& e) {
    result = {kExitError, Json{{"error", error_json(e.kind(), e.message(), e.pointer(), e.violations())}}, {}};
  } catch (const ResourceError& e) {
    Json j = error_json("resource", e.what());
    j["ceiling"] = e.ceiling();
    result = {kExitError, Json{{"error", j}}, {}};
  } catch (const SyntaxError& e) {
    Json j = error_json("syntax", e.what());
    j["line"] = e.line();
    j["column"] = e.column();
    result = {kExitError, Json{{"error", j}}, {}};
  } catch (const TypeError& e) {
    result = {kExitError, Json{{"error", error_json("type", e.what())}}, {}};
  } catch (const InputError& e) {
    result = {kExitError, Json{{"error", error_json("input", e.what())}}, {}};
  } catch (const InternalError& e) {
    result = {kExitError, Json{{"error", error_json("internal", e.what())}}, {}};
  } catch (const Error& e) {
    result = {kExitError, Json{{"error", error_json("error", e.what())}}, {}};
  }

  std::string text = result.text;
  if (text.empty()) {
    Json j{{"schema", 1}, {"command", command}};
    for (auto it = result.json.begin(); it != result.json.end(); ++it) j[it.key()] = it.value();
    text = j.dump(2) + "\n";
  }
  if (!o.out_file.empty() && result.code != kExitError) {
    std::ofstream f(o.out_file);
    if (!f) {
      err << "congames: cannot write '" << o.out_file << "'\n";
      return kExitError;
    }
    f << text;
  } else {
    out << text;
  }
  return result.code;
}

}  // namespace congames
