#include "congames/document.hpp"

#include <algorithm>
#include <fstream>

#include "congames/report.hpp"

namespace congames {

std::string pointer_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

namespace {

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + pointer_token(key); }
std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

[[noreturn]] void schema(const std::string& ptr, const std::string& msg) { throw DocumentError("schema", ptr, msg); }

[[noreturn]] void invalid(const std::string& ptr, const Report& r) {
  std::string msg = r.empty() ? "invalid" : r.front().rule + ": " + r.front().detail;
  if (r.size() > 1) msg += " (and " + std::to_string(r.size() - 1) + " more)";
  throw DocumentError("validation", ptr, msg, r);
}

const Json& object(const Json& j, const std::string& ptr) {
  if (!j.is_object()) schema(ptr, "expected an object");
  return j;
}

const Json& array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) schema(ptr, "expected an array");
  return j;
}

std::string string(const Json& j, const std::string& ptr) {
  if (!j.is_string()) schema(ptr, "expected a string");
  return j.get<std::string>();
}

const Json& required(const Json& obj, const std::string& key, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(ptr, "missing field '" + key + "'");
  return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& ptr) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) schema(at(ptr, it.key()), "unknown field '" + it.key() + "'");
  }
}

std::vector<std::string> strings(const Json& j, const std::string& ptr) {
  std::vector<std::string> out;
  array(j, ptr);
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string(j[i], at(ptr, i)));
  return out;
}

Rational rational(const Json& j, const std::string& ptr) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const InputError& e) {
    schema(ptr, e.what());
  }
  schema(ptr, "expected a number or a rational string");
}

EsSpec es_spec(const Json& j, const std::string& ptr) {
  EsSpec spec;
  spec.events = strings(required(j, "events", ptr), at(ptr, "events"));
  if (auto it = j.find("causes"); it != j.end()) {
    std::string p = at(ptr, "causes");
    object(*it, p);
    for (auto c = it->begin(); c != it->end(); ++c) spec.causes[c.key()] = strings(c.value(), at(p, c.key()));
  }
  if (auto it = j.find("forbidden"); it != j.end()) {
    std::string p = at(ptr, "forbidden");
    array(*it, p);
    for (std::size_t i = 0; i < it->size(); ++i) spec.forbidden.push_back(strings((*it)[i], at(p, i)));
  }
  return spec;
}

EventStructure es_of(const Json& j, const std::string& ptr) {
  EsSpec spec = es_spec(j, ptr);
  Report r = validate_es(spec);
  if (!r.empty()) invalid(ptr, r);
  return EventStructure::from_spec(spec);
}

Configuration config(const EventStructure& es, const Json& j, const std::string& ptr, bool must_be_config) {
  auto ids = strings(j, ptr);
  Configuration x;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto e = es.find(ids[i]);
    if (!e) schema(at(ptr, i), "unknown event '" + ids[i] + "'");
    x.insert(*e);
  }
  if (must_be_config && !es.is_configuration(x)) schema(ptr, es.format(x) + " is not a configuration");
  return x;
}

// Values over configurations: {"values": [{"config": [...], "value": v}],
// "default": v}.
ConfigTable table_of(const EventStructure& es, const Json& j, const std::string& ptr) {
  ConfigTable t;
  if (auto it = j.find("values"); it != j.end()) {
    std::string p = at(ptr, "values");
    array(*it, p);
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string q = at(p, i);
      const Json& row = object((*it)[i], q);
      Configuration x = config(es, required(row, "config", q), at(q, "config"), true);
      if (t.count(x)) schema(q, "duplicate entry for " + es.format(x));
      t[x] = rational(required(row, "value", q), at(q, "value"));
    }
  }
  if (auto it = j.find("default"); it != j.end()) {
    Rational d = rational(*it, at(ptr, "default"));
    for (const auto& x : configurations(es))
      if (!t.count(x)) t[x] = d;
  }
  return t;
}

Json table_out(const EventStructure& es, const ConfigTable& t) {
  Json rows = Json::array();
  for (const auto& [x, v] : t) rows.push_back(Json{{"config", config_json(es, x)}, {"value", rational_json(v)}});
  return Json{{"values", rows}};
}

Game game_of(const Json& j, const std::string& ptr) {
  object(j, ptr);
  only_keys(j, {"events", "causes", "forbidden", "polarity", "levels", "winning", "payoff"}, ptr);
  EventStructure es = es_of(j, ptr);
  std::map<std::string, Polarity> pol;
  std::string pp = at(ptr, "polarity");
  const Json& pj = object(required(j, "polarity", ptr), pp);
  for (auto it = pj.begin(); it != pj.end(); ++it) {
    std::string v = string(it.value(), at(pp, it.key()));
    if (v != "+" && v != "-") schema(at(pp, it.key()), "polarity must be \"+\" or \"-\"");
    if (!es.find(it.key())) schema(at(pp, it.key()), "unknown event '" + it.key() + "'");
    pol[it.key()] = v == "+" ? Polarity::kPlus : Polarity::kMinus;
  }
  for (const auto& n : es.names())
    if (!pol.count(n)) schema(pp, "no polarity for event '" + n + "'");
  Game g = Game::make(es, pol);
  if (auto it = j.find("levels"); it != j.end()) {
    std::string lp = at(ptr, "levels");
    object(*it, lp);
    std::vector<std::string> lv(static_cast<std::size_t>(es.size()));
    for (auto l = it->begin(); l != it->end(); ++l) {
      auto e = es.find(l.key());
      if (!e) schema(at(lp, l.key()), "unknown event '" + l.key() + "'");
      lv[static_cast<std::size_t>(*e)] = string(l.value(), at(lp, l.key()));
    }
    for (int e = 0; e < es.size(); ++e)
      if (lv[static_cast<std::size_t>(e)].empty()) schema(lp, "no level for event '" + es.name(e) + "'");
    g.level = lv;
  }
  if (auto it = j.find("winning"); it != j.end()) {
    std::string wp = at(ptr, "winning");
    array(*it, wp);
    ConfigSet w;
    for (std::size_t i = 0; i < it->size(); ++i) w.insert(config(es, (*it)[i], at(wp, i), true));
    g.winning = w;
  }
  if (auto it = j.find("payoff"); it != j.end()) {
    std::string xp = at(ptr, "payoff");
    object(*it, xp);
    only_keys(*it, {"values", "default"}, xp);
    g.payoff = table_of(es, *it, xp);
    Report r = validate_payoff(payoff_of(g));
    if (!r.empty()) invalid(xp, r);
  }
  return g;
}

Json game_out(const Game& g) {
  Json j = es_json(g.es);
  Json pol = Json::object();
  for (int e = 0; e < g.size(); ++e) pol[g.es.name(e)] = std::string(1, symbol(g.pol(e)));
  j["polarity"] = pol;
  if (g.level) {
    Json lv = Json::object();
    for (int e = 0; e < g.size(); ++e) lv[g.es.name(e)] = (*g.level)[static_cast<std::size_t>(e)];
    j["levels"] = lv;
  }
  if (g.winning) {
    Json w = Json::array();
    for (const auto& x : *g.winning) w.push_back(config_json(g.es, x));
    j["winning"] = w;
  }
  if (g.payoff) j["payoff"] = table_out(g.es, *g.payoff);
  return j;
}

Game game_expr(const std::string& text, const dsl::Env& env, const std::string& ptr) {
  try {
    return dsl::eval_type(dsl::parse_type(text), env);
  } catch (const SyntaxError& e) {
    schema(ptr, std::string("bad game expression: ") + e.what());
  } catch (const TypeError& e) {
    schema(ptr, e.what());
  }
}

std::vector<std::vector<Complex>> matrix_rows(const Json& j, const std::string& ptr, int dim) {
  array(j, ptr);
  if (static_cast<int>(j.size()) != dim) schema(ptr, "expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<Complex>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string rp = at(ptr, i);
    array(j[i], rp);
    if (static_cast<int>(j[i].size()) != dim) schema(rp, "expected " + std::to_string(dim) + " entries");
    std::vector<Complex> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const Json& c = j[i][k];
      std::string cp = at(rp, k);
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        schema(cp, "expected a [re, im] pair");
      row.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_out(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(row);
  }
  return rows;
}

bool same_matrix(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k)
      if (a(i, k) != b(i, k)) return false;
  return true;
}

bool same_strategy(const Strategy& a, const Strategy& b) {
  return a.inner == b.inner && a.ports == b.ports && a.target == b.target && a.sigma == b.sigma &&
         a.valuation == b.valuation;
}

}  // namespace

const Game& Document::game(const std::string& name) const {
  auto it = games.find(name);
  if (it == games.end()) throw InputError("no game named '" + name + "'");
  return it->second;
}

const Strategy& Document::strategy(const std::string& name) const {
  auto it = strategies.find(name);
  if (it == strategies.end()) throw InputError("no strategy named '" + name + "'");
  return it->second.value;
}

const ValuationDef& Document::valuation(const std::string& name) const {
  auto it = valuations.find(name);
  if (it == valuations.end()) throw InputError("no valuation named '" + name + "'");
  return it->second;
}

const MapDef& Document::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw InputError("no map named '" + name + "'");
  return it->second;
}

const QuantumDef& Document::qes(const std::string& name) const {
  auto it = quantum.find(name);
  if (it == quantum.end()) throw InputError("no quantum structure named '" + name + "'");
  return it->second;
}

const SymmetryDef& Document::symmetry(const std::string& name) const {
  auto it = symmetries.find(name);
  if (it == symmetries.end()) throw InputError("no symmetry family named '" + name + "'");
  return it->second;
}

dsl::Env Document::env() const {
  dsl::Env env;
  env.games = games;
  for (const auto& [name, m] : maps) env.maps[name] = dsl::NamedMap{m.source, m.target, m.map};
  return env;
}

bool operator==(const Document& a, const Document& b) {
  if (a.games != b.games) return false;
  if (a.levels.has_value() != b.levels.has_value()) return false;
  if (a.levels && (a.levels->levels != b.levels->levels || a.levels->leq != b.levels->leq)) return false;
  if (a.strategies.size() != b.strategies.size()) return false;
  for (const auto& [name, s] : a.strategies) {
    auto it = b.strategies.find(name);
    if (it == b.strategies.end()) return false;
    const auto& t = it->second;
    if (s.game != t.game || s.ports != t.ports || s.valuation != t.valuation || !same_strategy(s.value, t.value))
      return false;
  }
  if (a.valuations.size() != b.valuations.size()) return false;
  for (const auto& [name, v] : a.valuations) {
    auto it = b.valuations.find(name);
    if (it == b.valuations.end() || it->second.strategy != v.strategy || it->second.table != v.table) return false;
  }
  if (a.maps.size() != b.maps.size()) return false;
  for (const auto& [name, m] : a.maps) {
    auto it = b.maps.find(name);
    if (it == b.maps.end()) return false;
    const auto& n = it->second;
    if (m.source != n.source || m.target != n.target || !(m.map.source == n.map.source) ||
        !(m.map.target == n.map.target) || m.map.image != n.map.image)
      return false;
  }
  if (a.quantum.size() != b.quantum.size()) return false;
  for (const auto& [name, q] : a.quantum) {
    auto it = b.quantum.find(name);
    if (it == b.quantum.end()) return false;
    const auto& r = it->second;
    if (q.game != r.game || !(q.value.es == r.value.es) || q.value.dim != r.value.dim ||
        !same_matrix(q.value.rho, r.value.rho) || q.value.assign.size() != r.value.assign.size())
      return false;
    for (std::size_t e = 0; e < q.value.assign.size(); ++e)
      if (q.value.assign[e].kind != r.value.assign[e].kind || !same_matrix(q.value.assign[e].m, r.value.assign[e].m))
        return false;
  }
  if (a.symmetries.size() != b.symmetries.size()) return false;
  for (const auto& [name, s] : a.symmetries) {
    auto it = b.symmetries.find(name);
    if (it == b.symmetries.end()) return false;
    const auto& t = it->second;
    if (s.game != t.game || s.strategy != t.strategy || !(s.family.subject == t.family.subject) ||
        s.family.bijections != t.family.bijections)
      return false;
  }
  return true;
}

Document parse_document(const Json& j) {
  Document d;
  object(j, "");
  only_keys(j, {"schema", "games", "levels", "strategies", "valuations", "maps", "quantum", "symmetries"}, "");
  if (auto it = j.find("schema"); it != j.end() && *it != 1) schema("/schema", "unsupported schema version");

  if (auto it = j.find("games"); it != j.end()) {
    object(*it, "/games");
    for (auto g = it->begin(); g != it->end(); ++g) d.games[g.key()] = game_of(g.value(), at("/games", g.key()));
  }

  if (auto it = j.find("levels"); it != j.end()) {
    const std::string lp = "/levels";
    object(*it, lp);
    auto names = strings(required(*it, "levels", lp), at(lp, "levels"));
    std::vector<std::pair<std::string, std::string>> gens;
    if (auto l = it->find("leq"); l != it->end()) {
      std::string qp = at(lp, "leq");
      array(*l, qp);
      for (std::size_t i = 0; i < l->size(); ++i) {
        auto pr = strings((*l)[i], at(qp, i));
        if (pr.size() != 2) schema(at(qp, i), "expected a pair of levels");
        gens.emplace_back(pr[0], pr[1]);
      }
    }
    LevelOrder order;
    try {
      order = LevelOrder::closure(names, gens);
    } catch (const InputError& e) {
      schema(lp, e.what());
    }
    Report r = validate_level_order(order);
    if (!r.empty()) invalid(lp, r);
    d.levels = order;
  }

  if (auto it = j.find("maps"); it != j.end()) {
    object(*it, "/maps");
    for (auto m = it->begin(); m != it->end(); ++m) {
      std::string mp = at("/maps", m.key());
      const Json& mj = object(m.value(), mp);
      only_keys(mj, {"source", "target", "image"}, mp);
      MapDef def;
      def.source = string(required(mj, "source", mp), at(mp, "source"));
      def.target = string(required(mj, "target", mp), at(mp, "target"));
      if (!d.games.count(def.source)) schema(at(mp, "source"), "no game named '" + def.source + "'");
      if (!d.games.count(def.target)) schema(at(mp, "target"), "no game named '" + def.target + "'");
      const auto& src = d.games.at(def.source).es;
      const auto& tgt = d.games.at(def.target).es;
      def.map = EsMap{src, tgt, std::vector<int>(static_cast<std::size_t>(src.size()), -1)};
      std::string ip = at(mp, "image");
      const Json& img = object(required(mj, "image", mp), ip);
      for (auto e = img.begin(); e != img.end(); ++e) {
        auto s = src.find(e.key());
        if (!s) schema(at(ip, e.key()), "unknown source event '" + e.key() + "'");
        if (e.value().is_null()) continue;
        auto t = tgt.find(string(e.value(), at(ip, e.key())));
        if (!t) schema(at(ip, e.key()), "unknown target event");
        def.map.image[static_cast<std::size_t>(*s)] = *t;
      }
      MapCheck mc = validate_map(def.map);
      if (!mc.violations.empty()) invalid(mp, mc.violations);
      d.maps[m.key()] = std::move(def);
    }
  }

  dsl::Env env = d.env();

  if (auto it = j.find("strategies"); it != j.end()) {
    object(*it, "/strategies");
    for (auto s = it->begin(); s != it->end(); ++s) {
      std::string sp = at("/strategies", s.key());
      const Json& sj = object(s.value(), sp);
      only_keys(sj, {"game", "ports", "events", "causes", "forbidden", "map", "valuation"}, sp);
      StrategyDef def;
      std::vector<Port> ports;
      if (auto g = sj.find("game"); g != sj.end()) {
        if (sj.contains("ports")) schema(sp, "give either 'game' or 'ports', not both");
        def.game = string(*g, at(sp, "game"));
        ports.push_back(Port{"", game_expr(*def.game, env, at(sp, "game")), false});
      } else {
        std::string pp = at(sp, "ports");
        const Json& pj = array(required(sj, "ports", sp), pp);
        for (std::size_t i = 0; i < pj.size(); ++i) {
          std::string q = at(pp, i);
          object(pj[i], q);
          PortRef ref;
          ref.name = string(required(pj[i], "name", q), at(q, "name"));
          ref.game = string(required(pj[i], "game", q), at(q, "game"));
          if (auto in = pj[i].find("input"); in != pj[i].end()) {
            if (!in->is_boolean()) schema(at(q, "input"), "expected a boolean");
            ref.input = in->get<bool>();
          }
          ports.push_back(Port{ref.name, game_expr(ref.game, env, at(q, "game")), ref.input});
          def.ports.push_back(ref);
        }
      }
      EventStructure inner = es_of(sj, sp);
      std::map<std::string, std::string> sigma;
      std::string mp = at(sp, "map");
      const Json& mj = object(required(sj, "map", sp), mp);
      for (auto e = mj.begin(); e != mj.end(); ++e) sigma[e.key()] = string(e.value(), at(mp, e.key()));
      try {
        def.value = make_strategy(inner, ports, sigma);
      } catch (const InputError& e) {
        throw DocumentError("validation", sp, e.what());
      }
      Report r = validate_strategy(def.value);
      if (!r.empty()) invalid(sp, r);
      if (auto v = sj.find("valuation"); v != sj.end()) def.valuation = string(*v, at(sp, "valuation"));
      d.strategies[s.key()] = std::move(def);
    }
  }

  if (auto it = j.find("valuations"); it != j.end()) {
    object(*it, "/valuations");
    for (auto v = it->begin(); v != it->end(); ++v) {
      std::string vp = at("/valuations", v.key());
      const Json& vj = object(v.value(), vp);
      only_keys(vj, {"strategy", "values", "default", "fill", "weights"}, vp);
      ValuationDef def;
      def.strategy = string(required(vj, "strategy", vp), at(vp, "strategy"));
      auto s = d.strategies.find(def.strategy);
      if (s == d.strategies.end()) schema(at(vp, "strategy"), "no strategy named '" + def.strategy + "'");
      const auto& es = s->second.value.inner.es;
      if (auto f = vj.find("fill"); f != vj.end()) {
        if (*f != "product") schema(at(vp, "fill"), "the only fill rule is \"product\"");
        if (vj.contains("values") || vj.contains("default")) schema(vp, "'fill' excludes 'values' and 'default'");
        std::vector<Rational> w(static_cast<std::size_t>(es.size()), Rational(1));
        if (auto ws = vj.find("weights"); ws != vj.end()) {
          std::string wp = at(vp, "weights");
          object(*ws, wp);
          for (auto e = ws->begin(); e != ws->end(); ++e) {
            auto idx = es.find(e.key());
            if (!idx) schema(at(wp, e.key()), "unknown event '" + e.key() + "'");
            w[static_cast<std::size_t>(*idx)] = rational(e.value(), at(wp, e.key()));
          }
        }
        for (const auto& x : configurations(es)) {
          Rational p = 1;
          x.for_each([&](int e) { p *= w[static_cast<std::size_t>(e)]; });
          def.table[x] = p;
        }
      } else {
        if (vj.contains("weights")) schema(at(vp, "weights"), "'weights' needs \"fill\": \"product\"");
        def.table = table_of(es, vj, vp);
      }
      d.valuations[v.key()] = std::move(def);
    }
  }
  for (auto& [name, s] : d.strategies) {
    if (!s.valuation) continue;
    std::string vp = at(at("/strategies", name), "valuation");
    auto v = d.valuations.find(*s.valuation);
    if (v == d.valuations.end()) schema(vp, "no valuation named '" + *s.valuation + "'");
    if (v->second.strategy != name) schema(vp, "valuation '" + *s.valuation + "' belongs to another strategy");
    s.value.valuation = v->second.table;
  }

  if (auto it = j.find("quantum"); it != j.end()) {
    object(*it, "/quantum");
    for (auto q = it->begin(); q != it->end(); ++q) {
      std::string qp = at("/quantum", q.key());
      const Json& qj = object(q.value(), qp);
      only_keys(qj, {"game", "events", "causes", "forbidden", "dim", "rho", "operators"}, qp);
      QuantumDef def;
      if (auto g = qj.find("game"); g != qj.end()) {
        def.game = string(*g, at(qp, "game"));
        if (!d.games.count(*def.game)) schema(at(qp, "game"), "no game named '" + *def.game + "'");
        def.value.es = d.games.at(*def.game).es;
      } else {
        def.value.es = es_of(qj, qp);
      }
      const Json& dj = required(qj, "dim", qp);
      if (!dj.is_number_integer() || dj.get<int>() < 1 || dj.get<int>() > Matrix::kMaxDim)
        schema(at(qp, "dim"), "dimension must be an integer in [1, " + std::to_string(Matrix::kMaxDim) + "]");
      def.value.dim = dj.get<int>();
      def.value.rho = Matrix::from_rows(matrix_rows(required(qj, "rho", qp), at(qp, "rho"), def.value.dim));
      std::string op = at(qp, "operators");
      const Json& oj = object(required(qj, "operators", qp), op);
      def.value.assign.resize(static_cast<std::size_t>(def.value.es.size()));
      std::vector<bool> seen(def.value.assign.size(), false);
      for (auto o = oj.begin(); o != oj.end(); ++o) {
        std::string ep = at(op, o.key());
        auto e = def.value.es.find(o.key());
        if (!e) schema(ep, "unknown event '" + o.key() + "'");
        object(o.value(), ep);
        std::string kind = string(required(o.value(), "kind", ep), at(ep, "kind"));
        if (kind != "unitary" && kind != "projection") schema(at(ep, "kind"), "kind must be unitary or projection");
        Operator opr;
        opr.kind = kind == "unitary" ? OpKind::kUnitary : OpKind::kProjection;
        opr.m = Matrix::from_rows(matrix_rows(required(o.value(), "matrix", ep), at(ep, "matrix"), def.value.dim));
        def.value.assign[static_cast<std::size_t>(*e)] = opr;
        seen[static_cast<std::size_t>(*e)] = true;
      }
      for (std::size_t e = 0; e < seen.size(); ++e)
        if (!seen[e]) schema(op, "no operator for event '" + def.value.es.name(static_cast<int>(e)) + "'");
      d.quantum[q.key()] = std::move(def);
    }
  }

  if (auto it = j.find("symmetries"); it != j.end()) {
    object(*it, "/symmetries");
    for (auto s = it->begin(); s != it->end(); ++s) {
      std::string sp = at("/symmetries", s.key());
      const Json& sj = object(s.value(), sp);
      only_keys(sj, {"game", "strategy", "bijections"}, sp);
      SymmetryDef def;
      if (sj.contains("game") == sj.contains("strategy")) schema(sp, "give exactly one of 'game' and 'strategy'");
      if (sj.contains("game")) {
        def.game = string(sj["game"], at(sp, "game"));
        if (!d.games.count(def.game)) schema(at(sp, "game"), "no game named '" + def.game + "'");
        def.family.subject = d.games.at(def.game).es;
      } else {
        def.strategy = string(sj["strategy"], at(sp, "strategy"));
        if (!d.strategies.count(def.strategy))
          schema(at(sp, "strategy"), "no strategy named '" + def.strategy + "'");
        def.family.subject = d.strategies.at(def.strategy).value.inner.es;
      }
      const auto& es = def.family.subject;
      std::string bp = at(sp, "bijections");
      const Json& bj = array(required(sj, "bijections", sp), bp);
      for (std::size_t i = 0; i < bj.size(); ++i) {
        std::string ip = at(bp, i);
        array(bj[i], ip);
        Bijection b;
        for (std::size_t k = 0; k < bj[i].size(); ++k) {
          auto pr = strings(bj[i][k], at(ip, k));
          if (pr.size() != 2) schema(at(ip, k), "expected a pair of events");
          auto l = es.find(pr[0]), r = es.find(pr[1]);
          if (!l || !r) schema(at(ip, k), "unknown event");
          b.emplace_back(*l, *r);
        }
        std::sort(b.begin(), b.end());
        def.family.bijections.push_back(std::move(b));
      }
      d.symmetries[s.key()] = std::move(def);
    }
  }
  return d;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("io", "", "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DocumentError("schema", "", std::string("malformed JSON: ") + e.what());
  }
  return parse_document(j);
}

Json to_json(const Document& d) {
  Json j;
  j["schema"] = 1;
  if (!d.games.empty()) {
    Json g = Json::object();
    for (const auto& [name, game] : d.games) g[name] = game_out(game);
    j["games"] = g;
  }
  if (d.levels) {
    Json leq = Json::array();
    for (const auto& [a, b] : d.levels->leq)
      if (a != b) leq.push_back(Json::array({a, b}));
    j["levels"] = Json{{"levels", d.levels->levels}, {"leq", leq}};
  }
  if (!d.maps.empty()) {
    Json m = Json::object();
    for (const auto& [name, def] : d.maps) {
      Json img = Json::object();
      for (int e = 0; e < def.map.source.size(); ++e)
        if (def.map.defined(e)) img[def.map.source.name(e)] = def.map.target.name(def.map(e));
      m[name] = Json{{"source", def.source}, {"target", def.target}, {"image", img}};
    }
    j["maps"] = m;
  }
  if (!d.strategies.empty()) {
    Json s = Json::object();
    for (const auto& [name, def] : d.strategies) {
      Json sj;
      if (def.game) {
        sj["game"] = *def.game;
      } else {
        Json ports = Json::array();
        for (const auto& p : def.ports) ports.push_back(Json{{"name", p.name}, {"game", p.game}, {"input", p.input}});
        sj["ports"] = ports;
      }
      Json es = es_json(def.value.inner.es);
      for (auto it = es.begin(); it != es.end(); ++it) sj[it.key()] = it.value();
      Json map = Json::object();
      for (int e = 0; e < def.value.inner.size(); ++e)
        map[def.value.inner.es.name(e)] = def.value.target.es.name(def.value.sigma[static_cast<std::size_t>(e)]);
      sj["map"] = map;
      if (def.valuation) sj["valuation"] = *def.valuation;
      s[name] = sj;
    }
    j["strategies"] = s;
  }
  if (!d.valuations.empty()) {
    Json v = Json::object();
    for (const auto& [name, def] : d.valuations) {
      Json vj = table_out(d.strategy(def.strategy).inner.es, def.table);
      vj["strategy"] = def.strategy;
      v[name] = vj;
    }
    j["valuations"] = v;
  }
  if (!d.quantum.empty()) {
    Json q = Json::object();
    for (const auto& [name, def] : d.quantum) {
      Json qj;
      if (def.game) {
        qj["game"] = *def.game;
      } else {
        qj = es_json(def.value.es);
      }
      qj["dim"] = def.value.dim;
      qj["rho"] = matrix_out(def.value.rho);
      Json ops = Json::object();
      for (int e = 0; e < def.value.es.size(); ++e) {
        const auto& o = def.value.assign[static_cast<std::size_t>(e)];
        ops[def.value.es.name(e)] =
            Json{{"kind", o.kind == OpKind::kUnitary ? "unitary" : "projection"}, {"matrix", matrix_out(o.m)}};
      }
      qj["operators"] = ops;
      q[name] = qj;
    }
    j["quantum"] = q;
  }
  if (!d.symmetries.empty()) {
    Json s = Json::object();
    for (const auto& [name, def] : d.symmetries) {
      Json sj;
      if (!def.game.empty())
        sj["game"] = def.game;
      else
        sj["strategy"] = def.strategy;
      Json bs = Json::array();
      const auto& es = def.family.subject;
      for (const auto& b : def.family.bijections) {
        Json bj = Json::array();
        for (const auto& [l, r] : b) bj.push_back(Json::array({es.name(l), es.name(r)}));
        bs.push_back(bj);
      }
      sj["bijections"] = bs;
      s[name] = sj;
    }
    j["symmetries"] = s;
  }
  return j;
}

void save_document(const Document& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DocumentError("io", "", "cannot write '" + path + "'");
  out << to_json(d).dump(2) << "\n";
}

}  // namespace congames
