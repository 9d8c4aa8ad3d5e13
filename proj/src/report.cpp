#include "congames/report.hpp"

#include <sstream>

namespace congames {

Json rational_json(const Rational& r) {
  if (denominator(r) == 1 && abs(numerator(r)) < 1000000000) return numerator(r).convert_to<long long>();
  return to_string(r);
}

Json config_json(const EventStructure& es, const Configuration& x) { return es.names_of(x); }

Json report_json(const Report& r) {
  Json out = Json::array();
  for (const auto& v : r) out.push_back(Json{{"rule", v.rule}, {"detail", v.detail}, {"witness", v.witness}});
  return out;
}

Json witness_json(const Witness& w) {
  Json j{{"config", w.config}, {"events", w.events}};
  if (w.events.size() == 2) {
    j["s"] = w.events[0];
    j["s'"] = w.events[1];
  }
  j["detail"] = w.detail;
  return j;
}

Json check_json(const CheckResult& c) {
  Json j{{"holds", c.holds}};
  if (c.witness) j["witness"] = witness_json(*c.witness);
  return j;
}

Json es_json(const EventStructure& es) {
  EsSpec s = es.to_spec();
  Json causes = Json::object();
  for (const auto& [e, cs] : s.causes)
    if (!cs.empty()) causes[e] = cs;
  return Json{{"events", s.events}, {"causes", causes}, {"forbidden", s.forbidden}};
}

Json game_json(const Game& g) {
  Json j = es_json(g.es);
  Json pol = Json::object();
  for (int e = 0; e < g.size(); ++e) pol[g.es.name(e)] = std::string(1, symbol(g.pol(e)));
  j["polarity"] = pol;
  return j;
}

Json strategy_json(const Strategy& s) {
  Json ports = Json::array();
  for (const auto& p : s.ports) ports.push_back(Json{{"name", p.name}, {"input", p.input}, {"game", game_json(p.game)}});
  Json j = es_json(s.inner.es);
  Json pol = Json::object();
  for (int e = 0; e < s.inner.size(); ++e) pol[s.inner.es.name(e)] = std::string(1, symbol(s.inner.pol(e)));
  j["polarity"] = pol;
  Json map = Json::object();
  for (int e = 0; e < s.inner.size(); ++e)
    map[s.inner.es.name(e)] = s.target.es.name(s.sigma[static_cast<std::size_t>(e)]);
  j["map"] = map;
  j["ports"] = ports;
  if (!s.warnings.empty()) j["warnings"] = s.warnings;
  return j;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Side of every event when all names have a "side:" prefix, else empty.
std::vector<std::string> sides(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    auto c = l.find(':');
    if (c == std::string::npos || c == 0) return {};
    out.push_back(l.substr(0, c));
  }
  return out;
}

std::string render(const std::string& name, const EventStructure& es, const Game& pol_of,
                   const std::vector<std::string>& side_labels, const std::function<bool(int, int)>& dashed) {
  std::ostringstream o;
  o << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  auto node = [&](int e) {
    return quote(es.name(e)) + " [label=" + quote(es.name(e) + ":" + symbol(pol_of.pol(e))) + "];\n";
  };
  auto side = sides(side_labels);
  if (side.empty()) {
    for (int e = 0; e < es.size(); ++e) o << "  " << node(e);
  } else {
    std::vector<std::string> order;
    for (const auto& s : side)
      if (std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);
    for (std::size_t k = 0; k < order.size(); ++k) {
      o << "  subgraph " << quote("cluster_" + order[k]) << " {\n    label=" << quote(order[k])
        << ";\n    style=solid;\n";
      for (int e = 0; e < es.size(); ++e)
        if (side[static_cast<std::size_t>(e)] == order[k]) o << "    " << node(e);
      o << "  }\n";
    }
  }
  for (const auto& [c, e] : immediate_edges(es)) {
    o << "  " << quote(es.name(c)) << " -> " << quote(es.name(e));
    if (dashed(c, e)) o << " [style=dashed]";
    o << ";\n";
  }
  for (const auto& f : es.forbidden()) {
    if (f.size() != 2) continue;
    auto v = f.indices();
    o << "  " << quote(es.name(v[0])) << " -> " << quote(es.name(v[1])) << " [style=dashed, dir=none];\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace

std::string game_dot(const Game& g, const std::string& name) {
  return render(name, g.es, g, g.es.names(), [](int, int) { return false; });
}

std::string strategy_dot(const Strategy& s, const std::string& name) {
  std::vector<std::string> images;
  for (int e = 0; e < s.inner.size(); ++e) images.push_back(s.target.es.name(s.sigma[static_cast<std::size_t>(e)]));
  return render(name, s.inner.es, s.inner, images, [&](int c, int e) {
    return !s.target.es.leq(s.sigma[static_cast<std::size_t>(c)], s.sigma[static_cast<std::size_t>(e)]);
  });
}

}  // namespace congames
