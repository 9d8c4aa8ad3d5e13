#include "congames/strategy.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace congames {

namespace {

Game contribution(const Port& p) { return p.input ? dual(p.game) : p.game; }

bool same_game(const Game& a, const Game& b) { return a.es == b.es && a.polarity == b.polarity; }

struct Loc {
  int port = -1;
  int e = -1;
};

// For each target event, the port and port-game event it comes from.
std::vector<Loc> locate(const std::vector<Port>& ports, const Game& target) {
  std::vector<Loc> out(static_cast<std::size_t>(target.size()));
  for (std::size_t i = 0; i < ports.size(); ++i)
    for (int e = 0; e < ports[i].game.size(); ++e)
      out[static_cast<std::size_t>(target.es.index(port_event_name(ports[i], e)))] = {static_cast<int>(i), e};
  return out;
}

Witness witness(const EventStructure& es, const Configuration& x, std::vector<std::string> events,
                std::string detail) {
  return {es.names_of(x), std::move(events), std::move(detail)};
}

// Strategy over `ports` whose inner structure is `es` (arbitrary names) with
// the given sigma. Events are renamed after their images, with "#k" suffixes
// where several events share one.
Strategy assemble(const EventStructure& es, const std::vector<int>& sigma, std::vector<Port> ports) {
  Game target = ports_game(ports);
  std::map<int, std::vector<int>> fibre;
  for (int e = 0; e < es.size(); ++e) fibre[sigma[static_cast<std::size_t>(e)]].push_back(e);
  std::vector<std::string> names(static_cast<std::size_t>(es.size()));
  for (const auto& [t, events] : fibre)
    for (std::size_t k = 0; k < events.size(); ++k)
      names[static_cast<std::size_t>(events[k])] =
          events.size() == 1 ? target.es.name(t) : target.es.name(t) + "#" + std::to_string(k + 1);
  EventStructure renamed = rename(es, names);
  Strategy s;
  s.ports = std::move(ports);
  s.target = std::move(target);
  s.sigma.resize(static_cast<std::size_t>(es.size()));
  for (int e = 0; e < es.size(); ++e)
    s.sigma[static_cast<std::size_t>(renamed.index(names[static_cast<std::size_t>(e)]))] =
        sigma[static_cast<std::size_t>(e)];
  s.inner.es = renamed;
  for (int t : s.sigma) s.inner.polarity.push_back(s.target.pol(t));
  return s;
}

// Strategy with names kept as they are.
Strategy assemble_named(const EventStructure& es, const std::vector<int>& sigma, std::vector<Port> ports) {
  Strategy s;
  s.ports = std::move(ports);
  s.target = ports_game(s.ports);
  s.inner.es = es;
  s.sigma = sigma;
  for (int t : s.sigma) s.inner.polarity.push_back(s.target.pol(t));
  return s;
}

}  // namespace

std::string port_event_name(const Port& port, int e) {
  return port.name.empty() ? port.game.es.name(e) : port.name + ":" + port.game.es.name(e);
}

Game ports_game(const std::vector<Port>& ports) {
  if (ports.size() == 1 && ports[0].name.empty()) return contribution(ports[0]);
  std::set<std::string> seen;
  std::vector<std::pair<std::string, Game>> parts;
  for (const auto& p : ports) {
    if (p.name.empty()) throw InputError("port names must be non-empty when there are several ports");
    if (!seen.insert(p.name).second) throw InputError("duplicate port '" + p.name + "'");
    parts.emplace_back(p.name, contribution(p));
  }
  return par_tagged(parts);
}

std::vector<Port> Strategy::inputs() const {
  std::vector<Port> out;
  for (const auto& p : ports)
    if (p.input) out.push_back(p);
  return out;
}

std::vector<Port> Strategy::outputs() const {
  std::vector<Port> out;
  for (const auto& p : ports)
    if (!p.input) out.push_back(p);
  return out;
}

Strategy make_strategy(EventStructure inner, std::vector<Port> ports,
                       const std::map<std::string, std::string>& sigma) {
  Game target = ports_game(ports);
  std::vector<int> table(static_cast<std::size_t>(inner.size()), -1);
  for (const auto& [from, to] : sigma) {
    auto s = inner.find(from);
    if (!s) throw InputError("map mentions unknown strategy event '" + from + "'");
    auto t = target.es.find(to);
    if (!t) throw InputError("map sends '" + from + "' to unknown game event '" + to + "'");
    table[static_cast<std::size_t>(*s)] = *t;
  }
  for (int e = 0; e < inner.size(); ++e)
    if (table[static_cast<std::size_t>(e)] < 0) throw InputError("map is not total: '" + inner.name(e) + "' unmapped");
  Strategy s = assemble_named(inner, table, std::move(ports));
  Report r = validate_strategy(s);
  if (!r.empty()) throw InputError("invalid strategy map: " + r.front().rule + ": " + r.front().detail);
  return s;
}

Strategy strategy_in(const Game& g, EventStructure inner, const std::map<std::string, std::string>& sigma) {
  return make_strategy(std::move(inner), {Port{"", g, false}}, sigma);
}

Report validate_strategy(const Strategy& s) {
  Report r;
  if (static_cast<int>(s.sigma.size()) != s.inner.size()) {
    r.push_back({"shape", "sigma does not cover the strategy events", {}});
    return r;
  }
  for (int e = 0; e < s.inner.size(); ++e) {
    int t = s.sigma[static_cast<std::size_t>(e)];
    if (t < 0 || t >= s.target.size()) {
      r.push_back({"total", "event is not mapped into the game", {s.inner.es.name(e)}});
      return r;
    }
    if (static_cast<int>(s.inner.polarity.size()) == s.inner.size() && s.inner.pol(e) != s.target.pol(t))
      r.push_back({"polarity", "event and its image differ in polarity", {s.inner.es.name(e), s.target.es.name(t)}});
  }
  MapCheck m = validate_map(s.sigma_map());
  r.insert(r.end(), m.violations.begin(), m.violations.end());
  return r;
}

Strategy with_ports(const Strategy& s, std::vector<Port> ports, std::vector<int> source) {
  if (source.empty()) {
    source.resize(ports.size());
    std::iota(source.begin(), source.end(), 0);
  }
  std::vector<int> sorted = source;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(s.ports.size());
  std::iota(expect.begin(), expect.end(), 0);
  if (ports.size() != s.ports.size() || sorted != expect)
    throw InputError("rewiring must use every port exactly once");
  for (std::size_t i = 0; i < ports.size(); ++i)
    if (!same_game(contribution(ports[i]), contribution(s.ports[static_cast<std::size_t>(source[i])])))
      throw InputError("rewired port '" + ports[i].name + "' does not match the game of port '" +
                       s.ports[static_cast<std::size_t>(source[i])].name + "'");
  Game target = ports_game(ports);
  std::vector<int> remap(static_cast<std::size_t>(s.target.size()), -1);
  for (std::size_t i = 0; i < ports.size(); ++i) {
    const Port& old = s.ports[static_cast<std::size_t>(source[i])];
    for (int e = 0; e < old.game.size(); ++e)
      remap[static_cast<std::size_t>(s.target.es.index(port_event_name(old, e)))] =
          target.es.index(port_event_name(ports[i], e));
  }
  Strategy r = s;
  r.ports = std::move(ports);
  r.target = std::move(target);
  for (auto& t : r.sigma) t = remap[static_cast<std::size_t>(t)];
  return r;
}

Strategy strategy_from_family(const std::vector<Configuration>& family, std::vector<Port> ports) {
  Game t = ports_game(ports);
  PrimeStructure ps = prime_structure(family, [&](const EventSet& members, int top) {
    return t.es.name(top) + "@" + t.es.format(members);
  });
  Report r = check_prime_structure(ps, family);
  if (!r.empty()) throw InternalError("copy-cat family is not stable: " + r.front().detail);
  return assemble(ps.es, ps.top, std::move(ports));
}

Strategy copycat(const Game& a) {
  std::vector<Port> ports{{"L", a, true}, {"R", a, false}};
  Game t = ports_game(ports);
  auto edges = immediate_edges(t.es);
  for (int e = 0; e < a.size(); ++e) {
    int l = t.es.index("L:" + a.es.name(e));
    int r = t.es.index("R:" + a.es.name(e));
    if (t.pol(r) == Polarity::kPlus)
      edges.emplace_back(l, r);
    else
      edges.emplace_back(r, l);
  }
  EventStructure es;
  try {
    es = EventStructure::build(t.es.names(), edges, forbidden_lists(t.es));
  } catch (const InputError&) {
    throw InternalError("copy-cat order not antisymmetric");
  }
  std::vector<int> sigma(static_cast<std::size_t>(es.size()));
  std::iota(sigma.begin(), sigma.end(), 0);
  return assemble_named(es, sigma, std::move(ports));
}

CheckResult check_receptive(const Strategy& s) {
  const auto& S = s.inner.es;
  const auto& T = s.target;
  for (const auto& x : configurations(S)) {
    EventSet sx = s.sigma_map().apply(x);
    EventSet ext = extensions(S, x);
    CheckResult bad;
    extensions(T.es, sx).for_each([&](int a) {
      if (!bad.holds || T.pol(a) != Polarity::kMinus) return;
      int count = 0;
      ext.for_each([&](int e) { count += s.sigma[static_cast<std::size_t>(e)] == a; });
      if (count != 1) {
        bad.holds = false;
        bad.witness = witness(S, x, {T.es.name(a)},
                              count == 0 ? "opponent move has no response" : "opponent move answered several times");
      }
    });
    if (!bad.holds) return bad;
  }
  return {};
}

CheckResult check_innocent(const Strategy& s) {
  const auto& S = s.inner;
  for (int e = 0; e < S.size(); ++e)
    for (int c : S.es.immediate_causes(e)) {
      if (S.pol(c) == Polarity::kMinus && S.pol(e) == Polarity::kPlus) continue;
      if (!s.target.es.leq(s.sigma[static_cast<std::size_t>(c)], s.sigma[static_cast<std::size_t>(e)]))
        return {false, witness(S.es, {}, {S.es.name(c), S.es.name(e)}, "causal link not present in the game")};
    }
  return {};
}

CheckResult check_deterministic(const Strategy& s) {
  const auto& S = s.inner;
  for (const auto& x : configurations(S.es)) {
    auto ext = extensions(S.es, x).indices();
    for (std::size_t i = 0; i < ext.size(); ++i)
      for (std::size_t j = i + 1; j < ext.size(); ++j) {
        int e = ext[i], f = ext[j];
        if (S.pol(e) != Polarity::kPlus && S.pol(f) != Polarity::kPlus) continue;
        if (S.es.is_consistent(x.with(e).with(f))) continue;
        if (S.pol(e) != Polarity::kPlus) std::swap(e, f);
        return {false, witness(S.es, x, {S.es.name(e), S.es.name(f)}, "player move conflicts with a co-enabled move")};
      }
  }
  return {};
}

StrategyReport check_strategy(const Strategy& s) {
  return {check_receptive(s), check_innocent(s), check_deterministic(s)};
}

Report check_levels(const LevelOrder& order, const Strategy& s) {
  Report r = check_levels(order, s.target);
  if (!s.target.level) return r;
  const auto& lv = *s.target.level;
  const auto& S = s.inner.es;
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b) {
      if (!S.less(a, b)) continue;
      const auto& la = lv[static_cast<std::size_t>(s.sigma[static_cast<std::size_t>(a)])];
      const auto& lb = lv[static_cast<std::size_t>(s.sigma[static_cast<std::size_t>(b)])];
      if (!order.le(la, lb))
        r.push_back({"strategy level", S.name(a) + " <= " + S.name(b) + " but " + la + " is not below " + lb,
                     {S.name(a), S.name(b)}});
    }
  return r;
}

Composition compose_full(const Strategy& sigma, const Strategy& tau) {
  auto sout = sigma.outputs();
  auto tin = tau.inputs();
  if (sout.size() != tin.size())
    throw InputError("compose: " + std::to_string(sout.size()) + " outputs against " + std::to_string(tin.size()) +
                     " inputs");
  for (std::size_t i = 0; i < sout.size(); ++i)
    if (!same_game(sout[i].game, tin[i].game))
      throw InputError("compose: game of output '" + sout[i].name + "' differs from input '" + tin[i].name + "'");

  // Region tag of each port: a<k> for σ inputs, b<i> shared, c<j> τ outputs.
  auto tags = [](const std::vector<Port>& ports, char in, char out) {
    std::vector<std::string> t;
    int ni = 0, no = 0;
    for (const auto& p : ports) t.push_back(p.input ? in + std::to_string(ni++) : out + std::to_string(no++));
    return t;
  };
  auto stag = tags(sigma.ports, 'a', 'b');
  auto ttag = tags(tau.ports, 'b', 'c');

  std::vector<std::pair<std::string, EventStructure>> regions, a_parts, c_parts;
  for (std::size_t i = 0; i < sigma.ports.size(); ++i)
    if (sigma.ports[i].input) {
      regions.emplace_back(stag[i], sigma.ports[i].game.es);
      a_parts.emplace_back(stag[i], sigma.ports[i].game.es);
    }
  for (std::size_t i = 0; i < sigma.ports.size(); ++i)
    if (!sigma.ports[i].input) regions.emplace_back(stag[i], sigma.ports[i].game.es);
  for (std::size_t i = 0; i < tau.ports.size(); ++i)
    if (!tau.ports[i].input) {
      regions.emplace_back(ttag[i], tau.ports[i].game.es);
      c_parts.emplace_back(ttag[i], tau.ports[i].game.es);
    }
  EventStructure X = es_par(regions);
  EventStructure A = es_par(a_parts), C = es_par(c_parts);
  EventStructure SC = es_par({{"S", sigma.inner.es}, {"C", C}});
  EventStructure AT = es_par({{"A", A}, {"T", tau.inner.es}});

  auto sloc = locate(sigma.ports, sigma.target);
  auto tloc = locate(tau.ports, tau.target);
  EsMap f{SC, X, std::vector<int>(static_cast<std::size_t>(SC.size()))};
  for (int s = 0; s < sigma.inner.size(); ++s) {
    Loc l = sloc[static_cast<std::size_t>(sigma.sigma[static_cast<std::size_t>(s)])];
    f.image[static_cast<std::size_t>(SC.index("S:" + sigma.inner.es.name(s)))] =
        X.index(stag[static_cast<std::size_t>(l.port)] + ":" + sigma.ports[static_cast<std::size_t>(l.port)].game.es.name(l.e));
  }
  for (int c = 0; c < C.size(); ++c) f.image[static_cast<std::size_t>(SC.index("C:" + C.name(c)))] = X.index(C.name(c));
  EsMap g{AT, X, std::vector<int>(static_cast<std::size_t>(AT.size()))};
  for (int t = 0; t < tau.inner.size(); ++t) {
    Loc l = tloc[static_cast<std::size_t>(tau.sigma[static_cast<std::size_t>(t)])];
    g.image[static_cast<std::size_t>(AT.index("T:" + tau.inner.es.name(t)))] =
        X.index(ttag[static_cast<std::size_t>(l.port)] + ":" + tau.ports[static_cast<std::size_t>(l.port)].game.es.name(l.e));
  }
  for (int a = 0; a < A.size(); ++a) g.image[static_cast<std::size_t>(AT.index("A:" + A.name(a)))] = X.index(A.name(a));

  Composition out;
  out.ambient = X;
  out.interaction = pullback(f, g);
  out.to_ambient = compose_maps(out.interaction.pi1, f);

  // Visible part: events over regions a and c.
  std::vector<Port> result_ports;
  std::map<std::string, int> port_of_tag;
  for (std::size_t i = 0; i < sigma.ports.size(); ++i)
    if (sigma.ports[i].input) {
      port_of_tag[stag[i]] = static_cast<int>(result_ports.size());
      result_ports.push_back(sigma.ports[i]);
    }
  for (std::size_t i = 0; i < tau.ports.size(); ++i)
    if (!tau.ports[i].input) {
      port_of_tag[ttag[i]] = static_cast<int>(result_ports.size());
      result_ports.push_back(tau.ports[i]);
    }
  Game rt = ports_game(result_ports);
  const auto& P = out.interaction.apex;
  EventSet keep;
  std::vector<int> visible_image(static_cast<std::size_t>(P.size()), -1);
  for (int e = 0; e < P.size(); ++e) {
    const std::string& xn = X.name(out.to_ambient(e));
    std::string tag = xn.substr(0, xn.find(':'));
    if (tag[0] == 'b') continue;
    keep.insert(e);
    const Port& port = result_ports[static_cast<std::size_t>(port_of_tag.at(tag))];
    std::string en = xn.substr(tag.size() + 1);
    visible_image[static_cast<std::size_t>(e)] = rt.es.index(port.name.empty() ? en : port.name + ":" + en);
  }
  auto [hidden, old] = project(P, keep);
  std::vector<int> hs(old.size());
  for (std::size_t i = 0; i < old.size(); ++i) hs[i] = visible_image[static_cast<std::size_t>(old[i])];
  out.hidden = assemble(hidden, hs, std::move(result_ports));
  return out;
}

Strategy minimum_strategy(const std::vector<Port>& ports) {
  Game t = ports_game(ports);
  EventSet neg = t.negative(), keep;
  for (int e = 0; e < t.size(); ++e)
    if (t.es.down(e).subset_of(neg)) keep.insert(e);
  auto [es, old] = project(t.es, keep);
  return assemble_named(es, old, ports);
}

Strategy nsum(const std::vector<Strategy>& parts, const std::vector<Port>& ports) {
  if (parts.empty()) return minimum_strategy(ports);
  Game t = ports_game(ports);
  for (const auto& s : parts)
    if (!same_game(s.target, t)) throw InputError("nsum: summands play in different games");

  const std::size_t k = parts.size();
  std::vector<std::string> names;
  std::map<std::string, int> shared;  // image name -> new position
  std::vector<std::vector<int>> pos(k);
  std::vector<int> image;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& S = parts[i].inner;
    std::map<int, int> initial_count;
    for (int e = 0; e < S.size(); ++e)
      if (S.pol(e) == Polarity::kMinus && S.es.down(e).size() == 1)
        ++initial_count[parts[i].sigma[static_cast<std::size_t>(e)]];
    pos[i].resize(static_cast<std::size_t>(S.size()));
    for (int e = 0; e < S.size(); ++e) {
      int img = parts[i].sigma[static_cast<std::size_t>(e)];
      bool share = S.pol(e) == Polarity::kMinus && S.es.down(e).size() == 1 && initial_count[img] == 1;
      if (share) {
        std::string n = "*:" + t.es.name(img);
        auto [it, fresh] = shared.emplace(n, static_cast<int>(names.size()));
        if (fresh) {
          names.push_back(n);
          image.push_back(img);
        }
        pos[i][static_cast<std::size_t>(e)] = it->second;
      } else {
        pos[i][static_cast<std::size_t>(e)] = static_cast<int>(names.size());
        names.push_back(std::to_string(i) + ":" + S.es.name(e));
        image.push_back(img);
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < k; ++i)
    for (auto [c, e] : immediate_edges(parts[i].inner.es))
      edges.emplace_back(pos[i][static_cast<std::size_t>(c)], pos[i][static_cast<std::size_t>(e)]);
  // Inverse of pos per component.
  std::vector<std::unordered_map<int, int>> back(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t e = 0; e < pos[i].size(); ++e) back[i][pos[i][e]] = static_cast<int>(e);
  auto consistent = [&](const EventSet& x) {
    for (std::size_t i = 0; i < k; ++i) {
      EventSet y;
      bool inside = true;
      x.for_each([&](int p) {
        auto it = back[i].find(p);
        if (it == back[i].end())
          inside = false;
        else
          y.insert(it->second);
      });
      if (inside && parts[i].inner.es.is_consistent(y)) return true;
    }
    return false;
  };
  EventStructure es = from_consistency(names, edges, consistent);
  std::vector<int> sigma(static_cast<std::size_t>(es.size()));
  for (std::size_t p = 0; p < names.size(); ++p) sigma[static_cast<std::size_t>(es.index(names[p]))] = image[p];
  Strategy s = assemble_named(es, sigma, ports);
  if (!check_receptive(s).holds) s.warnings.push_back("sum is not receptive");
  return s;
}

Strategy conjunction(const Strategy& s1, const Strategy& s2) {
  if (!same_game(s1.target, s2.target)) throw InputError("conjunction: strategies play in different games");
  Pullback pb = pullback(s1.sigma_map(), s2.sigma_map());
  std::vector<int> sigma(static_cast<std::size_t>(pb.apex.size()));
  for (int e = 0; e < pb.apex.size(); ++e) sigma[static_cast<std::size_t>(e)] = s1.sigma[static_cast<std::size_t>(pb.pi1(e))];
  return assemble(pb.apex, sigma, s1.ports);
}

Strategy trace(const Strategy& t, const std::string& x, const std::string& y) {
  int ix = -1, iy = -1;
  for (std::size_t i = 0; i < t.ports.size(); ++i) {
    if (t.ports[i].name == x && t.ports[i].input) ix = static_cast<int>(i);
    if (t.ports[i].name == y && !t.ports[i].input) iy = static_cast<int>(i);
  }
  if (ix < 0) throw InputError("trace: no input port '" + x + "'");
  if (iy < 0) throw InputError("trace: no output port '" + y + "'");
  const Game& a = t.ports[static_cast<std::size_t>(ix)].game;
  if (!same_game(a, t.ports[static_cast<std::size_t>(iy)].game))
    throw InputError("trace: ports '" + x + "' and '" + y + "' carry different games");

  // Γ, Δ⊥ ⊢ t ⊣ x:A⊥, y:A
  std::vector<Port> ports1;
  std::vector<int> src1;
  std::vector<int> gamma, delta;
  for (std::size_t i = 0; i < t.ports.size(); ++i) {
    if (static_cast<int>(i) == ix || static_cast<int>(i) == iy) continue;
    (t.ports[i].input ? gamma : delta).push_back(static_cast<int>(i));
  }
  for (int i : gamma) {
    ports1.push_back(t.ports[static_cast<std::size_t>(i)]);
    src1.push_back(i);
  }
  for (int i : delta) {
    const Port& p = t.ports[static_cast<std::size_t>(i)];
    ports1.push_back(Port{p.name, dual(p.game), true});
    src1.push_back(i);
  }
  ports1.push_back(Port{x, dual(a), false});
  src1.push_back(ix);
  ports1.push_back(Port{y, a, false});
  src1.push_back(iy);
  Strategy t1 = with_ports(t, ports1, src1);
  Strategy link = with_ports(copycat(dual(a)), {Port{x, dual(a), true}, Port{y, a, true}});
  Strategy r = compose(t1, link);
  std::vector<Port> final_ports;
  for (int i : gamma) final_ports.push_back(t.ports[static_cast<std::size_t>(i)]);
  for (int i : delta) final_ports.push_back(t.ports[static_cast<std::size_t>(i)]);
  return with_ports(r, final_ports);
}

std::optional<std::vector<int>> find_embedding(const Strategy& x, const Strategy& y) {
  if (!same_game(x.target, y.target)) return std::nullopt;
  return find_embedding(x.inner.es, y.inner.es, [&](int e, int f) {
    return x.inner.pol(e) == y.inner.pol(f) && x.sigma[static_cast<std::size_t>(e)] == y.sigma[static_cast<std::size_t>(f)];
  }, false);
}

std::optional<std::vector<int>> iso_equivalent(const Strategy& s1, const Strategy& s2) {
  if (!same_game(s1.target, s2.target)) return std::nullopt;
  return find_isomorphism(s1.inner.es, s2.inner.es, [&](int e, int f) {
    return s1.inner.pol(e) == s2.inner.pol(f) && s1.sigma[static_cast<std::size_t>(e)] == s2.sigma[static_cast<std::size_t>(f)];
  });
}

Strategy mu_fix(const std::function<Strategy(const Strategy&)>& body, const std::vector<Port>& ports, int fuel) {
  Strategy cur = minimum_strategy(ports);
  for (int n = 0; n < fuel; ++n) {
    Strategy next = body(cur);
    if (iso_equivalent(cur, next)) return cur;
    if (!find_embedding(cur, next)) throw Error("not ⊴-monotone at step " + std::to_string(n));
    cur = std::move(next);
  }
  throw Error("fuel exhausted after " + std::to_string(fuel) + " steps");
}

}  // namespace congames
