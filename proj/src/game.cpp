#include "congames/game.hpp"

#include <algorithm>

namespace congames {

namespace {

std::string prefix(const std::string& tag) { return tag.empty() ? std::string() : tag + ":"; }

// Per-event data of a juxtaposition, carried over from the parts.
template <typename T, typename Get>
std::vector<T> carry(const EventStructure& whole, const std::vector<std::pair<std::string, Game>>& parts, Get get) {
  std::vector<T> out(static_cast<std::size_t>(whole.size()));
  for (const auto& [tag, g] : parts)
    for (int e = 0; e < g.size(); ++e)
      out[static_cast<std::size_t>(whole.index(prefix(tag) + g.es.name(e)))] = get(g, e);
  return out;
}

}  // namespace

Game Game::make(EventStructure es, const std::map<std::string, Polarity>& pol) {
  Game g;
  g.polarity.resize(static_cast<std::size_t>(es.size()));
  for (int e = 0; e < es.size(); ++e) {
    auto it = pol.find(es.name(e));
    if (it == pol.end()) throw InputError("no polarity for event '" + es.name(e) + "'");
    g.polarity[static_cast<std::size_t>(e)] = it->second;
  }
  for (const auto& [name, p] : pol) es.index(name);
  g.es = std::move(es);
  return g;
}

EventSet Game::positive() const {
  EventSet s;
  for (int e = 0; e < size(); ++e)
    if (pol(e) == Polarity::kPlus) s.insert(e);
  return s;
}

EventSet Game::negative() const { return es.all() - positive(); }

bool Game::operator==(const Game& o) const {
  return es == o.es && polarity == o.polarity && level == o.level && winning == o.winning && payoff == o.payoff;
}

Report validate_game(const Game& g) {
  Report r;
  if (static_cast<int>(g.polarity.size()) != g.size())
    r.push_back({"polarity total", "polarity must be given for every event", {}});
  if (g.level && static_cast<int>(g.level->size()) != g.size())
    r.push_back({"level total", "level must be given for every event", {}});
  if (g.winning)
    for (const auto& x : *g.winning)
      if (!g.es.is_configuration(x))
        r.push_back({"winning configuration", "winning set member is not a configuration", g.es.names_of(x)});
  if (g.payoff) {
    for (const auto& [x, v] : *g.payoff)
      if (!g.es.is_configuration(x))
        r.push_back({"payoff configuration", "payoff key is not a configuration", g.es.names_of(x)});
    for (const auto& x : configurations(g.es))
      if (!g.payoff->count(x)) {
        r.push_back({"payoff total", "no payoff for configuration " + g.es.format(x), g.es.names_of(x)});
        break;
      }
  }
  return r;
}

Game dual(const Game& g) {
  Game d = g;
  for (auto& p : d.polarity) p = flip(p);
  if (g.winning) {
    ConfigSet w;
    for (const auto& x : configurations(g.es))
      if (!g.winning->count(x)) w.insert(x);
    d.winning = std::move(w);
  }
  if (g.payoff)
    for (auto& [x, v] : *d.payoff) v = -v;
  return d;
}

Game par_tagged(const std::vector<std::pair<std::string, Game>>& parts) {
  std::vector<std::pair<std::string, EventStructure>> es_parts;
  for (const auto& [tag, g] : parts) es_parts.emplace_back(tag, g.es);
  Game out;
  out.es = es_par(es_parts);
  out.polarity = carry<Polarity>(out.es, parts, [](const Game& g, int e) { return g.pol(e); });
  bool levels = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.second.level.has_value(); });
  if (levels && !parts.empty())
    out.level = carry<std::string>(out.es, parts, [](const Game& g, int e) { return (*g.level)[static_cast<std::size_t>(e)]; });
  bool winning = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.second.winning.has_value(); });
  bool payoff = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.second.payoff.has_value(); });
  if (parts.empty() || (!winning && !payoff)) return out;
  ConfigSet w;
  PayoffTable t;
  for (const auto& x : configurations(out.es)) {
    bool wins = false;
    Rational total = 0;
    for (const auto& [tag, g] : parts) {
      Configuration xi = side_of(out, tag, g, x);
      if (winning && g.winning->count(xi)) wins = true;
      if (payoff) total += g.payoff->at(xi);
    }
    if (wins) w.insert(x);
    if (payoff) t[x] = total;
  }
  if (winning) out.winning = std::move(w);
  if (payoff) out.payoff = std::move(t);
  return out;
}

Configuration side_of(const Game& whole, const std::string& tag, const Game& side, const Configuration& x) {
  Configuration out;
  for (int e = 0; e < side.size(); ++e)
    if (x.contains(whole.es.index(prefix(tag) + side.es.name(e)))) out.insert(e);
  return out;
}

Configuration embed_side(const Game& whole, const std::string& tag, const Game& side, const Configuration& x) {
  Configuration out;
  x.for_each([&](int e) { out.insert(whole.es.index(prefix(tag) + side.es.name(e))); });
  return out;
}

Game par(const Game& a, const Game& b) { return par_tagged({{"L", a}, {"R", b}}); }

Game sum(const std::vector<Game>& parts) {
  std::vector<std::pair<std::string, Game>> tagged;
  for (std::size_t i = 0; i < parts.size(); ++i) tagged.emplace_back(std::to_string(i), parts[i]);
  Game juxt = par_tagged(tagged);
  std::vector<int> component(static_cast<std::size_t>(juxt.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (int e = 0; e < parts[i].size(); ++e)
      component[static_cast<std::size_t>(juxt.es.index(std::to_string(i) + ":" + parts[i].es.name(e)))] =
          static_cast<int>(i);
  auto forbidden = forbidden_lists(juxt.es);
  for (int a = 0; a < juxt.size(); ++a)
    for (int b = a + 1; b < juxt.size(); ++b)
      if (component[static_cast<std::size_t>(a)] != component[static_cast<std::size_t>(b)]) forbidden.push_back({a, b});
  Game out = juxt;
  out.es = EventStructure::build(juxt.es.names(), immediate_edges(juxt.es), forbidden);
  return out;
}

std::optional<RaceWitness> find_race(const Game& g) {
  for (const auto& x : configurations(g.es)) {
    std::vector<int> ext = extensions(g.es, x).indices();
    for (std::size_t i = 0; i < ext.size(); ++i)
      for (std::size_t j = i + 1; j < ext.size(); ++j) {
        int e = ext[i], f = ext[j];
        if (g.pol(e) != g.pol(f) && !g.es.is_consistent(x.with(e).with(f))) return RaceWitness{x, e, f};
      }
  }
  return std::nullopt;
}

bool scott_leq(const Game& g, const Configuration& x, const Configuration& y) {
  return (x - y).subset_of(g.negative()) && (y - x).subset_of(g.positive());
}

LevelOrder LevelOrder::closure(std::vector<std::string> levels,
                               const std::vector<std::pair<std::string, std::string>>& generators) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t n = levels.size();
  auto idx = [&](const std::string& l) {
    auto it = std::lower_bound(levels.begin(), levels.end(), l);
    if (it == levels.end() || *it != l) throw InputError("unknown level '" + l + "'");
    return static_cast<std::size_t>(it - levels.begin());
  };
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (const auto& [a, b] : generators) r[idx(a)][idx(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  LevelOrder out;
  out.levels = levels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.leq.emplace(levels[i], levels[j]);
  return out;
}

Report validate_level_order(const LevelOrder& order) {
  Report r;
  std::set<std::string> known(order.levels.begin(), order.levels.end());
  for (const auto& [a, b] : order.leq)
    if (!known.count(a) || !known.count(b)) r.push_back({"unknown level", "relation mentions an undeclared level", {a, b}});
  for (const auto& l : order.levels)
    if (!order.le(l, l)) r.push_back({"reflexive", "level is not below itself", {l}});
  for (const auto& [a, b] : order.leq)
    for (const auto& c : order.levels)
      if (order.le(b, c) && !order.le(a, c)) r.push_back({"transitive", "missing composite", {a, b, c}});
  return r;
}

Report check_levels(const LevelOrder& order, const Game& g) {
  if (!g.level) return {};  // one-point order: perfect information
  if (static_cast<int>(g.level->size()) != g.size()) throw InputError("level mapping is not total");
  std::set<std::string> known(order.levels.begin(), order.levels.end());
  for (const auto& l : *g.level)
    if (!known.count(l)) throw InputError("level '" + l + "' is not in the level order");
  Report r;
  for (int e = 0; e < g.size(); ++e)
    for (int f = 0; f < g.size(); ++f) {
      if (!g.es.less(e, f)) continue;
      const auto& le = (*g.level)[static_cast<std::size_t>(e)];
      const auto& lf = (*g.level)[static_cast<std::size_t>(f)];
      if (!order.le(le, lf))
        r.push_back({"game level", g.es.name(e) + " <= " + g.es.name(f) + " but " + le + " is not below " + lf,
                     {g.es.name(e), g.es.name(f)}});
    }
  return r;
}

std::optional<std::vector<int>> find_embedding(const EventStructure& a, const EventStructure& b,
                                               const std::function<bool(int, int)>& compatible, bool onto) {
  const int n = a.size();
  if (n > b.size() || (onto && n != b.size())) return std::nullopt;
  if (onto && a.forbidden().size() != b.forbidden().size()) return std::nullopt;
  std::vector<int> f(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(b.size()), 0);
  std::size_t nodes = 0;
  const std::size_t ceiling = enumeration_ceiling();

  // Order is preserved and reflected and down-sets have equal size, so the
  // image is down-closed; consistency is then settled by forbidden sets.
  auto forbidden_match = [&]() {
    EventSet image;
    for (int t : f) image.insert(t);
    std::vector<EventSet> mapped, inside;
    for (const auto& fs : a.forbidden()) {
      EventSet s;
      fs.for_each([&](int e) { s.insert(f[static_cast<std::size_t>(e)]); });
      mapped.push_back(s);
    }
    for (const auto& fs : b.forbidden())
      if (fs.subset_of(image)) inside.push_back(fs);
    std::sort(mapped.begin(), mapped.end(), canonical_less);
    std::sort(inside.begin(), inside.end(), canonical_less);
    return mapped == inside;
  };

  std::function<bool(int)> go = [&](int e) -> bool {
    if (e == n) return forbidden_match();
    if (++nodes > ceiling) throw ResourceError("embedding search exceeded ceiling", ceiling);
    for (int t = 0; t < b.size(); ++t) {
      if (used[static_cast<std::size_t>(t)] || !compatible(e, t)) continue;
      if (a.down(e).size() != b.down(t).size()) continue;
      if (onto && a.up(e).size() != b.up(t).size()) continue;
      bool okay = true;
      for (int d = 0; d < e && okay; ++d) {
        int u = f[static_cast<std::size_t>(d)];
        okay = a.leq(d, e) == b.leq(u, t) && a.leq(e, d) == b.leq(t, u) &&
               a.is_consistent(EventSet::of({d, e})) == b.is_consistent(EventSet::of({u, t}));
      }
      if (!okay) continue;
      f[static_cast<std::size_t>(e)] = t;
      used[static_cast<std::size_t>(t)] = 1;
      if (go(e + 1)) return true;
      used[static_cast<std::size_t>(t)] = 0;
    }
    f[static_cast<std::size_t>(e)] = -1;
    return false;
  };
  if (go(0)) return f;
  return std::nullopt;
}

std::optional<std::vector<int>> find_isomorphism(const EventStructure& a, const EventStructure& b,
                                                 const std::function<bool(int, int)>& compatible) {
  return find_embedding(a, b, compatible, true);
}

std::optional<std::vector<int>> game_isomorphism(const Game& a, const Game& b) {
  return find_isomorphism(a.es, b.es, [&](int e, int t) { return a.pol(e) == b.pol(t); });
}

}  // namespace congames
