#include "congames/event_structure.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace congames {

namespace {

std::atomic<std::size_t> g_ceiling{1'000'000};

std::size_t resolve_ceiling(std::size_t c) { return c == 0 ? enumeration_ceiling() : c; }

std::string join_braced(const std::vector<std::string>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + "}";
}

}  // namespace

std::size_t enumeration_ceiling() { return g_ceiling.load(); }
void set_enumeration_ceiling(std::size_t ceiling) { g_ceiling.store(ceiling == 0 ? 1 : ceiling); }

struct EventStructure::Data {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  std::vector<EventSet> down;
  std::vector<EventSet> up;
  std::vector<std::vector<int>> immediate;
  std::vector<EventSet> forbidden;
  // forbidden sets (by position in `forbidden`) mentioning each event's
  // down-closure members; used for incremental consistency checks.
  std::vector<std::vector<int>> forbidden_touching;
};

EventStructure::EventStructure() : d_(std::make_shared<Data>()) {}
EventStructure::EventStructure(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

int EventStructure::size() const { return static_cast<int>(d_->names.size()); }
const std::string& EventStructure::name(int e) const { return d_->names.at(static_cast<std::size_t>(e)); }
const std::vector<std::string>& EventStructure::names() const { return d_->names; }

std::optional<int> EventStructure::find(std::string_view id) const {
  auto it = d_->index.find(std::string(id));
  if (it == d_->index.end()) return std::nullopt;
  return it->second;
}

int EventStructure::index(std::string_view id) const {
  auto i = find(id);
  if (!i) throw InputError("unknown event '" + std::string(id) + "'");
  return *i;
}

const EventSet& EventStructure::down(int e) const { return d_->down[static_cast<std::size_t>(e)]; }
const EventSet& EventStructure::up(int e) const { return d_->up[static_cast<std::size_t>(e)]; }
const std::vector<int>& EventStructure::immediate_causes(int e) const {
  return d_->immediate[static_cast<std::size_t>(e)];
}
const std::vector<EventSet>& EventStructure::forbidden() const { return d_->forbidden; }

EventSet EventStructure::all() const { return EventSet::first_n(size()); }

EventSet EventStructure::down_closure(const EventSet& x) const {
  EventSet out;
  x.for_each([&](int e) { out |= down(e); });
  return out;
}

bool EventStructure::is_down_closed(const EventSet& x) const {
  bool closed = true;
  x.for_each([&](int e) {
    if (!down(e).subset_of(x)) closed = false;
  });
  return closed;
}

bool EventStructure::is_consistent(const EventSet& x) const {
  if (!x.subset_of(all())) return false;
  EventSet d = down_closure(x);
  for (const auto& f : d_->forbidden)
    if (f.subset_of(d)) return false;
  return true;
}

bool EventStructure::is_configuration(const EventSet& x) const {
  if (!x.subset_of(all()) || !is_down_closed(x)) return false;
  for (const auto& f : d_->forbidden)
    if (f.subset_of(x)) return false;
  return true;
}

bool EventStructure::concurrent(int a, int b) const {
  if (a == b || leq(a, b) || leq(b, a)) return false;
  return is_consistent(EventSet::of({a, b}));
}

EventSet EventStructure::maximal(const EventSet& x) const {
  EventSet below;
  x.for_each([&](int e) { below |= down(e).without(e); });
  return x - below;
}

EventSet EventStructure::set_of(const std::vector<std::string>& ids) const {
  EventSet s;
  for (const auto& id : ids) s.insert(index(id));
  return s;
}

std::vector<std::string> EventStructure::names_of(const EventSet& x) const {
  std::vector<std::string> out;
  x.for_each([&](int e) { out.push_back(name(e)); });
  return out;
}

std::string EventStructure::format(const EventSet& x) const { return join_braced(names_of(x)); }

EsSpec EventStructure::to_spec() const {
  EsSpec spec;
  spec.events = d_->names;
  for (int e = 0; e < size(); ++e) {
    if (immediate_causes(e).empty()) continue;
    auto& cs = spec.causes[name(e)];
    for (int c : immediate_causes(e)) cs.push_back(name(c));
  }
  for (const auto& f : d_->forbidden) spec.forbidden.push_back(names_of(f));
  return spec;
}

bool EventStructure::operator==(const EventStructure& o) const {
  if (d_ == o.d_) return true;
  return d_->names == o.d_->names && d_->down == o.d_->down && d_->forbidden == o.d_->forbidden;
}

Report validate_es(const EsSpec& spec) {
  Report report;
  std::unordered_map<std::string, int> index;
  for (const auto& e : spec.events) {
    if (!index.emplace(e, static_cast<int>(index.size())).second)
      report.push_back({"duplicate event", "event '" + e + "' declared twice", {e}});
  }
  const int n = static_cast<int>(index.size());
  if (n > EventSet::kCapacity)
    report.push_back({"capacity", "more than " + std::to_string(EventSet::kCapacity) + " events", {}});

  std::vector<std::vector<int>> causes(static_cast<std::size_t>(n));
  for (const auto& [effect, cs] : spec.causes) {
    auto it = index.find(effect);
    if (it == index.end()) {
      report.push_back({"unknown event", "causes given for undeclared event '" + effect + "'", {effect}});
      continue;
    }
    for (const auto& c : cs) {
      auto jt = index.find(c);
      if (jt == index.end()) {
        report.push_back({"unknown event", "cause '" + c + "' of '" + effect + "' is undeclared", {c}});
        continue;
      }
      causes[static_cast<std::size_t>(it->second)].push_back(jt->second);
    }
  }
  for (const auto& f : spec.forbidden) {
    if (f.empty()) report.push_back({"empty forbidden", "the empty set must be consistent", {}});
    if (f.size() == 1) report.push_back({"singleton forbidden", "every single event must be consistent", f});
    for (const auto& e : f)
      if (!index.count(e)) report.push_back({"unknown event", "forbidden set mentions undeclared '" + e + "'", {e}});
  }
  if (!report.empty() || n > EventSet::kCapacity) return report;

  // Cycle detection by DFS colouring.
  std::vector<int> colour(static_cast<std::size_t>(n), 0);
  std::vector<std::string> cycle;
  std::function<bool(int)> visit = [&](int e) -> bool {
    colour[static_cast<std::size_t>(e)] = 1;
    for (int c : causes[static_cast<std::size_t>(e)]) {
      if (colour[static_cast<std::size_t>(c)] == 1) {
        cycle = {spec.events[static_cast<std::size_t>(c)], spec.events[static_cast<std::size_t>(e)]};
        return true;
      }
      if (colour[static_cast<std::size_t>(c)] == 0 && visit(c)) return true;
    }
    colour[static_cast<std::size_t>(e)] = 2;
    return false;
  };
  for (int e = 0; e < n; ++e) {
    if (colour[static_cast<std::size_t>(e)] == 0 && visit(e)) {
      report.push_back({"causality acyclic", "causal dependency has a cycle", cycle});
      return report;
    }
  }

  // Each event must be consistent together with its causes.
  std::vector<EventSet> down(static_cast<std::size_t>(n));
  std::vector<int> done(static_cast<std::size_t>(n), 0);
  std::function<void(int)> close = [&](int e) {
    if (done[static_cast<std::size_t>(e)]) return;
    EventSet d = EventSet::of({e});
    for (int c : causes[static_cast<std::size_t>(e)]) {
      close(c);
      d |= down[static_cast<std::size_t>(c)];
    }
    down[static_cast<std::size_t>(e)] = d;
    done[static_cast<std::size_t>(e)] = 1;
  };
  for (int e = 0; e < n; ++e) close(e);
  for (const auto& f : spec.forbidden) {
    if (f.size() < 2) continue;
    EventSet fs;
    for (const auto& id : f) fs.insert(index.at(id));
    for (int e = 0; e < n; ++e) {
      if (fs.subset_of(down[static_cast<std::size_t>(e)])) {
        std::vector<std::string> w{spec.events[static_cast<std::size_t>(e)]};
        w.insert(w.end(), f.begin(), f.end());
        report.push_back({"event consistent", "event '" + spec.events[static_cast<std::size_t>(e)] +
                                                  "' is inconsistent with its own causes",
                          w});
      }
    }
  }
  return report;
}

EventStructure EventStructure::from_spec(const EsSpec& spec) {
  Report r = validate_es(spec);
  if (!r.empty()) {
    std::string msg = "invalid event structure:";
    for (const auto& v : r) msg += " [" + v.rule + "] " + v.detail + ";";
    throw InputError(msg);
  }
  std::unordered_map<std::string, int> pos;
  for (std::size_t i = 0; i < spec.events.size(); ++i) pos[spec.events[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [effect, cs] : spec.causes)
    for (const auto& c : cs) edges.emplace_back(pos.at(c), pos.at(effect));
  std::vector<std::vector<int>> forbidden;
  for (const auto& f : spec.forbidden) {
    std::vector<int> fs;
    for (const auto& e : f) fs.push_back(pos.at(e));
    forbidden.push_back(std::move(fs));
  }
  return build(spec.events, edges, forbidden);
}

EventStructure EventStructure::build(std::vector<std::string> names,
                                     const std::vector<std::pair<int, int>>& edges,
                                     const std::vector<std::vector<int>>& forbidden) {
  const int n = static_cast<int>(names.size());
  if (n > EventSet::kCapacity)
    throw ResourceError("event structure exceeds " + std::to_string(EventSet::kCapacity) + " events",
                        EventSet::kCapacity);

  // Sort identifiers; perm[old] = new.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return names[static_cast<std::size_t>(a)] < names[static_cast<std::size_t>(b)]; });
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  auto d = std::make_shared<Data>();
  d->names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d->names.push_back(std::move(names[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]));
  for (int i = 0; i < n; ++i) {
    if (!d->index.emplace(d->names[static_cast<std::size_t>(i)], i).second)
      throw InputError("duplicate event '" + d->names[static_cast<std::size_t>(i)] + "'");
  }

  std::vector<std::vector<int>> causes(static_cast<std::size_t>(n));
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> effects(static_cast<std::size_t>(n));
  for (auto [c, e] : edges) {
    int nc = perm.at(static_cast<std::size_t>(c)), ne = perm.at(static_cast<std::size_t>(e));
    causes[static_cast<std::size_t>(ne)].push_back(nc);
    effects[static_cast<std::size_t>(nc)].push_back(ne);
    ++indeg[static_cast<std::size_t>(ne)];
  }
  // Kahn's algorithm; down-closures accumulate along the topological order.
  d->down.assign(static_cast<std::size_t>(n), EventSet{});
  std::vector<int> queue;
  for (int e = 0; e < n; ++e)
    if (indeg[static_cast<std::size_t>(e)] == 0) queue.push_back(e);
  int processed = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int e = queue[qi];
    ++processed;
    EventSet dn = EventSet::of({e});
    for (int c : causes[static_cast<std::size_t>(e)]) dn |= d->down[static_cast<std::size_t>(c)];
    d->down[static_cast<std::size_t>(e)] = dn;
    for (int f : effects[static_cast<std::size_t>(e)])
      if (--indeg[static_cast<std::size_t>(f)] == 0) queue.push_back(f);
  }
  if (processed != n) throw InputError("causal dependency has a cycle");

  d->up.assign(static_cast<std::size_t>(n), EventSet{});
  for (int e = 0; e < n; ++e) d->down[static_cast<std::size_t>(e)].for_each([&](int c) { d->up[static_cast<std::size_t>(c)].insert(e); });

  d->immediate.assign(static_cast<std::size_t>(n), {});
  for (int e = 0; e < n; ++e) {
    EventSet strict = d->down[static_cast<std::size_t>(e)].without(e);
    EventSet covered;
    strict.for_each([&](int c) { covered |= d->down[static_cast<std::size_t>(c)].without(c); });
    d->immediate[static_cast<std::size_t>(e)] = (strict - covered).indices();
  }

  // Normalize forbidden sets: antichain of maximal elements of the
  // down-closure, keeping only those with minimal down-closures.
  auto down_of = [&](const EventSet& x) {
    EventSet out;
    x.for_each([&](int e) { out |= d->down[static_cast<std::size_t>(e)]; });
    return out;
  };
  auto maxel = [&](const EventSet& x) {
    EventSet below;
    x.for_each([&](int e) { below |= d->down[static_cast<std::size_t>(e)].without(e); });
    return x - below;
  };
  std::vector<std::pair<EventSet, EventSet>> cands;  // (down-closure, antichain)
  {
    std::unordered_set<EventSet> seen;
    for (const auto& f : forbidden) {
      EventSet fs;
      for (int e : f) fs.insert(perm.at(static_cast<std::size_t>(e)));
      EventSet dc = down_of(fs);
      if (seen.insert(dc).second) cands.emplace_back(dc, maxel(dc));
    }
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : canonical_less(a.first, b.first);
  });
  std::vector<EventSet> kept_down;
  for (const auto& [dc, anti] : cands) {
    bool redundant = false;
    for (const auto& k : kept_down)
      if (k.subset_of(dc)) {
        redundant = true;
        break;
      }
    if (redundant) continue;
    if (anti.size() < 2) {
      throw InputError("event '" + d->names[static_cast<std::size_t>(anti.first())] +
                       "' is inconsistent with its own causes");
    }
    kept_down.push_back(dc);
    d->forbidden.push_back(anti);
  }
  std::sort(d->forbidden.begin(), d->forbidden.end(), canonical_less);
  d->forbidden_touching.assign(static_cast<std::size_t>(n), {});
  for (std::size_t k = 0; k < d->forbidden.size(); ++k)
    d->forbidden[k].for_each([&](int e) { d->forbidden_touching[static_cast<std::size_t>(e)].push_back(static_cast<int>(k)); });
  return EventStructure(std::shared_ptr<const Data>(std::move(d)));
}

std::vector<Configuration> configurations(const EventStructure& es, std::optional<int> max_events,
                                          std::size_t ceiling) {
  ceiling = resolve_ceiling(ceiling);
  const int n = es.size();
  const int limit = max_events ? std::min(*max_events, n) : n;
  std::vector<Configuration> out{EventSet{}};
  std::vector<Configuration> level{EventSet{}};
  for (int k = 0; k < limit && !level.empty(); ++k) {
    std::unordered_set<EventSet> next_set;
    for (const auto& x : level) {
      extensions(es, x).for_each([&](int e) { next_set.insert(x.with(e)); });
      if (out.size() + next_set.size() > ceiling)
        throw ResourceError("configuration enumeration exceeded ceiling " + std::to_string(ceiling), ceiling);
    }
    std::vector<Configuration> next(next_set.begin(), next_set.end());
    std::sort(next.begin(), next.end(), canonical_less);
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

EventSet extensions(const EventStructure& es, const Configuration& x) {
  if (!es.is_configuration(x)) throw InputError("not a configuration: " + es.format(x));
  EventSet out;
  const auto& forb = es.forbidden();
  for (int e = 0; e < es.size(); ++e) {
    if (x.contains(e)) continue;
    if (!es.down(e).without(e).subset_of(x)) continue;
    EventSet y = x.with(e);
    bool ok = true;
    for (const auto& f : forb)
      if (f.contains(e) && f.subset_of(y)) {
        ok = false;
        break;
      }
    if (ok) out.insert(e);
  }
  return out;
}

EventStructure es_par(const std::vector<std::pair<std::string, EventStructure>>& parts) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> forbidden;
  for (const auto& [tag, es] : parts) {
    const int base = static_cast<int>(names.size());
    for (int e = 0; e < es.size(); ++e) names.push_back(tag.empty() ? es.name(e) : tag + ":" + es.name(e));
    for (int e = 0; e < es.size(); ++e)
      for (int c : es.immediate_causes(e)) edges.emplace_back(base + c, base + e);
    for (const auto& f : es.forbidden()) {
      std::vector<int> fs;
      f.for_each([&](int e) { fs.push_back(base + e); });
      forbidden.push_back(std::move(fs));
    }
  }
  return EventStructure::build(std::move(names), edges, forbidden);
}

std::pair<EventStructure, std::vector<int>> project(const EventStructure& es, const EventSet& keep) {
  std::vector<int> old = keep.indices();  // already sorted by identifier
  std::vector<int> pos(static_cast<std::size_t>(es.size()), -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < old.size(); ++i) {
    pos[static_cast<std::size_t>(old[i])] = static_cast<int>(i);
    names.push_back(es.name(old[i]));
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < old.size(); ++i)
    (es.down(old[i]) & keep).for_each([&](int c) {
      if (c != old[i]) edges.emplace_back(pos[static_cast<std::size_t>(c)], static_cast<int>(i));
    });
  auto consistent = [&](const EventSet& local) {
    EventSet global;
    local.for_each([&](int i) { global.insert(old[static_cast<std::size_t>(i)]); });
    return es.is_consistent(global);
  };
  return {from_consistency(std::move(names), edges, consistent), old};
}

EventStructure from_consistency(std::vector<std::string> names,
                                const std::vector<std::pair<int, int>>& edges,
                                const std::function<bool(const EventSet&)>& consistent) {
  const std::size_t ceiling = enumeration_ceiling();
  // Structure with order only, to enumerate down-closed sets.
  const std::vector<std::string> original = names;
  EventStructure order_only = EventStructure::build(names, edges, {});
  const int n = order_only.size();
  // to_pos[sorted index] = position in `original`
  std::vector<int> to_pos(static_cast<std::size_t>(n));
  {
    std::unordered_map<std::string, int> p;
    for (std::size_t i = 0; i < original.size(); ++i) p[original[i]] = static_cast<int>(i);
    for (int e = 0; e < n; ++e) to_pos[static_cast<std::size_t>(e)] = p.at(order_only.name(e));
  }
  auto pred = [&](const EventSet& sorted) {
    EventSet local;
    sorted.for_each([&](int e) { local.insert(to_pos[static_cast<std::size_t>(e)]); });
    return consistent(local);
  };

  std::vector<std::vector<int>> forbidden;
  std::unordered_set<EventSet> seen_forbidden;
  std::unordered_set<EventSet> visited{EventSet{}};
  std::vector<EventSet> stack{EventSet{}};
  while (!stack.empty()) {
    EventSet x = stack.back();
    stack.pop_back();
    for (int e = 0; e < n; ++e) {
      if (x.contains(e) || !order_only.down(e).without(e).subset_of(x)) continue;
      EventSet y = x.with(e);
      if (visited.count(y)) continue;
      if (pred(y)) {
        visited.insert(y);
        if (visited.size() > ceiling)
          throw ResourceError("configuration enumeration exceeded ceiling " + std::to_string(ceiling), ceiling);
        stack.push_back(y);
      } else {
        EventSet anti = order_only.maximal(y);
        if (seen_forbidden.insert(anti).second) {
          std::vector<int> f;
          anti.for_each([&](int i) { f.push_back(to_pos[static_cast<std::size_t>(i)]); });
          forbidden.push_back(std::move(f));
        }
      }
    }
  }
  return EventStructure::build(std::move(names), edges, forbidden);
}

std::vector<std::pair<int, int>> immediate_edges(const EventStructure& es) {
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < es.size(); ++e)
    for (int c : es.immediate_causes(e)) edges.emplace_back(c, e);
  return edges;
}

std::vector<std::vector<int>> forbidden_lists(const EventStructure& es) {
  std::vector<std::vector<int>> out;
  for (const auto& f : es.forbidden()) out.push_back(f.indices());
  return out;
}

EventStructure rename(const EventStructure& es, const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != es.size()) throw InputError("rename: wrong number of names");
  return EventStructure::build(names, immediate_edges(es), forbidden_lists(es));
}

}  // namespace congames
