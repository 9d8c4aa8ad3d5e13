#include "congames/es_map.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace congames {

EsMap EsMap::identity(const EventStructure& es) {
  EsMap m{es, es, std::vector<int>(static_cast<std::size_t>(es.size()))};
  for (int e = 0; e < es.size(); ++e) m.image[static_cast<std::size_t>(e)] = e;
  return m;
}

EsMap EsMap::from_names(const EventStructure& source, const EventStructure& target,
                        const std::map<std::string, std::string>& mapping) {
  EsMap m{source, target, std::vector<int>(static_cast<std::size_t>(source.size()), -1)};
  for (const auto& [from, to] : mapping) m.image[static_cast<std::size_t>(source.index(from))] = target.index(to);
  return m;
}

bool EsMap::total() const {
  return std::all_of(image.begin(), image.end(), [](int i) { return i >= 0; });
}

EventSet EsMap::defined_events() const {
  EventSet s;
  for (std::size_t e = 0; e < image.size(); ++e)
    if (image[e] >= 0) s.insert(static_cast<int>(e));
  return s;
}

EventSet EsMap::apply(const EventSet& x) const {
  EventSet out;
  x.for_each([&](int e) {
    if (image[static_cast<std::size_t>(e)] >= 0) out.insert(image[static_cast<std::size_t>(e)]);
  });
  return out;
}

EsMap compose_maps(const EsMap& f, const EsMap& g) {
  EsMap h{f.source, g.target, std::vector<int>(f.image.size(), -1)};
  for (std::size_t e = 0; e < f.image.size(); ++e)
    if (f.image[e] >= 0) h.image[e] = g.image[static_cast<std::size_t>(f.image[e])];
  return h;
}

MapCheck validate_map(const EsMap& f) {
  MapCheck out;
  const auto& src = f.source;
  const auto& tgt = f.target;
  if (static_cast<int>(f.image.size()) != src.size()) {
    out.violations.push_back({"shape", "image table does not cover the source events", {}});
    return out;
  }
  for (int e = 0; e < src.size(); ++e) {
    int t = f(e);
    if (t >= tgt.size() || t < -1) {
      out.violations.push_back({"shape", "image out of range", {src.name(e)}});
      return out;
    }
  }
  out.total = f.total();
  out.rigid = true;
  for (int e = 0; e < src.size() && out.rigid; ++e) {
    if (!f.defined(e)) continue;
    (src.down(e).without(e)).for_each([&](int c) {
      if (f.defined(c) && !tgt.leq(f(c), f(e))) out.rigid = false;
    });
  }
  bool seen_image = false, seen_inj = false;
  for (const auto& x : configurations(src)) {
    EventSet fx = f.apply(x);
    int defined = (x & f.defined_events()).size();
    if (!seen_inj && fx.size() != defined) {
      seen_inj = true;
      out.violations.push_back({"local injectivity",
                                "two events of configuration " + src.format(x) + " share an image",
                                src.names_of(x)});
    }
    if (!seen_image && !tgt.is_configuration(fx)) {
      seen_image = true;
      out.violations.push_back({"image configuration",
                                "image " + tgt.format(fx) + " of " + src.format(x) + " is not a configuration",
                                src.names_of(x)});
    }
    if (seen_image && seen_inj) break;
  }
  return out;
}

Factorization factorize(const EsMap& f) {
  auto [proj, old] = project(f.source, f.defined_events());
  EsMap partial{f.source, proj, std::vector<int>(static_cast<std::size_t>(f.source.size()), -1)};
  EsMap total{proj, f.target, std::vector<int>(old.size())};
  for (std::size_t i = 0; i < old.size(); ++i) {
    partial.image[static_cast<std::size_t>(old[i])] = static_cast<int>(i);
    total.image[i] = f(old[i]);
  }
  return {proj, partial, total};
}

PrimeStructure prime_structure(const std::vector<EventSet>& family,
                               const std::function<std::string(const EventSet&, int)>& name_of) {
  std::unordered_set<EventSet> fam(family.begin(), family.end());
  // (members, top) -> event position
  std::map<std::pair<std::vector<int>, int>, int> found;
  std::vector<EventSet> members;
  std::vector<int> top;
  for (const auto& x : family) {
    x.for_each([&](int l) {
      // Shrink x to the least member containing l.
      EventSet p = x;
      bool changed = true;
      while (changed) {
        changed = false;
        p.for_each([&](int m) {
          if (changed || m == l) return;
          EventSet q = p.without(m);
          if (fam.count(q)) {
            p = q;
            changed = true;
          }
        });
      }
      auto key = std::make_pair(p.indices(), l);
      if (!found.count(key)) {
        found.emplace(key, static_cast<int>(members.size()));
        members.push_back(p);
        top.push_back(l);
      }
    });
  }
  const int n = static_cast<int>(members.size());
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back(name_of(members[static_cast<std::size_t>(i)], top[static_cast<std::size_t>(i)]));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && members[static_cast<std::size_t>(i)].subset_of(members[static_cast<std::size_t>(j)]) &&
          members[static_cast<std::size_t>(i)] != members[static_cast<std::size_t>(j)])
        edges.emplace_back(i, j);
  auto consistent = [&](const EventSet& primes) {
    EventSet u;
    primes.for_each([&](int i) { u |= members[static_cast<std::size_t>(i)]; });
    return fam.count(u) > 0;
  };
  EventStructure es = from_consistency(names, edges, consistent);
  // Reorder per-event data to the structure's sorted indexing.
  std::unordered_map<std::string, int> pos;
  for (int i = 0; i < n; ++i) pos[names[static_cast<std::size_t>(i)]] = i;
  PrimeStructure out{es, std::vector<int>(static_cast<std::size_t>(n)), std::vector<EventSet>(static_cast<std::size_t>(n))};
  for (int e = 0; e < n; ++e) {
    int i = pos.at(es.name(e));
    out.top[static_cast<std::size_t>(e)] = top[static_cast<std::size_t>(i)];
    out.members[static_cast<std::size_t>(e)] = members[static_cast<std::size_t>(i)];
  }
  return out;
}

Report check_prime_structure(const PrimeStructure& p, const std::vector<EventSet>& family) {
  Report r;
  std::unordered_set<EventSet> fam(family.begin(), family.end());
  std::unordered_set<EventSet> got;
  for (const auto& c : configurations(p.es)) {
    EventSet u;
    c.for_each([&](int e) { u |= p.members[static_cast<std::size_t>(e)]; });
    if (!fam.count(u)) {
      r.push_back({"prime family", "configuration " + p.es.format(c) + " is not a family member", p.es.names_of(c)});
      return r;
    }
    if (!got.insert(u).second) {
      r.push_back({"prime family", "two configurations cover the same member", p.es.names_of(c)});
      return r;
    }
  }
  if (got.size() != fam.size()) r.push_back({"prime family", "some family members are not covered", {}});
  return r;
}

bool pairs_secured(const EventStructure& a, const EventStructure& b,
                   const std::vector<std::pair<int, int>>& pairs) {
  const std::size_t n = pairs.size();
  std::vector<std::vector<int>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (a.leq(pairs[i].first, pairs[j].first) || b.leq(pairs[i].second, pairs[j].second)))
        succ[i].push_back(static_cast<int>(j));
  std::vector<int> colour(n, 0);
  std::function<bool(int)> cyclic = [&](int v) -> bool {
    colour[static_cast<std::size_t>(v)] = 1;
    for (int w : succ[static_cast<std::size_t>(v)]) {
      if (colour[static_cast<std::size_t>(w)] == 1) return true;
      if (colour[static_cast<std::size_t>(w)] == 0 && cyclic(w)) return true;
    }
    colour[static_cast<std::size_t>(v)] = 2;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v)
    if (colour[v] == 0 && cyclic(static_cast<int>(v))) return false;
  return true;
}

Pullback pullback(const EsMap& f, const EsMap& g) {
  if (!(f.target == g.target)) throw InputError("pullback: maps have different targets");
  if (!f.total() || !g.total()) throw InputError("pullback: maps must be total");
  const auto& A = f.source;
  const auto& B = g.source;
  const std::size_t ceiling = enumeration_ceiling();

  Pullback out;
  std::map<std::pair<int, int>, int> pair_index;
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < B.size(); ++b)
      if (f(a) == g(b)) {
        pair_index.emplace(std::make_pair(a, b), static_cast<int>(out.pairs.size()));
        out.pairs.emplace_back(a, b);
      }
  if (out.pairs.size() > static_cast<std::size_t>(EventSet::kCapacity))
    throw ResourceError("pullback: too many candidate pairs", EventSet::kCapacity);

  // Depth-first growth of matches one maximal pair at a time; a pair that is
  // maximal on both sides cannot close a causal loop.
  struct State {
    EventSet x, y, pairs;
  };
  std::unordered_set<EventSet> visited{EventSet{}};
  std::vector<State> stack{{}};
  out.matches.push_back(EventSet{});
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    EventSet ea = extensions(A, s.x), eb = extensions(B, s.y);
    ea.for_each([&](int a) {
      eb.for_each([&](int b) {
        if (f(a) != g(b)) return;
        State t{s.x.with(a), s.y.with(b), s.pairs.with(pair_index.at({a, b}))};
        if (!visited.insert(t.pairs).second) return;
        if (visited.size() > ceiling)
          throw ResourceError("pullback: match enumeration exceeded ceiling " + std::to_string(ceiling), ceiling);
        out.matches.push_back(t.pairs);
        stack.push_back(t);
      });
    });
  }
  std::sort(out.matches.begin(), out.matches.end(), canonical_less);

  auto name_of = [&](const EventSet& members, int) {
    std::string s = "[";
    bool first = true;
    members.for_each([&](int p) {
      if (!first) s += ",";
      first = false;
      s += "(" + A.name(out.pairs[static_cast<std::size_t>(p)].first) + "," +
           B.name(out.pairs[static_cast<std::size_t>(p)].second) + ")";
    });
    return s + "]";
  };
  PrimeStructure ps = prime_structure(out.matches, name_of);
  out.apex = ps.es;
  out.prime_members = ps.members;
  out.pi1 = EsMap{ps.es, A, std::vector<int>(static_cast<std::size_t>(ps.es.size()))};
  out.pi2 = EsMap{ps.es, B, std::vector<int>(static_cast<std::size_t>(ps.es.size()))};
  for (int e = 0; e < ps.es.size(); ++e) {
    const auto& pr = out.pairs[static_cast<std::size_t>(ps.top[static_cast<std::size_t>(e)])];
    out.pi1.image[static_cast<std::size_t>(e)] = pr.first;
    out.pi2.image[static_cast<std::size_t>(e)] = pr.second;
  }
  return out;
}

}  // namespace congames
