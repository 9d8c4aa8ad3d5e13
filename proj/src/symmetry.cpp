#include "congames/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace congames {

namespace {

Bijection normalized(Bijection b) {
  std::sort(b.begin(), b.end());
  return b;
}

Bijection inverse(const Bijection& b) {
  Bijection r;
  for (auto [x, y] : b) r.emplace_back(y, x);
  return normalized(r);
}

std::vector<std::string> describe(const EventStructure& es, const Bijection& b) {
  std::vector<std::string> out;
  for (auto [x, y] : b) out.push_back(es.name(x) + "->" + es.name(y));
  return out;
}

}  // namespace

Configuration domain(const Bijection& b) {
  Configuration c;
  for (auto [x, y] : b) c.insert(x);
  return c;
}

Configuration codomain(const Bijection& b) {
  Configuration c;
  for (auto [x, y] : b) c.insert(y);
  return c;
}

bool IsoFamily::contains(const Bijection& b) const {
  Bijection n = normalized(b);
  return std::find(bijections.begin(), bijections.end(), n) != bijections.end();
}

IsoFamily identity_family(const EventStructure& es) {
  IsoFamily fam{es, {}};
  for (const auto& x : configurations(es)) {
    Bijection b;
    x.for_each([&](int e) { b.emplace_back(e, e); });
    fam.bijections.push_back(b);
  }
  return fam;
}

Report validate_isofamily(const IsoFamily& fam) {
  Report r;
  const auto& es = fam.subject;
  std::set<Bijection> members;
  for (const auto& b : fam.bijections) {
    Bijection n = normalized(b);
    Configuration d = domain(n), c = codomain(n);
    if (d.size() != static_cast<int>(n.size()) || c.size() != static_cast<int>(n.size()) || !es.is_configuration(d) ||
        !es.is_configuration(c))
      r.push_back({"shape", "not a bijection between configurations", describe(es, n)});
    members.insert(n);
  }
  if (members.empty()) r.push_back({"non-empty", "the family has no bijections", {}});
  if (!r.empty()) return r;
  auto configs = configurations(es);

  // (i) groupoid
  for (const auto& x : configs) {
    Bijection id;
    x.for_each([&](int e) { id.emplace_back(e, e); });
    if (!members.count(id)) r.push_back({"(i) identity", "identity on " + es.format(x) + " missing", es.names_of(x)});
  }
  std::map<Configuration, std::vector<const Bijection*>, CanonicalLess> from;
  for (const auto& b : members) from[domain(b)].push_back(&b);
  for (const auto& b : members) {
    if (!members.count(inverse(b))) r.push_back({"(i) inverse", "inverse missing", describe(es, b)});
    auto it = from.find(codomain(b));
    if (it == from.end()) continue;
    for (const Bijection* c : it->second) {
      std::map<int, int> cm(c->begin(), c->end());
      Bijection comp;
      for (auto [x, y] : b) comp.emplace_back(x, cm.at(y));
      comp = normalized(comp);
      if (!members.count(comp)) {
        auto w = describe(es, b);
        auto w2 = describe(es, *c);
        w.insert(w.end(), w2.begin(), w2.end());
        r.push_back({"(i) composite", "composite missing", w});
      }
    }
  }
  // (ii) restriction and (iii) extension
  for (const auto& b : members) {
    Configuration x = domain(b);
    std::map<int, int> bm(b.begin(), b.end());
    for (const auto& sub : configs) {
      if (sub.subset_of(x)) {
        Bijection restricted;
        Configuration image;
        sub.for_each([&](int e) {
          restricted.emplace_back(e, bm.at(e));
          image.insert(bm.at(e));
        });
        if (!es.is_configuration(image) || !members.count(restricted))
          r.push_back({"(ii) restriction", "restriction to " + es.format(sub) + " missing", describe(es, b)});
      } else if (x.subset_of(sub)) {
        bool extended = false;
        for (const Bijection* c : from[sub]) {
          std::map<int, int> cm(c->begin(), c->end());
          if (std::all_of(b.begin(), b.end(), [&](auto p) { return cm.at(p.first) == p.second; })) {
            extended = true;
            break;
          }
        }
        if (!extended)
          r.push_back({"(iii) extension", "no extension to " + es.format(sub), describe(es, b)});
      }
    }
  }
  return r;
}

SymmetryReport map_symmetry(const EsMap& f, const IsoFamily& fam_a, const IsoFamily& fam_b, const EsMap* g) {
  SymmetryReport out;
  for (const auto& b : fam_a.bijections) {
    Bijection moved;
    for (auto [x, y] : b) moved.emplace_back(f(x), f(y));
    if (!fam_b.contains(moved)) {
      out.preserves = false;
      out.broken = b;
      break;
    }
  }
  if (g) {
    out.similar = true;
    for (const auto& x : configurations(f.source)) {
      Bijection pairs;
      x.for_each([&](int e) { pairs.emplace_back(f(e), (*g)(e)); });
      if (!fam_b.contains(pairs)) {
        out.similar = false;
        out.dissimilar_at = x;
        break;
      }
    }
  }
  return out;
}

Pullback pseudo_pullback(const EsMap& f, const EsMap& g, const IsoFamily& fam_c) {
  if (!(f.target == g.target) || !(fam_c.subject == f.target)) throw InputError("pseudo-pullback: targets differ");
  if (!f.total() || !g.total()) throw InputError("pseudo-pullback: maps must be total");
  const auto& A = f.source;
  const auto& B = g.source;
  std::map<Configuration, std::vector<Configuration>, CanonicalLess> over_a, over_b;
  for (const auto& x : configurations(A)) over_a[f.apply(x)].push_back(x);
  for (const auto& y : configurations(B)) over_b[g.apply(y)].push_back(y);

  Pullback out;
  std::map<std::pair<int, int>, int> pair_index;
  std::set<Bijection> seen;
  std::vector<Bijection> raw;
  const std::size_t ceiling = enumeration_ceiling();
  for (const auto& phi : fam_c.bijections) {
    auto ia = over_a.find(domain(phi));
    auto ib = over_b.find(codomain(phi));
    if (ia == over_a.end() || ib == over_b.end()) continue;
    std::map<int, int> pm(phi.begin(), phi.end());
    for (const auto& x : ia->second)
      for (const auto& y : ib->second) {
        std::map<int, int> by_image;
        y.for_each([&](int b) { by_image[g(b)] = b; });
        Bijection theta;
        x.for_each([&](int a) { theta.emplace_back(a, by_image.at(pm.at(f(a)))); });
        if (!pairs_secured(A, B, theta) || !seen.insert(theta).second) continue;
        if (seen.size() > ceiling) throw ResourceError("pseudo-pullback: match enumeration exceeded ceiling", ceiling);
        raw.push_back(theta);
      }
  }
  for (const auto& theta : raw)
    for (auto p : theta) pair_index.emplace(p, 0);
  int k = 0;
  for (auto& [p, i] : pair_index) {
    i = k++;
    out.pairs.push_back(p);
  }
  if (out.pairs.size() > static_cast<std::size_t>(EventSet::kCapacity))
    throw ResourceError("pseudo-pullback: too many candidate pairs", EventSet::kCapacity);
  for (const auto& theta : raw) {
    EventSet m;
    for (auto p : theta) m.insert(pair_index.at(p));
    out.matches.push_back(m);
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

namespace {

// Every total map S -> T over the game (σ_T m = σ_S), in lexicographic order.
void for_each_map(const Strategy& s, const Strategy& t, const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = s.inner.size();
  std::vector<int> m(static_cast<std::size_t>(n), -1);
  std::size_t nodes = 0;
  const std::size_t ceiling = enumeration_ceiling();
  std::function<bool(int)> go = [&](int e) -> bool {
    if (e == n) {
      EsMap em{s.inner.es, t.inner.es, m};
      return validate_map(em).violations.empty() && visit(m);
    }
    if (++nodes > ceiling) throw ResourceError("similarity search exceeded ceiling", ceiling);
    for (int c = 0; c < t.inner.size(); ++c) {
      if (t.sigma[static_cast<std::size_t>(c)] != s.sigma[static_cast<std::size_t>(e)]) continue;
      bool okay = true;
      for (int d = 0; d < e && okay; ++d)
        if (m[static_cast<std::size_t>(d)] == c && s.inner.es.is_consistent(EventSet::of({d, e}))) okay = false;
      if (!okay) continue;
      m[static_cast<std::size_t>(e)] = c;
      if (go(e + 1)) return true;
    }
    m[static_cast<std::size_t>(e)] = -1;
    return false;
  };
  go(0);
}

bool similar_to_identity(const EventStructure& es, const std::vector<int>& h, const IsoFamily& fam) {
  for (const auto& x : configurations(es)) {
    Bijection pairs;
    x.for_each([&](int e) { pairs.emplace_back(h[static_cast<std::size_t>(e)], e); });
    if (!fam.contains(pairs)) return false;
  }
  return true;
}

}  // namespace

std::optional<Similarity> strategies_similar(const Strategy& s1, const Strategy& s2, const IsoFamily* fam1,
                                             const IsoFamily* fam2) {
  if (!(s1.target.es == s2.target.es) || s1.target.polarity != s2.target.polarity) return std::nullopt;
  IsoFamily id1, id2;
  if (!fam1) {
    id1 = identity_family(s1.inner.es);
    fam1 = &id1;
  }
  if (!fam2) {
    id2 = identity_family(s2.inner.es);
    fam2 = &id2;
  }
  std::optional<Similarity> found;
  for_each_map(s1, s2, [&](const std::vector<int>& f) {
    for_each_map(s2, s1, [&](const std::vector<int>& g) {
      std::vector<int> gf(f.size()), fg(g.size());
      for (std::size_t e = 0; e < f.size(); ++e) gf[e] = g[static_cast<std::size_t>(f[e])];
      for (std::size_t e = 0; e < g.size(); ++e) fg[e] = f[static_cast<std::size_t>(g[e])];
      if (similar_to_identity(s1.inner.es, gf, *fam1) && similar_to_identity(s2.inner.es, fg, *fam2)) {
        found = Similarity{f, g};
        return true;
      }
      return false;
    });
    return found.has_value();
  });
  return found;
}

}  // namespace congames
