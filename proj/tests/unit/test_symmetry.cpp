#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"
#include "congames/symmetry.hpp"

using namespace congames;

namespace {

EventStructure swap_es() { return fx::es({"e1", "e2"}, {}, {{"e1", "e2"}}); }

IsoFamily swap_family(const EventStructure& es) {
  return IsoFamily{es, {{}, {{0, 0}}, {{1, 1}}, {{0, 1}}, {{1, 0}}}};
}

bool is_automorphism(const EventStructure& es, const std::vector<int>& p) {
  for (int a = 0; a < es.size(); ++a)
    for (int b = 0; b < es.size(); ++b)
      if (es.leq(a, b) != es.leq(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)])) return false;
  for (const auto& x : configurations(es)) {
    EventSet y;
    x.for_each([&](int e) { y.insert(p[static_cast<std::size_t>(e)]); });
    if (!es.is_configuration(y)) return false;
  }
  return true;
}

// Restrictions of every automorphism to every configuration: always a valid family.
IsoFamily automorphism_family(const EventStructure& es) {
  std::vector<int> p(static_cast<std::size_t>(es.size()));
  std::iota(p.begin(), p.end(), 0);
  std::set<Bijection> out;
  do {
    if (!is_automorphism(es, p)) continue;
    for (const auto& x : configurations(es)) {
      Bijection b;
      x.for_each([&](int e) { b.emplace_back(e, p[static_cast<std::size_t>(e)]); });
      out.insert(b);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return IsoFamily{es, {out.begin(), out.end()}};
}

void expect_same_pullback(const Pullback& a, const Pullback& b) {
  EXPECT_TRUE(a.apex == b.apex);
  EXPECT_EQ(a.pi1.image, b.pi1.image);
  EXPECT_EQ(a.pi2.image, b.pi2.image);
}

}  // namespace

TEST(Family, Examples) {
  EXPECT_TRUE(validate_isofamily(identity_family(fx::g_conc().es)).empty());
  EventStructure es = swap_es();
  EXPECT_TRUE(validate_isofamily(swap_family(es)).empty());
  IsoFamily hole{es, {{}, {{0, 0}}, {{1, 1}}, {{0, 1}}}};
  Report r = validate_isofamily(hole);
  ASSERT_FALSE(r.empty());
  EXPECT_NE(r[0].rule.find("(i)"), std::string::npos);
  // {o}≅{o} without ∅ fails restriction; {o}→{p} is not a bijection of configurations here.
  IsoFamily no_restriction{fx::g_seq().es, {{{0, 0}}}};
  EXPECT_FALSE(validate_isofamily(no_restriction).empty());
  IsoFamily no_extension{fx::g_seq().es, {{}}};
  EXPECT_FALSE(validate_isofamily(no_extension).empty());
}

TEST(Family, AutomorphismsGiveValidFamiliesPreservingOrder) {
  std::mt19937 rng(31);
  int nontrivial = 0;
  for (int round = 0; round < 150; ++round) {
    EsSpec spec = oracle::random_spec(rng, 1 + round % 5, 0.25, 0.25);
    EventStructure es = EventStructure::from_spec(spec);
    IsoFamily fam = automorphism_family(es);
    ASSERT_TRUE(validate_isofamily(fam).empty()) << es.format(es.all());
    if (fam.bijections.size() > configurations(es).size()) ++nontrivial;
    for (const auto& th : fam.bijections)
      for (const auto& [a, ta] : th)
        for (const auto& [b, tb] : th) EXPECT_EQ(es.leq(a, b), es.leq(ta, tb));
    // Dropping the first non-identity bijection breaks closure under inverses or composites.
    auto it = std::find_if(fam.bijections.begin(), fam.bijections.end(), [](const Bijection& b) {
      return std::any_of(b.begin(), b.end(), [](const auto& p) { return p.first != p.second; });
    });
    if (it == fam.bijections.end()) continue;
    IsoFamily less = fam;
    less.bijections.erase(less.bijections.begin() + (it - fam.bijections.begin()));
    EXPECT_FALSE(validate_isofamily(less).empty());
  }
  EXPECT_GT(nontrivial, 10);
}

TEST(MapSymmetry, Examples) {
  EventStructure es = swap_es();
  IsoFamily swap = swap_family(es), id = identity_family(es);
  EsMap ident = EsMap::identity(es);
  SymmetryReport r = map_symmetry(ident, id, id, &ident);
  EXPECT_TRUE(r.preserves);
  EXPECT_TRUE(r.similar.value());

  EsMap flip{es, es, {1, 0}};
  SymmetryReport s = map_symmetry(ident, swap, swap, &flip);
  EXPECT_TRUE(s.preserves);
  EXPECT_TRUE(s.similar.value());
  SymmetryReport t = map_symmetry(ident, id, id, &flip);
  EXPECT_FALSE(t.similar.value());
  ASSERT_TRUE(t.dissimilar_at);
  EXPECT_EQ(t.dissimilar_at->size(), 1);

  SymmetryReport broken = map_symmetry(ident, swap, id);
  EXPECT_FALSE(broken.preserves);
  ASSERT_TRUE(broken.broken);
  EXPECT_EQ(broken.broken->size(), 1u);
}

TEST(PseudoPullback, IdentityFamilyIsPullback) {
  std::vector<Game> gs = {fx::g_seq(), fx::g_conc(), fx::g_race(), fx::g_choice(), fx::g_chain3(), fx::g_watch_bare()};
  for (const Game& g : gs) {
    EsMap id = EsMap::identity(g.es);
    expect_same_pullback(pseudo_pullback(id, id, identity_family(g.es)), pullback(id, id));
  }
  Strategy s = fx::s_watch();
  Strategy t = fx::tau_half();
  EsMap tmap{t.inner.es, s.target.es, t.sigma};
  expect_same_pullback(pseudo_pullback(s.sigma_map(), tmap, identity_family(s.target.es)), pullback(s.sigma_map(), tmap));
}

TEST(PseudoPullback, SwapMatchesDifferentEvents) {
  EventStructure es = swap_es();
  EventStructure one = fx::es({"a"}), other = fx::es({"b"});
  EsMap f = EsMap::from_names(one, es, {{"a", "e1"}});
  EsMap g = EsMap::from_names(other, es, {{"b", "e2"}});
  EXPECT_EQ(pullback(f, g).apex.size(), 0);
  EXPECT_EQ(pseudo_pullback(f, g, swap_family(es)).apex.size(), 1);
}

TEST(PseudoPullback, PathObjectRecoversFamily) {
  std::vector<IsoFamily> fams = {swap_family(swap_es()), identity_family(fx::g_choice().es)};
  std::mt19937 rng(4);
  for (int i = 0; i < 30; ++i) fams.push_back(automorphism_family(EventStructure::from_spec(oracle::random_spec(rng, 4, 0.2, 0.3))));
  for (const auto& fam : fams) {
    EsMap id = EsMap::identity(fam.subject);
    Pullback p = pseudo_pullback(id, id, fam);
    EXPECT_EQ(configurations(p.apex).size(), fam.bijections.size());
  }
}

TEST(Similar, Examples) {
  EXPECT_TRUE(strategies_similar(fx::s_i(), fx::s_i()));
  EXPECT_FALSE(strategies_similar(fx::s_i(), fx::s_ii()));
  Strategy cc = copycat(fx::g_seq());
  Strategy cc2 = compose(cc, cc);
  ASSERT_TRUE(iso_equivalent(cc, cc2));
  EXPECT_TRUE(strategies_similar(cc, cc2));

  Game gw = fx::game({"w+"});
  Strategy dup = strategy_in(gw, fx::es({"w1", "w2"}, {}, {{"w1", "w2"}}), {{"w1", "w"}, {"w2", "w"}});
  Strategy single = strategy_in(gw, fx::es({"w"}), {{"w", "w"}});
  IsoFamily fam = swap_family(dup.inner.es);
  EXPECT_FALSE(iso_equivalent(dup, single));
  EXPECT_FALSE(strategies_similar(dup, single));
  EXPECT_TRUE(strategies_similar(dup, single, &fam));
  EXPECT_TRUE(strategies_similar(single, dup, nullptr, &fam));
}

TEST(Similar, ReflexiveAndSymmetric) {
  std::vector<Strategy> suite = {fx::s_i(), fx::s_ii(), copycat(fx::g_seq()), copycat(fx::g_choice()), fx::s_watch(),
                                 fx::tau_half(), nsum({fx::s_i(), fx::s_i()}, fx::s_i().ports)};
  for (const auto& a : suite) {
    EXPECT_TRUE(strategies_similar(a, a));
    for (const auto& b : suite) {
      if (!(a.target == b.target)) continue;
      EXPECT_EQ(strategies_similar(a, b).has_value(), strategies_similar(b, a).has_value());
    }
  }
}
