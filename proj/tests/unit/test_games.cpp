#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"

using namespace congames;
using oracle::Names;

namespace {

std::vector<Game> fixture_games() {
  return {fx::g_seq(), fx::g_conc(), fx::g_race(), fx::g_empty(), fx::g_choice(), fx::g_chain3(), fx::g_watch()};
}

// x ⊑ y by searching every configuration z for x ⊇⁻ z ⊆⁺ y.
bool scott_brute(const Game& g, const Configuration& x, const Configuration& y) {
  for (const auto& z : configurations(g.es)) {
    if (!z.subset_of(x) || !z.subset_of(y)) continue;
    if (!((x - z) & g.positive()).empty()) continue;
    if (!((y - z) & g.negative()).empty()) continue;
    return true;
  }
  return false;
}

Game random_game(std::mt19937& rng, int n) {
  EsSpec spec = oracle::random_spec(rng, n);
  std::bernoulli_distribution plus(0.5);
  std::map<std::string, Polarity> pol;
  for (const auto& e : spec.events) pol[e] = plus(rng) ? Polarity::kPlus : Polarity::kMinus;
  return Game::make(EventStructure::from_spec(spec), pol);
}

}  // namespace

TEST(Dual, FlipsPolarityKeepsStructure) {
  Game d = dual(fx::g_seq());
  EXPECT_TRUE(d.es == fx::g_seq().es);
  EXPECT_EQ(d.pol(d.es.index("o")), Polarity::kPlus);
  EXPECT_EQ(d.pol(d.es.index("p")), Polarity::kMinus);
  EXPECT_TRUE(dual(dual(fx::g_conc())) == fx::g_conc());
  EXPECT_EQ(dual(fx::g_empty()).size(), 0);
}

TEST(Dual, ComplementsWinningAndNegatesPayoff) {
  Game d = dual(fx::g_watch());
  ASSERT_TRUE(d.winning && d.payoff);
  EXPECT_EQ(d.winning->size(), 4u);
  EXPECT_FALSE(d.winning->count(Configuration{}));
  for (const auto& [x, v] : *d.payoff) EXPECT_EQ(v, -fx::g_watch().payoff->at(x));
}

TEST(Par, Examples) {
  Game p = par(fx::g_seq(), fx::g_seq());
  EXPECT_EQ(p.size(), 4);
  EXPECT_TRUE(p.es.leq(p.es.index("L:o"), p.es.index("L:p")));
  EXPECT_FALSE(p.es.leq(p.es.index("L:o"), p.es.index("R:p")));
  EXPECT_EQ(configurations(par(fx::g_race(), fx::g_race()).es).size(), 9u);
  EXPECT_TRUE(game_isomorphism(par(fx::g_choice(), fx::g_empty()), fx::g_choice()).has_value());
}

TEST(Par, AssociativeAndCommutativeUpToRenaming) {
  auto gs = fixture_games();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < gs.size(); ++j) {
      EXPECT_TRUE(game_isomorphism(par(gs[i], gs[j]), par(gs[j], gs[i])).has_value());
      std::size_t k = (i + j) % gs.size();
      if (gs[i].size() + gs[j].size() + gs[k].size() > 9) continue;
      EXPECT_TRUE(game_isomorphism(par(par(gs[i], gs[j]), gs[k]), par(gs[i], par(gs[j], gs[k]))).has_value());
    }
}

TEST(Par, ConfigurationsSplit) {
  Game a = fx::g_choice(), b = fx::g_race();
  Game p = par(a, b);
  std::size_t n = 0;
  for (const auto& x : configurations(p.es)) {
    EXPECT_TRUE(a.es.is_configuration(side_of(p, "L", a, x)));
    EXPECT_TRUE(b.es.is_configuration(side_of(p, "R", b, x)));
    EXPECT_EQ(embed_side(p, "L", a, side_of(p, "L", a, x)) | embed_side(p, "R", b, side_of(p, "R", b, x)), x);
    ++n;
  }
  EXPECT_EQ(n, configurations(a.es).size() * configurations(b.es).size());
}

TEST(Sum, NeverMixesComponents) {
  Game s = sum({fx::g_seq(), fx::g_seq()});
  auto cs = configurations(s.es);
  EXPECT_EQ(cs.size(), 5u);
  for (const auto& x : cs) {
    bool left = !side_of(s, "0", fx::g_seq(), x).empty();
    bool right = !side_of(s, "1", fx::g_seq(), x).empty();
    EXPECT_FALSE(left && right);
  }
  EXPECT_TRUE(game_isomorphism(sum({fx::g_choice()}), fx::g_choice()).has_value());
  EXPECT_EQ(sum({}).size(), 0);
}

TEST(Race, Examples) {
  auto w = find_race(fx::g_race());
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->x.empty());
  EXPECT_EQ(fx::g_race().es.name(w->e1), "o");
  EXPECT_EQ(fx::g_race().es.name(w->e2), "p");
  EXPECT_TRUE(is_race_free(fx::g_watch()));
  EXPECT_TRUE(is_race_free(fx::g_seq()));
  EXPECT_TRUE(is_race_free(fx::g_choice()));
}

TEST(Race, WitnessIsARace) {
  std::mt19937 rng(3);
  for (int round = 0; round < 200; ++round) {
    Game g = random_game(rng, 1 + round % 6);
    auto w = find_race(g);
    if (!w) continue;
    EXPECT_TRUE(g.es.is_configuration(w->x.with(w->e1)));
    EXPECT_TRUE(g.es.is_configuration(w->x.with(w->e2)));
    EXPECT_NE(g.pol(w->e1), g.pol(w->e2));
    EXPECT_FALSE(g.es.is_configuration(w->x.with(w->e1).with(w->e2)));
  }
}

TEST(Scott, Examples) {
  Game g = fx::g_conc();
  auto c = [&](std::vector<std::string> ids) { return g.es.set_of(ids); };
  EXPECT_TRUE(scott_leq(g, c({"o"}), c({})));
  EXPECT_TRUE(scott_leq(g, c({}), c({"p"})));
  EXPECT_TRUE(scott_leq(g, c({"o"}), c({"p"})));
  EXPECT_FALSE(scott_leq(g, c({}), c({"o"})));
}

TEST(Scott, AgreesWithSearchAndIsPartialOrder) {
  std::mt19937 rng(23);
  std::vector<Game> gs = fixture_games();
  for (int i = 0; i < 60; ++i) gs.push_back(random_game(rng, 1 + i % 6));
  for (const auto& g : gs) {
    auto cs = configurations(g.es);
    const std::size_t n = cs.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        le[i][j] = scott_leq(g, cs[i], cs[j]);
        ASSERT_EQ(le[i][j], scott_brute(g, cs[i], cs[j]));
      }
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_TRUE(le[i][i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) EXPECT_FALSE(le[i][j] && le[j][i]);
        for (std::size_t k = 0; k < n; ++k)
          if (le[i][j] && le[j][k]) EXPECT_TRUE(le[i][k]);
      }
    }
  }
}

TEST(Levels, OrderValidation) {
  LevelOrder o = LevelOrder::closure({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(validate_level_order(o).empty());
  EXPECT_TRUE(o.le("a", "c"));
  EXPECT_FALSE(o.le("c", "a"));
  EXPECT_THROW(LevelOrder::closure({"a"}, {{"a", "zz"}}), InputError);
  LevelOrder broken{{"a", "b"}, {{"a", "b"}}};
  EXPECT_FALSE(validate_level_order(broken).empty());
}

TEST(Levels, GameClause) {
  Game g = fx::g_seq();
  g.level = std::vector<std::string>{"l", "l"};
  EXPECT_TRUE(check_levels(LevelOrder::closure({"l"}, {}), g).empty());
  LevelOrder two = LevelOrder::closure({"l1", "l2"}, {{"l1", "l2"}});
  g.level = std::vector<std::string>{"l2", "l1"};  // o at l2, p at l1
  Report r = check_levels(two, g);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].rule, "game level");
  EXPECT_EQ(r[0].witness, (std::vector<std::string>{"o", "p"}));
  g.level = std::vector<std::string>{"l2", "nowhere"};
  EXPECT_THROW(check_levels(two, g), InputError);
  g.level = std::vector<std::string>{"l2"};
  EXPECT_THROW(check_levels(two, g), InputError);
  EXPECT_TRUE(check_levels(two, fx::g_seq()).empty());
}

TEST(Levels, StrategyClause) {
  Strategy s = fx::s_i();
  s.target.level = std::vector<std::string>{"lo", "hi"};
  s.inner.level = s.target.level;
  EXPECT_TRUE(check_levels(LevelOrder::closure({"lo", "hi"}, {{"lo", "hi"}}), s).empty());
  Report r = check_levels(LevelOrder::closure({"lo", "hi"}, {}), s);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].rule, "strategy level");
}

TEST(Isomorphism, FindsRenamingsOnly) {
  EXPECT_TRUE(game_isomorphism(fx::g_seq(), fx::game({"x-", "y+"}, {{"x", "y"}})).has_value());
  EXPECT_FALSE(game_isomorphism(fx::g_seq(), fx::g_conc()).has_value());
  EXPECT_FALSE(game_isomorphism(fx::g_seq(), dual(fx::g_seq())).has_value());
  EXPECT_FALSE(game_isomorphism(fx::g_conc(), fx::g_race()).has_value());
}
