#include <gtest/gtest.h>

#include "../support/fixtures.hpp"

using namespace congames;

namespace {

// S_i read as a strategy from x:{o+} to y:{p+}.
Strategy s_i_split() {
  return make_strategy(fx::es({"o", "p"}, {{"o", "p"}}),
                       {Port{"x", fx::game({"o+"}), true}, Port{"y", fx::game({"p+"}), false}},
                       {{"o", "x:o"}, {"p", "y:p"}});
}

// A strategy in g seen from the empty game.
Strategy closed(const Strategy& s) { return with_ports(s, {Port{"R", s.target, false}}); }

std::vector<Strategy> suite() {
  return {closed(fx::s_i()),         closed(fx::s_watch()),     closed(fx::tau_half()),
          closed(fx::tau_pure("a")), copycat(fx::g_seq()),      copycat(fx::g_choice()),
          copycat(fx::g_chain3()),   s_i_split(),               closed(minimum_strategy({Port{"", fx::g_watch(), false}}))};
}

std::vector<Game> games() {
  return {fx::g_seq(), fx::g_conc(), fx::g_race(), fx::g_empty(), fx::g_choice(), fx::g_chain3(), fx::g_watch_bare()};
}

Game input_game(const Strategy& s) { return s.inputs().empty() ? fx::g_empty() : s.inputs().front().game; }
Game output_game(const Strategy& s) { return s.outputs().front().game; }

bool iso(const Strategy& a, const Strategy& b) { return iso_equivalent(a, b).has_value(); }

}  // namespace

TEST(Copycat, SeqHasCrossEdges) {
  Strategy cc = copycat(fx::g_seq());
  EXPECT_EQ(cc.inner.size(), 4);
  EXPECT_TRUE(validate_strategy(cc).empty());
  auto ev = [&](const std::string& target) {
    for (int e = 0; e < cc.inner.size(); ++e)
      if (cc.target.es.name(cc.sigma[static_cast<std::size_t>(e)]) == target) return e;
    return -1;
  };
  const auto& es = cc.inner.es;
  EXPECT_TRUE(es.less(ev("R:o"), ev("L:o")));
  EXPECT_TRUE(es.less(ev("L:p"), ev("R:p")));
  EXPECT_TRUE(es.less(ev("R:o"), ev("R:p")));
  EXPECT_FALSE(es.leq(ev("L:p"), ev("R:o")));
  EXPECT_EQ(copycat(fx::g_empty()).inner.size(), 0);
}

TEST(Copycat, ConfigurationsAreScottPairs) {
  for (const Game& a : games()) {
    Strategy cc = copycat(a);
    std::size_t expected = 0;
    auto cs = configurations(a.es);
    for (const auto& x1 : cs)
      for (const auto& x2 : cs) expected += scott_leq(a, x2, x1);
    auto sc = configurations(cc.inner.es);
    EXPECT_EQ(sc.size(), expected);
    Game left = dual(a);
    for (const auto& x : sc) {
      Configuration t = cc.sigma_map().apply(x);
      EXPECT_TRUE(scott_leq(a, side_of(cc.target, "R", a, t), side_of(cc.target, "L", left, t)));
    }
  }
}

TEST(Copycat, ReceptiveAndInnocent) {
  for (const Game& a : games()) {
    StrategyReport r = check_strategy(copycat(a));
    EXPECT_TRUE(r.receptive.holds);
    EXPECT_TRUE(r.innocent.holds);
    EXPECT_EQ(r.deterministic.holds, is_race_free(a));
  }
}

TEST(Checks, Examples) {
  StrategyReport i = check_strategy(fx::s_i());
  EXPECT_TRUE(i.receptive.holds && i.innocent.holds && i.deterministic.holds);
  StrategyReport ii = check_strategy(fx::s_ii());
  EXPECT_FALSE(ii.receptive.holds);  // o only after p
  ASSERT_FALSE(ii.innocent.holds);
  EXPECT_EQ(ii.innocent.witness->events, (std::vector<std::string>{"p", "o"}));
  EXPECT_TRUE(ii.innocent.witness->config.empty());
  StrategyReport race = check_strategy(copycat(fx::g_race()));
  ASSERT_FALSE(race.deterministic.holds);
  EXPECT_EQ(race.deterministic.witness->config, (std::vector<std::string>{"L:p"}));
}

TEST(Checks, ReceptivityFailures) {
  // Missing the Opponent move o.
  Strategy no_o = strategy_in(fx::g_conc(), fx::es({"p"}), {{"p", "p"}});
  EXPECT_FALSE(check_receptive(no_o).holds);
  // Two copies of o answering the same Opponent move.
  EXPECT_THROW(strategy_in(fx::g_conc(), fx::es({"o1", "o2"}), {{"o1", "o"}, {"o2", "o"}}), InputError);
  Strategy twice_conflict = strategy_in(fx::g_conc(), fx::es({"o1", "o2"}, {}, {{"o1", "o2"}}), {{"o1", "o"}, {"o2", "o"}});
  EXPECT_FALSE(check_receptive(twice_conflict).holds);
}

TEST(Compose, IdentityLaws) {
  for (const Strategy& s : suite()) {
    ASSERT_TRUE(validate_strategy(s).empty());
    Strategy right = with_ports(compose(s, copycat(output_game(s))), s.ports);
    EXPECT_TRUE(iso(right, s)) << s.target.es.format(s.target.es.all());
    if (!s.inputs().empty()) {
      Strategy left = with_ports(compose(copycat(input_game(s)), s), s.ports);
      EXPECT_TRUE(iso(left, s));
    }
  }
}

TEST(Compose, PreservesChecksAndIsAssociative) {
  std::vector<Strategy> seq = {copycat(fx::g_seq()), copycat(fx::g_seq()), copycat(fx::g_seq())};
  Strategy ab = compose(compose(seq[0], seq[1]), seq[2]);
  Strategy ba = compose(seq[0], compose(seq[1], seq[2]));
  EXPECT_TRUE(iso(ab, ba));
  Strategy i = s_i_split();
  Strategy cc = copycat(fx::game({"p+"}));
  Strategy l = compose(compose(copycat(fx::game({"o+"})), i), cc);
  Strategy r = compose(copycat(fx::game({"o+"})), compose(i, cc));
  EXPECT_TRUE(iso(l, r));
  for (const Strategy& s : suite()) {
    Strategy c = compose(s, copycat(output_game(s)));
    StrategyReport rep = check_strategy(c);
    EXPECT_TRUE(rep.receptive.holds && rep.innocent.holds);
  }
}

TEST(Compose, MismatchedMiddleGame) {
  EXPECT_THROW(compose(copycat(fx::g_seq()), copycat(fx::g_conc())), InputError);
}

TEST(Compose, WatchInteraction) {
  Strategy sigma = closed(fx::s_watch());
  Strategy tau = make_strategy(fx::tau_half().inner.es, {Port{"R", fx::g_watch(), true}},
                               {{"a", "R:a"}, {"b", "R:b"}, {"w", "R:w"}});
  Composition c = compose_full(sigma, tau);
  std::vector<std::size_t> sizes;
  auto ms = c.interaction.matches;
  std::size_t maximal = 0;
  for (const auto& m : ms) {
    bool top = true;
    for (const auto& n : ms)
      if (n != m && m.subset_of(n)) top = false;
    if (top) {
      ++maximal;
      EXPECT_EQ(m.size(), 2);
    }
  }
  EXPECT_EQ(ms.size(), 5u);
  EXPECT_EQ(maximal, 2u);
  EXPECT_EQ(c.hidden.inner.size(), 0);
}

TEST(Nsum, Examples) {
  std::vector<Port> ports{Port{"", fx::g_conc(), false}};
  Strategy n = nsum({fx::s_i(), fx::s_i()}, ports);
  EXPECT_EQ(n.inner.size(), 3);
  EXPECT_EQ(n.inner.negative().size(), 1);
  EXPECT_EQ(n.inner.es.forbidden().size(), 1u);
  EXPECT_TRUE(n.warnings.empty());
  EXPECT_TRUE(iso(nsum({fx::s_i()}, ports), fx::s_i()));
  Strategy m = nsum({}, {Port{"", fx::g_chain3(), false}});
  EXPECT_EQ(m.inner.size(), 1);
  EXPECT_EQ(m.inner.negative().size(), 1);
  EXPECT_FALSE(check_deterministic(n).holds);
}

TEST(Conjunction, Examples) {
  EXPECT_TRUE(iso(conjunction(fx::s_i(), fx::s_i()), fx::s_i()));
  Strategy m = minimum_strategy({Port{"", fx::g_conc(), false}});
  Strategy c = conjunction(fx::s_i(), m);
  ASSERT_EQ(c.inner.size(), 1);
  EXPECT_EQ(c.target.es.name(c.sigma[0]), "o");
  Strategy left = strategy_in(fx::g_choice(), fx::es({"o", "p1"}, {{"o", "p1"}}), {{"o", "o"}, {"p1", "p1"}});
  Strategy right = strategy_in(fx::g_choice(), fx::es({"o", "p2"}, {{"o", "p2"}}), {{"o", "o"}, {"p2", "p2"}});
  Strategy lr = conjunction(left, right);
  EXPECT_EQ(lr.inner.size(), 1);
  EXPECT_TRUE(lr.inner.positive().empty());
}

TEST(Trace, Examples) {
  EXPECT_EQ(trace(copycat(fx::g_seq()), "L", "R").inner.size(), 0);
  // Feeding back an empty port changes nothing.
  Strategy cc = copycat(fx::g_seq());
  std::map<std::string, std::string> sigma;
  for (int e = 0; e < cc.inner.size(); ++e)
    sigma[cc.inner.es.name(e)] = cc.target.es.name(cc.sigma[static_cast<std::size_t>(e)]);
  Strategy padded = make_strategy(cc.inner.es,
                                  {Port{"x", fx::g_empty(), true}, Port{"L", fx::g_seq(), true},
                                   Port{"R", fx::g_seq(), false}, Port{"y", fx::g_empty(), false}},
                                  sigma);
  EXPECT_TRUE(iso(trace(padded, "x", "y"), cc));
  EXPECT_THROW(trace(cc, "L", "nope"), InputError);
  EXPECT_THROW(trace(cc, "R", "R"), InputError);
  EXPECT_THROW(trace(padded, "x", "R"), InputError);
}

TEST(Mu, ConstantAndIdentityBodies) {
  std::vector<Port> ports{Port{"", fx::g_conc(), false}};
  Strategy fixed = mu_fix([](const Strategy&) { return fx::s_i(); }, ports);
  EXPECT_TRUE(iso(fixed, fx::s_i()));
  Strategy least = mu_fix([](const Strategy& x) { return x; }, ports);
  EXPECT_TRUE(iso(least, minimum_strategy(ports)));
}

TEST(Mu, Errors) {
  // A chain of 2k alternating moves; the body answers one more round each time.
  const int k = 6;
  std::vector<std::string> ev;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < 2 * k; ++i) {
    ev.push_back("m" + std::to_string(10 + i) + (i % 2 ? "+" : "-"));
    if (i) edges.emplace_back("m" + std::to_string(9 + i), "m" + std::to_string(10 + i));
  }
  Game chain = fx::game(ev, edges);
  std::vector<Port> ports{Port{"", chain, false}};
  auto prefix = [&](int n) {
    std::vector<std::string> names;
    std::map<std::string, std::string> sigma;
    std::vector<std::pair<std::string, std::string>> es_edges;
    for (int i = 0; i < n; ++i) {
      names.push_back("m" + std::to_string(10 + i));
      sigma[names.back()] = names.back();
      if (i) es_edges.emplace_back(names[static_cast<std::size_t>(i - 1)], names.back());
    }
    return strategy_in(chain, fx::es(names, es_edges), sigma);
  };
  auto grow = [&](const Strategy& x) { return prefix(std::min(2 * k, x.inner.size() + 2)); };
  try {
    mu_fix(grow, ports, 3);
    FAIL() << "expected fuel exhaustion";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fuel exhausted"), std::string::npos);
  }
  EXPECT_EQ(mu_fix(grow, ports, 10).inner.size(), 2 * k);
  auto jump = [](const Strategy&) { return strategy_in(fx::g_conc(), fx::es({"p"}), {{"p", "p"}}); };
  try {
    mu_fix(jump, {Port{"", fx::g_conc(), false}}, 5);
    FAIL() << "expected monotonicity failure";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not ⊴-monotone at step 0"), std::string::npos) << e.what();
  }
}

TEST(Iso, Examples) {
  auto w = iso_equivalent(fx::s_i(), fx::s_i());
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (std::vector<int>{0, 1}));
  EXPECT_FALSE(iso(fx::s_i(), fx::s_ii()));
  EXPECT_TRUE(iso(with_ports(compose(closed(fx::s_i()), copycat(fx::g_conc())), {Port{"R", fx::g_conc(), false}}),
                  closed(fx::s_i())));
}

TEST(Embedding, MinimumEmbedsEverywhere) {
  for (const Strategy& s : suite()) {
    Strategy m = minimum_strategy(s.ports);
    EXPECT_TRUE(find_embedding(m, s).has_value());
    EXPECT_TRUE(find_embedding(s, s).has_value());
  }
  EXPECT_FALSE(find_embedding(fx::s_i(), minimum_strategy(fx::s_i().ports)).has_value());
}
