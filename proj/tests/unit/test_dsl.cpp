#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "../support/fixtures.hpp"
#include "../support/term_gen.hpp"
#include "congames/document.hpp"
#include "congames/dsl.hpp"

using namespace congames;
using namespace congames::dsl;

namespace {

const std::string kDir = std::string(CONGAMES_SOURCE_DIR) + "/fixtures/dsl/";

Env env() { return load_document(kDir + "env.json").env(); }

std::string source(const std::string& name) {
  std::ifstream in(kDir + name + ".sdsl");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Strategy eval(const std::string& text) { return elaborate(parse(text), env()); }

std::string type_error(const std::string& text) {
  try {
    elaborate(parse(text), env());
  } catch (const TypeError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Parse, Examples) {
  Judgement j = parse("x:A |- y <=[A] x -| y:A");
  EXPECT_EQ(j.term.kind, Term::Kind::kCopyCat);
  ASSERT_EQ(j.left.size(), 1u);
  EXPECT_EQ(j.left[0].var, "x");
  EXPECT_EQ(parse("x:A |- (y <=[A] x ; z <=[A] y) -| z:A").term.kind, Term::Kind::kCompose);
  Judgement s = parse("|- sum() -| y:A");
  EXPECT_EQ(s.term.kind, Term::Kind::kSum);
  EXPECT_TRUE(s.term.args.empty());
  EXPECT_TRUE(s.left.empty());
  EXPECT_EQ(parse_type("A + B || C^"), parse_type("A + (B || (C^))"));
  EXPECT_EQ(pretty(parse_type("(A + B)^")), "(A + B)^");
  // Comments and line breaks.
  EXPECT_EQ(parse("# note\nx:A\n  |- y <=[A] x\n-| y:A\n"), j);
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  try {
    parse("x:A |-\n  y <=[A x -| y:A");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 1);
  }
  EXPECT_THROW(parse("x:A |- y <=[A] x"), SyntaxError);
  EXPECT_THROW(parse("x:A |- y <=[A] x -| y:A junk"), SyntaxError);
  EXPECT_THROW(parse("x:A |- y <=[A] x -| y:A $"), SyntaxError);
  EXPECT_THROW(parse("x:A |- inj<q> y <=[A] x -| y:A"), SyntaxError);
}

TEST(Parse, RoundTripsThroughPretty) {
  term_gen::Gen gen(2024);
  for (int i = 0; i < 1000; ++i) {
    Judgement j = gen.judgement();
    std::string text = pretty(j);
    Judgement back;
    ASSERT_NO_THROW(back = parse(text)) << text;
    ASSERT_EQ(back, j) << text << "\n" << pretty(back);
    EXPECT_EQ(pretty(back), text);
  }
}

TEST(Typecheck, Errors) {
  EXPECT_TRUE(contains(type_error("x:A |- (y <=[A] x ; z <=[B] y) -| z:B"), "shared context mismatch"));
  EXPECT_TRUE(contains(type_error("w:A |- mu z:A. y <=[A] w -| y:A"), "general recursion requires δ_Γ (unsupported)"));
  EXPECT_TRUE(contains(type_error("x:Nope |- y <=[Nope] x -| y:Nope"), "unknown game 'Nope'"));
  EXPECT_TRUE(contains(type_error("x:A |- y <=[A] inj<0> x -| y:A"), "injection into non-sum"));
  EXPECT_TRUE(contains(type_error("x:A |- y <=[A + B] inj<2> x -| y:A + B"), "out of range"));
  EXPECT_TRUE(contains(type_error("x:A |- (y <=[A] x /\\ y <=[B] x) -| y:A"), "different contexts"));
  EXPECT_TRUE(contains(type_error("x:A |- y <=[A] x -| y:B"), "does not match"));
  EXPECT_TRUE(contains(type_error("x:A |- y <=[A] x -| y:A, w:A"), "do not match"));
  EXPECT_TRUE(contains(type_error("x:A |- (y, y) <=[A || A] x -| y:A"), "used twice"));
  EXPECT_TRUE(contains(type_error("x:A |- y <=[A] map<h> x -| y:A"), "unknown map"));
}

TEST(Typecheck, GeneralCopyCatTermsOnlyTypecheck) {
  Env e = env();
  e.games["E"] = fx::game({"q-"});
  Judgement general = parse("z:E + E, w:E |- (inj<0> y, v) <=[(E + E) || E] (z, w) -| y:E, v:E");
  EXPECT_NO_THROW(typecheck(general, e));
  try {
    elaborate(general, e);
    FAIL();
  } catch (const TypeError& err) {
    EXPECT_TRUE(contains(err.what(), "unsupported general copy-cat term"));
  }
}

TEST(Typecheck, DualityRewiring) {
  Contexts a = typecheck(parse(source("copycat")), env());
  Contexts b = typecheck(parse(source("dual")), env());
  ASSERT_EQ(a.left.size(), 1u);
  EXPECT_TRUE(b.left.empty());
  ASSERT_EQ(b.right.size(), 2u);
  EXPECT_TRUE(b.right[0].game == dual(a.left[0].game));
}

TEST(Elaborate, Fixtures) {
  std::vector<std::pair<std::string, int>> sizes = {{"copycat", 4}, {"inj_proj", 4}, {"dual", 4}, {"lift", 4},
                                                    {"pull", 4},    {"trace", 4},    {"split", 8}, {"conj", 6},
                                                    {"mu", 1},      {"sum", 11}};
  for (const auto& [name, n] : sizes) {
    Strategy s = eval(source(name));
    EXPECT_EQ(s.inner.size(), n) << name;
    EXPECT_TRUE(validate_strategy(s).empty()) << name;
    StrategyReport r = check_strategy(s);
    EXPECT_TRUE(r.receptive.holds) << name;
    EXPECT_TRUE(r.innocent.holds) << name;
  }
}

TEST(Elaborate, CopyCatSpecialCases) {
  Game a = fx::g_seq();
  Strategy cc = with_ports(copycat(a), {Port{"x", a, true}, Port{"y", a, false}});
  for (const std::string name : {"copycat", "inj_proj", "lift", "trace"}) {
    Strategy s = eval(source(name));
    EXPECT_TRUE(iso_equivalent(s, cc).has_value()) << name;
  }
  Strategy pull = eval(source("pull"));
  EXPECT_TRUE(iso_equivalent(pull, with_ports(copycat(a), {Port{"y", a, true}, Port{"x", a, false}})).has_value());
  Strategy mu = eval(source("mu"));
  EXPECT_TRUE(iso_equivalent(mu, minimum_strategy(mu.ports)).has_value());
  Strategy empty_sum = eval("x:A |- sum() -| y:A");
  EXPECT_TRUE(iso_equivalent(empty_sum, minimum_strategy(cc.ports)).has_value());
  Strategy conj = eval(source("conj"));
  Game c = fx::g_chain3();
  EXPECT_TRUE(iso_equivalent(conj, with_ports(copycat(c), {Port{"x", c, true}, Port{"y", c, false}})).has_value());
}

TEST(Elaborate, DualityKeepsTheValue) {
  Strategy a = eval(source("copycat"));
  Strategy b = eval(source("dual"));
  EXPECT_TRUE(a.inner == b.inner);
  for (int e = 0; e < a.inner.size(); ++e) {
    std::string ta = a.target.es.name(a.sigma[static_cast<std::size_t>(e)]);
    std::string tb = b.target.es.name(b.sigma[static_cast<std::size_t>(e)]);
    EXPECT_EQ(ta, tb);
  }
  EXPECT_FALSE(a.ports == b.ports);
}

TEST(Elaborate, SumIsNondeterministic) {
  Strategy s = eval(source("sum"));
  EXPECT_FALSE(check_deterministic(s).holds);
  EXPECT_TRUE(check_deterministic(eval(source("conj"))).holds);
}
