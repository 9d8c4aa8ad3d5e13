// Random judgements of the strategy language, for parse/pretty round trips.
#ifndef CONGAMES_TESTS_TERM_GEN_HPP
#define CONGAMES_TESTS_TERM_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "congames/dsl.hpp"

namespace term_gen {

using namespace congames::dsl;

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string var() { return std::vector<std::string>{"x", "y", "z", "u", "v'", "w1"}[static_cast<std::size_t>(pick(6))]; }

  TypeExpr type(int depth) {
    int k = depth <= 0 ? 0 : pick(4);
    if (k == 0) return TypeExpr::named(std::vector<std::string>{"A", "B", "C", "G_seq"}[static_cast<std::size_t>(pick(4))]);
    if (k == 1) return {TypeExpr::Kind::kDual, "", {type(depth - 1)}};
    if (k == 2) return {TypeExpr::Kind::kPar, "", {type(depth - 1), type(depth - 1)}};
    TypeExpr s{TypeExpr::Kind::kSum, "", {}};
    for (int i = 0, n = 2 + pick(2); i < n; ++i) s.args.push_back(type(depth - 1));
    return s;
  }

  CExpr cexpr(int depth) {
    int k = depth <= 0 ? 0 : pick(4);
    CExpr c;
    if (k == 0) {
      c.name = var();
    } else if (k == 1) {
      c.kind = CExpr::Kind::kInj;
      c.index = pick(3);
      c.args = {cexpr(depth - 1)};
    } else if (k == 2) {
      c.kind = CExpr::Kind::kPair;
      c.args = {cexpr(depth - 1), cexpr(depth - 1)};
    } else {
      c.kind = CExpr::Kind::kMap;
      c.name = pick(2) ? "f" : "g";
      c.args = {cexpr(depth - 1)};
    }
    return c;
  }

  Term term(int depth) {
    int k = depth <= 0 ? 0 : pick(6);
    Term t;
    if (k == 0) {
      t.p = cexpr(2);
      t.q = cexpr(2);
      t.type = type(2);
    } else if (k == 1) {
      t.kind = Term::Kind::kCompose;
      t.args = {term(depth - 1), term(depth - 1)};
    } else if (k == 2) {
      t.kind = Term::Kind::kSum;
      for (int i = 0, n = pick(3); i < n; ++i) t.args.push_back(term(depth - 1));
    } else if (k == 3) {
      t.kind = Term::Kind::kConj;
      t.args = {term(depth - 1), term(depth - 1)};
    } else if (k == 4) {
      t.kind = Term::Kind::kTrace;
      t.x = var();
      t.y = var();
      t.args = {term(depth - 1)};
    } else {
      t.kind = Term::Kind::kMu;
      t.x = var();
      t.type = type(2);
      t.args = {term(depth - 1)};
    }
    return t;
  }

  std::vector<Binding> context() {
    std::vector<Binding> out;
    for (int i = 0, n = pick(3); i < n; ++i) out.push_back({var(), type(2)});
    return out;
  }

  Judgement judgement() { return {context(), term(3), context()}; }

 private:
  std::mt19937 rng_;
};

}  // namespace term_gen

#endif  // CONGAMES_TESTS_TERM_GEN_HPP
