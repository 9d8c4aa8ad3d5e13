#ifndef CONGAMES_DSL_HPP
#define CONGAMES_DSL_HPP

#include <map>
#include <string>
#include <vector>

#include "congames/es_map.hpp"
#include "congames/strategy.hpp"

namespace congames::dsl {

struct Pos {
  int line = 1;
  int column = 1;
};

// Types: names of games, A^ (dual), A || B, A + B + ...
struct TypeExpr {
  enum class Kind { kName, kDual, kPar, kSum };
  Kind kind = Kind::kName;
  std::string name;
  std::vector<TypeExpr> args;

  static TypeExpr named(std::string n) { return {Kind::kName, std::move(n), {}}; }
  bool operator==(const TypeExpr& o) const { return kind == o.kind && name == o.name && args == o.args; }
};

// Configuration expressions: x, inj<j> p, (p, p), map<f> p.
struct CExpr {
  enum class Kind { kVar, kInj, kPair, kMap };
  Kind kind = Kind::kVar;
  std::string name;  // variable or map name
  int index = 0;     // injection index
  std::vector<CExpr> args;

  bool operator==(const CExpr& o) const {
    return kind == o.kind && name == o.name && index == o.index && args == o.args;
  }
};

struct Term {
  enum class Kind { kCopyCat, kCompose, kSum, kConj, kTrace, kMu };
  Kind kind = Kind::kCopyCat;
  CExpr p;        // copy-cat: p <=[type] q
  CExpr q;
  TypeExpr type;  // copy-cat context type; mu variable type
  std::vector<Term> args;
  std::string x;  // trace x=y / mu x
  std::string y;
  Pos pos;        // not part of equality

  bool operator==(const Term& o) const {
    return kind == o.kind && p == o.p && q == o.q && type == o.type && args == o.args && x == o.x && y == o.y;
  }
};

struct Binding {
  std::string var;
  TypeExpr type;
  bool operator==(const Binding& o) const { return var == o.var && type == o.type; }
};

struct Judgement {
  std::vector<Binding> left;
  Term term;
  std::vector<Binding> right;
  bool operator==(const Judgement& o) const { return left == o.left && term == o.term && right == o.right; }
};

// Throws SyntaxError with line and column.
Judgement parse(const std::string& text);
TypeExpr parse_type(const std::string& text);

std::string pretty(const TypeExpr& t);
std::string pretty(const CExpr& p);
std::string pretty(const Term& t);
std::string pretty(const Judgement& j);

struct NamedMap {
  std::string source;  // game names
  std::string target;
  EsMap map;
};

struct Env {
  std::map<std::string, Game> games;
  std::map<std::string, NamedMap> maps;
  int fuel = 64;
};

Game eval_type(const TypeExpr& t, const Env& env);

struct TypedBinding {
  std::string var;
  Game game;
};

struct Contexts {
  std::vector<TypedBinding> left;
  std::vector<TypedBinding> right;
};

// Infers the contexts of the term and checks them against the declared ones
// (up to moving variables across the turnstile with dual types). Throws
// TypeError naming the violated rule.
Contexts typecheck(const Judgement& j, const Env& env);

// Strategy with ports: declared left context as inputs, right as outputs.
Strategy elaborate(const Judgement& j, const Env& env);

}  // namespace congames::dsl

#endif  // CONGAMES_DSL_HPP
