#include "congames/dsl.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace congames::dsl {

namespace {

// ---------------------------------------------------------------- lexing

struct Token {
  enum class Kind { kIdent, kInt, kSym, kEnd };
  Kind kind;
  std::string text;
  Pos pos;
};

const std::set<std::string> kKeywords{"sum", "trace", "mu", "inj", "map"};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Pos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Token::Kind::kIdent, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::kInt, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* sym : {"<=[", "|-", "-|", "/\\", "||"}) {
      std::string s(sym);
      if (src.compare(i, s.size(), s) == 0) {
        out.push_back({Token::Kind::kSym, s, pos});
        advance(s.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string(":,();]+^.=<>").find(c) != std::string::npos) {
      out.push_back({Token::Kind::kSym, std::string(1, c), pos});
      advance(1);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Token::Kind::kEnd, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------- parsing

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Judgement judgement() {
    Judgement j;
    j.left = context("|-");
    expect("|-");
    j.term = term();
    expect("-|");
    j.right = context("");
    finish();
    return j;
  }

  TypeExpr whole_type() {
    TypeExpr t = type();
    finish();
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek() const { return toks_[i_]; }
  bool sym(const std::string& s) const { return peek().kind == Token::Kind::kSym && peek().text == s; }
  bool keyword(const std::string& s) const { return peek().kind == Token::Kind::kIdent && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::kEnd ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(msg + ", found " + got, t.pos.line, t.pos.column);
  }

  void expect(const std::string& s) {
    if (!sym(s)) fail("expected '" + s + "'");
    ++i_;
  }

  void finish() {
    if (peek().kind != Token::Kind::kEnd) fail("expected end of input");
  }

  std::string identifier() {
    if (peek().kind != Token::Kind::kIdent || kKeywords.count(peek().text)) fail("expected an identifier");
    return toks_[i_++].text;
  }

  int integer() {
    if (peek().kind != Token::Kind::kInt) fail("expected an integer");
    return std::stoi(toks_[i_++].text);
  }

  std::vector<Binding> context(const std::string& stop) {
    std::vector<Binding> out;
    if ((stop.empty() && peek().kind == Token::Kind::kEnd) || (!stop.empty() && sym(stop))) return out;
    while (true) {
      Binding b;
      b.var = identifier();
      expect(":");
      b.type = type();
      out.push_back(std::move(b));
      if (!sym(",")) break;
      ++i_;
    }
    return out;
  }

  TypeExpr type() {
    TypeExpr first = par_type();
    if (!sym("+")) return first;
    TypeExpr s{TypeExpr::Kind::kSum, "", {first}};
    while (sym("+")) {
      ++i_;
      s.args.push_back(par_type());
    }
    return s;
  }

  TypeExpr par_type() {
    TypeExpr t = postfix_type();
    while (sym("||")) {
      ++i_;
      t = TypeExpr{TypeExpr::Kind::kPar, "", {t, postfix_type()}};
    }
    return t;
  }

  TypeExpr postfix_type() {
    TypeExpr t = primary_type();
    while (sym("^")) {
      ++i_;
      t = TypeExpr{TypeExpr::Kind::kDual, "", {t}};
    }
    return t;
  }

  TypeExpr primary_type() {
    if (sym("(")) {
      ++i_;
      TypeExpr t = type();
      expect(")");
      return t;
    }
    return TypeExpr::named(identifier());
  }

  CExpr cexpr() {
    if (keyword("inj") || keyword("map")) {
      bool inj = peek().text == "inj";
      ++i_;
      expect("<");
      CExpr e;
      if (inj) {
        e.kind = CExpr::Kind::kInj;
        e.index = integer();
      } else {
        e.kind = CExpr::Kind::kMap;
        e.name = identifier();
      }
      expect(">");
      e.args.push_back(cexpr());
      return e;
    }
    if (sym("(")) {
      ++i_;
      CExpr e{CExpr::Kind::kPair, "", 0, {}};
      e.args.push_back(cexpr());
      expect(",");
      e.args.push_back(cexpr());
      expect(")");
      return e;
    }
    CExpr e;
    e.name = identifier();
    return e;
  }

  Term copycat_rest(CExpr p, Pos pos) {
    expect("<=[");
    Term t;
    t.kind = Term::Kind::kCopyCat;
    t.pos = pos;
    t.p = std::move(p);
    t.type = type();
    expect("]");
    t.q = cexpr();
    return t;
  }

  Term term() {
    Pos pos = peek().pos;
    if (keyword("sum")) {
      ++i_;
      Term t;
      t.kind = Term::Kind::kSum;
      t.pos = pos;
      expect("(");
      if (!sym(")")) {
        t.args.push_back(term());
        while (sym(",")) {
          ++i_;
          t.args.push_back(term());
        }
      }
      expect(")");
      return t;
    }
    if (keyword("trace")) {
      ++i_;
      Term t;
      t.kind = Term::Kind::kTrace;
      t.pos = pos;
      t.x = identifier();
      expect("=");
      t.y = identifier();
      expect(".");
      t.args.push_back(term());
      return t;
    }
    if (keyword("mu")) {
      ++i_;
      Term t;
      t.kind = Term::Kind::kMu;
      t.pos = pos;
      t.x = identifier();
      expect(":");
      t.type = type();
      expect(".");
      t.args.push_back(term());
      return t;
    }
    if (sym("(")) {
      // Either a copy-cat term whose left side is a pair, or (t ; u) / (t /\ u).
      std::size_t save = i_;
      try {
        CExpr p = cexpr();
        if (sym("<=[")) return copycat_rest(std::move(p), pos);
      } catch (const SyntaxError&) {
      }
      i_ = save;
      ++i_;
      Term t;
      t.pos = pos;
      t.args.push_back(term());
      if (sym(";"))
        t.kind = Term::Kind::kCompose;
      else if (sym("/\\"))
        t.kind = Term::Kind::kConj;
      else
        fail("expected ';' or '/\\'");
      ++i_;
      t.args.push_back(term());
      expect(")");
      return t;
    }
    return copycat_rest(cexpr(), pos);
  }
};

// ---------------------------------------------------------------- printing

std::string pretty_type(const TypeExpr& t, int context) {
  int prec = 0;
  std::string s;
  switch (t.kind) {
    case TypeExpr::Kind::kName:
      return t.name;
    case TypeExpr::Kind::kDual:
      return pretty_type(t.args[0], 2) + "^";
    case TypeExpr::Kind::kPar:
      prec = 1;
      s = pretty_type(t.args[0], 1) + " || " + pretty_type(t.args[1], 2);
      break;
    case TypeExpr::Kind::kSum:
      prec = 0;
      for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? " + " : "") + pretty_type(t.args[i], 1);
      break;
  }
  return prec < context ? "(" + s + ")" : s;
}

std::string pretty_context(const std::vector<Binding>& ctx) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) s += (i ? ", " : "") + ctx[i].var + ":" + pretty(ctx[i].type);
  return s;
}

}  // namespace

Judgement parse(const std::string& text) { return Parser(text).judgement(); }
TypeExpr parse_type(const std::string& text) { return Parser(text).whole_type(); }

std::string pretty(const TypeExpr& t) { return pretty_type(t, 0); }

std::string pretty(const CExpr& p) {
  switch (p.kind) {
    case CExpr::Kind::kVar:
      return p.name;
    case CExpr::Kind::kInj:
      return "inj<" + std::to_string(p.index) + "> " + pretty(p.args[0]);
    case CExpr::Kind::kMap:
      return "map<" + p.name + "> " + pretty(p.args[0]);
    case CExpr::Kind::kPair:
      return "(" + pretty(p.args[0]) + ", " + pretty(p.args[1]) + ")";
  }
  return {};
}

std::string pretty(const Term& t) {
  switch (t.kind) {
    case Term::Kind::kCopyCat:
      return pretty(t.p) + " <=[" + pretty(t.type) + "] " + pretty(t.q);
    case Term::Kind::kCompose:
      return "(" + pretty(t.args[0]) + " ; " + pretty(t.args[1]) + ")";
    case Term::Kind::kConj:
      return "(" + pretty(t.args[0]) + " /\\ " + pretty(t.args[1]) + ")";
    case Term::Kind::kSum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? ", " : "") + pretty(t.args[i]);
      return s + ")";
    }
    case Term::Kind::kTrace:
      return "trace " + t.x + "=" + t.y + ". " + pretty(t.args[0]);
    case Term::Kind::kMu:
      return "mu " + t.x + ":" + pretty(t.type) + ". " + pretty(t.args[0]);
  }
  return {};
}

std::string pretty(const Judgement& j) {
  std::string s = pretty_context(j.left);
  s += s.empty() ? "|- " : " |- ";
  s += pretty(j.term) + " -|";
  std::string r = pretty_context(j.right);
  return r.empty() ? s : s + " " + r;
}

Game eval_type(const TypeExpr& t, const Env& env) {
  switch (t.kind) {
    case TypeExpr::Kind::kName: {
      auto it = env.games.find(t.name);
      if (it == env.games.end()) throw TypeError("unknown game '" + t.name + "'");
      return it->second;
    }
    case TypeExpr::Kind::kDual:
      return dual(eval_type(t.args[0], env));
    case TypeExpr::Kind::kPar:
      return par(eval_type(t.args[0], env), eval_type(t.args[1], env));
    case TypeExpr::Kind::kSum: {
      std::vector<Game> parts;
      for (const auto& a : t.args) parts.push_back(eval_type(a, env));
      return sum(parts);
    }
  }
  throw InternalError("bad type expression");
}

namespace {

// ---------------------------------------------------------------- typing

bool same_game(const Game& a, const Game& b) { return a.es == b.es && a.polarity == b.polarity; }

std::string at(const Pos& p) { return std::to_string(p.line) + ":" + std::to_string(p.column) + ": "; }

Strategy shell(std::vector<Port> ports) {
  Strategy s;
  s.target = ports_game(ports);
  s.ports = std::move(ports);
  return s;
}

std::vector<Port> concat(std::vector<Port> a, const std::vector<Port>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool var_tuple(const CExpr& p) {
  if (p.kind == CExpr::Kind::kVar) return true;
  return p.kind == CExpr::Kind::kPair && var_tuple(p.args[0]) && var_tuple(p.args[1]);
}

bool wraps_var(const CExpr& p, CExpr::Kind k) {
  return p.kind == k && p.args[0].kind == CExpr::Kind::kVar;
}

bool special_case(const CExpr& p, const CExpr& q) {
  using K = CExpr::Kind;
  if (var_tuple(p) && var_tuple(q)) return true;
  if (p.kind == K::kVar && (wraps_var(q, K::kInj) || wraps_var(q, K::kMap))) return true;
  if (q.kind == K::kVar && (wraps_var(p, K::kInj) || wraps_var(p, K::kMap))) return true;
  return false;
}

class Elaborator {
 public:
  Elaborator(const Env& env, bool dry) : env_(env), dry_(dry) {}

  Strategy top(const Judgement& j) {
    std::vector<Port> declared;
    for (const auto& b : j.left) declared.push_back(Port{b.var, game(b.type), true});
    for (const auto& b : j.right) declared.push_back(Port{b.var, game(b.type), false});
    std::set<std::string> names;
    for (const auto& p : declared)
      if (!names.insert(p.name).second) throw TypeError("variable '" + p.name + "' declared twice");
    Strategy s = build(j.term, &declared);
    if (s.ports.size() != declared.size()) throw TypeError("declared contexts do not match the term");
    std::vector<int> source;
    for (const auto& d : declared) {
      int found = -1;
      for (std::size_t i = 0; i < s.ports.size(); ++i)
        if (s.ports[i].name == d.name) found = static_cast<int>(i);
      if (found < 0) throw TypeError("declared variable '" + d.name + "' is not used by the term");
      const Port& p = s.ports[static_cast<std::size_t>(found)];
      bool fits = p.input == d.input ? same_game(p.game, d.game) : same_game(dual(p.game), d.game);
      if (!fits) throw TypeError("declared type of '" + d.name + "' does not match the term");
      source.push_back(found);
    }
    if (dry_) return shell(declared);
    return with_ports(s, declared, source);
  }

 private:
  const Env& env_;
  bool dry_;
  std::map<std::string, Game> cache_;

  Game game(const TypeExpr& t) {
    std::string key = pretty(t);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_[key] = eval_type(t, env_);
  }

  void vars_of(const CExpr& p, const TypeExpr& t, bool input, std::vector<Port>& out, const Pos& pos) {
    switch (p.kind) {
      case CExpr::Kind::kVar:
        out.push_back(Port{p.name, game(t), input});
        return;
      case CExpr::Kind::kInj:
        if (t.kind != TypeExpr::Kind::kSum) throw TypeError(at(pos) + "injection into non-sum type " + pretty(t));
        if (p.index < 0 || p.index >= static_cast<int>(t.args.size()))
          throw TypeError(at(pos) + "injection index " + std::to_string(p.index) + " out of range for " + pretty(t));
        vars_of(p.args[0], t.args[static_cast<std::size_t>(p.index)], input, out, pos);
        return;
      case CExpr::Kind::kPair:
        if (t.kind != TypeExpr::Kind::kPar) throw TypeError(at(pos) + "pair of non-parallel type " + pretty(t));
        vars_of(p.args[0], t.args[0], input, out, pos);
        vars_of(p.args[1], t.args[1], input, out, pos);
        return;
      case CExpr::Kind::kMap: {
        auto it = env_.maps.find(p.name);
        if (it == env_.maps.end()) throw TypeError(at(pos) + "unknown map '" + p.name + "'");
        if (!same_game(game(TypeExpr::named(it->second.target)), game(t)))
          throw TypeError(at(pos) + "map '" + p.name + "' does not land in " + pretty(t));
        vars_of(p.args[0], TypeExpr::named(it->second.source), input, out, pos);
        return;
      }
    }
  }

  Configuration eval(const CExpr& p, const TypeExpr& t, const std::map<std::string, Configuration>& z) {
    switch (p.kind) {
      case CExpr::Kind::kVar:
        return z.at(p.name);
      case CExpr::Kind::kInj: {
        const TypeExpr& c = t.args[static_cast<std::size_t>(p.index)];
        return embed_side(game(t), std::to_string(p.index), game(c), eval(p.args[0], c, z));
      }
      case CExpr::Kind::kPair: {
        Game g = game(t);
        return embed_side(g, "L", game(t.args[0]), eval(p.args[0], t.args[0], z)) |
               embed_side(g, "R", game(t.args[1]), eval(p.args[1], t.args[1], z));
      }
      case CExpr::Kind::kMap: {
        const NamedMap& m = env_.maps.at(p.name);
        return m.map.apply(eval(p.args[0], TypeExpr::named(m.source), z));
      }
    }
    throw InternalError("bad configuration expression");
  }

  Strategy copycat_term(const Term& t) {
    std::vector<Port> gamma, delta;
    vars_of(t.q, t.type, true, gamma, t.pos);
    vars_of(t.p, t.type, false, delta, t.pos);
    std::vector<Port> ports = concat(gamma, delta);
    std::set<std::string> seen;
    for (const auto& p : ports)
      if (!seen.insert(p.name).second) throw TypeError(at(t.pos) + "variable '" + p.name + "' used twice");
    Game c = game(t.type);
    std::map<std::string, Configuration> empty;
    for (const auto& p : ports) empty[p.name] = {};
    if (!scott_leq(c, eval(t.p, t.type, empty), eval(t.q, t.type, empty)))
      throw TypeError(at(t.pos) + "copy-cat term is not in the Scott order initially");
    if (dry_) return shell(ports);
    if (!special_case(t.p, t.q)) throw TypeError(at(t.pos) + "unsupported general copy-cat term");
    Game target = ports_game(ports);
    std::vector<Configuration> family;
    for (const auto& z : configurations(target.es)) {
      std::map<std::string, Configuration> val;
      for (const auto& p : ports) val[p.name] = side_of(target, p.name, p.game, z);
      if (scott_leq(c, eval(t.p, t.type, val), eval(t.q, t.type, val))) family.push_back(z);
    }
    return strategy_from_family(family, ports);
  }

  // Reorders the ports of `s` to follow `want` (matched by name, side and
  // game); nullopt on mismatch.
  std::optional<Strategy> align(const Strategy& s, const std::vector<Port>& want) {
    if (s.ports.size() != want.size()) return std::nullopt;
    std::vector<int> source;
    for (const auto& w : want) {
      int found = -1;
      for (std::size_t i = 0; i < s.ports.size(); ++i)
        if (s.ports[i].name == w.name && s.ports[i].input == w.input && same_game(s.ports[i].game, w.game))
          found = static_cast<int>(i);
      if (found < 0) return std::nullopt;
      source.push_back(found);
    }
    if (dry_) return shell(want);
    return with_ports(s, want, source);
  }

  Strategy build(const Term& t, const std::vector<Port>* expected) {
    switch (t.kind) {
      case Term::Kind::kCopyCat:
        return copycat_term(t);
      case Term::Kind::kCompose: {
        Strategy a = build(t.args[0], nullptr);
        Strategy b = build(t.args[1], nullptr);
        std::vector<Port> want = concat(a.outputs(), b.outputs());
        for (auto& p : want) p.input = false;
        std::vector<Port> shared = a.outputs();
        for (auto& p : shared) p.input = true;
        auto bb = align(b, concat(shared, b.outputs()));
        if (!bb) throw TypeError(at(t.pos) + "shared context mismatch");
        std::set<std::string> names;
        for (const auto& p : concat(a.inputs(), b.outputs()))
          if (!names.insert(p.name).second) throw TypeError(at(t.pos) + "variable '" + p.name + "' used twice");
        if (dry_) return shell(concat(a.inputs(), b.outputs()));
        return compose(a, *bb);
      }
      case Term::Kind::kSum:
      case Term::Kind::kConj: {
        const char* what = t.kind == Term::Kind::kSum ? "sum" : "conjunction";
        if (t.args.empty()) {
          if (!expected) throw TypeError(at(t.pos) + "cannot infer the contexts of an empty sum");
          return dry_ ? shell(*expected) : minimum_strategy(*expected);
        }
        std::vector<Strategy> parts;
        for (const auto& a : t.args) parts.push_back(build(a, expected));
        for (std::size_t i = 1; i < parts.size(); ++i) {
          auto aligned = align(parts[i], parts[0].ports);
          if (!aligned) throw TypeError(at(t.pos) + std::string(what) + " operands have different contexts");
          parts[i] = *aligned;
        }
        if (dry_) return shell(parts[0].ports);
        if (t.kind == Term::Kind::kConj) return conjunction(parts[0], parts[1]);
        return nsum(parts, parts[0].ports);
      }
      case Term::Kind::kTrace: {
        Strategy a = build(t.args[0], nullptr);
        const Port* px = nullptr;
        const Port* py = nullptr;
        for (const auto& p : a.ports) {
          if (p.name == t.x && p.input) px = &p;
          if (p.name == t.y && !p.input) py = &p;
        }
        if (!px || !py || !same_game(px->game, py->game))
          throw TypeError(at(t.pos) + "trace needs input " + t.x + " and output " + t.y + " of the same type");
        if (dry_) {
          std::vector<Port> rest;
          for (const auto& p : a.ports)
            if (&p != px && &p != py) rest.push_back(p);
          return shell(rest);
        }
        return trace(a, t.x, t.y);
      }
      case Term::Kind::kMu: {
        Game a = game(t.type);
        Strategy body = build(t.args[0], nullptr);
        for (const auto& p : body.inputs())
          if (p.name != t.x) throw TypeError(at(t.pos) + "general recursion requires δ_Γ (unsupported)");
        auto outs = body.outputs();
        bool uses_x = !body.inputs().empty();
        if (outs.size() != 1 || !same_game(outs[0].game, a) || (uses_x && !same_game(body.inputs()[0].game, a)))
          throw TypeError(at(t.pos) + "recursion body must have type " + t.x + ":A |- t -| y:A");
        std::vector<Port> result{Port{outs[0].name, a, false}};
        if (dry_) return shell(result);
        std::vector<Port> self{Port{t.x, a, false}};
        auto step = [&](const Strategy& x) {
          Strategy next = uses_x ? compose(x, body) : body;
          return with_ports(next, self);
        };
        return with_ports(mu_fix(step, self, env_.fuel), result);
      }
    }
    throw InternalError("bad term");
  }
};

}  // namespace

Contexts typecheck(const Judgement& j, const Env& env) {
  Strategy s = Elaborator(env, true).top(j);
  Contexts c;
  for (const auto& p : s.ports) (p.input ? c.left : c.right).push_back({p.name, p.game});
  return c;
}

Strategy elaborate(const Judgement& j, const Env& env) {
  typecheck(j, env);
  return Elaborator(env, false).top(j);
}

}  // namespace congames::dsl
