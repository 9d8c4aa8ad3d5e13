#include "congames/outcomes.hpp"

#include <algorithm>

namespace congames {

namespace {

void require_same_events(const Game& a, const Game& b, const char* what) {
  if (!(a.es == b.es)) throw InputError(std::string(what) + ": games differ");
}

}  // namespace

WinningSpec winning_of(const Game& g) {
  if (!g.winning) throw InputError("game has no winning set");
  return {g, *g.winning};
}

PayoffSpec payoff_of(const Game& g) {
  if (!g.payoff) throw InputError("game has no payoff table");
  return {g, *g.payoff};
}

Report validate_winning(const WinningSpec& w) {
  Report r;
  for (const auto& x : w.winning)
    if (!w.game.es.is_configuration(x))
      r.push_back({"winning configuration", w.game.es.format(x) + " is not a configuration", w.game.es.names_of(x)});
  return r;
}

Report validate_payoff(const PayoffSpec& x) {
  Report r;
  for (const auto& [c, v] : x.table)
    if (!x.game.es.is_configuration(c))
      r.push_back({"payoff configuration", x.game.es.format(c) + " is not a configuration", x.game.es.names_of(c)});
  for (const auto& c : configurations(x.game.es))
    if (!x.table.count(c)) r.push_back({"payoff total", "no payoff for " + x.game.es.format(c), x.game.es.names_of(c)});
  return r;
}

std::vector<Configuration> plus_maximal(const Strategy& s) {
  std::vector<Configuration> out;
  EventSet pos = s.inner.positive();
  for (const auto& x : configurations(s.inner.es))
    if (!extensions(s.inner.es, x).intersects(pos)) out.push_back(x);
  return out;
}

WinResult check_winning(const Strategy& s, const WinningSpec& w) {
  require_same_events(s.target, w.game, "check_winning");
  EsMap m = s.sigma_map();
  for (const auto& x : plus_maximal(s))
    if (!w.winning.count(m.apply(x))) return {false, x};
  return {};
}

WinningSpec combine_winning(Combine mode, const std::vector<WinningSpec>& specs) {
  auto decorated = [](const WinningSpec& w) {
    Game g = w.game;
    g.winning = w.winning;
    g.payoff.reset();
    return g;
  };
  if (mode == Combine::kDual) {
    if (specs.size() != 1) throw InputError("dual takes one winning spec");
    return winning_of(dual(decorated(specs[0])));
  }
  if (specs.size() != 2) throw InputError("par takes two winning specs");
  return winning_of(par(decorated(specs[0]), decorated(specs[1])));
}

PayoffSpec combine_payoff(Combine mode, const std::vector<PayoffSpec>& specs) {
  auto decorated = [](const PayoffSpec& x) {
    Game g = x.game;
    g.payoff = x.table;
    g.winning.reset();
    return g;
  };
  if (mode == Combine::kDual) {
    if (specs.size() != 1) throw InputError("dual takes one payoff spec");
    return payoff_of(dual(decorated(specs[0])));
  }
  if (specs.size() != 2) throw InputError("par takes two payoff specs");
  return payoff_of(par(decorated(specs[0]), decorated(specs[1])));
}

Interaction interact(const Strategy& sigma, const Strategy& tau) {
  require_same_events(sigma.target, tau.target, "interaction");
  for (int e = 0; e < sigma.target.size(); ++e)
    if (sigma.target.pol(e) == tau.target.pol(e))
      throw InputError("interaction: counter-strategy must play in the dual game");
  Interaction out{pullback(sigma.sigma_map(), tau.sigma_map()), {}};
  out.to_game = compose_maps(out.pb.pi1, sigma.sigma_map());
  return out;
}

ExpectedPayoff expected_payoff(const Strategy& sigma, const Strategy& tau, const PayoffSpec& x) {
  require_same_events(sigma.target, x.game, "expected_payoff");
  if (!sigma.valuation || !tau.valuation) throw InputError("expected payoff needs valuations on both strategies");
  for (const Strategy* s : {&sigma, &tau}) {
    Report r = validate_valuation(strategy_valuation(s->inner, *s->valuation));
    if (!r.empty()) throw InputError("invalid strategy valuation: " + r.front().rule + ": " + r.front().detail);
  }
  ExpectedPayoff out{0, std::nullopt, {}, {}, interact(sigma, tau)};
  const auto& pb = out.interaction.pb;
  out.product = product_valuation(pb.apex, pb.pi1, *sigma.valuation, pb.pi2, *tau.valuation);
  out.distribution = outcome_distribution(out.product);
  if (x.game.winning) out.win_prob = Rational(0);
  for (const auto& [z, p] : out.distribution) {
    Configuration fz = out.interaction.to_game.apply(z);
    out.expected += p * x.table.at(fz);
    if (out.win_prob && x.game.winning->count(fz)) *out.win_prob += p;
  }
  return out;
}

std::pair<Rational, Rational> play_values(const Strategy& sigma, const Strategy& tau, const PayoffSpec& x) {
  require_same_events(sigma.target, x.game, "play_values");
  Interaction in = interact(sigma, tau);
  std::optional<Rational> hi, lo;
  for (const auto& z : configurations(in.pb.apex)) {
    if (!extensions(in.pb.apex, z).empty()) continue;
    const Rational& v = x.table.at(in.to_game.apply(z));
    if (!hi || v > *hi) hi = v;
    if (!lo || v < *lo) lo = v;
  }
  return {*hi, *lo};
}

ValueReport value_over_sets(const std::vector<Strategy>& sigmas, const std::vector<Strategy>& taus,
                            const PayoffSpec& x, ValueMode mode) {
  if (sigmas.empty() || taus.empty()) throw InputError("value_over_sets: empty candidate list");
  ValueReport r;
  for (const auto& s : sigmas) {
    std::vector<Rational> row;
    for (const auto& t : taus) {
      switch (mode) {
        case ValueMode::kExpected:
          row.push_back(expected_payoff(s, t, x).expected);
          break;
        case ValueMode::kOptimistic:
          row.push_back(play_values(s, t, x).first);
          break;
        case ValueMode::kPessimistic:
          row.push_back(play_values(s, t, x).second);
          break;
      }
    }
    r.matrix.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    Rational m = *std::min_element(r.matrix[i].begin(), r.matrix[i].end());
    if (i == 0 || m > r.supinf) {
      r.supinf = m;
      r.argmax = i;
    }
  }
  for (std::size_t j = 0; j < taus.size(); ++j) {
    Rational m = r.matrix[0][j];
    for (std::size_t i = 1; i < sigmas.size(); ++i) m = std::max(m, r.matrix[i][j]);
    if (j == 0 || m < r.infsup) r.infsup = m;
  }
  r.determined = r.supinf == r.infsup;
  return r;
}

}  // namespace congames
