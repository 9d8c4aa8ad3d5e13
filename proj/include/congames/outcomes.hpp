#ifndef CONGAMES_OUTCOMES_HPP
#define CONGAMES_OUTCOMES_HPP

#include <optional>
#include <utility>
#include <vector>

#include "congames/strategy.hpp"
#include "congames/valuation.hpp"

namespace congames {

struct WinningSpec {
  Game game;
  ConfigSet winning;
};

struct PayoffSpec {
  Game game;
  PayoffTable table;
};

// Read the decorations of a game; throw InputError if absent.
WinningSpec winning_of(const Game& g);
PayoffSpec payoff_of(const Game& g);

Report validate_winning(const WinningSpec& w);
Report validate_payoff(const PayoffSpec& x);

// Configurations of S with no +ve one-event extension.
std::vector<Configuration> plus_maximal(const Strategy& s);

struct WinResult {
  bool winning = true;
  std::optional<Configuration> witness;  // a losing +-maximal configuration of S
};

WinResult check_winning(const Strategy& s, const WinningSpec& w);

enum class Combine { kDual, kPar };

// dual: complement on dual(game), one spec. par: "left or right wins" on
// par(game1, game2), two specs.
WinningSpec combine_winning(Combine mode, const std::vector<WinningSpec>& specs);
// dual: negation; par: sum of the side payoffs.
PayoffSpec combine_payoff(Combine mode, const std::vector<PayoffSpec>& specs);

// Interaction of a strategy σ in A against τ in A⊥ (same events).
struct Interaction {
  Pullback pb;
  EsMap to_game;  // σ ∘ π1
};

Interaction interact(const Strategy& sigma, const Strategy& tau);

struct ExpectedPayoff {
  Rational expected;
  std::optional<Rational> win_prob;  // when the payoff game has a winning set
  ConfigValuation product;
  std::map<Configuration, Rational, CanonicalLess> distribution;
  Interaction interaction;
};

// Σ_z p(z) X(σ π1 z) with p the outcome distribution of the product of the
// two strategy valuations. Both strategies must carry valid valuations.
ExpectedPayoff expected_payoff(const Strategy& sigma, const Strategy& tau, const PayoffSpec& x);

// (max, min) of X over the maximal configurations of the interaction.
std::pair<Rational, Rational> play_values(const Strategy& sigma, const Strategy& tau, const PayoffSpec& x);

enum class ValueMode { kExpected, kOptimistic, kPessimistic };

struct ValueReport {
  Rational supinf;
  Rational infsup;
  bool determined = false;
  std::size_t argmax = 0;  // first σ attaining supinf
  std::vector<std::vector<Rational>> matrix;  // [σ][τ]
};

ValueReport value_over_sets(const std::vector<Strategy>& sigmas, const std::vector<Strategy>& taus,
                            const PayoffSpec& x, ValueMode mode);

}  // namespace congames

#endif  // CONGAMES_OUTCOMES_HPP
