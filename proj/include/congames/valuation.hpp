#ifndef CONGAMES_VALUATION_HPP
#define CONGAMES_VALUATION_HPP

#include <map>
#include <vector>

#include "congames/es_map.hpp"
#include "congames/game.hpp"
#include "congames/rational.hpp"

namespace congames {

enum class ValuationMode { kAllPositive, kStrategy };

// Values on the configurations of `subject`. Strategy mode needs `polarity`.
template <typename T>
struct BasicValuation {
  EventStructure subject;
  std::map<Configuration, T, CanonicalLess> values;
  ValuationMode mode = ValuationMode::kAllPositive;
  std::vector<Polarity> polarity;

  const T& at(const Configuration& x) const;  // throws InputError if missing
};

using ConfigValuation = BasicValuation<Rational>;
using RealValuation = BasicValuation<double>;

// v(y) - Σ_{∅≠I, ∪_I x_i a configuration} (-1)^{|I|+1} v(∪_I x_i).
// Requires y ⊆ x_i, all configurations with values.
template <typename T>
T drop(const BasicValuation<T>& v, const Configuration& y, const std::vector<Configuration>& xs);

// Keys are configurations, values total and in [0,1], v(∅) = 1, and the drop
// over every subset of one-event extensions is non-negative. In strategy mode
// the drop is only required over +ve extensions and −ve extensions must not
// change the value. `tolerance` applies to floating-point values only.
template <typename T>
Report validate_valuation(const BasicValuation<T>& v, double tolerance = 1e-9);

// Brute-force drop condition: for every configuration y and every antichain
// of at most `max_sets` configurations strictly above y, the drop is
// non-negative. Structural checks are left to validate_valuation.
template <typename T>
Report full_drop_check(const BasicValuation<T>& v, int max_sets = 20, double tolerance = 1e-9);

// z ↦ vS(π1 z) · vT(π2 z) on the configurations of `apex`.
ConfigValuation product_valuation(const EventStructure& apex, const EsMap& pi1, const ConfigTable& vs,
                                  const EsMap& pi2, const ConfigTable& vt);

// p(z) = drop(v, z, one-event extensions of z). Throws InputError unless v is
// a valid all-positive valuation.
template <typename T>
std::map<Configuration, T, CanonicalLess> outcome_distribution(const BasicValuation<T>& v, double tolerance = 1e-9);

// Valuation of a strategy from its table (strategy mode).
ConfigValuation strategy_valuation(const Game& inner, const ConfigTable& table);

// Constant-one valuation on every configuration of `inner`.
ConfigTable constant_one(const EventStructure& inner);

}  // namespace congames

#endif  // CONGAMES_VALUATION_HPP
