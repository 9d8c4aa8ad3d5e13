#ifndef CONGAMES_SAMPLING_HPP
#define CONGAMES_SAMPLING_HPP

#include <random>

#include "congames/game.hpp"
#include "congames/valuation.hpp"

namespace congames {

// Random event structure on events "e0", "e1", ...: each forward pair is
// ordered with probability `p_order`, each unordered pair forbidden with
// probability `p_conflict` (rejected if it makes an event inconsistent).
EventStructure random_es(std::mt19937& rng, int events, double p_order = 0.3, double p_conflict = 0.2);

// Game over random_es with each event positive with probability `p_plus`.
Game random_game(std::mt19937& rng, int events, double p_plus = 0.5);

// All-positive valuation on the quarter grid: product of per-event weights,
// then each non-empty configuration perturbed with probability `p_noise`.
// Valid and invalid outcomes both occur.
ConfigValuation random_valuation(std::mt19937& rng, const EventStructure& es, double p_noise = 0.3);

}  // namespace congames

#endif  // CONGAMES_SAMPLING_HPP
