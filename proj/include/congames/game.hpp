#ifndef CONGAMES_GAME_HPP
#define CONGAMES_GAME_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "congames/event_structure.hpp"
#include "congames/rational.hpp"

namespace congames {

enum class Polarity : char { kPlus = '+', kMinus = '-' };

inline Polarity flip(Polarity p) { return p == Polarity::kPlus ? Polarity::kMinus : Polarity::kPlus; }
inline char symbol(Polarity p) { return static_cast<char>(p); }

using ConfigSet = std::set<Configuration, CanonicalLess>;
// Per-configuration numbers: payoffs, valuations.
using ConfigTable = std::map<Configuration, Rational, CanonicalLess>;
using PayoffTable = ConfigTable;

// Event structure with polarity. Levels, winning configurations and payoff
// are optional decorations; outcomes.hpp interprets the last two.
struct Game {
  EventStructure es;
  std::vector<Polarity> polarity;                    // per event index
  std::optional<std::vector<std::string>> level;     // per event index
  std::optional<ConfigSet> winning;
  std::optional<PayoffTable> payoff;

  // Polarities given by name; throws InputError unless total.
  static Game make(EventStructure es, const std::map<std::string, Polarity>& pol);

  int size() const { return es.size(); }
  Polarity pol(int e) const { return polarity[static_cast<std::size_t>(e)]; }
  EventSet positive() const;
  EventSet negative() const;

  bool operator==(const Game& o) const;
};

// Polarity totality, level totality, winning/payoff keys being
// configurations and payoff totality.
Report validate_game(const Game& g);

// Polarities flipped, identifiers unchanged. Winning sets become their
// complement and payoffs are negated.
Game dual(const Game& g);

// n-ary juxtaposition with caller-chosen tags (empty tag = no prefix).
// Decorations survive when every part carries them: levels are inherited,
// a configuration wins when some side wins, payoffs add.
Game par_tagged(const std::vector<std::pair<std::string, Game>>& parts);
// Identifiers "L:e" and "R:e".
Game par(const Game& a, const Game& b);

// Juxtaposition with identifiers "0:e", "1:e", ... and every cross-component
// pair forbidden.
Game sum(const std::vector<Game>& parts);

// Restriction of a configuration of par(a, b) (or of a tagged juxtaposition)
// to the side with the given tag, as a configuration of that side.
Configuration side_of(const Game& whole, const std::string& tag, const Game& side, const Configuration& x);
// Inverse of side_of: a side configuration as a set of whole-structure events.
Configuration embed_side(const Game& whole, const std::string& tag, const Game& side, const Configuration& x);

struct RaceWitness {
  Configuration x;
  int e1 = -1;
  int e2 = -1;
};

// Empty when race-free; otherwise the first (x, e, e') in canonical order.
std::optional<RaceWitness> find_race(const Game& g);
inline bool is_race_free(const Game& g) { return !find_race(g).has_value(); }

// x ⊑ y: some configuration z has x ⊇⁻ z ⊆⁺ y. Since z = x ∩ y is always a
// configuration, this holds iff x \ y is all −ve and y \ x is all +ve.
bool scott_leq(const Game& g, const Configuration& x, const Configuration& y);

// Preorder on level identifiers.
struct LevelOrder {
  std::vector<std::string> levels;
  std::set<std::pair<std::string, std::string>> leq;

  // Reflexive-transitive closure of `generators`.
  static LevelOrder closure(std::vector<std::string> levels,
                            const std::vector<std::pair<std::string, std::string>>& generators);
  bool le(const std::string& a, const std::string& b) const { return leq.count({a, b}) > 0; }
};

// Reflexivity, transitivity, and that the relation mentions only known levels.
Report validate_level_order(const LevelOrder& order);

// Game clause: every e <= e' has level(e) ⪯ level(e'). A game without levels
// sits at a single level and always passes. Throws InputError on a partial
// level mapping or an unknown level.
Report check_levels(const LevelOrder& order, const Game& g);

// Lexicographically least injective map a -> b (as an event table) with
// compatible(e, f) for every mapped pair, preserving and reflecting order and
// consistency, whose image is down-closed. With `onto`, an isomorphism.
std::optional<std::vector<int>> find_embedding(const EventStructure& a, const EventStructure& b,
                                               const std::function<bool(int, int)>& compatible, bool onto);

// Lexicographically least isomorphism a -> b (as an event table) such that
// compatible(e, f) holds for every mapped pair, or nullopt.
std::optional<std::vector<int>> find_isomorphism(const EventStructure& a, const EventStructure& b,
                                                 const std::function<bool(int, int)>& compatible);

// Isomorphism of games respecting polarity.
std::optional<std::vector<int>> game_isomorphism(const Game& a, const Game& b);

}  // namespace congames

#endif  // CONGAMES_GAME_HPP
