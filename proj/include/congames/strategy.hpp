#ifndef CONGAMES_STRATEGY_HPP
#define CONGAMES_STRATEGY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "congames/es_map.hpp"
#include "congames/game.hpp"

namespace congames {

// A named side of the game a strategy plays in. An input port with game G
// contributes G⊥ to the target, an output port contributes G. Target
// identifiers are "name:e"; a lone output port with an empty name is a
// strategy *in* its game and keeps identifiers unchanged.
struct Port {
  std::string name;
  Game game;
  bool input = false;

  bool operator==(const Port& o) const { return name == o.name && game == o.game && input == o.input; }
};

// Assembles the target game of a port list.
Game ports_game(const std::vector<Port>& ports);
// Target identifier of event e of ports[i].game.
std::string port_event_name(const Port& port, int e);

struct Strategy {
  Game inner;                   // S, polarity copied from the target
  std::vector<Port> ports;
  Game target;                  // ports_game(ports)
  std::vector<int> sigma;       // inner event -> target event
  std::optional<ConfigTable> valuation;  // over configurations of inner
  std::vector<std::string> warnings;

  EsMap sigma_map() const { return EsMap{inner.es, target.es, sigma}; }
  std::vector<Port> inputs() const;
  std::vector<Port> outputs() const;
};

// Strategy from raw parts; polarity is read off the target through sigma.
// Throws InputError if sigma is not a total valid map.
Strategy make_strategy(EventStructure inner, std::vector<Port> ports,
                       const std::map<std::string, std::string>& sigma);
// Strategy in a single game (one unnamed output port).
Strategy strategy_in(const Game& g, EventStructure inner, const std::map<std::string, std::string>& sigma);

// sigma total, polarity preserved, map axioms.
Report validate_strategy(const Strategy& s);

// Pure metadata rewiring across the turnstile: new port i stands for old
// port source[i] (identity if empty) and must contribute the same game to
// the target (so moving a port across flips its game). Events and sigma are
// unchanged up to target identifier renaming.
Strategy with_ports(const Strategy& s, std::vector<Port> ports, std::vector<int> source = {});

// Strategy whose configurations are exactly `family` (sets of target
// events, closed in the way copy-cat families are), built from its primes.
// Throws InternalError if the family does not yield an event structure with
// the same configurations.
Strategy strategy_from_family(const std::vector<Configuration>& family, std::vector<Port> ports);

// Copy-cat on a⊥ ∥ a with ports [L in a, R out a].
Strategy copycat(const Game& a);

struct Witness {
  std::vector<std::string> config;
  std::vector<std::string> events;
  std::string detail;
};

struct CheckResult {
  bool holds = true;
  std::optional<Witness> witness;
};

struct StrategyReport {
  CheckResult receptive;
  CheckResult innocent;
  CheckResult deterministic;
};

CheckResult check_receptive(const Strategy& s);
CheckResult check_innocent(const Strategy& s);
CheckResult check_deterministic(const Strategy& s);
StrategyReport check_strategy(const Strategy& s);

// Game clause on the target plus: every s1 <= s2 in S has
// level(σ s1) ⪯ level(σ s2).
Report check_levels(const LevelOrder& order, const Strategy& s);

struct Composition {
  EventStructure ambient;   // regions a (σ inputs), b (shared), c (τ outputs)
  Pullback interaction;     // of σ∥C and A∥τ over the ambient structure
  EsMap to_ambient;         // interaction -> ambient
  Strategy hidden;
};

// σ's outputs are matched positionally with τ's inputs; their games must be
// equal. Result ports: σ's inputs then τ's outputs.
Composition compose_full(const Strategy& sigma, const Strategy& tau);
inline Strategy compose(const Strategy& sigma, const Strategy& tau) { return compose_full(sigma, tau).hidden; }

// Minimum strategy: −ve events of the target whose down-closure is all −ve.
Strategy minimum_strategy(const std::vector<Port>& ports);

// Nondeterministic sum over a common port list. Initial −ve events with equal
// image are shared, everything else from different summands conflicts. The
// empty sum is the minimum strategy.
Strategy nsum(const std::vector<Strategy>& parts, const std::vector<Port>& ports);

// Pullback of the two strategy maps.
Strategy conjunction(const Strategy& s1, const Strategy& s2);

// Feeds output port y back into input port x (games must agree). The result
// keeps the remaining inputs and outputs.
Strategy trace(const Strategy& t, const std::string& x, const std::string& y);

// Substructure embedding X ⊴ Y commuting with sigma, or nullopt.
std::optional<std::vector<int>> find_embedding(const Strategy& x, const Strategy& y);

// Least isomorphism S1 ≅ S2 respecting polarity with σ1 = σ2 f. Targets must
// coincide.
std::optional<std::vector<int>> iso_equivalent(const Strategy& s1, const Strategy& s2);

// Iterates X0 = minimum strategy on `ports`, X_{n+1} = body(X_n) until
// X_{n+1} ≅ X_n. Throws Error "not ⊴-monotone at step n" or
// "fuel exhausted after n steps".
Strategy mu_fix(const std::function<Strategy(const Strategy&)>& body, const std::vector<Port>& ports,
                int fuel = 64);

}  // namespace congames

#endif  // CONGAMES_STRATEGY_HPP
