// Small games and strategies shared by the unit and acceptance tests.
#ifndef CONGAMES_TESTS_FIXTURES_HPP
#define CONGAMES_TESTS_FIXTURES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "congames/event_structure.hpp"
#include "congames/game.hpp"
#include "congames/strategy.hpp"

namespace fx {

using congames::EsSpec;
using congames::EventStructure;
using congames::Game;
using congames::Polarity;
using congames::Strategy;

// events: "o-", "p+" ...; edges: (cause, effect); forbidden: name lists.
inline Game game(const std::vector<std::string>& events,
                 const std::vector<std::pair<std::string, std::string>>& edges = {},
                 const std::vector<std::vector<std::string>>& forbidden = {}) {
  EsSpec spec;
  std::map<std::string, Polarity> pol;
  for (const auto& e : events) {
    std::string n = e.substr(0, e.size() - 1);
    spec.events.push_back(n);
    pol[n] = e.back() == '+' ? Polarity::kPlus : Polarity::kMinus;
  }
  for (const auto& [c, e] : edges) spec.causes[e].push_back(c);
  spec.forbidden = forbidden;
  return Game::make(EventStructure::from_spec(spec), pol);
}

inline EventStructure es(const std::vector<std::string>& events,
                         const std::vector<std::pair<std::string, std::string>>& edges = {},
                         const std::vector<std::vector<std::string>>& forbidden = {}) {
  EsSpec spec;
  spec.events = events;
  for (const auto& [c, e] : edges) spec.causes[e].push_back(c);
  spec.forbidden = forbidden;
  return EventStructure::from_spec(spec);
}

inline Game g_seq() { return game({"o-", "p+"}, {{"o", "p"}}); }
inline Game g_conc() { return game({"o-", "p+"}); }
inline Game g_race() { return game({"o-", "p+"}, {}, {{"o", "p"}}); }
inline Game g_empty() { return game({}); }
inline Game g_choice() { return game({"o-", "p1+", "p2+"}, {{"o", "p1"}, {"o", "p2"}}, {{"p1", "p2"}}); }
inline Game g_chain3() { return game({"a-", "b+", "c-"}, {{"a", "b"}, {"b", "c"}}); }
inline Game g_watch_bare() { return game({"a-", "b-", "w+"}); }

inline Game g_watch() {
  Game g = g_watch_bare();
  auto set = [&](std::vector<std::string> ids) { return g.es.set_of(ids); };
  congames::ConfigSet w{set({}), set({"a", "w"}), set({"b", "w"}), set({"a", "b", "w"})};
  g.winning = w;
  congames::PayoffTable t;
  for (const auto& x : congames::configurations(g.es)) t[x] = w.count(x) ? 1 : -1;
  g.payoff = t;
  return g;
}

inline Strategy s_i() { return congames::strategy_in(g_conc(), es({"o", "p"}, {{"o", "p"}}), {{"o", "o"}, {"p", "p"}}); }
inline Strategy s_ii() { return congames::strategy_in(g_conc(), es({"o", "p"}, {{"p", "o"}}), {{"o", "o"}, {"p", "p"}}); }

inline Strategy s_watch() {
  return congames::strategy_in(g_watch(), es({"a", "b", "w1", "w2"}, {{"a", "w1"}, {"b", "w2"}}, {{"w1", "w2"}}),
                               {{"a", "a"}, {"b", "b"}, {"w1", "w"}, {"w2", "w"}});
}

// Counter-strategy in G_watch⊥: a, b conflicting Player moves, w received.
inline Strategy tau_half() {
  return congames::strategy_in(congames::dual(g_watch()), es({"a", "b", "w"}, {}, {{"a", "b"}}),
                               {{"a", "a"}, {"b", "b"}, {"w", "w"}});
}
inline Strategy tau_pure(const std::string& move) {
  return congames::strategy_in(congames::dual(g_watch()), es({move, "w"}), {{move, move}, {"w", "w"}});
}

}  // namespace fx

#endif  // CONGAMES_TESTS_FIXTURES_HPP
