#ifndef CONGAMES_REPORT_HPP
#define CONGAMES_REPORT_HPP

#include <string>

#include "congames/document.hpp"
#include "congames/outcomes.hpp"

namespace congames {

// Rationals as JSON: integers as numbers, anything else as "p/q".
Json rational_json(const Rational& r);
Json config_json(const EventStructure& es, const Configuration& x);
Json report_json(const Report& r);
Json witness_json(const Witness& w);
Json check_json(const CheckResult& c);
Json es_json(const EventStructure& es);
Json game_json(const Game& g);
// Inner structure, ports, and the map into the target by event name.
Json strategy_json(const Strategy& s);

// DOT export. Nodes are labelled "id:+" / "id:-"; solid edges are immediate
// causality, dashed undirected edges minimal forbidden pairs. Events named
// "side:..." are boxed in one cluster per side when every event has a side.
// For strategies, causal edges not present between the images in the game
// are dashed.
std::string game_dot(const Game& g, const std::string& name = "game");
std::string strategy_dot(const Strategy& s, const std::string& name = "strategy");

}  // namespace congames

#endif  // CONGAMES_REPORT_HPP
