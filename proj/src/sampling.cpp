#include "congames/sampling.hpp"

namespace congames {

EventStructure random_es(std::mt19937& rng, int events, double p_order, double p_conflict) {
  std::bernoulli_distribution order(p_order), conflict(p_conflict);
  std::vector<std::string> names;
  for (int i = 0; i < events; ++i) names.push_back("e" + std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < events; ++i)
    for (int j = i + 1; j < events; ++j)
      if (order(rng)) edges.emplace_back(i, j);
  EventStructure base = EventStructure::build(names, edges, {});
  std::vector<std::vector<int>> forbidden;
  for (int i = 0; i < events; ++i)
    for (int j = i + 1; j < events; ++j) {
      int a = base.index(names[static_cast<std::size_t>(i)]);
      int b = base.index(names[static_cast<std::size_t>(j)]);
      if (base.leq(a, b) || base.leq(b, a) || !conflict(rng)) continue;
      forbidden.push_back({i, j});
      try {
        EventStructure::build(names, edges, forbidden);
      } catch (const InputError&) {
        forbidden.pop_back();
      }
    }
  return EventStructure::build(names, edges, forbidden);
}

Game random_game(std::mt19937& rng, int events, double p_plus) {
  EventStructure es = random_es(rng, events);
  std::bernoulli_distribution plus(p_plus);
  std::map<std::string, Polarity> pol;
  for (const auto& n : es.names()) pol[n] = plus(rng) ? Polarity::kPlus : Polarity::kMinus;
  return Game::make(es, pol);
}

ConfigValuation random_valuation(std::mt19937& rng, const EventStructure& es, double p_noise) {
  std::uniform_int_distribution<int> quarter(0, 4);
  std::bernoulli_distribution noise(p_noise);
  std::vector<Rational> weight;
  for (int e = 0; e < es.size(); ++e) weight.emplace_back(quarter(rng), 4);
  ConfigValuation v;
  v.subject = es;
  for (const auto& x : configurations(es)) {
    Rational p = 1;
    x.for_each([&](int e) { p *= weight[static_cast<std::size_t>(e)]; });
    if (!x.empty() && noise(rng)) p = Rational(quarter(rng), 4);
    v.values[x] = p;
  }
  return v;
}

}  // namespace congames
