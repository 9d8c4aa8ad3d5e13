#ifndef CONGAMES_SYMMETRY_HPP
#define CONGAMES_SYMMETRY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "congames/es_map.hpp"
#include "congames/strategy.hpp"

namespace congames {

// Bijection between two configurations, as (from, to) pairs sorted by `from`.
using Bijection = std::vector<std::pair<int, int>>;

Configuration domain(const Bijection& b);
Configuration codomain(const Bijection& b);

// Finite extensional isomorphism family.
struct IsoFamily {
  EventStructure subject;
  std::vector<Bijection> bijections;

  bool contains(const Bijection& b) const;
};

// All identity bijections on configurations.
IsoFamily identity_family(const EventStructure& es);

// Shape (bijections between configurations), (i) identities, inverses and
// composites, (ii) restriction to sub-configurations, (iii) extension along
// every larger configuration.
Report validate_isofamily(const IsoFamily& fam);

struct SymmetryReport {
  bool preserves = true;
  std::optional<Bijection> broken;  // a family bijection of A not carried to B
  std::optional<bool> similar;     // f ∼ g, when g is supplied
  std::optional<Configuration> dissimilar_at;
};

SymmetryReport map_symmetry(const EsMap& f, const IsoFamily& fam_a, const IsoFamily& fam_b,
                            const EsMap* g = nullptr);

// Pullback up to the symmetry famC on the common target.
Pullback pseudo_pullback(const EsMap& f, const EsMap& g, const IsoFamily& fam_c);

struct Similarity {
  std::vector<int> f;  // S1 -> S2
  std::vector<int> g;  // S2 -> S1
};

// Maps f: S1 -> S2, g: S2 -> S1 over the game with gf ∼ id and fg ∼ id.
// Families default to identity families on the inner structures.
std::optional<Similarity> strategies_similar(const Strategy& s1, const Strategy& s2,
                                             const IsoFamily* fam1 = nullptr, const IsoFamily* fam2 = nullptr);

}  // namespace congames

#endif  // CONGAMES_SYMMETRY_HPP
