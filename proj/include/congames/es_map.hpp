#ifndef CONGAMES_ES_MAP_HPP
#define CONGAMES_ES_MAP_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congames/event_structure.hpp"

namespace congames {

// Partial function between the events of two structures. `image[e]` is the
// target index of source event e, or -1 where undefined.
struct EsMap {
  EventStructure source;
  EventStructure target;
  std::vector<int> image;

  static EsMap identity(const EventStructure& es);
  // Throws InputError on unknown identifiers. Unmapped events are undefined.
  static EsMap from_names(const EventStructure& source, const EventStructure& target,
                          const std::map<std::string, std::string>& mapping);

  bool defined(int e) const { return image[static_cast<std::size_t>(e)] >= 0; }
  int operator()(int e) const { return image[static_cast<std::size_t>(e)]; }
  bool total() const;
  EventSet defined_events() const;
  EventSet apply(const EventSet& x) const;
};

// g after f.
EsMap compose_maps(const EsMap& f, const EsMap& g);

struct MapCheck {
  Report violations;
  bool total = false;
  bool rigid = false;
};

// Checks, over every configuration x of the source, that f x is a
// configuration and f is injective on x. Rigid iff <= is preserved.
MapCheck validate_map(const EsMap& f);

struct Factorization {
  EventStructure projection;  // the defined part of the source
  EsMap partial;              // source -> projection, identity where defined
  EsMap total;                // projection -> target
};

Factorization factorize(const EsMap& f);

// Event structure of the prime members of a family of finite sets over a
// universe of labels. Used for pullbacks (labels = matched pairs) and for
// copy-cat style families (labels = game events).
struct PrimeStructure {
  EventStructure es;
  std::vector<int> top;          // label at the top of each prime, per event
  std::vector<EventSet> members;  // label set of each prime, per event
};

// `family` must contain the empty set and be a stable family (closed under
// bounded unions and intersections, every member reachable by one-label
// steps). `name_of(members, top)` names the prime events.
PrimeStructure prime_structure(const std::vector<EventSet>& family,
                               const std::function<std::string(const EventSet&, int)>& name_of);

// Checks that the configurations of `p` correspond one-to-one to `family`
// via union of prime members. Empty report on success.
Report check_prime_structure(const PrimeStructure& p, const std::vector<EventSet>& family);

struct Pullback {
  EventStructure apex;
  EsMap pi1;
  EsMap pi2;
  // Matched pairs (a, b) with f a = g b; each apex event is a prime match,
  // a set of pair indices.
  std::vector<std::pair<int, int>> pairs;
  std::vector<EventSet> matches;  // every finite match, canonical order
  std::vector<EventSet> prime_members;
};

// Pullback of total maps f: A -> C and g: B -> C. Apex events are prime
// matches named by their sorted pair lists "[(a,b),...]".
Pullback pullback(const EsMap& f, const EsMap& g);

// Shared by pullback and pseudo-pullback: is the relation generated on the
// pairs by (a,b) <= (a',b') if a <= a' or b <= b' a partial order?
bool pairs_secured(const EventStructure& a, const EventStructure& b,
                   const std::vector<std::pair<int, int>>& pairs);

}  // namespace congames

#endif  // CONGAMES_ES_MAP_HPP
