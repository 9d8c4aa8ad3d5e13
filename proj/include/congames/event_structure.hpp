#ifndef CONGAMES_EVENT_STRUCTURE_HPP
#define CONGAMES_EVENT_STRUCTURE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "congames/errors.hpp"
#include "congames/event_set.hpp"

namespace congames {

// Raw, unvalidated description of an event structure, as read from a
// document. `causes` maps an event to (some of) its causes; the transitive
// closure is taken. `forbidden` lists inconsistent sets.
struct EsSpec {
  std::vector<std::string> events;
  std::map<std::string, std::vector<std::string>> causes;
  std::vector<std::vector<std::string>> forbidden;
};

// Checks the event-structure axioms on raw input. Violations are data.
Report validate_es(const EsSpec& spec);

// A finite event structure (E, <=, Con). Consistency is represented by
// minimal forbidden sets: a finite X is consistent iff the down-closure of X
// includes no forbidden set. Forbidden sets are normalized to antichains
// with minimal down-closures, so equal structures compare equal.
//
// Events are indexed in lexicographic order of their identifiers. Values are
// immutable and cheap to copy.
class EventStructure {
 public:
  EventStructure();

  // Validates `spec` and throws InputError listing every violation.
  static EventStructure from_spec(const EsSpec& spec);

  // Builder used by constructions. `edges` are (cause, effect) pairs over
  // positions in `names`; `forbidden` lists sets of positions. Throws
  // InputError on duplicate names, cycles, or self-inconsistent events.
  static EventStructure build(std::vector<std::string> names,
                              const std::vector<std::pair<int, int>>& edges,
                              const std::vector<std::vector<int>>& forbidden);

  int size() const;
  bool empty() const { return size() == 0; }
  const std::string& name(int e) const;
  const std::vector<std::string>& names() const;
  std::optional<int> find(std::string_view id) const;
  int index(std::string_view id) const;  // throws InputError

  bool leq(int a, int b) const { return down(b).contains(a); }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  // Reflexive down-closure [e] and up-closure of a single event.
  const EventSet& down(int e) const;
  const EventSet& up(int e) const;
  const std::vector<int>& immediate_causes(int e) const;
  const std::vector<EventSet>& forbidden() const;

  EventSet all() const;
  EventSet down_closure(const EventSet& x) const;
  bool is_down_closed(const EventSet& x) const;
  bool is_consistent(const EventSet& x) const;
  bool is_configuration(const EventSet& x) const;
  // Consistent and causally unordered.
  bool concurrent(int a, int b) const;
  // Maximal elements of x w.r.t. <=.
  EventSet maximal(const EventSet& x) const;

  EventSet set_of(const std::vector<std::string>& ids) const;  // throws InputError
  std::vector<std::string> names_of(const EventSet& x) const;
  std::string format(const EventSet& x) const;  // "{a,b}"

  // Immediate causes and forbidden sets expressed by name.
  EsSpec to_spec() const;

  bool operator==(const EventStructure& other) const;

 private:
  struct Data;
  explicit EventStructure(std::shared_ptr<const Data> d);
  std::shared_ptr<const Data> d_;
};

// All configurations with at most `max_events` events (all, if unset), in
// canonical order (size, then lexicographic). Throws ResourceError past the
// ceiling (0 = the global ceiling).
std::vector<Configuration> configurations(const EventStructure& es,
                                          std::optional<int> max_events = std::nullopt,
                                          std::size_t ceiling = 0);

// Events f not in x such that x + f is a configuration.
EventSet extensions(const EventStructure& es, const Configuration& x);

// Disjoint juxtaposition. An empty tag keeps identifiers unchanged, otherwise
// identifiers become "tag:id". Consistency is side-wise.
EventStructure es_par(const std::vector<std::pair<std::string, EventStructure>>& parts);

// Projection to the events in `keep`: order and consistency restricted.
// Returns the projection and, for each kept event, its old index.
std::pair<EventStructure, std::vector<int>> project(const EventStructure& es, const EventSet& keep);

// Event structure with the given order whose configurations are exactly the
// down-closed sets accepted by `consistent` (which must be closed under
// down-closed subsets and accept the empty set). Minimal forbidden sets are
// derived by enumeration.
EventStructure from_consistency(std::vector<std::string> names,
                                const std::vector<std::pair<int, int>>& edges,
                                const std::function<bool(const EventSet&)>& consistent);

// Immediate causality as (cause, effect) index pairs, and forbidden sets as
// index lists; the inputs `build` expects.
std::vector<std::pair<int, int>> immediate_edges(const EventStructure& es);
std::vector<std::vector<int>> forbidden_lists(const EventStructure& es);

// Same structure with event i renamed to names[i]. Indices follow the new
// names' sort order.
EventStructure rename(const EventStructure& es, const std::vector<std::string>& names);

}  // namespace congames

#endif  // CONGAMES_EVENT_STRUCTURE_HPP
