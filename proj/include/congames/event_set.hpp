#ifndef CONGAMES_EVENT_SET_HPP
#define CONGAMES_EVENT_SET_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace congames {

// Fixed-capacity bitset over event indices. Event structures index their
// events in lexicographic order of identifiers, so iterating a set in index
// order is iterating its identifiers in sorted order.
class EventSet {
 public:
  static constexpr int kWords = 4;
  static constexpr int kCapacity = 64 * kWords;

  constexpr EventSet() = default;

  static EventSet of(std::initializer_list<int> items) {
    EventSet s;
    for (int i : items) s.insert(i);
    return s;
  }
  static EventSet first_n(int n) {
    EventSet s;
    for (int i = 0; i < n; ++i) s.insert(i);
    return s;
  }

  bool contains(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void insert(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  EventSet with(int i) const {
    EventSet s = *this;
    s.insert(i);
    return s;
  }
  EventSet without(int i) const {
    EventSet s = *this;
    s.erase(i);
    return s;
  }

  int size() const {
    int n = 0;
    for (auto w : w_) n += std::popcount(w);
    return n;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  // Smallest member, or -1.
  int first() const {
    for (int k = 0; k < kWords; ++k)
      if (w_[k]) return 64 * k + std::countr_zero(w_[k]);
    return -1;
  }

  bool subset_of(const EventSet& o) const {
    for (int k = 0; k < kWords; ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool intersects(const EventSet& o) const {
    for (int k = 0; k < kWords; ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  EventSet operator|(const EventSet& o) const {
    EventSet r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] | o.w_[k];
    return r;
  }
  EventSet operator&(const EventSet& o) const {
    EventSet r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  EventSet operator-(const EventSet& o) const {
    EventSet r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] & ~o.w_[k];
    return r;
  }
  EventSet& operator|=(const EventSet& o) { return *this = *this | o; }
  EventSet& operator&=(const EventSet& o) { return *this = *this & o; }
  EventSet& operator-=(const EventSet& o) { return *this = *this - o; }

  bool operator==(const EventSet&) const = default;

  template <typename F>
  void for_each(F&& f) const {
    for (int k = 0; k < kWords; ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        int b = std::countr_zero(w);
        f(64 * k + b);
        w &= w - 1;
      }
    }
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : w_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

  // Raw word order; cheap total order for std::map keys. Use canonical_less
  // for the documented (size, then lexicographic) ordering.
  bool raw_less(const EventSet& o) const { return w_ < o.w_; }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

// Documented configuration order: by size, then lexicographically on the
// sorted member lists.
inline bool canonical_less(const EventSet& a, const EventSet& b) {
  int sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  EventSet d = (a - b) | (b - a);
  if (d.empty()) return false;
  return a.contains(d.first());
}

struct CanonicalLess {
  bool operator()(const EventSet& a, const EventSet& b) const { return canonical_less(a, b); }
};

struct EventSetHash {
  std::size_t operator()(const EventSet& s) const { return s.hash(); }
};

using Configuration = EventSet;

}  // namespace congames

template <>
struct std::hash<congames::EventSet> {
  std::size_t operator()(const congames::EventSet& s) const { return s.hash(); }
};

#endif  // CONGAMES_EVENT_SET_HPP
