#include "congames/valuation.hpp"

#include <cmath>
#include <functional>

namespace congames {

namespace {

bool is_negative(const Rational& r, double) { return r < 0; }
bool is_negative(double d, double tol) { return d < -tol; }
bool differs(const Rational& a, const Rational& b, double) { return a != b; }
bool differs(double a, double b, double tol) { return std::abs(a - b) > tol; }
bool above_one(const Rational& r, double) { return r > 1; }
bool above_one(double d, double tol) { return d > 1 + tol; }
std::string show(const Rational& r) { return to_string(r); }
std::string show(double d) { return std::to_string(d); }

constexpr int kMaxCover = 20;

}  // namespace

template <typename T>
const T& BasicValuation<T>::at(const Configuration& x) const {
  auto it = values.find(x);
  if (it == values.end()) throw InputError("no value for configuration " + subject.format(x));
  return it->second;
}

template <typename T>
T drop(const BasicValuation<T>& v, const Configuration& y, const std::vector<Configuration>& xs) {
  const auto& es = v.subject;
  if (!es.is_configuration(y)) throw InputError("drop: " + es.format(y) + " is not a configuration");
  for (const auto& x : xs) {
    if (!es.is_configuration(x)) throw InputError("drop: " + es.format(x) + " is not a configuration");
    if (!y.subset_of(x)) throw InputError("drop: " + es.format(y) + " is not below " + es.format(x));
  }
  if (xs.size() > static_cast<std::size_t>(kMaxCover)) throw ResourceError("drop: too many sets", kMaxCover);
  T d = v.at(y);
  const std::uint32_t n = static_cast<std::uint32_t>(xs.size());
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    Configuration u;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask >> i & 1u) u |= xs[i];
    if (!es.is_consistent(u)) continue;
    if (std::popcount(mask) % 2 == 1)
      d -= v.at(u);
    else
      d += v.at(u);
  }
  return d;
}

template <typename T>
Report validate_valuation(const BasicValuation<T>& v, double tolerance) {
  Report r;
  const auto& es = v.subject;
  const bool strategy = v.mode == ValuationMode::kStrategy;
  if (strategy && static_cast<int>(v.polarity.size()) != es.size()) {
    r.push_back({"polarity", "strategy-mode valuation needs a polarity for every event", {}});
    return r;
  }
  for (const auto& [x, val] : v.values)
    if (!es.is_configuration(x)) r.push_back({"configuration", es.format(x) + " is not a configuration", es.names_of(x)});
  auto configs = configurations(es);
  for (const auto& x : configs) {
    auto it = v.values.find(x);
    if (it == v.values.end()) {
      r.push_back({"total", "no value for " + es.format(x), es.names_of(x)});
      continue;
    }
    if (is_negative(it->second, tolerance) || above_one(it->second, tolerance))
      r.push_back({"range", "value " + show(it->second) + " of " + es.format(x) + " is outside [0,1]", es.names_of(x)});
  }
  if (!r.empty()) return r;
  if (differs(v.at(Configuration{}), T(1), tolerance)) r.push_back({"normalized", "v(∅) must be 1", {}});

  for (const auto& y : configs) {
    std::vector<int> ext;
    extensions(es, y).for_each([&](int e) {
      if (!strategy || v.polarity[static_cast<std::size_t>(e)] == Polarity::kPlus) {
        ext.push_back(e);
      } else if (differs(v.at(y.with(e)), v.at(y), tolerance)) {
        auto w = es.names_of(y);
        w.push_back(es.name(e));
        r.push_back({"independence", "opponent move " + es.name(e) + " changes the value at " + es.format(y), w});
      }
    });
    const std::uint32_t n = static_cast<std::uint32_t>(ext.size());
    if (n > static_cast<std::uint32_t>(kMaxCover)) throw ResourceError("validate_valuation: too many extensions", kMaxCover);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      std::vector<Configuration> xs;
      std::vector<std::string> events;
      for (std::uint32_t i = 0; i < n; ++i)
        if (mask >> i & 1u) {
          xs.push_back(y.with(ext[i]));
          events.push_back(es.name(ext[i]));
        }
      T d = drop(v, y, xs);
      if (is_negative(d, tolerance)) {
        auto w = es.names_of(y);
        w.insert(w.end(), events.begin(), events.end());
        r.push_back({"drop", "negative drop " + show(d) + " at " + es.format(y) + " over extensions by " +
                                 es.format(es.set_of(events)),
                     w});
      }
    }
  }
  return r;
}

template <typename T>
Report full_drop_check(const BasicValuation<T>& v, int max_sets, double tolerance) {
  Report r;
  const auto& es = v.subject;
  auto configs = configurations(es);
  for (const auto& y : configs) {
    std::vector<Configuration> above;
    for (const auto& x : configs)
      if (y.subset_of(x) && x != y) above.push_back(x);
    std::vector<Configuration> chosen;
    bool found = false;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
      for (std::size_t i = from; i < above.size() && !found; ++i) {
        bool comparable = false;
        for (const auto& c : chosen)
          if (c.subset_of(above[i]) || above[i].subset_of(c)) comparable = true;
        if (comparable) continue;
        chosen.push_back(above[i]);
        T d = drop(v, y, chosen);
        if (is_negative(d, tolerance)) {
          found = true;
          std::vector<std::string> w = es.names_of(y);
          std::string over;
          for (const auto& c : chosen) over += (over.empty() ? "" : ", ") + es.format(c);
          r.push_back({"drop", "negative drop " + show(d) + " at " + es.format(y) + " over " + over, w});
        } else if (static_cast<int>(chosen.size()) < max_sets) {
          grow(i + 1);
        }
        chosen.pop_back();
      }
    };
    grow(0);
  }
  return r;
}

ConfigValuation product_valuation(const EventStructure& apex, const EsMap& pi1, const ConfigTable& vs,
                                  const EsMap& pi2, const ConfigTable& vt) {
  ConfigValuation v;
  v.subject = apex;
  for (const auto& z : configurations(apex)) {
    auto a = vs.find(pi1.apply(z));
    auto b = vt.find(pi2.apply(z));
    if (a == vs.end() || b == vt.end()) throw InputError("product valuation: missing component valuation");
    v.values[z] = a->second * b->second;
  }
  return v;
}

template <typename T>
std::map<Configuration, T, CanonicalLess> outcome_distribution(const BasicValuation<T>& v, double tolerance) {
  if (v.mode != ValuationMode::kAllPositive) throw InputError("outcome distribution needs an all-positive valuation");
  Report r = validate_valuation(v, tolerance);
  if (!r.empty()) throw InputError("invalid valuation: " + r.front().rule + ": " + r.front().detail);
  std::map<Configuration, T, CanonicalLess> p;
  for (const auto& z : configurations(v.subject)) {
    std::vector<Configuration> xs;
    extensions(v.subject, z).for_each([&](int e) { xs.push_back(z.with(e)); });
    p[z] = drop(v, z, xs);
  }
  return p;
}

ConfigValuation strategy_valuation(const Game& inner, const ConfigTable& table) {
  ConfigValuation v;
  v.subject = inner.es;
  v.values = table;
  v.mode = ValuationMode::kStrategy;
  v.polarity = inner.polarity;
  return v;
}

ConfigTable constant_one(const EventStructure& inner) {
  ConfigTable t;
  for (const auto& x : configurations(inner)) t[x] = 1;
  return t;
}

template struct BasicValuation<Rational>;
template struct BasicValuation<double>;
template Rational drop(const ConfigValuation&, const Configuration&, const std::vector<Configuration>&);
template double drop(const RealValuation&, const Configuration&, const std::vector<Configuration>&);
template Report validate_valuation(const ConfigValuation&, double);
template Report validate_valuation(const RealValuation&, double);
template Report full_drop_check(const ConfigValuation&, int, double);
template Report full_drop_check(const RealValuation&, int, double);
template std::map<Configuration, Rational, CanonicalLess> outcome_distribution(const ConfigValuation&, double);
template std::map<Configuration, double, CanonicalLess> outcome_distribution(const RealValuation&, double);

}  // namespace congames
