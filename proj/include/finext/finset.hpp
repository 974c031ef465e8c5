#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finext/rat.hpp"

namespace finext {

// A finite set of distinct opaque identifiers. The element order is fixed
// at construction and drives every deterministic iteration downstream, so
// two sets with the same elements in different orders are different values.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> elements);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::string& at(std::size_t i) const { return elems_[i]; }
  const std::vector<std::string>& elements() const { return elems_; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return index_of(id).has_value(); }
  bool subset_of(const FinSet& other) const;

  // Subset in this set's order selected by a keep mask (size() entries).
  FinSet filtered(const std::vector<bool>& keep) const;

  std::string str() const;

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.elems_ == b.elems_;
  }
  friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }

 private:
  std::vector<std::string> elems_;
};

// Union/intersection of subsets of a common carrier, emitted in carrier
// order. Every derived subset in the engine flows through these so that
// structurally equal constructions compare equal.
FinSet carrier_union(const FinSet& carrier, const std::vector<const FinSet*>& parts);
FinSet carrier_intersection(const FinSet& carrier, const FinSet& a, const FinSet& b);

// A total function between finite sets, stored as codomain indices in
// domain order.
class FinMap {
 public:
  FinMap() = default;
  FinMap(FinSet domain, FinSet codomain, std::vector<std::uint32_t> table);

  static FinMap from_pairs(
      FinSet domain, FinSet codomain,
      const std::vector<std::pair<std::string, std::string>>& pairs);
  static FinMap identity(const FinSet& s);
  static FinMap constant(FinSet domain, FinSet codomain,
                         std::string_view target);

  const FinSet& domain() const { return domain_; }
  const FinSet& codomain() const { return codomain_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  std::size_t apply_index(std::size_t i) const { return table_[i]; }
  const std::string& apply(std::string_view x) const;

  std::string str() const;

  friend bool operator==(const FinMap& a, const FinMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ &&
           a.table_ == b.table_;
  }
  friend bool operator!=(const FinMap& a, const FinMap& b) { return !(a == b); }

 private:
  FinSet domain_;
  FinSet codomain_;
  std::vector<std::uint32_t> table_;
};

// A rational-valued functional on a finite set.
class RatFn {
 public:
  RatFn() = default;
  RatFn(FinSet domain, std::vector<Rat> values);

  static RatFn from_pairs(FinSet domain,
                          const std::vector<std::pair<std::string, Rat>>& pairs);
  static RatFn constant(FinSet domain, Rat value);

  const FinSet& domain() const { return domain_; }
  const std::vector<Rat>& values() const { return values_; }
  const Rat& at_index(std::size_t i) const { return values_[i]; }
  const Rat& at(std::string_view x) const;
  bool defined_on(const FinSet& sub) const { return sub.subset_of(domain_); }

  // Restriction to a subset of the domain (subset order is kept).
  RatFn restrict_to(const FinSet& sub) const;

  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.domain_ == b.domain_ && a.values_ == b.values_;
  }
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

 private:
  FinSet domain_;
  std::vector<Rat> values_;
};

struct MapProperties {
  bool injective = false;
  bool surjective = false;
};

// result(x) = g(f(x)); requires codomain(f) == domain(g).
FinMap compose(const FinMap& f, const FinMap& g);

MapProperties map_properties(const FinMap& f);

// All sections s of a surjection p (p composed after s is the identity),
// in deterministic fiber-odometer order; the count is the product of the
// fiber sizes.
std::vector<FinMap> enumerate_sections(const FinMap& p);

struct SetPullback {
  FinSet object;  // pairs "(a,b)" with f(a) = g(b)
  FinMap proj1;   // onto domain(f)
  FinMap proj2;   // onto domain(g)
};

SetPullback set_pullback(const FinMap& f, const FinMap& g);

}  // namespace finext
