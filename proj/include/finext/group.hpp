#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finext/finset.hpp"

namespace finext {

// A finite group presented by its full multiplication table. The group
// laws are checked at construction, so a constructed value is always a
// group.
class FinGroup {
 public:
  FinGroup(FinSet elements, std::vector<std::uint32_t> mult,
           std::string_view identity);

  const FinSet& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t op(std::size_t a, std::size_t b) const {
    return mult_[a * elems_.size() + b];
  }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }

  friend bool operator==(const FinGroup& a, const FinGroup& b) {
    return a.elems_ == b.elems_ && a.mult_ == b.mult_ &&
           a.identity_ == b.identity_;
  }

 private:
  FinSet elems_;
  std::vector<std::uint32_t> mult_;  // row-major: mult_[a*n + b] = a*b
  std::size_t identity_ = 0;
  std::vector<std::uint32_t> inverse_;
};

// A finite group acting on a finite carrier; the action laws are checked
// at construction.
class GroupAction {
 public:
  GroupAction(FinGroup group, FinSet carrier, std::vector<std::uint32_t> act);

  static GroupAction trivial(FinGroup group, FinSet carrier);

  const FinGroup& group() const { return group_; }
  const FinSet& carrier() const { return carrier_; }
  std::size_t act(std::size_t g, std::size_t x) const {
    return act_[g * carrier_.size() + x];
  }

  // Orbit of a carrier point, as carrier indices in ascending order.
  std::vector<std::size_t> orbit_of(std::size_t x) const;

  bool fixes(std::size_t x) const;
  bool subset_invariant(const FinSet& subset) const;

  // Action restricted to an invariant subset (indices renumbered to the
  // subset's order).
  GroupAction restricted(const FinSet& subset) const;

 private:
  FinGroup group_;
  FinSet carrier_;
  std::vector<std::uint32_t> act_;  // act_[g*|carrier| + x]
};

class GroupHom {
 public:
  GroupHom(FinGroup source, FinGroup target, std::vector<std::uint32_t> table);

  static GroupHom identity(const FinGroup& g);
  static GroupHom trivial(FinGroup source, FinGroup target);

  const FinGroup& source() const { return source_; }
  const FinGroup& target() const { return target_; }
  std::size_t apply(std::size_t g) const { return table_[g]; }

 private:
  FinGroup source_;
  FinGroup target_;
  std::vector<std::uint32_t> table_;
};

// Orbit partition of an invariant subset: blocks ordered by least carrier
// element, block members in carrier order.
std::vector<FinSet> orbits(const GroupAction& a, const FinSet& subset);

// Surjection of an invariant subset onto its orbit representatives (the
// least element of each orbit in carrier order); fibers are the orbits.
FinMap quotient_map(const GroupAction& a, const FinSet& subset);

struct InvarianceReport {
  bool invariant_subset = false;
  bool invariant_fn = false;
  bool quotient_injective = false;
  bool all() const { return invariant_subset && invariant_fn && quotient_injective; }
};

InvarianceReport invariance_report(const GroupAction& a, const RatFn& f,
                                   const FinSet& subset);

// f(a.act(g,x)) == b.act(hom(g), f(x)) for all g, x. Pass hom = nullptr
// for the identity homomorphism (source and target group must coincide).
bool is_equivariant(const FinMap& f, const GroupAction& a, const GroupAction& b,
                    const GroupHom* hom = nullptr);

struct MaximalInjectiveResult {
  bool core_feasible = false;
  FinSet canonical;
  std::vector<FinSet> all_maximal;
};

// Every inclusion-maximal invariant subset of the carrier, containing
// required_core, on which f is invariant and descends injectively to the
// orbit space; `canonical` is the greedy-in-carrier-order choice. The
// "largest" such subset of the source construction need not be unique in
// a finite model, so all of them are reported.
MaximalInjectiveResult maximal_injective_subsets(const GroupAction& a,
                                                 const RatFn& f,
                                                 const FinSet& required_core);

}  // namespace finext
