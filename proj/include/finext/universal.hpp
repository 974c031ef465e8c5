#pragma once

#include <cstdint>
#include <vector>

#include "finext/finset.hpp"

namespace finext {

enum class UniversalKind { Pullback, Coproduct, Terminal };

// Construction witness handed to verify_universal: the candidate object,
// its structure maps, and the ambient cospan/family the competing cones
// are tested against.
struct UniversalWitness {
  UniversalKind kind = UniversalKind::Pullback;
  FinSet apex;

  // Pullback: proj1/proj2 legs of the candidate cone over the cospan f,g.
  FinMap proj1, proj2;
  FinMap f, g;

  // Coproduct: one injection per summand into the apex.
  std::vector<FinMap> injections;

  static UniversalWitness pullback(FinSet apex, FinMap proj1, FinMap proj2,
                                   FinMap f, FinMap g);
  static UniversalWitness coproduct(FinSet apex, std::vector<FinMap> injections);
  static UniversalWitness terminal(FinSet apex);
};

// True iff every competing cone/cocone from probe sets of size
// 1..probe_limit admits exactly one mediating map into/out of the apex.
// Probing with singletons is already decisive for set-level (co)limits;
// the larger probes re-run the definition literally. When the literal
// probe enumeration would exceed max_enumeration the check falls back to
// the (exact, pointwise-equivalent) singleton criterion, so false/true is
// always a verdict and never a budget error.
bool verify_universal(const UniversalWitness& w, std::size_t probe_limit = 2,
                      std::uint64_t max_enumeration = 2'000'000);

}  // namespace finext
