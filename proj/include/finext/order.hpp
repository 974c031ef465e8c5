#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finext/extension.hpp"

namespace finext {

// A class of extensions over one context, read as the full subcategory it
// spans under the declared morphism configuration.
struct ExtClass {
  std::shared_ptr<const ExtensionContext> ctx;
  std::vector<Extension> members;
  std::vector<std::string> labels;  // one per member, for reports
  MorphismConfig cfg;

  const std::string& label(std::size_t i) const { return labels[i]; }
};

// Validates members against the context and rejects structural duplicates.
ExtClass make_class(std::shared_ptr<const ExtensionContext> ctx,
                    std::vector<Extension> members,
                    std::vector<std::string> labels, MorphismConfig cfg);

using RelationMatrix = std::vector<std::vector<bool>>;

// matrix[i][j] = some morphism members[i] -> members[j] exists under cfg.
RelationMatrix build_preorder(const ExtClass& cl, std::uint64_t budget);

struct IsoPoset {
  std::vector<std::vector<std::size_t>> blocks;  // iso classes, member indices
  std::vector<std::size_t> reps;                 // least member per block
  RelationMatrix leq;                            // on blocks
};

// Quotient of the morphism-existence preorder by isomorphism. Throws
// IncompatibleQuotient if the relation fails to descend or fails
// antisymmetry on the quotient (the latter is possible in a finite model
// even though the source construction asserts a partial order).
IsoPoset iso_poset(const ExtClass& cl, std::uint64_t budget);

// Block index of the unique top element, if any.
std::optional<std::size_t> greatest_element(const IsoPoset& p);

// Members receiving exactly one morphism from every member.
std::vector<std::size_t> terminal_objects(const ExtClass& cl,
                                          std::uint64_t budget);

// Members admitting exactly one morphism INTO every member (reported by
// coherence_check for the empty index family).
std::vector<std::size_t> initial_objects(const ExtClass& cl,
                                         std::uint64_t budget);

// True iff the only isomorphisms in the class are identities.
bool is_gaunt(const ExtClass& cl, std::uint64_t budget);

// matrix[i][j] = exactly one morphism members[i] -> members[j]. Requires a
// gaunt class; throws NotGaunt otherwise.
RelationMatrix unique_morphism_order(const ExtClass& cl, std::uint64_t budget);

enum class MaxMode { Maximal, Universal, WeakMaximal, WeakUniversal };
const char* max_mode_name(MaxMode m);
MaxMode parse_max_mode(const std::string& s);

struct MaximalityVerdict {
  bool holds = false;
  // Object map e0 -> e1 (member indices) witnessing the verdict, when it
  // holds and e0 is nonempty.
  std::optional<std::vector<std::size_t>> witness;
  std::vector<std::string> trace;
};

// Internal maximality/universality of e0 relative to e1. The plain modes
// quantify over all object maps; since mu and nu range over the same
// finite function space, the defining condition collapses to a pointwise
// test on e1 (each candidate target must absorb every member), which is
// what gets computed. Weak modes enumerate honest functors and natural
// transformations.
MaximalityVerdict check_maximality(const ExtClass& e0, const ExtClass& e1,
                                   MaxMode mode, std::uint64_t budget);

struct DensityVerdict {
  bool holds = false;
  // Failing subset of members (indices), when the property is not dense.
  std::optional<std::vector<std::size_t>> witness_subset;
};

// True iff for every subset Y of cl the class Y + candidate satisfies the
// mode (with a nonempty probe class; weak modes probe with the subset
// class itself).
DensityVerdict density_check(const ExtClass& cl, const Extension& candidate,
                             MaxMode mode, std::uint64_t budget);

// Union of all subclasses of size <= i_card, read literally: empty for
// i_card == 0, the whole class otherwise. With closure_reading, the empty
// index set instead selects the null-type members (the point-like class
// the source ascribes to the empty family); never substituted silently.
ExtClass class_E_of_I(const ExtClass& cl, std::size_t i_card,
                      bool closure_reading = false);

enum class CoherenceMode { Maximality, Universality };

struct CoherenceVerdict {
  bool holds = false;
  std::vector<std::string> trace;
  std::vector<std::size_t> initial_members;  // reported, never a gate
};

// I-coherence: every subfamily indexed by a nonempty J subset of I (one
// member per extended domain in J) has a coproduct IN the class, in the
// categorical sense (some member satisfies the universal property within
// the class); and the morphism-existence order is total on E(I).
// Universality mode additionally requires gauntness and totality of the
// unique-morphism order.
CoherenceVerdict coherence_check(const ExtClass& cl,
                                 const std::vector<FinSet>& index_domains,
                                 CoherenceMode mode, std::uint64_t budget);

struct CategoricalCoproduct {
  std::size_t candidate;  // member index
  std::vector<ExtMorphism> injections;
};

// Searches the class for a member that is a coproduct of the given family
// within the class (all cocones from class members mediate uniquely).
std::optional<CategoricalCoproduct> categorical_coproduct(
    const ExtClass& cl, const std::vector<std::size_t>& family,
    std::uint64_t budget);

// Universal-property check for a concrete coproduct candidate (for
// example the disjoint-beyond-core union) against an explicit probe
// family of extensions: every cocone from the probes mediates uniquely.
bool coproduct_is_universal(const ExtensionContext& ctx,
                            const std::vector<Extension>& family,
                            const Extension& candidate,
                            const std::vector<Extension>& probes,
                            const MorphismConfig& cfg, std::uint64_t budget);

}  // namespace finext
