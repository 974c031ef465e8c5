#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finext/finset.hpp"
#include "finext/group.hpp"

namespace finext {

// The finite stand-in for a base gauge theory together with the chosen
// group extension: carrier of extended forms with its gauge action and
// distinguished zero form, the mandatory connection core, the base
// configuration space with its own action and base functional, and the
// homomorphism linking the two gauge groups.
struct ExtensionContext {
  FinSet omega;
  std::string omega_base;  // the zero form, fixed by the extended action
  GroupAction gau_hat;     // acts on omega
  FinSet conn_hat;         // invariant subset of omega
  FinSet conn;
  std::string conn_base;   // the flat point, where base_s vanishes
  GroupAction gau;         // acts on conn
  GroupHom xi;             // group(gau) -> group(gau_hat)
  RatFn base_s;            // on conn; base_s(conn_base) = 0
  std::optional<FinMap> embedding;  // optional injective conn -> omega

  std::size_t omega_base_index = 0;
  std::size_t conn_base_index = 0;

  // conn_hat together with the zero form, in carrier order: the part
  // every extended domain must contain.
  FinSet mandatory_core() const;

  static ExtensionContext make(FinSet omega, std::string omega_base,
                               GroupAction gau_hat, FinSet conn_hat,
                               FinSet conn, std::string conn_base,
                               GroupAction gau, GroupHom xi, RatFn base_s,
                               std::optional<FinMap> embedding = std::nullopt);
};

// Extension tuple: extended domain with its invariant functional, the
// correction subspace with correction functional, and the delta map back
// into the base configuration space. The decomposition law
//   s_hat(c) = base_s(delta(c)) + correction_fn(c)
// is the defining invariant, checked by validate_extension.
struct Extension {
  FinSet domain;         // extended domain, subset of omega
  RatFn s_hat;           // on domain
  FinSet correction;     // correction subspace, subset of domain
  RatFn correction_fn;   // on correction
  FinMap delta;          // correction -> conn

  friend bool operator==(const Extension& a, const Extension& b) {
    return a.domain == b.domain && a.s_hat == b.s_hat &&
           a.correction == b.correction &&
           a.correction_fn == b.correction_fn && a.delta == b.delta;
  }
};

struct ExtMorphism {
  FinMap f;  // domain1 -> domain2
  FinMap g;  // correction1 -> correction2

  friend bool operator==(const ExtMorphism& a, const ExtMorphism& b) {
    return a.f == b.f && a.g == b.g;
  }
};

enum class Constraint : unsigned {
  Equivariance = 1u << 0,
  InclusionSquare = 1u << 1,
  DeltaSquare = 1u << 2,
  ScalarC = 1u << 3,
  ScalarS = 1u << 4,
};

// Which commutation constraints of the morphism diagram are enforced.
// Configurable because the source material is ambiguous about the strict
// reading; every report records the configuration it was computed under.
struct MorphismConfig {
  unsigned bits = 0;

  bool has(Constraint c) const { return bits & static_cast<unsigned>(c); }

  static MorphismConfig strict();
  static MorphismConfig parse(const std::string& spec);
  std::string str() const;

  friend bool operator==(const MorphismConfig&, const MorphismConfig&) = default;
};

enum class TrivialKind { NullType, ConstantType, IdentityType, Nontrivial };
const char* trivial_kind_name(TrivialKind k);

// Empty iff valid; otherwise one line per violated invariant, naming a
// witness point where applicable.
std::vector<std::string> validate_extension(const ExtensionContext& ctx,
                                            const Extension& e);

// Re-orders domain/correction into omega carrier order so structurally
// equal data compares equal.
Extension normalize_extension(const ExtensionContext& ctx, FinSet domain,
                              RatFn s_hat, FinSet correction,
                              RatFn correction_fn, FinMap delta);

// Terminal-flavored trivial extension: full domain, zero functional,
// one-point correction at the zero form, delta to the flat point.
Extension null_extension(const ExtensionContext& ctx);

TrivialKind classify_trivial(const ExtensionContext& ctx, const Extension& e);

// Exhaustive morphism enumeration under cfg, in lexicographic (f, then g)
// order over the domain element order. Throws SearchBudgetExceeded when
// the raw search space is larger than `budget`.
std::vector<ExtMorphism> hom_set(const ExtensionContext& ctx,
                                 const Extension& e1, const Extension& e2,
                                 const MorphismConfig& cfg,
                                 std::uint64_t budget);

// Number of morphisms, but stops counting at `limit` (exact result when
// below it). Used for existence and uniqueness tests without materializing
// large hom-sets.
std::size_t hom_count_limited(const ExtensionContext& ctx, const Extension& e1,
                              const Extension& e2, const MorphismConfig& cfg,
                              std::uint64_t budget, std::size_t limit);

// Pointwise re-verification of each constraint in cfg.
bool morphism_satisfies(const ExtensionContext& ctx, const Extension& e1,
                        const Extension& e2, const ExtMorphism& m,
                        const MorphismConfig& cfg);

ExtMorphism identity_morphism(const Extension& e);
ExtMorphism compose_morphisms(const ExtMorphism& m1, const ExtMorphism& m2);

// Invertible morphism e1 -> e2 whose inverse pair also satisfies cfg;
// first in enumeration order if any.
std::optional<ExtMorphism> find_isomorphism(const ExtensionContext& ctx,
                                            const Extension& e1,
                                            const Extension& e2,
                                            const MorphismConfig& cfg,
                                            std::uint64_t budget);

// Partition of `members` (by index) into isomorphism classes; blocks
// ordered by least member, members ascending.
std::vector<std::vector<std::size_t>> iso_classes(
    const ExtensionContext& ctx, const std::vector<Extension>& members,
    const MorphismConfig& cfg, std::uint64_t budget);

// Same data with zero correction functional, the correction subspace cut
// down to the points where the decomposition already holds with zero
// correction. Throws ZeroExcluded if the zero form would be cut.
Extension completion(const ExtensionContext& ctx, const Extension& e);

// Disjoint-beyond-core union of a family. Domains must pairwise intersect
// exactly in the mandatory core and correction subspaces exactly in the
// zero form, with all components agreeing on shared points.
Extension coproduct(const ExtensionContext& ctx,
                    const std::vector<Extension>& family);

// Canonical inclusion morphisms of the family into its coproduct.
std::vector<ExtMorphism> coproduct_injections(const ExtensionContext& ctx,
                                              const std::vector<Extension>& family,
                                              const Extension& result);

}  // namespace finext
