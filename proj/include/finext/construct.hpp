#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finext/extension.hpp"
#include "finext/order.hpp"

namespace finext {

// A section of the quotient map of conn_hat by the extended gauge action.
struct GaugeFixing {
  FinMap sigma;  // orbit representatives -> conn_hat

  std::string str() const { return sigma.str(); }
};

// All gauge fixings, in deterministic fiber-odometer order.
std::vector<GaugeFixing> gauge_fixings(const ExtensionContext& ctx);

// Data produced alongside a gauge-fixed pullback extension: the pullback
// of the base functional against the quotiented restriction, its embedding
// through the section, and the two compatibility facts that are reported
// rather than required.
struct PullbackWitness {
  FinSet pb;      // pairs (d,q): base_s(d) = quotient value at q
  FinMap delta;   // pb -> conn
  FinMap embed;   // pb -> omega, through sigma; injective
  FinSet image;   // range of embed, in carrier order
  bool xi_square_commutes = false;
  bool image_gau_invariant = false;
};

struct PullbackTypeResult {
  Extension extension;
  PullbackWitness witness;
};

// The gauge-fixed pullback construction: represents the restriction of s
// to x0 as a complete extension of the base theory on the embedded
// pullback locus, with the zero form adjoined to domain and correction
// subspace (delta sends it to the flat point, which needs s at the zero
// form to vanish).
PullbackTypeResult pullback_type_extension(const ExtensionContext& ctx,
                                           const FinSet& x0, const RatFn& s,
                                           const GaugeFixing& sigma);

struct SigmaIndependenceReport {
  std::size_t fixings = 0;
  std::vector<std::size_t> image_sizes;
  bool sizes_constant = false;
  std::size_t pairs_checked = 0;
  bool bijections_verified = false;
};

// For every ordered pair of gauge fixings, checks that the embedded locus
// has constant size and that the bijection through the shared pullback
// verifies pointwise.
SigmaIndependenceReport sigma_independence(const ExtensionContext& ctx,
                                           const FinSet& x0, const RatFn& s);

struct InjectivizeResult {
  Extension result;
  ExtMorphism mono;  // inclusion into the input
  std::vector<std::string> deviations;
};

// Canonical complete injective extension mapping monomorphically into the
// input: completion, then the greedy maximal injective invariant subset,
// then re-union with the mandatory core. When the union breaks quotient
// injectivity (a gap in the source argument) conflicting non-core orbits
// are removed in carrier order and each removal is logged as a deviation.
InjectivizeResult injectivize(const ExtensionContext& ctx, const Extension& e);

struct RetractResult {
  Extension result;
  FinMap mu;  // correction-subspace points inside conn_hat -> pullback
  bool mu_injective = false;
};

// Gauge-fixed retraction onto pullback-type form. Input must be complete,
// injective and small. On canonical pullback-type inputs (built with the
// same fixing) the result is structurally identical.
RetractResult retract_r_sigma(const ExtensionContext& ctx, const Extension& e,
                              const GaugeFixing& sigma);

struct NestedCheckReport {
  bool preconditions_ok = false;
  std::vector<std::string> problems;
  bool locus_nested = false;     // X0(sigma) inside X1(sigma)
  bool eta_injective = false;    // mediating injection between pullbacks
  bool diagram_commutes = false;
  bool verdict() const {
    return preconditions_ok && locus_nested && eta_injective && diagram_commutes;
  }
};

// Nested-domain comparison: for x0 inside x1, the pullback locus nests,
// the mediating map is injective, and the restriction diagram commutes.
NestedCheckReport nested_domain_check(const ExtensionContext& ctx,
                                      const FinSet& x0, const FinSet& x1,
                                      const RatFn& s, const GaugeFixing& sigma);

enum class ClassKind { Comp, Inj, Small, Pb, Coh, SCoh };
const char* class_kind_name(ClassKind k);
ClassKind parse_class_kind(const std::string& s);

struct ClassBuildSpec {
  ClassKind kind = ClassKind::Pb;
  std::optional<RatFn> functional;  // pinned functional on omega
  std::vector<Rat> palette;         // orbit-value palette when not pinned
  std::uint64_t budget = 0;
};

// Enumerates valid extensions over the context (domains: invariant
// supersets of the mandatory core; functionals: the pinned one or all
// invariant palette assignments vanishing at the zero form; correction
// subspaces inside the mandatory core with all delta maps, the correction
// functional being determined by the decomposition law) and filters by
// kind. Pb members come from the gauge-fixed pullback construction over
// all admissible base domains and fixings.
ExtClass build_class(std::shared_ptr<const ExtensionContext> ctx,
                     const ClassBuildSpec& spec, MorphismConfig cfg);

}  // namespace finext
