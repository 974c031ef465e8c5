#include "finext/verify.hpp"

#include "finext/errors.hpp"

namespace finext {

namespace {

void verify_a(const Model& m, Report& r,
              std::optional<MorphismConfig> cfg_override,
              std::uint64_t budget) {
  if (m.theorem_a.empty()) {
    r.unmet("theorem-A", "no declared (e0, e1) pairs in the instance");
    return;
  }
  for (const auto& pair : m.theorem_a) {
    std::string tag = "A[" + pair.e0 + "," + pair.e1 + "]";
    ExtClass e0 = m.build(pair.e0, cfg_override, budget);
    ExtClass e1 = m.build(pair.e1, cfg_override, budget);
    r.info(tag + ".cfg", e1.cfg.str());

    auto terminals = terminal_objects(e1, budget);
    if (terminals.empty()) {
      r.unmet(tag + ".terminal-object",
              "no terminal object in '" + pair.e1 + "' under this cfg");
      continue;
    }
    r.confirmed(tag + ".terminal-object", "'" + e1.label(terminals.front()) +
                                              "' (" +
                                              std::to_string(terminals.size()) +
                                              " found)");

    for (MaxMode mode : {MaxMode::Maximal, MaxMode::Universal,
                         MaxMode::WeakMaximal, MaxMode::WeakUniversal}) {
      auto verdict = check_maximality(e0, e1, mode, budget);
      std::string name = tag + "." + max_mode_name(mode);
      if (verdict.holds)
        r.confirmed(name);
      else
        r.refuted(name, verdict.trace.empty() ? "" : verdict.trace.front());
    }

    const Extension& candidate = e1.members[terminals.front()];
    for (MaxMode mode : {MaxMode::Maximal, MaxMode::Universal}) {
      auto verdict = density_check(e1, candidate, mode, budget);
      std::string name = tag + ".density-" + max_mode_name(mode);
      if (verdict.holds)
        r.confirmed(name, "all subsets of '" + pair.e1 + "'");
      else {
        std::string subset;
        for (auto i : *verdict.witness_subset)
          subset += (subset.empty() ? "" : ",") + e1.label(i);
        r.refuted(name, "failing subset {" + subset + "}");
      }
    }
  }
}

void verify_b(const Model& m, Report& r,
              std::optional<MorphismConfig> cfg_override,
              std::uint64_t budget) {
  if (m.theorem_b.empty()) {
    r.unmet("theorem-B", "no declared (e1, I) bindings in the instance");
    return;
  }
  for (const auto& tb : m.theorem_b) {
    std::string tag = "B[" + tb.e1 + "," + tb.domainset + "]";
    ExtClass e1 = m.build(tb.e1, cfg_override, budget);
    auto domains = m.domainset_domains(tb.domainset);

    auto coh = coherence_check(e1, domains, CoherenceMode::Maximality, budget);
    if (!coh.holds) {
      r.unmet(tag + ".coherence",
              coh.trace.empty() ? "class is not I-coherent" : coh.trace.front());
      continue;
    }
    r.confirmed(tag + ".coherence");

    ExtClass scoped = class_E_of_I(e1, domains.size());
    r.info(tag + ".cardinalities",
           "|E(I)|=" + std::to_string(scoped.members.size()) +
               " (side conditions logged, not enforced)");
    auto poset = iso_poset(scoped, budget);
    auto top = greatest_element(poset);
    if (top)
      r.confirmed(tag + ".greatest-element",
                  "'" + scoped.label(poset.reps[*top]) + "'");
    else
      r.refuted(tag + ".greatest-element",
                "coherent class without a greatest element");

    for (const auto& e0name : tb.e0) {
      ExtClass e0 = m.build(e0name, cfg_override, budget);
      r.info(tag + ".|" + e0name + "|", std::to_string(e0.members.size()));
      auto verdict = check_maximality(e0, scoped, MaxMode::Maximal, budget);
      std::string name = tag + ".maximal[" + e0name + "]";
      if (verdict.holds)
        r.confirmed(name);
      else
        r.refuted(name, verdict.trace.empty() ? "" : verdict.trace.front());
    }
  }
}

void verify_c(const Model& m, Report& r,
              std::optional<MorphismConfig> cfg_override,
              std::uint64_t budget) {
  if (m.theorem_c.empty()) {
    r.unmet("theorem-C", "no declared (I, functional) bindings in the instance");
    return;
  }
  for (const auto& tc : m.theorem_c) {
    std::string tag = "C[" + tc.domainset + "]";
    auto ctx = m.context(tc.context);
    auto domains = m.domainset_domains(tc.domainset);

    // Hypothesis: the index domains are mutually disjoint beyond the
    // mandatory core (every extended domain contains the core by the
    // domain chain, so verbatim disjointness is impossible).
    const FinSet core = ctx->mandatory_core();
    bool disjoint = true;
    for (std::size_t i = 0; i < domains.size() && disjoint; ++i)
      for (std::size_t j = i + 1; j < domains.size(); ++j) {
        FinSet inter = carrier_intersection(ctx->omega, domains[i], domains[j]);
        if (!(inter == core)) disjoint = false;
      }
    if (!disjoint) {
      r.unmet(tag + ".disjoint-domains",
              "index domains overlap beyond the mandatory core");
      continue;
    }
    r.confirmed(tag + ".disjoint-domains");

    ClassBuildSpec spec;
    spec.kind = ClassKind::Coh;
    spec.functional = m.fn(tc.functional);
    spec.budget = budget;
    MorphismConfig cfg = cfg_override.value_or(m.default_cfg);
    ExtClass coh = build_class(ctx, spec, cfg);
    r.info(tag + ".|Coh|", std::to_string(coh.members.size()));

    auto coherence =
        coherence_check(coh, domains, CoherenceMode::Maximality, budget);
    if (!coherence.holds) {
      r.refuted(tag + ".coherence", coherence.trace.empty()
                                        ? "coherence fails"
                                        : coherence.trace.front());
      continue;
    }
    r.confirmed(tag + ".coherence", "coproduct closure and totality");

    auto poset = iso_poset(coh, budget);
    auto top = greatest_element(poset);
    if (top)
      r.confirmed(tag + ".greatest-element",
                  "'" + coh.label(poset.reps[*top]) + "'");
    else
      r.refuted(tag + ".greatest-element", "no greatest element");

    for (const auto& e0name : tc.e0) {
      ExtClass e0 = m.build(e0name, cfg_override, budget);
      auto verdict = check_maximality(e0, coh, MaxMode::Maximal, budget);
      std::string name = tag + ".maximal[" + e0name + "]";
      if (verdict.holds)
        r.confirmed(name);
      else
        r.refuted(name, verdict.trace.empty() ? "" : verdict.trace.front());
    }
  }
}

}  // namespace

Report verify_theorem(const Model& m, char name,
                      std::optional<MorphismConfig> cfg_override,
                      std::optional<std::uint64_t> budget_override) {
  Report r;
  r.command = std::string("verify-theorem ") + name;
  r.digest = m.digest;
  r.cfg = cfg_override ? cfg_override->str() : m.default_cfg.str();
  r.budget = budget_override.value_or(m.budget);
  r.seed = m.seed;
  std::uint64_t budget = r.budget;
  switch (name) {
    case 'A': verify_a(m, r, cfg_override, budget); break;
    case 'B': verify_b(m, r, cfg_override, budget); break;
    case 'C': verify_c(m, r, cfg_override, budget); break;
    default: fail(ErrorKind::UsageError, "theorem must be A, B or C");
  }
  return r;
}

}  // namespace finext
