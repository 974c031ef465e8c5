#include "finext/construct.hpp"

#include <algorithm>

#include "finext/errors.hpp"

namespace finext {

std::vector<GaugeFixing> gauge_fixings(const ExtensionContext& ctx) {
  if (ctx.conn_hat.empty())
    fail(ErrorKind::EmptyConnHat, "no gauge fixings over an empty conn_hat");
  FinMap pi = quotient_map(ctx.gau_hat, ctx.conn_hat);
  std::vector<GaugeFixing> out;
  for (auto& s : enumerate_sections(pi)) out.push_back(GaugeFixing{std::move(s)});
  return out;
}

namespace {

// Quotient data for conn_hat: representatives and the per-representative
// value of an invariant functional.
struct QuotientFunctional {
  FinMap pi;         // conn_hat -> reps
  std::vector<Rat> value;  // per rep, the (injective) quotient functional
};

QuotientFunctional quotient_functional(const ExtensionContext& ctx,
                                       const RatFn& s) {
  QuotientFunctional q;
  q.pi = quotient_map(ctx.gau_hat, ctx.conn_hat);
  for (const auto& rep : q.pi.codomain().elements()) q.value.push_back(s.at(rep));
  return q;
}

void require_fixing(const ExtensionContext& ctx, const GaugeFixing& sigma,
                    const FinMap& pi) {
  if (!(sigma.sigma.domain() == pi.codomain()) ||
      !(sigma.sigma.codomain() == ctx.conn_hat))
    fail(ErrorKind::DomainMismatch, "gauge fixing does not match the quotient");
  FinMap check = compose(sigma.sigma, pi);
  if (!(check == FinMap::identity(pi.codomain())))
    fail(ErrorKind::InvalidConstruction, "gauge fixing is not a section");
}

}  // namespace

PullbackTypeResult pullback_type_extension(const ExtensionContext& ctx,
                                           const FinSet& x0, const RatFn& s,
                                           const GaugeFixing& sigma) {
  if (!ctx.conn_hat.subset_of(x0) || !x0.subset_of(ctx.omega))
    fail(ErrorKind::NotInjectiveInvariant,
         "base domain must sit between conn_hat and omega");
  if (!x0.subset_of(s.domain()) || !s.domain().contains(ctx.omega_base))
    fail(ErrorKind::DomainMismatch,
         "functional not defined on the base domain and the zero form");
  auto rep = invariance_report(ctx.gau_hat, s, x0);
  if (!rep.all())
    fail(ErrorKind::NotInjectiveInvariant,
         std::string("base domain is not an injective invariant subset (") +
             (!rep.invariant_subset  ? "not invariant"
              : !rep.invariant_fn    ? "functional not invariant"
                                     : "not quotient-injective") +
             ")");
  if (s.at(ctx.omega_base) != ctx.base_s.at_index(ctx.conn_base_index))
    fail(ErrorKind::ZeroDecomposition,
         "functional does not vanish at the zero form, so the zero form "
         "cannot be adjoined with a null correction");

  QuotientFunctional q = quotient_functional(ctx, s);
  require_fixing(ctx, sigma, q.pi);

  // Pullback of base_s against the quotient functional, in (conn, rep)
  // order. A repeated base value on the matching locus would make the
  // embedding collapse, which the construction cannot represent.
  std::vector<std::string> pb_elems;
  std::vector<std::uint32_t> delta_t, embed_t;
  std::vector<std::size_t> hits(q.value.size(), 0);
  for (std::size_t d = 0; d < ctx.conn.size(); ++d) {
    for (std::size_t r = 0; r < q.value.size(); ++r) {
      if (ctx.base_s.at_index(d) != q.value[r]) continue;
      ++hits[r];
      if (hits[r] > 1)
        fail(ErrorKind::BaseNotInjective,
             "base functional takes the value " + q.value[r].str() +
                 " more than once on the matching locus");
      pb_elems.push_back("(" + ctx.conn.at(d) + "," +
                         q.pi.codomain().at(r) + ")");
      delta_t.push_back(static_cast<std::uint32_t>(d));
      std::size_t img = *ctx.omega.index_of(
          sigma.sigma.codomain().at(sigma.sigma.apply_index(r)));
      embed_t.push_back(static_cast<std::uint32_t>(img));
    }
  }
  FinSet pb(std::move(pb_elems));
  PullbackWitness w;
  w.delta = FinMap(pb, ctx.conn, std::move(delta_t));
  w.embed = FinMap(pb, ctx.omega, std::move(embed_t));
  w.pb = pb;
  std::vector<bool> in_image(ctx.omega.size(), false);
  for (std::size_t p = 0; p < pb.size(); ++p) in_image[w.embed.apply_index(p)] = true;
  w.image = ctx.omega.filtered(in_image);

  // Compatibility square through xi: the base gauge action must preserve
  // the pullback fibers for the induced action to exist; reported, never
  // required.
  w.xi_square_commutes = true;
  for (std::size_t g = 0; g < ctx.gau.group().order() && w.xi_square_commutes;
       ++g)
    for (std::size_t p = 0; p < pb.size(); ++p) {
      std::size_t d = w.delta.apply_index(p);
      std::size_t gd = ctx.gau.act(g, d);
      if (ctx.base_s.at_index(gd) != ctx.base_s.at_index(d)) {
        w.xi_square_commutes = false;
        break;
      }
    }
  w.image_gau_invariant = true;
  for (std::size_t g = 0; g < ctx.gau.group().order() && w.image_gau_invariant;
       ++g) {
    std::size_t hg = ctx.xi.apply(g);
    for (const auto& x : w.image.elements()) {
      std::size_t xi_img = ctx.gau_hat.act(hg, *ctx.omega.index_of(x));
      if (!w.image.contains(ctx.omega.at(xi_img))) {
        w.image_gau_invariant = false;
        break;
      }
    }
  }

  // The extension: domain and correction subspace get the zero form
  // adjoined; delta extends by sending it to the flat point.
  FinSet zero_only(std::vector<std::string>{ctx.omega_base});
  FinSet domain = carrier_union(ctx.omega, {&x0, &zero_only});
  FinSet corr = carrier_union(ctx.omega, {&w.image, &zero_only});

  std::vector<Rat> sv;
  for (const auto& x : domain.elements()) sv.push_back(s.at(x));
  std::vector<std::uint32_t> dt;
  for (const auto& c : corr.elements()) {
    if (c == ctx.omega_base && !w.image.contains(c)) {
      dt.push_back(static_cast<std::uint32_t>(ctx.conn_base_index));
      continue;
    }
    // unique pullback point embedding at c
    for (std::size_t p = 0; p < pb.size(); ++p)
      if (ctx.omega.at(w.embed.apply_index(p)) == c) {
        dt.push_back(static_cast<std::uint32_t>(w.delta.apply_index(p)));
        break;
      }
  }

  PullbackTypeResult out;
  out.extension.domain = domain;
  out.extension.s_hat = RatFn(domain, std::move(sv));
  out.extension.correction = corr;
  out.extension.correction_fn = RatFn::constant(corr, Rat(0));
  out.extension.delta = FinMap(corr, ctx.conn, std::move(dt));
  out.witness = std::move(w);

  auto bad = validate_extension(ctx, out.extension);
  if (!bad.empty())
    fail(ErrorKind::InvalidConstruction,
         "pullback-type construction produced an invalid extension: " +
             bad.front());
  return out;
}

SigmaIndependenceReport sigma_independence(const ExtensionContext& ctx,
                                           const FinSet& x0, const RatFn& s) {
  SigmaIndependenceReport rep;
  auto fixings = gauge_fixings(ctx);
  rep.fixings = fixings.size();
  std::vector<PullbackTypeResult> built;
  built.reserve(fixings.size());
  for (const auto& sg : fixings)
    built.push_back(pullback_type_extension(ctx, x0, s, sg));
  for (const auto& b : built) rep.image_sizes.push_back(b.witness.image.size());
  rep.sizes_constant =
      std::all_of(rep.image_sizes.begin(), rep.image_sizes.end(),
                  [&](std::size_t n) { return n == rep.image_sizes.front(); });

  rep.bijections_verified = true;
  for (std::size_t i = 0; i < built.size(); ++i) {
    for (std::size_t j = 0; j < built.size(); ++j) {
      ++rep.pairs_checked;
      // Both images are embeddings of the same pullback; the transfer
      // composite must be a pointwise bijection between them.
      const auto& a = built[i].witness;
      const auto& b = built[j].witness;
      if (!(a.pb == b.pb)) {
        rep.bijections_verified = false;
        continue;
      }
      std::vector<bool> hit(b.image.size(), false);
      for (std::size_t p = 0; p < a.pb.size(); ++p) {
        const std::string& target = ctx.omega.at(b.embed.apply_index(p));
        auto t = b.image.index_of(target);
        if (!t || hit[*t]) {
          rep.bijections_verified = false;
          break;
        }
        hit[*t] = true;
      }
      if (!std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }))
        rep.bijections_verified = false;
    }
  }
  return rep;
}

InjectivizeResult injectivize(const ExtensionContext& ctx, const Extension& e) {
  Extension completed = completion(ctx, e);

  const FinSet core = ctx.mandatory_core();
  GroupAction on_domain = ctx.gau_hat.restricted(e.domain);
  {
    auto core_rep = invariance_report(on_domain, e.s_hat, core);
    if (!core_rep.quotient_injective)
      fail(ErrorKind::BaseNotInjective,
           "extended functional is not quotient-injective on the mandatory "
           "core; no injective extension with this functional exists");
  }

  // Greedy maximal injective invariant subset of the domain, with no core
  // requirement: the literal two-step construction.
  FinSet empty_core{};
  auto mis = maximal_injective_subsets(on_domain, e.s_hat, empty_core);
  FinSet x_prime = mis.canonical;

  InjectivizeResult out;

  // Union with the core, shrinking the greedy subset when the union
  // breaks quotient-injectivity.
  std::vector<Rat> core_values;
  for (const auto& block : orbits(on_domain, core))
    core_values.push_back(e.s_hat.at(block.at(0)));
  std::vector<bool> keep(e.domain.size(), false);
  for (const auto& x : core.elements()) keep[*e.domain.index_of(x)] = true;
  for (const auto& block : orbits(on_domain, x_prime)) {
    if (core.contains(block.at(0))) continue;
    Rat v = e.s_hat.at(block.at(0));
    bool clash = std::any_of(core_values.begin(), core_values.end(),
                             [&](const Rat& c) { return c == v; });
    if (clash) {
      out.deviations.push_back(
          "injectivize: dropped orbit " + block.str() + " (value " + v.str() +
          ") conflicting with the mandatory core after re-union");
      continue;
    }
    for (const auto& x : block.elements()) keep[*e.domain.index_of(x)] = true;
  }
  FinSet x_second = e.domain.filtered(keep);

  std::vector<bool> keep_corr(completed.correction.size(), false);
  for (std::size_t k = 0; k < completed.correction.size(); ++k)
    keep_corr[k] = x_second.contains(completed.correction.at(k));
  FinSet corr = completed.correction.filtered(keep_corr);

  out.result.domain = x_second;
  out.result.s_hat = e.s_hat.restrict_to(x_second);
  out.result.correction = corr;
  out.result.correction_fn = RatFn::constant(corr, Rat(0));
  std::vector<std::uint32_t> dt;
  for (const auto& c : corr.elements())
    dt.push_back(static_cast<std::uint32_t>(
        *ctx.conn.index_of(completed.delta.apply(c))));
  out.result.delta = FinMap(corr, ctx.conn, std::move(dt));

  auto bad = validate_extension(ctx, out.result);
  if (!bad.empty())
    fail(ErrorKind::InvalidConstruction,
         "injectivize produced an invalid extension: " + bad.front());

  std::vector<std::uint32_t> ft, gt;
  for (const auto& x : x_second.elements())
    ft.push_back(static_cast<std::uint32_t>(*e.domain.index_of(x)));
  for (const auto& c : corr.elements())
    gt.push_back(static_cast<std::uint32_t>(*e.correction.index_of(c)));
  out.mono = ExtMorphism{FinMap(x_second, e.domain, std::move(ft)),
                         FinMap(corr, e.correction, std::move(gt))};
  return out;
}

RetractResult retract_r_sigma(const ExtensionContext& ctx, const Extension& e,
                              const GaugeFixing& sigma) {
  const FinSet core = ctx.mandatory_core();
  bool complete = std::all_of(e.correction_fn.values().begin(),
                              e.correction_fn.values().end(),
                              [](const Rat& v) { return v.is_zero(); });
  if (!complete)
    fail(ErrorKind::NotCoherentInput, "retract input is not complete");
  if (!e.correction.subset_of(core))
    fail(ErrorKind::NotCoherentInput, "retract input is not small");
  if (!invariance_report(ctx.gau_hat, e.s_hat, e.domain).quotient_injective)
    fail(ErrorKind::NotCoherentInput, "retract input is not injective");

  RetractResult out;
  auto built = pullback_type_extension(ctx, e.domain, e.s_hat, sigma);
  out.result = std::move(built.extension);

  // The unique comparison map of the correction subspace into the
  // pullback (on the part inside conn_hat; the adjoined zero form is the
  // surrogate's own bookkeeping).
  std::vector<std::string> mu_dom_elems;
  for (const auto& c : e.correction.elements())
    if (ctx.conn_hat.contains(c)) mu_dom_elems.push_back(c);
  FinSet mu_dom(std::move(mu_dom_elems));
  FinMap pi = quotient_map(ctx.gau_hat, ctx.conn_hat);
  std::vector<std::uint32_t> mu_t;
  for (const auto& c : mu_dom.elements()) {
    std::string pair = "(" + e.delta.apply(c) + "," + pi.apply(c) + ")";
    auto p = built.witness.pb.index_of(pair);
    if (!p)
      fail(ErrorKind::InvalidConstruction,
           "correction point '" + c + "' has no pullback image");
    mu_t.push_back(static_cast<std::uint32_t>(*p));
  }
  out.mu = FinMap(mu_dom, built.witness.pb, std::move(mu_t));
  out.mu_injective = map_properties(out.mu).injective;
  return out;
}

NestedCheckReport nested_domain_check(const ExtensionContext& ctx,
                                      const FinSet& x0, const FinSet& x1,
                                      const RatFn& s, const GaugeFixing& sigma) {
  NestedCheckReport rep;
  if (!ctx.conn_hat.subset_of(x0))
    rep.problems.push_back("conn_hat not inside the smaller domain");
  if (!x0.subset_of(x1)) rep.problems.push_back("domains are not nested");
  if (!x1.subset_of(ctx.omega)) rep.problems.push_back("larger domain exceeds omega");
  if (rep.problems.empty()) {
    auto r0 = invariance_report(ctx.gau_hat, s, x0);
    auto r1 = invariance_report(ctx.gau_hat, s, x1);
    if (!r0.all())
      rep.problems.push_back("smaller domain is not an injective invariant subset");
    if (!r1.all())
      rep.problems.push_back("larger domain is not an injective invariant subset");
  }
  if (!rep.problems.empty()) return rep;
  rep.preconditions_ok = true;

  auto b0 = pullback_type_extension(ctx, x0, s, sigma);
  auto b1 = pullback_type_extension(ctx, x1, s, sigma);

  rep.locus_nested = b0.witness.image.subset_of(b1.witness.image);

  // Mediating map between the pullbacks, matched by element name.
  std::vector<std::uint32_t> eta_t;
  bool eta_ok = true;
  for (const auto& p : b0.witness.pb.elements()) {
    auto q = b1.witness.pb.index_of(p);
    if (!q) {
      eta_ok = false;
      break;
    }
    eta_t.push_back(static_cast<std::uint32_t>(*q));
  }
  if (eta_ok) {
    FinMap eta(b0.witness.pb, b1.witness.pb, std::move(eta_t));
    rep.eta_injective = map_properties(eta).injective;
    rep.diagram_commutes = true;
    for (std::size_t p = 0; p < b0.witness.pb.size(); ++p) {
      std::size_t q = eta.apply_index(p);
      if (b0.witness.delta.apply_index(p) != b1.witness.delta.apply_index(q) ||
          b0.witness.embed.apply_index(p) != b1.witness.embed.apply_index(q))
        rep.diagram_commutes = false;
    }
    // The functionals agree where the loci meet, being restrictions of
    // the same s.
    for (const auto& x : b0.witness.image.elements())
      if (s.at(x) != b1.extension.s_hat.at(x)) rep.diagram_commutes = false;
  }
  return rep;
}

const char* class_kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::Comp: return "Comp";
    case ClassKind::Inj: return "Inj";
    case ClassKind::Small: return "Small";
    case ClassKind::Pb: return "Pb";
    case ClassKind::Coh: return "Coh";
    case ClassKind::SCoh: return "SCoh";
  }
  return "?";
}

ClassKind parse_class_kind(const std::string& s) {
  if (s == "Comp") return ClassKind::Comp;
  if (s == "Inj") return ClassKind::Inj;
  if (s == "Small") return ClassKind::Small;
  if (s == "Pb") return ClassKind::Pb;
  if (s == "Coh") return ClassKind::Coh;
  if (s == "SCoh") return ClassKind::SCoh;
  fail(ErrorKind::UsageError, "unknown class kind '" + s + "'");
}

namespace {

std::uint64_t pow_capped(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// All invariant functionals on omega with palette values per orbit and
// zero at the zero form.
std::vector<RatFn> palette_functionals(const ExtensionContext& ctx,
                                       const std::vector<Rat>& palette,
                                       std::uint64_t budget) {
  auto blocks = orbits(ctx.gau_hat, ctx.omega);
  std::vector<std::size_t> free_blocks;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (!blocks[b].contains(ctx.omega_base)) free_blocks.push_back(b);
  if (pow_capped(palette.size(), free_blocks.size(), budget) > budget)
    fail(ErrorKind::SearchBudgetExceeded, "palette functional enumeration");

  std::vector<RatFn> out;
  std::vector<std::size_t> pick(free_blocks.size(), 0);
  for (;;) {
    std::vector<Rat> values(ctx.omega.size(), Rat(0));
    for (std::size_t k = 0; k < free_blocks.size(); ++k)
      for (const auto& x : blocks[free_blocks[k]].elements())
        values[*ctx.omega.index_of(x)] = palette[pick[k]];
    out.emplace_back(ctx.omega, std::move(values));
    std::size_t k = free_blocks.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++pick[k] < palette.size()) {
        done = false;
        break;
      }
      pick[k] = 0;
    }
    if (done) break;
  }
  return out;
}

}  // namespace

ExtClass build_class(std::shared_ptr<const ExtensionContext> ctx,
                     const ClassBuildSpec& spec, MorphismConfig cfg) {
  const ExtensionContext& c = *ctx;
  const FinSet core = c.mandatory_core();

  std::vector<RatFn> functionals;
  if (spec.functional) {
    if (!(spec.functional->domain() == c.omega))
      fail(ErrorKind::InvalidConstruction,
           "build functional must live on omega");
    functionals.push_back(*spec.functional);
  } else {
    if (spec.palette.empty())
      fail(ErrorKind::InvalidConstruction,
           "build needs a pinned functional or a value palette");
    functionals = palette_functionals(c, spec.palette, spec.budget);
  }

  // Optional orbits: those outside the mandatory core.
  auto blocks = orbits(c.gau_hat, c.omega);
  std::vector<std::size_t> optional_blocks;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (!core.contains(blocks[b].at(0))) optional_blocks.push_back(b);
  if (optional_blocks.size() > 20)
    fail(ErrorKind::SearchBudgetExceeded, "domain lattice too large");

  std::vector<Extension> members;
  std::vector<std::string> labels;
  auto add = [&](Extension e, std::string label) {
    for (const auto& m : members)
      if (m == e) return;
    members.push_back(std::move(e));
    labels.push_back(std::move(label));
  };

  std::vector<GaugeFixing> fixings;
  if (!c.conn_hat.empty()) fixings = gauge_fixings(c);

  for (std::uint64_t mask = 0;
       mask < (std::uint64_t(1) << optional_blocks.size()); ++mask) {
    std::vector<bool> keep(c.omega.size(), false);
    for (const auto& x : core.elements()) keep[*c.omega.index_of(x)] = true;
    for (std::size_t b = 0; b < optional_blocks.size(); ++b)
      if (mask & (std::uint64_t(1) << b))
        for (const auto& x : blocks[optional_blocks[b]].elements())
          keep[*c.omega.index_of(x)] = true;
    FinSet domain = c.omega.filtered(keep);

    for (std::size_t fi = 0; fi < functionals.size(); ++fi) {
      const RatFn& s = functionals[fi];
      std::string tag = "d" + std::to_string(mask) +
                        (functionals.size() > 1 ? ".f" + std::to_string(fi) : "");

      if (spec.kind == ClassKind::Pb) {
        if (s.at_index(c.omega_base_index) !=
            c.base_s.at_index(c.conn_base_index))
          continue;
        if (!invariance_report(c.gau_hat, s, domain).all()) continue;
        for (std::size_t k = 0; k < fixings.size(); ++k) {
          try {
            auto built = pullback_type_extension(c, domain, s, fixings[k]);
            add(std::move(built.extension),
                "pb." + tag + ".sig" + std::to_string(k));
          } catch (const Error& err) {
            if (err.kind() != ErrorKind::BaseNotInjective) throw;
          }
        }
        continue;
      }

      if (spec.kind == ClassKind::Coh || spec.kind == ClassKind::SCoh)
        continue;  // built from the pullback route below

      // Generic enumeration: correction subspaces inside the mandatory
      // core (with the zero form), every delta map, correction functional
      // determined by the decomposition law.
      if (!c.gau_hat.subset_invariant(domain)) continue;
      RatFn s_hat = s.restrict_to(domain);
      if (!invariance_report(c.gau_hat, s_hat, domain).invariant_fn) continue;

      std::vector<std::string> optional_corr;
      for (const auto& x : core.elements())
        if (x != c.omega_base) optional_corr.push_back(x);
      std::uint64_t delta_bound =
          pow_capped(c.conn.size(), core.size(), spec.budget);
      std::uint64_t total = pow_capped(2, optional_corr.size(), spec.budget);
      if (delta_bound > spec.budget || total > spec.budget)
        fail(ErrorKind::SearchBudgetExceeded, "class enumeration too large");

      for (std::uint64_t cm = 0;
           cm < (std::uint64_t(1) << optional_corr.size()); ++cm) {
        std::vector<bool> ck(c.omega.size(), false);
        ck[c.omega_base_index] = true;
        for (std::size_t b = 0; b < optional_corr.size(); ++b)
          if (cm & (std::uint64_t(1) << b))
            ck[*c.omega.index_of(optional_corr[b])] = true;
        FinSet corr = c.omega.filtered(ck);

        std::vector<std::size_t> dpick(corr.size(), 0);
        for (;;) {
          std::vector<std::uint32_t> dt(corr.size());
          std::vector<Rat> cv(corr.size());
          for (std::size_t i = 0; i < corr.size(); ++i) {
            dt[i] = static_cast<std::uint32_t>(dpick[i]);
            cv[i] = s_hat.at(corr.at(i)) - c.base_s.at_index(dpick[i]);
          }
          Extension e;
          e.domain = domain;
          e.s_hat = s_hat;
          e.correction = corr;
          e.correction_fn = RatFn(corr, std::move(cv));
          e.delta = FinMap(corr, c.conn, std::move(dt));

          bool keep_member = true;
          bool complete_member =
              std::all_of(e.correction_fn.values().begin(),
                          e.correction_fn.values().end(),
                          [](const Rat& v) { return v.is_zero(); });
          switch (spec.kind) {
            case ClassKind::Comp:
              keep_member = complete_member;
              break;
            case ClassKind::Inj:
              keep_member =
                  invariance_report(c.gau_hat, s_hat, domain).quotient_injective;
              break;
            case ClassKind::Small:
              keep_member = e.correction.subset_of(core);
              break;
            case ClassKind::Coh:
            case ClassKind::SCoh:
              keep_member = false;  // handled below from the Pb route
              break;
            case ClassKind::Pb:
              keep_member = false;
              break;
          }
          if (keep_member && validate_extension(c, e).empty())
            add(std::move(e), "ext." + tag + ".c" + std::to_string(cm) +
                                  ".q" + [&] {
                                    std::string qs;
                                    for (auto d : dpick)
                                      qs += std::to_string(d);
                                    return qs;
                                  }());

          std::size_t i = corr.size();
          bool done = true;
          while (i > 0) {
            --i;
            if (++dpick[i] < c.conn.size()) {
              done = false;
              break;
            }
            dpick[i] = 0;
          }
          if (done) break;
        }
      }
    }
  }

  // Coherent kinds: injective members of the pullback-type class
  // (smallness holds for every pullback-type member, so SCoh and Coh
  // coincide here, matching the inclusion the class calculus asserts).
  if (spec.kind == ClassKind::Coh || spec.kind == ClassKind::SCoh) {
    ClassBuildSpec pb_spec = spec;
    pb_spec.kind = ClassKind::Pb;
    ExtClass pb = build_class(ctx, pb_spec, cfg);
    for (std::size_t i = 0; i < pb.members.size(); ++i) {
      if (invariance_report(c.gau_hat, pb.members[i].s_hat,
                            pb.members[i].domain)
              .quotient_injective)
        add(pb.members[i], "coh." + pb.labels[i]);
    }
  }

  return make_class(ctx, std::move(members), std::move(labels), cfg);
}

}  // namespace finext
