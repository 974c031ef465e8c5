// Command-line front end: every subcommand maps one-to-one onto a library
// operation and emits a deterministic report (text or structured JSON).
//
// Exit codes: 0 all verdicts confirmed, 2 hypothesis unmet,
// 3 counterexample found, 4 search budget exceeded, 5 invalid input.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "finext/construct.hpp"
#include "finext/errors.hpp"
#include "finext/instance.hpp"
#include "finext/report.hpp"
#include "finext/verify.hpp"

namespace {

using namespace finext;

struct CommonOpts {
  std::string cfg;
  std::uint64_t budget = 0;
  std::uint64_t seed_override = 0;
  bool has_budget = false;
  bool has_seed = false;
  std::string out;
  std::string format = "text";
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--cfg", o.cfg,
                  "morphism constraints (comma list or 'strict')");
  cmd->add_option("--budget", o.budget, "enumeration budget")
      ->each([&](const std::string&) { o.has_budget = true; });
  cmd->add_option("--seed", o.seed_override, "seed echo for reports")
      ->each([&](const std::string&) { o.has_seed = true; });
  cmd->add_option("--out", o.out, "also write the report to this path");
  cmd->add_option("--format", o.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_flag("--timing", o.timing, "include wall time in the report");
}

std::optional<MorphismConfig> cfg_override(const CommonOpts& o) {
  if (o.cfg.empty()) return std::nullopt;
  return MorphismConfig::parse(o.cfg);
}

struct Emitter {
  CommonOpts* opts;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  int emit(Report r) const {
    if (opts->timing)
      r.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::string rendered =
        opts->format == "structured" ? render_structured(r) : render_text(r);
    std::cout << rendered;
    if (!opts->out.empty()) {
      std::ofstream f(opts->out);
      f << rendered;
    }
    return r.exit_code();
  }
};

Report base_report(const Model& m, const CommonOpts& o, std::string command) {
  Report r;
  r.command = std::move(command);
  r.digest = m.digest;
  r.cfg = o.cfg.empty() ? m.default_cfg.str() : MorphismConfig::parse(o.cfg).str();
  r.budget = o.has_budget ? o.budget : m.budget;
  r.seed = o.has_seed ? o.seed_override : m.seed;
  return r;
}

std::uint64_t budget_of(const Model& m, const CommonOpts& o) {
  return o.has_budget ? o.budget : m.budget;
}

std::string morphism_str(const ExtMorphism& mo) {
  return "f=" + mo.f.str() + " g=" + mo.g.str();
}

std::string matrix_str(const RelationMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += " ";
    for (std::size_t j = 0; j < m[i].size(); ++j) out += m[i][j] ? "1" : "0";
  }
  return out;
}

const ExtensionContext& sole_context(const Model& m, std::string& name) {
  if (!name.empty()) return *m.context(name);
  if (m.contexts.size() != 1)
    fail(ErrorKind::UsageError,
         "instance has several contexts; pass --context");
  name = m.contexts.begin()->first;
  return *m.contexts.begin()->second;
}

int run(int argc, char** argv) {
  CLI::App app{"finite extension calculus verifier"};
  app.require_subcommand(1);

  struct {
    std::string inst, e1, e2, ext, cls, domainset, dom0, dom1, fnname, kind,
        theorem, profile, outdir, context, mode = "maximality";
    std::size_t sigma = 0;
    std::uint64_t gen_seed = 0;
    std::size_t gen_count = 10;
    std::vector<std::string> exts;
    std::string palette;
  } a;
  CommonOpts o;

  auto* c_validate = app.add_subcommand("validate", "resolve and validate an instance");
  c_validate->add_option("instance", a.inst)->required();

  auto* c_homset = app.add_subcommand("homset", "enumerate morphisms e1 -> e2");
  c_homset->add_option("instance", a.inst)->required();
  c_homset->add_option("e1", a.e1)->required();
  c_homset->add_option("e2", a.e2)->required();

  auto* c_poset = app.add_subcommand("poset", "iso-class order of a class");
  c_poset->add_option("instance", a.inst)->required();
  c_poset->add_option("class", a.cls)->required();

  auto* c_iso = app.add_subcommand("isoclasses", "isomorphism classes");
  c_iso->add_option("instance", a.inst)->required();
  c_iso->add_option("class", a.cls)->required();

  auto* c_term = app.add_subcommand("terminal", "terminal objects of a class");
  c_term->add_option("instance", a.inst)->required();
  c_term->add_option("class", a.cls)->required();

  auto* c_gaunt = app.add_subcommand("gaunt", "is the class gaunt");
  c_gaunt->add_option("instance", a.inst)->required();
  c_gaunt->add_option("class", a.cls)->required();

  auto* c_triv = app.add_subcommand("trivial-classify", "trivial-type of an extension");
  c_triv->add_option("instance", a.inst)->required();
  c_triv->add_option("extension", a.ext)->required();

  auto* c_comp = app.add_subcommand("completion", "zero-correction completion");
  c_comp->add_option("instance", a.inst)->required();
  c_comp->add_option("extension", a.ext)->required();

  auto* c_cop = app.add_subcommand("coproduct", "disjoint-beyond-core union");
  c_cop->add_option("instance", a.inst)->required();
  c_cop->add_option("extensions", a.exts)->required()->expected(-2);

  auto* c_gf = app.add_subcommand("gauge-fixings", "sections of the conn_hat quotient");
  c_gf->add_option("instance", a.inst)->required();
  c_gf->add_option("--context", a.context);

  auto* c_pb = app.add_subcommand("pullback-ext", "gauge-fixed pullback extension");
  c_pb->add_option("instance", a.inst)->required();
  c_pb->add_option("domain", a.dom0)->required();
  c_pb->add_option("functional", a.fnname)->required();
  c_pb->add_option("sigma", a.sigma)->required();

  auto* c_si = app.add_subcommand("sigma-independence", "locus independence of the fixing");
  c_si->add_option("instance", a.inst)->required();
  c_si->add_option("domain", a.dom0)->required();
  c_si->add_option("functional", a.fnname)->required();

  auto* c_inj = app.add_subcommand("injectivize", "canonical complete injective extension");
  c_inj->add_option("instance", a.inst)->required();
  c_inj->add_option("extension", a.ext)->required();

  auto* c_ret = app.add_subcommand("retract", "gauge-fixed retraction onto pullback type");
  c_ret->add_option("instance", a.inst)->required();
  c_ret->add_option("extension", a.ext)->required();
  c_ret->add_option("sigma", a.sigma)->required();

  auto* c_nest = app.add_subcommand("nested-check", "nested-domain pullback comparison");
  c_nest->add_option("instance", a.inst)->required();
  c_nest->add_option("dom0", a.dom0)->required();
  c_nest->add_option("dom1", a.dom1)->required();
  c_nest->add_option("functional", a.fnname)->required();
  c_nest->add_option("sigma", a.sigma)->required();

  auto* c_build = app.add_subcommand("build-class", "enumerate a class by kind");
  c_build->add_option("instance", a.inst)->required();
  c_build->add_option("kind", a.kind)->required();
  c_build->add_option("--functional", a.fnname);
  c_build->add_option("--palette", a.palette);
  c_build->add_option("--context", a.context);

  auto* c_coh = app.add_subcommand("coherence", "I-coherence of a class");
  c_coh->add_option("instance", a.inst)->required();
  c_coh->add_option("class", a.cls)->required();
  c_coh->add_option("domainset", a.domainset)->required();
  c_coh->add_option("--mode", a.mode)
      ->check(CLI::IsMember({"maximality", "universality"}));

  auto* c_den = app.add_subcommand("density", "density of a mode at a candidate");
  c_den->add_option("instance", a.inst)->required();
  c_den->add_option("class", a.cls)->required();
  c_den->add_option("candidate", a.ext)->required();
  c_den->add_option("--mode", a.mode, "maximal/universal/weak-maximal/weak-universal");

  auto* c_vt = app.add_subcommand("verify-theorem", "verify declared hypotheses");
  c_vt->add_option("theorem", a.theorem)->required()->check(CLI::IsMember({"A", "B", "C"}));
  c_vt->add_option("instance", a.inst)->required();

  auto* c_gen = app.add_subcommand("generate", "emit deterministic instances");
  c_gen->add_option("--seed", a.gen_seed);
  c_gen->add_option("--profile", a.profile)->required();
  c_gen->add_option("--count", a.gen_count);
  c_gen->add_option("--out-dir", a.outdir)->required();

  for (auto* cmd : app.get_subcommands({}))
    add_common(cmd, o);

  CLI11_PARSE(app, argc, argv);
  Emitter emit{&o};

  if (c_gen->parsed()) {
    auto files = generate_instances(a.gen_seed, a.profile, a.gen_count);
    std::filesystem::create_directories(a.outdir);
    Report r;
    r.command = "generate " + a.profile;
    r.cfg = "strict";
    r.seed = a.gen_seed;
    r.budget = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::string text = serialize_instance(files[i]);
      std::string name =
          a.profile + "-" + std::to_string(a.gen_seed) + "-" + std::to_string(i) + ".fx";
      std::ofstream f(std::filesystem::path(a.outdir) / name);
      f << text;
      r.info("emit." + name, hex_digest(fnv1a64(text)));
    }
    r.digest = "-";
    return emit.emit(r);
  }

  Model m = load_instance(a.inst);
  std::uint64_t budget = budget_of(m, o);
  auto cfg_opt = cfg_override(o);

  if (c_validate->parsed()) {
    Report r = base_report(m, o, "validate " + a.inst);
    r.confirmed("resolve", "all structures pass their constructor checks");
    r.info("sets", std::to_string(m.sets.size()));
    r.info("contexts", std::to_string(m.contexts.size()));
    r.info("extensions", std::to_string(m.extensions.size()));
    r.info("classes", std::to_string(m.classes.size()));
    return emit.emit(r);
  }

  if (c_homset->parsed()) {
    Report r = base_report(m, o, "homset " + a.e1 + " " + a.e2);
    const auto& ne1 = m.extension(a.e1);
    const auto& ne2 = m.extension(a.e2);
    if (ne1.context != ne2.context)
      fail(ErrorKind::UsageError, "extensions live over different contexts");
    MorphismConfig cfg = cfg_opt.value_or(m.default_cfg);
    auto homs = hom_set(*m.context(ne1.context), ne1.ext, ne2.ext, cfg, budget);
    r.confirmed("hom-count", std::to_string(homs.size()));
    for (std::size_t i = 0; i < homs.size() && i < 64; ++i)
      r.info("hom." + std::to_string(i), morphism_str(homs[i]));
    if (homs.size() > 64) r.notes.push_back("listing truncated at 64 morphisms");
    return emit.emit(r);
  }

  if (c_poset->parsed()) {
    Report r = base_report(m, o, "poset " + a.cls);
    ExtClass cl = m.build(a.cls, cfg_opt, budget);
    auto pre = build_preorder(cl, budget);
    r.info("preorder", matrix_str(pre));
    auto p = iso_poset(cl, budget);
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      std::string members;
      for (auto i : p.blocks[b]) members += (members.empty() ? "" : ",") + cl.label(i);
      r.info("class." + std::to_string(b), "{" + members + "}");
    }
    r.info("leq", matrix_str(p.leq));
    auto top = greatest_element(p);
    if (top)
      r.confirmed("greatest", cl.label(p.reps[*top]));
    else
      r.info("greatest", "none");
    return emit.emit(r);
  }

  if (c_iso->parsed()) {
    Report r = base_report(m, o, "isoclasses " + a.cls);
    ExtClass cl = m.build(a.cls, cfg_opt, budget);
    auto blocks = iso_classes(*cl.ctx, cl.members, cl.cfg, budget);
    r.confirmed("blocks", std::to_string(blocks.size()));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::string members;
      for (auto i : blocks[b]) members += (members.empty() ? "" : ",") + cl.label(i);
      r.info("block." + std::to_string(b), "{" + members + "}");
    }
    return emit.emit(r);
  }

  if (c_term->parsed()) {
    Report r = base_report(m, o, "terminal " + a.cls);
    ExtClass cl = m.build(a.cls, cfg_opt, budget);
    auto ts = terminal_objects(cl, budget);
    r.confirmed("terminal-count", std::to_string(ts.size()));
    for (auto t : ts) r.info("terminal", cl.label(t));
    return emit.emit(r);
  }

  if (c_gaunt->parsed()) {
    Report r = base_report(m, o, "gaunt " + a.cls);
    ExtClass cl = m.build(a.cls, cfg_opt, budget);
    bool g = is_gaunt(cl, budget);
    r.confirmed("gaunt", g ? "true" : "false");
    return emit.emit(r);
  }

  if (c_triv->parsed()) {
    Report r = base_report(m, o, "trivial-classify " + a.ext);
    const auto& ne = m.extension(a.ext);
    r.confirmed("kind",
                trivial_kind_name(classify_trivial(*m.context(ne.context), ne.ext)));
    return emit.emit(r);
  }

  if (c_comp->parsed()) {
    Report r = base_report(m, o, "completion " + a.ext);
    const auto& ne = m.extension(a.ext);
    Extension done = completion(*m.context(ne.context), ne.ext);
    r.confirmed("correction-subspace", done.correction.str());
    r.info("unchanged", done == ne.ext ? "true" : "false");
    return emit.emit(r);
  }

  if (c_cop->parsed()) {
    std::string names;
    for (const auto& n : a.exts) names += (names.empty() ? "" : " ") + n;
    Report r = base_report(m, o, "coproduct " + names);
    std::vector<Extension> family;
    std::string ctx_name;
    for (const auto& n : a.exts) {
      const auto& ne = m.extension(n);
      if (ctx_name.empty()) ctx_name = ne.context;
      if (ne.context != ctx_name)
        fail(ErrorKind::UsageError, "family members over different contexts");
      family.push_back(ne.ext);
    }
    Extension result = coproduct(*m.context(ctx_name), family);
    r.confirmed("domain", result.domain.str());
    r.confirmed("correction-subspace", result.correction.str());
    auto inj = coproduct_injections(*m.context(ctx_name), family, result);
    MorphismConfig cfg = cfg_opt.value_or(m.default_cfg);
    bool inj_ok = true;
    for (std::size_t k = 0; k < inj.size(); ++k)
      if (!morphism_satisfies(*m.context(ctx_name), family[k], result, inj[k], cfg))
        inj_ok = false;
    if (inj_ok)
      r.confirmed("injections", "canonical injections are morphisms");
    else
      r.refuted("injections", "an injection violates the configuration");
    return emit.emit(r);
  }

  if (c_gf->parsed()) {
    const ExtensionContext& ctx = sole_context(m, a.context);
    Report r = base_report(m, o, "gauge-fixings " + a.context);
    auto fixings = gauge_fixings(ctx);
    r.confirmed("count", std::to_string(fixings.size()));
    for (std::size_t i = 0; i < fixings.size(); ++i)
      r.info("sigma." + std::to_string(i), fixings[i].str());
    return emit.emit(r);
  }

  if (c_pb->parsed()) {
    Report r = base_report(m, o, "pullback-ext " + a.dom0 + " " + a.fnname +
                                     " " + std::to_string(a.sigma));
    const auto& dom = m.domain(a.dom0);
    const auto& ctx = *m.context(dom.context);
    auto fixings = gauge_fixings(ctx);
    if (a.sigma >= fixings.size())
      fail(ErrorKind::UsageError, "sigma index out of range");
    auto built = pullback_type_extension(ctx, dom.domain, m.fn(a.fnname),
                                         fixings[a.sigma]);
    r.confirmed("locus", built.witness.image.str());
    r.confirmed("correction-subspace", built.extension.correction.str());
    r.info("xi-square", built.witness.xi_square_commutes
                            ? "commutes"
                            : "invariance not established");
    r.info("locus-invariance", built.witness.image_gau_invariant
                                   ? "holds"
                                   : "invariance not established");
    return emit.emit(r);
  }

  if (c_si->parsed()) {
    Report r = base_report(m, o, "sigma-independence " + a.dom0 + " " + a.fnname);
    const auto& dom = m.domain(a.dom0);
    auto rep = sigma_independence(*m.context(dom.context), dom.domain,
                                  m.fn(a.fnname));
    r.info("fixings", std::to_string(rep.fixings));
    if (rep.sizes_constant)
      r.confirmed("locus-size-constant",
                  std::to_string(rep.image_sizes.front()));
    else
      r.refuted("locus-size-constant", "sizes differ across fixings");
    if (rep.bijections_verified)
      r.confirmed("bijections", std::to_string(rep.pairs_checked) + " pairs");
    else
      r.refuted("bijections", "a transfer map fails to be a bijection");
    return emit.emit(r);
  }

  if (c_inj->parsed()) {
    Report r = base_report(m, o, "injectivize " + a.ext);
    const auto& ne = m.extension(a.ext);
    auto res = injectivize(*m.context(ne.context), ne.ext);
    r.confirmed("domain", res.result.domain.str());
    r.confirmed("correction-subspace", res.result.correction.str());
    r.info("unchanged", res.result == ne.ext ? "true" : "false");
    for (const auto& d : res.deviations) r.deviations.push_back(d);
    return emit.emit(r);
  }

  if (c_ret->parsed()) {
    Report r = base_report(m, o, "retract " + a.ext + " " + std::to_string(a.sigma));
    const auto& ne = m.extension(a.ext);
    const auto& ctx = *m.context(ne.context);
    auto fixings = gauge_fixings(ctx);
    if (a.sigma >= fixings.size())
      fail(ErrorKind::UsageError, "sigma index out of range");
    auto res = retract_r_sigma(ctx, ne.ext, fixings[a.sigma]);
    r.confirmed("correction-subspace", res.result.correction.str());
    r.info("unchanged", res.result == ne.ext ? "true" : "false");
    r.info("mu-injective", res.mu_injective ? "true" : "false");
    return emit.emit(r);
  }

  if (c_nest->parsed()) {
    Report r = base_report(m, o, "nested-check " + a.dom0 + " " + a.dom1);
    const auto& d0 = m.domain(a.dom0);
    const auto& d1 = m.domain(a.dom1);
    const auto& ctx = *m.context(d0.context);
    auto fixings = gauge_fixings(ctx);
    if (a.sigma >= fixings.size())
      fail(ErrorKind::UsageError, "sigma index out of range");
    auto rep = nested_domain_check(ctx, d0.domain, d1.domain, m.fn(a.fnname),
                                   fixings[a.sigma]);
    if (!rep.preconditions_ok) {
      for (const auto& p : rep.problems) r.unmet("precondition", p);
      return emit.emit(r);
    }
    r.confirmed("preconditions");
    if (rep.locus_nested) r.confirmed("locus-nested");
    else r.refuted("locus-nested");
    if (rep.eta_injective) r.confirmed("eta-injective");
    else r.refuted("eta-injective");
    if (rep.diagram_commutes) r.confirmed("diagram-commutes");
    else r.refuted("diagram-commutes");
    return emit.emit(r);
  }

  if (c_build->parsed()) {
    Report r = base_report(m, o, "build-class " + a.kind);
    const ExtensionContext& ctxref = sole_context(m, a.context);
    (void)ctxref;
    ClassBuildSpec spec;
    spec.kind = parse_class_kind(a.kind);
    spec.budget = budget;
    if (!a.fnname.empty()) spec.functional = m.fn(a.fnname);
    if (!a.palette.empty()) {
      std::string token;
      for (char ch : a.palette + ",") {
        if (ch == ',') {
          if (!token.empty()) spec.palette.push_back(Rat::parse(token));
          token.clear();
        } else {
          token += ch;
        }
      }
    }
    ExtClass cl = build_class(m.context(a.context), spec,
                              cfg_opt.value_or(m.default_cfg));
    r.confirmed("members", std::to_string(cl.members.size()));
    for (std::size_t i = 0; i < cl.members.size(); ++i)
      r.info(cl.labels[i], cl.members[i].domain.str() + " corr " +
                               cl.members[i].correction.str());
    return emit.emit(r);
  }

  if (c_coh->parsed()) {
    Report r = base_report(m, o, "coherence " + a.cls + " " + a.domainset);
    ExtClass cl = m.build(a.cls, cfg_opt, budget);
    auto domains = m.domainset_domains(a.domainset);
    auto verdict = coherence_check(cl, domains,
                                   a.mode == "universality"
                                       ? CoherenceMode::Universality
                                       : CoherenceMode::Maximality,
                                   budget);
    if (verdict.holds)
      r.confirmed("coherent", a.mode);
    else
      r.refuted("coherent",
                verdict.trace.empty() ? "" : verdict.trace.front());
    for (auto i : verdict.initial_members) r.info("initial", cl.label(i));
    for (const auto& t : verdict.trace) r.notes.push_back(t);
    return emit.emit(r);
  }

  if (c_den->parsed()) {
    Report r = base_report(m, o, "density " + a.cls + " " + a.ext);
    ExtClass cl = m.build(a.cls, cfg_opt, budget);
    const auto& ne = m.extension(a.ext);
    auto verdict = density_check(cl, ne.ext, parse_max_mode(a.mode), budget);
    if (verdict.holds)
      r.confirmed("dense", a.mode);
    else {
      std::string subset;
      for (auto i : *verdict.witness_subset)
        subset += (subset.empty() ? "" : ",") + cl.label(i);
      r.refuted("dense", "failing subset {" + subset + "}");
    }
    return emit.emit(r);
  }

  if (c_vt->parsed()) {
    std::optional<std::uint64_t> budget_opt;
    if (o.has_budget) budget_opt = o.budget;
    Report r = verify_theorem(m, a.theorem[0], cfg_opt, budget_opt);
    return emit.emit(r);
  }

  fail(ErrorKind::UsageError, "no subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::SearchBudgetExceeded ? 4 : 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
