#include "finext/extension.hpp"

#include <algorithm>

#include "finext/errors.hpp"

namespace finext {

FinSet ExtensionContext::mandatory_core() const {
  std::vector<std::string> base{omega_base};
  FinSet base_set(std::move(base));
  return carrier_union(omega, {&conn_hat, &base_set});
}

ExtensionContext ExtensionContext::make(FinSet omega, std::string omega_base,
                                        GroupAction gau_hat, FinSet conn_hat,
                                        FinSet conn, std::string conn_base,
                                        GroupAction gau, GroupHom xi,
                                        RatFn base_s,
                                        std::optional<FinMap> embedding) {
  ExtensionContext ctx{std::move(omega),   std::move(omega_base),
                       std::move(gau_hat), std::move(conn_hat),
                       std::move(conn),    std::move(conn_base),
                       std::move(gau),     std::move(xi),
                       std::move(base_s),  std::move(embedding)};
  auto ob = ctx.omega.index_of(ctx.omega_base);
  if (!ob)
    fail(ErrorKind::InvalidConstruction, "context: zero form not in omega");
  ctx.omega_base_index = *ob;
  auto cb = ctx.conn.index_of(ctx.conn_base);
  if (!cb)
    fail(ErrorKind::InvalidConstruction, "context: flat point not in conn");
  ctx.conn_base_index = *cb;

  if (!(ctx.gau_hat.carrier() == ctx.omega))
    fail(ErrorKind::InvalidConstruction, "context: gau_hat does not act on omega");
  if (!(ctx.gau.carrier() == ctx.conn))
    fail(ErrorKind::InvalidConstruction, "context: gau does not act on conn");
  if (!ctx.gau_hat.fixes(ctx.omega_base_index))
    fail(ErrorKind::InvalidConstruction,
         "context: extended gauge action moves the zero form");
  if (!ctx.conn_hat.subset_of(ctx.omega))
    fail(ErrorKind::InvalidConstruction, "context: conn_hat not inside omega");
  if (!ctx.gau_hat.subset_invariant(ctx.conn_hat))
    fail(ErrorKind::InvalidConstruction, "context: conn_hat not invariant");
  if (!(ctx.base_s.domain() == ctx.conn))
    fail(ErrorKind::InvalidConstruction, "context: base functional not on conn");
  if (!ctx.base_s.at_index(ctx.conn_base_index).is_zero())
    fail(ErrorKind::InvalidConstruction,
         "context: base functional does not vanish at the flat point");
  if (!(ctx.xi.source() == ctx.gau.group()) ||
      !(ctx.xi.target() == ctx.gau_hat.group()))
    fail(ErrorKind::InvalidConstruction, "context: xi endpoints mismatch");
  if (ctx.embedding) {
    if (!(ctx.embedding->domain() == ctx.conn) ||
        !(ctx.embedding->codomain() == ctx.omega))
      fail(ErrorKind::InvalidConstruction, "context: embedding endpoints mismatch");
    if (!map_properties(*ctx.embedding).injective)
      fail(ErrorKind::InvalidConstruction, "context: embedding not injective");
  }
  return ctx;
}

MorphismConfig MorphismConfig::strict() {
  MorphismConfig cfg;
  cfg.bits = static_cast<unsigned>(Constraint::Equivariance) |
             static_cast<unsigned>(Constraint::InclusionSquare) |
             static_cast<unsigned>(Constraint::DeltaSquare) |
             static_cast<unsigned>(Constraint::ScalarC) |
             static_cast<unsigned>(Constraint::ScalarS);
  return cfg;
}

MorphismConfig MorphismConfig::parse(const std::string& spec) {
  MorphismConfig cfg;
  std::string token;
  auto commit = [&]() {
    if (token.empty()) return;
    if (token == "strict")
      cfg.bits |= strict().bits;
    else if (token == "equivariance")
      cfg.bits |= static_cast<unsigned>(Constraint::Equivariance);
    else if (token == "inclusion-square")
      cfg.bits |= static_cast<unsigned>(Constraint::InclusionSquare);
    else if (token == "delta-square")
      cfg.bits |= static_cast<unsigned>(Constraint::DeltaSquare);
    else if (token == "scalar-C")
      cfg.bits |= static_cast<unsigned>(Constraint::ScalarC);
    else if (token == "scalar-S")
      cfg.bits |= static_cast<unsigned>(Constraint::ScalarS);
    else
      fail(ErrorKind::ParseError, "unknown morphism constraint '" + token + "'");
    token.clear();
  };
  for (char ch : spec) {
    if (ch == ',' || ch == ' ' || ch == '\t')
      commit();
    else
      token += ch;
  }
  commit();
  if (cfg.bits == 0)
    fail(ErrorKind::ParseError, "morphism configuration must be nonempty");
  return cfg;
}

std::string MorphismConfig::str() const {
  if (*this == strict()) return "strict";
  std::string out;
  auto add = [&](Constraint c, const char* name) {
    if (has(c)) {
      if (!out.empty()) out += ",";
      out += name;
    }
  };
  add(Constraint::Equivariance, "equivariance");
  add(Constraint::InclusionSquare, "inclusion-square");
  add(Constraint::DeltaSquare, "delta-square");
  add(Constraint::ScalarC, "scalar-C");
  add(Constraint::ScalarS, "scalar-S");
  return out;
}

const char* trivial_kind_name(TrivialKind k) {
  switch (k) {
    case TrivialKind::NullType: return "null-type";
    case TrivialKind::ConstantType: return "constant-type";
    case TrivialKind::IdentityType: return "identity-type";
    case TrivialKind::Nontrivial: return "nontrivial";
  }
  return "?";
}

std::vector<std::string> validate_extension(const ExtensionContext& ctx,
                                            const Extension& e) {
  std::vector<std::string> bad;
  const FinSet core = ctx.mandatory_core();

  if (!e.domain.subset_of(ctx.omega))
    bad.push_back("domain-chain: extended domain not contained in omega");
  else {
    for (const auto& c : core.elements())
      if (!e.domain.contains(c)) {
        bad.push_back("domain-chain: mandatory point '" + c +
                      "' missing from extended domain");
        break;
      }
    if (!ctx.gau_hat.subset_invariant(e.domain))
      bad.push_back("domain-invariance: extended domain not gauge invariant");
  }

  if (!(e.s_hat.domain() == e.domain)) {
    bad.push_back("functional-domain: s_hat not defined exactly on the domain");
  } else if (e.domain.subset_of(ctx.omega) &&
             ctx.gau_hat.subset_invariant(e.domain)) {
    for (const auto& x : e.domain.elements()) {
      std::size_t xi = *ctx.omega.index_of(x);
      bool ok = true;
      for (std::size_t g = 0; g < ctx.gau_hat.group().order() && ok; ++g) {
        const std::string& gx = ctx.omega.at(ctx.gau_hat.act(g, xi));
        if (e.s_hat.at(gx) != e.s_hat.at(x)) ok = false;
      }
      if (!ok) {
        bad.push_back("functional-invariance: s_hat not gauge invariant at '" +
                      x + "'");
        break;
      }
    }
  }

  if (!e.correction.contains(ctx.omega_base))
    bad.push_back("correction-chain: zero form missing from correction subspace");
  if (!e.correction.subset_of(e.domain))
    bad.push_back("correction-chain: correction subspace not inside the domain");

  if (!(e.correction_fn.domain() == e.correction))
    bad.push_back("correction-functional: not defined exactly on the subspace");
  if (!(e.delta.domain() == e.correction) || !(e.delta.codomain() == ctx.conn))
    bad.push_back("delta-map: endpoints mismatch");

  if (bad.empty()) {
    for (const auto& c : e.correction.elements()) {
      Rat want = ctx.base_s.at(e.delta.apply(c)) + e.correction_fn.at(c);
      if (e.s_hat.at(c) != want) {
        bad.push_back(
            "decomposition: s_hat(c) != base_s(delta(c)) + correction(c) at '" +
            c + "'");
        break;
      }
    }
  }
  return bad;
}

Extension normalize_extension(const ExtensionContext& ctx, FinSet domain,
                              RatFn s_hat, FinSet correction,
                              RatFn correction_fn, FinMap delta) {
  std::vector<bool> keep_dom(ctx.omega.size(), false);
  for (const auto& x : domain.elements()) {
    auto i = ctx.omega.index_of(x);
    if (!i)
      fail(ErrorKind::InvalidConstruction,
           "extension domain element '" + x + "' not in omega");
    keep_dom[*i] = true;
  }
  FinSet dom = ctx.omega.filtered(keep_dom);

  std::vector<bool> keep_corr(ctx.omega.size(), false);
  for (const auto& x : correction.elements()) {
    auto i = ctx.omega.index_of(x);
    if (!i)
      fail(ErrorKind::InvalidConstruction,
           "correction element '" + x + "' not in omega");
    keep_corr[*i] = true;
  }
  FinSet corr = ctx.omega.filtered(keep_corr);

  std::vector<Rat> sv;
  for (const auto& x : dom.elements()) sv.push_back(s_hat.at(x));
  std::vector<Rat> cv;
  std::vector<std::uint32_t> dt;
  for (const auto& x : corr.elements()) {
    cv.push_back(correction_fn.at(x));
    dt.push_back(static_cast<std::uint32_t>(
        *ctx.conn.index_of(delta.apply(x))));
  }
  Extension e;
  e.domain = dom;
  e.s_hat = RatFn(dom, std::move(sv));
  e.correction = corr;
  e.correction_fn = RatFn(corr, std::move(cv));
  e.delta = FinMap(corr, ctx.conn, std::move(dt));
  return e;
}

Extension null_extension(const ExtensionContext& ctx) {
  FinSet corr(std::vector<std::string>{ctx.omega_base});
  Extension e;
  e.domain = ctx.omega;
  e.s_hat = RatFn::constant(ctx.omega, Rat(0));
  e.correction = corr;
  e.correction_fn = RatFn::constant(corr, Rat(0));
  e.delta = FinMap::constant(corr, ctx.conn, ctx.conn_base);
  return e;
}

TrivialKind classify_trivial(const ExtensionContext& ctx, const Extension& e) {
  auto constant_fn = [](const RatFn& f) {
    for (const auto& v : f.values())
      if (v != f.values().front()) return false;
    return true;
  };
  auto constant_map = [](const FinMap& m) {
    for (auto v : m.table())
      if (v != m.table().front()) return false;
    return true;
  };
  auto all_zero = [](const RatFn& f) {
    return std::all_of(f.values().begin(), f.values().end(),
                       [](const Rat& v) { return v.is_zero(); });
  };

  bool delta_null = true;
  for (auto v : e.delta.table())
    if (v != ctx.conn_base_index) delta_null = false;

  if (all_zero(e.s_hat) && all_zero(e.correction_fn) && delta_null)
    return TrivialKind::NullType;
  if (constant_fn(e.s_hat) && constant_fn(e.correction_fn) &&
      constant_map(e.delta))
    return TrivialKind::ConstantType;
  if (ctx.embedding) {
    // delta must undo the declared embedding on the overlap, and there
    // must be an overlap to witness it.
    bool any = false, ok = true;
    for (std::size_t d = 0; d < ctx.conn.size(); ++d) {
      const std::string& image = ctx.omega.at(ctx.embedding->apply_index(d));
      if (!e.correction.contains(image)) continue;
      any = true;
      if (e.delta.apply(image) != ctx.conn.at(d)) ok = false;
    }
    if (any && ok) return TrivialKind::IdentityType;
  }
  return TrivialKind::Nontrivial;
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

// Shared backtracking core: calls sink(f_table, g_table) for every
// morphism in lexicographic order; sink returns false to stop early.
void for_each_morphism(
    const ExtensionContext& ctx, const Extension& e1, const Extension& e2,
    const MorphismConfig& cfg, std::uint64_t budget,
    const std::function<bool(const std::vector<std::uint32_t>&,
                             const std::vector<std::uint32_t>&)>& sink) {
  const std::size_t n1 = e1.domain.size(), n2 = e2.domain.size();
  const std::size_t c1 = e1.correction.size(), c2 = e2.correction.size();
  const bool incl = cfg.has(Constraint::InclusionSquare);

  std::uint64_t bound = pow_capped(n2, n1, budget);
  if (!incl) {
    std::uint64_t gb = pow_capped(c2, c1, budget);
    bound = (bound > budget || gb > budget || (gb != 0 && bound > budget / gb))
                ? budget + 1
                : bound * gb;
  }
  if (bound > budget)
    fail(ErrorKind::SearchBudgetExceeded,
         "hom-set search space exceeds budget " + std::to_string(budget));

  if (n2 == 0 && n1 > 0) return;  // no maps at all

  // Position lookups between the extension domains and omega.
  std::vector<std::size_t> om1(n1), om2(n2);
  for (std::size_t i = 0; i < n1; ++i) om1[i] = *ctx.omega.index_of(e1.domain.at(i));
  for (std::size_t j = 0; j < n2; ++j) om2[j] = *ctx.omega.index_of(e2.domain.at(j));
  std::vector<std::size_t> pos1(ctx.omega.size(), SIZE_MAX),
      pos2(ctx.omega.size(), SIZE_MAX);
  for (std::size_t i = 0; i < n1; ++i) pos1[om1[i]] = i;
  for (std::size_t j = 0; j < n2; ++j) pos2[om2[j]] = j;

  // Correction membership in domain positions.
  std::vector<std::size_t> corr1_pos(n1, SIZE_MAX), corr2_pos(n2, SIZE_MAX);
  for (std::size_t k = 0; k < c1; ++k)
    corr1_pos[*e1.domain.index_of(e1.correction.at(k))] = k;
  for (std::size_t k = 0; k < c2; ++k)
    corr2_pos[*e2.domain.index_of(e2.correction.at(k))] = k;

  // Per-position candidate targets, filtered by the pointwise constraints.
  std::vector<std::vector<std::uint32_t>> cands(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      if (cfg.has(Constraint::ScalarS) &&
          e2.s_hat.at_index(j) != e1.s_hat.at_index(i))
        continue;
      if (incl && corr1_pos[i] != SIZE_MAX) {
        if (corr2_pos[j] == SIZE_MAX) continue;
        std::size_t k1 = corr1_pos[i], k2 = corr2_pos[j];
        if (cfg.has(Constraint::DeltaSquare) &&
            e2.delta.apply_index(k2) != e1.delta.apply_index(k1))
          continue;
        if (cfg.has(Constraint::ScalarC) &&
            e2.correction_fn.at_index(k2) != e1.correction_fn.at_index(k1))
          continue;
      }
      cands[i].push_back(static_cast<std::uint32_t>(j));
    }
    if (cands[i].empty()) return;
  }

  const bool equiv = cfg.has(Constraint::Equivariance);
  const std::size_t gorder = ctx.gau_hat.group().order();

  std::vector<std::uint32_t> f(n1, 0);
  std::vector<std::size_t> choice(n1, 0);

  // g enumeration when the inclusion square is off: independent plain
  // odometer over pointwise-admissible targets.
  std::vector<std::vector<std::uint32_t>> gcands;
  if (!incl) {
    gcands.assign(c1, {});
    for (std::size_t k1 = 0; k1 < c1; ++k1) {
      for (std::size_t k2 = 0; k2 < c2; ++k2) {
        if (cfg.has(Constraint::DeltaSquare) &&
            e2.delta.apply_index(k2) != e1.delta.apply_index(k1))
          continue;
        if (cfg.has(Constraint::ScalarC) &&
            e2.correction_fn.at_index(k2) != e1.correction_fn.at_index(k1))
          continue;
        gcands[k1].push_back(static_cast<std::uint32_t>(k2));
      }
      if (gcands[k1].empty()) return;
    }
  }

  std::function<bool()> emit = [&]() {
    if (incl) {
      std::vector<std::uint32_t> g(c1);
      for (std::size_t k = 0; k < c1; ++k) {
        std::size_t dpos = *e1.domain.index_of(e1.correction.at(k));
        g[k] = static_cast<std::uint32_t>(corr2_pos[f[dpos]]);
      }
      return sink(f, g);
    }
    std::vector<std::size_t> gpick(c1, 0);
    for (;;) {
      std::vector<std::uint32_t> g(c1);
      for (std::size_t k = 0; k < c1; ++k) g[k] = gcands[k][gpick[k]];
      if (!sink(f, g)) return false;
      std::size_t k = c1;
      bool done = true;
      while (k > 0) {
        --k;
        if (++gpick[k] < gcands[k].size()) {
          done = false;
          break;
        }
        gpick[k] = 0;
      }
      if (done) return true;
    }
  };

  // Equivariance is checked incrementally against already-assigned
  // positions; each orbit pair is eventually covered because the group
  // inverse flips the direction.
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == n1) return emit();
    for (std::size_t ci = 0; ci < cands[i].size(); ++ci) {
      std::uint32_t y = cands[i][ci];
      bool ok = true;
      if (equiv) {
        for (std::size_t g = 0; g < gorder && ok; ++g) {
          std::size_t gx = ctx.gau_hat.act(g, om1[i]);
          std::size_t j = pos1[gx];
          if (j == SIZE_MAX) {
            ok = false;  // domain not invariant; no equivariant map
            break;
          }
          std::size_t gy = ctx.gau_hat.act(g, om2[y]);
          std::size_t target = pos2[gy];
          if (target == SIZE_MAX) {
            if (j <= i) ok = false;  // image escapes the codomain
            continue;
          }
          if (j < i) {
            if (f[j] != target) ok = false;
          } else if (j == i) {
            if (y != target) ok = false;
          }
        }
      }
      if (!ok) continue;
      f[i] = y;
      if (!assign(i + 1)) return false;
    }
    return true;
  };

  if (n1 == 0) {
    emit();
    return;
  }
  assign(0);
}

}  // namespace

std::vector<ExtMorphism> hom_set(const ExtensionContext& ctx,
                                 const Extension& e1, const Extension& e2,
                                 const MorphismConfig& cfg,
                                 std::uint64_t budget) {
  std::vector<ExtMorphism> out;
  for_each_morphism(ctx, e1, e2, cfg, budget,
                    [&](const std::vector<std::uint32_t>& f,
                        const std::vector<std::uint32_t>& g) {
                      ExtMorphism m;
                      m.f = FinMap(e1.domain, e2.domain, f);
                      m.g = FinMap(e1.correction, e2.correction, g);
                      out.push_back(std::move(m));
                      return true;
                    });
  return out;
}

std::size_t hom_count_limited(const ExtensionContext& ctx, const Extension& e1,
                              const Extension& e2, const MorphismConfig& cfg,
                              std::uint64_t budget, std::size_t limit) {
  std::size_t count = 0;
  for_each_morphism(ctx, e1, e2, cfg, budget,
                    [&](const std::vector<std::uint32_t>&,
                        const std::vector<std::uint32_t>&) {
                      ++count;
                      return count < limit;
                    });
  return count;
}

bool morphism_satisfies(const ExtensionContext& ctx, const Extension& e1,
                        const Extension& e2, const ExtMorphism& m,
                        const MorphismConfig& cfg) {
  if (!(m.f.domain() == e1.domain) || !(m.f.codomain() == e2.domain) ||
      !(m.g.domain() == e1.correction) || !(m.g.codomain() == e2.correction))
    return false;
  if (cfg.has(Constraint::Equivariance) &&
      !is_equivariant(m.f, ctx.gau_hat, ctx.gau_hat))
    return false;
  for (const auto& c : e1.correction.elements()) {
    if (cfg.has(Constraint::InclusionSquare) && m.f.apply(c) != m.g.apply(c))
      return false;
    if (cfg.has(Constraint::DeltaSquare) &&
        e2.delta.apply(m.g.apply(c)) != e1.delta.apply(c))
      return false;
    if (cfg.has(Constraint::ScalarC) &&
        e2.correction_fn.at(m.g.apply(c)) != e1.correction_fn.at(c))
      return false;
  }
  if (cfg.has(Constraint::ScalarS))
    for (const auto& x : e1.domain.elements())
      if (e2.s_hat.at(m.f.apply(x)) != e1.s_hat.at(x)) return false;
  return true;
}

ExtMorphism identity_morphism(const Extension& e) {
  return ExtMorphism{FinMap::identity(e.domain), FinMap::identity(e.correction)};
}

ExtMorphism compose_morphisms(const ExtMorphism& m1, const ExtMorphism& m2) {
  return ExtMorphism{compose(m1.f, m2.f), compose(m1.g, m2.g)};
}

namespace {

std::optional<FinMap> inverse_of(const FinMap& m) {
  if (!(map_properties(m).injective && map_properties(m).surjective))
    return std::nullopt;
  std::vector<std::uint32_t> table(m.codomain().size());
  for (std::size_t i = 0; i < m.domain().size(); ++i)
    table[m.apply_index(i)] = static_cast<std::uint32_t>(i);
  return FinMap(m.codomain(), m.domain(), std::move(table));
}

}  // namespace

std::optional<ExtMorphism> find_isomorphism(const ExtensionContext& ctx,
                                            const Extension& e1,
                                            const Extension& e2,
                                            const MorphismConfig& cfg,
                                            std::uint64_t budget) {
  std::optional<ExtMorphism> found;
  for_each_morphism(ctx, e1, e2, cfg, budget,
                    [&](const std::vector<std::uint32_t>& f,
                        const std::vector<std::uint32_t>& g) {
                      ExtMorphism m{FinMap(e1.domain, e2.domain, f),
                                    FinMap(e1.correction, e2.correction, g)};
                      auto finv = inverse_of(m.f);
                      auto ginv = inverse_of(m.g);
                      if (!finv || !ginv) return true;
                      ExtMorphism inv{*finv, *ginv};
                      if (!morphism_satisfies(ctx, e2, e1, inv, cfg)) return true;
                      found = std::move(m);
                      return false;
                    });
  return found;
}

std::vector<std::vector<std::size_t>> iso_classes(
    const ExtensionContext& ctx, const std::vector<Extension>& members,
    const MorphismConfig& cfg, std::uint64_t budget) {
  std::vector<std::size_t> root(members.size());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (root[i] != i) i = root[i] = root[root[i]];
    return i;
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (find(i) == find(j)) continue;
      if (find_isomorphism(ctx, members[i], members[j], cfg, budget))
        root[find(j)] = find(i);
    }
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (find(i) != i) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = 0; j < members.size(); ++j)
      if (find(j) == i) block.push_back(j);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Extension completion(const ExtensionContext& ctx, const Extension& e) {
  std::vector<bool> keep(e.correction.size(), false);
  for (std::size_t k = 0; k < e.correction.size(); ++k)
    keep[k] = e.s_hat.at(e.correction.at(k)) ==
              ctx.base_s.at(e.delta.apply(e.correction.at(k)));
  FinSet corr = e.correction.filtered(keep);
  if (!corr.contains(ctx.omega_base))
    fail(ErrorKind::ZeroExcluded,
         "completion would drop the zero form (its correction value is nonzero)");
  Extension out;
  out.domain = e.domain;
  out.s_hat = e.s_hat;
  out.correction_fn = RatFn::constant(corr, Rat(0));
  std::vector<std::uint32_t> dt;
  for (const auto& c : corr.elements())
    dt.push_back(static_cast<std::uint32_t>(*ctx.conn.index_of(e.delta.apply(c))));
  out.delta = FinMap(corr, ctx.conn, std::move(dt));
  out.correction = std::move(corr);
  return out;
}

Extension coproduct(const ExtensionContext& ctx,
                    const std::vector<Extension>& family) {
  if (family.empty())
    fail(ErrorKind::InvalidConstruction, "coproduct of an empty family");
  const FinSet core = ctx.mandatory_core();
  FinSet zero_only(std::vector<std::string>{ctx.omega_base});

  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      FinSet di = carrier_intersection(ctx.omega, family[i].domain, family[j].domain);
      if (!(di == core))
        fail(ErrorKind::OverlapViolation,
             "extended domains of components " + std::to_string(i) + "," +
                 std::to_string(j) + " overlap in " + di.str() +
                 " instead of the mandatory core " + core.str());
      FinSet ci = carrier_intersection(ctx.omega, family[i].correction,
                                       family[j].correction);
      if (!(ci == zero_only))
        fail(ErrorKind::OverlapViolation,
             "correction subspaces of components " + std::to_string(i) + "," +
                 std::to_string(j) + " overlap in " + ci.str() +
                 " instead of the zero form alone");
      for (const auto& c : core.elements())
        if (family[i].s_hat.at(c) != family[j].s_hat.at(c))
          fail(ErrorKind::CoreDisagreement,
               "components " + std::to_string(i) + "," + std::to_string(j) +
                   " disagree on s_hat at core point '" + c + "'");
      if (family[i].correction_fn.at(ctx.omega_base) !=
              family[j].correction_fn.at(ctx.omega_base) ||
          family[i].delta.apply(ctx.omega_base) !=
              family[j].delta.apply(ctx.omega_base))
        fail(ErrorKind::CoreDisagreement,
             "components " + std::to_string(i) + "," + std::to_string(j) +
                 " disagree on the correction data at the zero form");
    }
  }

  std::vector<const FinSet*> doms, corrs;
  for (const auto& e : family) {
    doms.push_back(&e.domain);
    corrs.push_back(&e.correction);
  }
  FinSet dom = carrier_union(ctx.omega, doms);
  FinSet corr = carrier_union(ctx.omega, corrs);

  auto provider_value = [&](const std::string& x) -> Rat {
    for (const auto& e : family)
      if (e.domain.contains(x)) return e.s_hat.at(x);
    fail(ErrorKind::InvalidConstruction, "unreachable: point without provider");
  };
  std::vector<Rat> sv;
  for (const auto& x : dom.elements()) sv.push_back(provider_value(x));

  std::vector<Rat> cv;
  std::vector<std::uint32_t> dt;
  for (const auto& c : corr.elements()) {
    for (const auto& e : family) {
      if (e.correction.contains(c)) {
        cv.push_back(e.correction_fn.at(c));
        dt.push_back(
            static_cast<std::uint32_t>(*ctx.conn.index_of(e.delta.apply(c))));
        break;
      }
    }
  }

  Extension out;
  out.domain = dom;
  out.s_hat = RatFn(dom, std::move(sv));
  out.correction_fn = RatFn(corr, std::move(cv));
  out.delta = FinMap(corr, ctx.conn, std::move(dt));
  out.correction = std::move(corr);

  auto bad = validate_extension(ctx, out);
  if (!bad.empty())
    fail(ErrorKind::InvalidConstruction, "coproduct result invalid: " + bad.front());
  return out;
}

std::vector<ExtMorphism> coproduct_injections(const ExtensionContext& ctx,
                                              const std::vector<Extension>& family,
                                              const Extension& result) {
  (void)ctx;
  std::vector<ExtMorphism> out;
  for (const auto& e : family) {
    std::vector<std::uint32_t> ft, gt;
    for (const auto& x : e.domain.elements())
      ft.push_back(static_cast<std::uint32_t>(*result.domain.index_of(x)));
    for (const auto& c : e.correction.elements())
      gt.push_back(static_cast<std::uint32_t>(*result.correction.index_of(c)));
    out.push_back(ExtMorphism{FinMap(e.domain, result.domain, std::move(ft)),
                              FinMap(e.correction, result.correction, std::move(gt))});
  }
  return out;
}

}  // namespace finext
