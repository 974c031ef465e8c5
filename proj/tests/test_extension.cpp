#include <doctest.h>

#include <algorithm>

#include "finext/errors.hpp"
#include "finext/extension.hpp"
#include "helpers.hpp"

using namespace finext;
using finext::testing::simple_extension;
using finext::testing::trivial_context;
using finext::testing::z2_context;

namespace {

// Independent double-loop filter: enumerate all (f, g) table pairs by
// odometer and keep the ones satisfying the configured constraints,
// checked directly from the definitions.
std::vector<ExtMorphism> brute_force_homs(const ExtensionContext& ctx,
                                          const Extension& e1,
                                          const Extension& e2,
                                          const MorphismConfig& cfg) {
  std::vector<ExtMorphism> out;
  const std::size_t n1 = e1.domain.size(), n2 = e2.domain.size();
  const std::size_t c1 = e1.correction.size(), c2 = e2.correction.size();
  if ((n1 > 0 && n2 == 0) || (c1 > 0 && c2 == 0)) return out;

  std::vector<std::uint32_t> f(n1, 0), g(c1, 0);
  auto satisfies = [&]() {
    for (std::size_t i = 0; i < n1; ++i) {
      if (cfg.has(Constraint::ScalarS) &&
          e2.s_hat.at_index(f[i]) != e1.s_hat.at_index(i))
        return false;
      if (cfg.has(Constraint::Equivariance)) {
        std::size_t oi = *ctx.omega.index_of(e1.domain.at(i));
        std::size_t oy = *ctx.omega.index_of(e2.domain.at(f[i]));
        for (std::size_t k = 0; k < ctx.gau_hat.group().order(); ++k) {
          auto gx = e1.domain.index_of(ctx.omega.at(ctx.gau_hat.act(k, oi)));
          auto gy = e2.domain.index_of(ctx.omega.at(ctx.gau_hat.act(k, oy)));
          if (!gx || !gy) return false;
          if (f[*gx] != *gy) return false;
        }
      }
    }
    for (std::size_t k = 0; k < c1; ++k) {
      std::size_t dpos = *e1.domain.index_of(e1.correction.at(k));
      if (cfg.has(Constraint::InclusionSquare) &&
          e2.domain.at(f[dpos]) != e2.correction.at(g[k]))
        return false;
      if (cfg.has(Constraint::DeltaSquare) &&
          e2.delta.apply_index(g[k]) != e1.delta.apply_index(k))
        return false;
      if (cfg.has(Constraint::ScalarC) &&
          e2.correction_fn.at_index(g[k]) != e1.correction_fn.at_index(k))
        return false;
    }
    return true;
  };
  auto step = [](std::vector<std::uint32_t>& digits, std::size_t base) {
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (++digits[i] < base) return true;
      digits[i] = 0;
    }
    return false;
  };
  for (;;) {
    std::fill(g.begin(), g.end(), 0);
    for (;;) {
      if (satisfies())
        out.push_back(ExtMorphism{FinMap(e1.domain, e2.domain, f),
                                  FinMap(e1.correction, e2.correction, g)});
      if (c1 == 0 || !step(g, c2)) break;
    }
    if (n1 == 0 || !step(f, n2)) break;
  }
  return out;
}

}  // namespace

TEST_CASE("null extension validates and classifies as null-type") {
  auto ctx = trivial_context();
  Extension nul = null_extension(*ctx);
  CHECK(validate_extension(*ctx, nul).empty());
  CHECK(classify_trivial(*ctx, nul) == TrivialKind::NullType);
}

TEST_CASE("a planted decomposition defect is reported with its witness") {
  auto ctx = trivial_context();
  FinSet dom(std::vector<std::string>{"w0", "c1", "c2"});
  RatFn s_hat(dom, {Rat(0), Rat(1), Rat(2)});
  FinSet corr(std::vector<std::string>{"w0", "c1"});
  // s_hat(c1) = 1 but base_s(delta(c1)) + c_fn(c1) = 2 + 0
  Extension e{dom, s_hat, corr, RatFn::constant(corr, Rat(0)),
              FinMap::from_pairs(corr, ctx->conn, {{"w0", "d0"}, {"c1", "d2"}})};
  auto bad = validate_extension(*ctx, e);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].find("decomposition") != std::string::npos);
  CHECK(bad[0].find("c1") != std::string::npos);
}

TEST_CASE("a domain omitting the zero form is reported") {
  auto ctx = trivial_context();
  FinSet dom(std::vector<std::string>{"c1", "c2"});
  RatFn s_hat(dom, {Rat(1), Rat(2)});
  FinSet corr(std::vector<std::string>{"c1"});
  Extension e{dom, s_hat, corr, RatFn::constant(corr, Rat(0)),
              FinMap::from_pairs(corr, ctx->conn, {{"c1", "d1"}})};
  auto bad = validate_extension(*ctx, e);
  bool found = false;
  for (const auto& b : bad)
    if (b.find("domain-chain") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("constant-type classification") {
  auto ctx = trivial_context();
  FinSet dom = ctx->omega;
  RatFn s_hat = RatFn::constant(dom, Rat(5));
  FinSet corr(std::vector<std::string>{"w0"});
  Extension e{dom, s_hat, corr, RatFn::constant(corr, Rat(5)),
              FinMap::constant(corr, ctx->conn, "d0")};
  REQUIRE(validate_extension(*ctx, e).empty());
  CHECK(classify_trivial(*ctx, e) == TrivialKind::ConstantType);
}

TEST_CASE("identity-type needs a declared embedding acting as delta inverse") {
  FinSet omega(std::vector<std::string>{"w0", "c1", "c2", "p", "q"});
  FinSet conn(std::vector<std::string>{"d0", "d1", "d2"});
  FinGroup triv = finext::testing::cyclic_group(1);
  auto ctx = std::make_shared<const ExtensionContext>(ExtensionContext::make(
      omega, "w0", GroupAction::trivial(triv, omega),
      FinSet(std::vector<std::string>{"c1", "c2"}), conn, "d0",
      GroupAction::trivial(triv, conn), GroupHom::identity(triv),
      RatFn(conn, {Rat(0), Rat(1), Rat(2)}),
      FinMap::from_pairs(conn, omega, {{"d0", "w0"}, {"d1", "c1"}, {"d2", "c2"}})));

  FinSet dom(std::vector<std::string>{"w0", "c1", "c2"});
  RatFn s_hat(dom, {Rat(0), Rat(1), Rat(5)});
  FinSet corr(std::vector<std::string>{"w0", "c1"});
  Extension e{dom, s_hat, corr, RatFn::constant(corr, Rat(0)),
              FinMap::from_pairs(corr, conn, {{"w0", "d0"}, {"c1", "d1"}})};
  REQUIRE(validate_extension(*ctx, e).empty());
  CHECK(classify_trivial(*ctx, e) == TrivialKind::IdentityType);

  // same data, delta not undoing the embedding: nontrivial
  Extension e2 = e;
  e2.delta = FinMap::from_pairs(corr, conn, {{"w0", "d0"}, {"c1", "d0"}});
  e2.correction_fn = RatFn(corr, {Rat(0), Rat(1)});
  REQUIRE(validate_extension(*ctx, e2).empty());
  CHECK(classify_trivial(*ctx, e2) == TrivialKind::Nontrivial);
}

TEST_CASE("a nontrivial extension matches no trivial pattern") {
  auto ctx = trivial_context();
  FinSet dom(std::vector<std::string>{"w0", "c1", "c2"});
  RatFn s_hat(dom, {Rat(0), Rat(1), Rat(2)});
  FinSet corr(std::vector<std::string>{"w0", "c1", "c2"});
  Extension e{dom, s_hat, corr, RatFn::constant(corr, Rat(0)),
              FinMap::from_pairs(corr, ctx->conn,
                                 {{"w0", "d0"}, {"c1", "d1"}, {"c2", "d2"}})};
  REQUIRE(validate_extension(*ctx, e).empty());
  CHECK(classify_trivial(*ctx, e) == TrivialKind::Nontrivial);
}

TEST_CASE("hom_set contains the identity morphism") {
  auto ctx = trivial_context();
  Extension e = simple_extension(*ctx, {"w0", "c1", "c2"},
                                 {Rat(0), Rat(1), Rat(2)});
  auto homs = hom_set(*ctx, e, e, MorphismConfig::strict(), 1000000);
  ExtMorphism id = identity_morphism(e);
  CHECK(std::find(homs.begin(), homs.end(), id) != homs.end());
}

TEST_CASE("scalar-S makes hom into the null extension empty") {
  auto ctx = trivial_context();
  Extension e = simple_extension(*ctx, {"w0", "c1", "c2"},
                                 {Rat(0), Rat(1), Rat(2)});
  Extension nul = null_extension(*ctx);
  auto homs = hom_set(*ctx, e, nul, MorphismConfig::strict(), 1000000);
  CHECK(homs.empty());
}

TEST_CASE("hom_set equals the double-loop oracle on small instances") {
  auto ctx = trivial_context();
  Extension e1 = simple_extension(*ctx, {"w0", "c1", "c2"},
                                  {Rat(0), Rat(1), Rat(1)});
  FinSet corr(std::vector<std::string>{"w0", "c1"});
  Extension e2{FinSet(std::vector<std::string>{"w0", "c1", "c2", "p"}),
               RatFn(FinSet(std::vector<std::string>{"w0", "c1", "c2", "p"}),
                     {Rat(0), Rat(1), Rat(1), Rat(0)}),
               corr, RatFn::constant(corr, Rat(0)),
               FinMap::from_pairs(corr, ctx->conn, {{"w0", "d0"}, {"c1", "d1"}})};
  e2.correction_fn = RatFn(corr, {Rat(0), Rat(0)});
  REQUIRE(validate_extension(*ctx, e2).empty());

  for (const char* spec :
       {"strict", "equivariance,inclusion-square",
        "equivariance,inclusion-square,scalar-S", "delta-square,scalar-C",
        "inclusion-square,delta-square"}) {
    MorphismConfig cfg = MorphismConfig::parse(spec);
    auto fast = hom_set(*ctx, e1, e2, cfg, 1000000);
    auto slow = brute_force_homs(*ctx, e1, e2, cfg);
    CHECK_MESSAGE(fast == slow, "cfg = ", spec);
    auto fast_back = hom_set(*ctx, e2, e1, cfg, 1000000);
    auto slow_back = brute_force_homs(*ctx, e2, e1, cfg);
    CHECK_MESSAGE(fast_back == slow_back, "cfg = ", spec);
  }
}

TEST_CASE("hom_set oracle agreement with a nontrivial group") {
  auto ctx = z2_context();
  FinSet dom1(std::vector<std::string>{"w0", "k1", "k2"});
  Extension e1{dom1, RatFn(dom1, {Rat(0), Rat(1), Rat(1)}),
               FinSet(std::vector<std::string>{"w0"}),
               RatFn::constant(FinSet(std::vector<std::string>{"w0"}), Rat(0)),
               FinMap::constant(FinSet(std::vector<std::string>{"w0"}),
                                ctx->conn, "d0")};
  FinSet dom2(std::vector<std::string>{"w0", "k1", "k2", "p1", "p2"});
  Extension e2{dom2, RatFn(dom2, {Rat(0), Rat(1), Rat(1), Rat(1), Rat(1)}),
               FinSet(std::vector<std::string>{"w0"}),
               RatFn::constant(FinSet(std::vector<std::string>{"w0"}), Rat(0)),
               FinMap::constant(FinSet(std::vector<std::string>{"w0"}),
                                ctx->conn, "d0")};
  REQUIRE(validate_extension(*ctx, e1).empty());
  REQUIRE(validate_extension(*ctx, e2).empty());
  for (const char* spec : {"strict", "equivariance,scalar-S",
                           "equivariance,inclusion-square"}) {
    MorphismConfig cfg = MorphismConfig::parse(spec);
    CHECK(hom_set(*ctx, e1, e2, cfg, 1000000) ==
          brute_force_homs(*ctx, e1, e2, cfg));
    CHECK(hom_set(*ctx, e2, e2, cfg, 1000000) ==
          brute_force_homs(*ctx, e2, e2, cfg));
  }
}

TEST_CASE("hom budget is enforced from the raw bound") {
  auto ctx = trivial_context();
  Extension e = simple_extension(*ctx, {"w0", "c1", "c2", "p", "q"},
                                 {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)});
  try {
    hom_set(*ctx, e, e, MorphismConfig::strict(), 100);
    FAIL("expected SearchBudgetExceeded");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::SearchBudgetExceeded);
  }
}

TEST_CASE("endomorphisms form a monoid and composition lands in hom-sets") {
  auto ctx = trivial_context();
  Extension e1 = simple_extension(*ctx, {"w0", "c1", "c2"},
                                  {Rat(0), Rat(1), Rat(1)});
  Extension e2 = simple_extension(*ctx, {"w0", "c1", "c2", "p"},
                                  {Rat(0), Rat(1), Rat(1), Rat(1)});
  Extension e3 = simple_extension(*ctx, {"w0", "c1", "c2", "p", "q"},
                                  {Rat(0), Rat(1), Rat(1), Rat(1), Rat(1)});
  MorphismConfig cfg = MorphismConfig::strict();
  auto end1 = hom_set(*ctx, e1, e1, cfg, 1000000);
  CHECK(std::find(end1.begin(), end1.end(), identity_morphism(e1)) != end1.end());
  for (const auto& m1 : end1)
    for (const auto& m2 : end1) {
      ExtMorphism c = compose_morphisms(m1, m2);
      CHECK(std::find(end1.begin(), end1.end(), c) != end1.end());
    }
  auto h12 = hom_set(*ctx, e1, e2, cfg, 1000000);
  auto h23 = hom_set(*ctx, e2, e3, cfg, 1000000);
  auto h13 = hom_set(*ctx, e1, e3, cfg, 1000000);
  for (const auto& m1 : h12)
    for (const auto& m2 : h23) {
      ExtMorphism c = compose_morphisms(m1, m2);
      CHECK(std::find(h13.begin(), h13.end(), c) != h13.end());
      CHECK(morphism_satisfies(*ctx, e1, e3, c, cfg));
    }
}

TEST_CASE("every enumerated morphism re-verifies pointwise") {
  auto ctx = z2_context();
  FinSet dom(std::vector<std::string>{"w0", "k1", "k2", "p1", "p2"});
  Extension e{dom, RatFn(dom, {Rat(0), Rat(1), Rat(1), Rat(1), Rat(1)}),
              FinSet(std::vector<std::string>{"w0"}),
              RatFn::constant(FinSet(std::vector<std::string>{"w0"}), Rat(0)),
              FinMap::constant(FinSet(std::vector<std::string>{"w0"}),
                               ctx->conn, "d0")};
  MorphismConfig cfg = MorphismConfig::strict();
  for (const auto& m : hom_set(*ctx, e, e, cfg, 1000000))
    CHECK(morphism_satisfies(*ctx, e, e, m, cfg));
}

TEST_CASE("completion is the identity on complete extensions") {
  auto ctx = trivial_context();
  Extension e = simple_extension(*ctx, {"w0", "c1", "c2"},
                                 {Rat(0), Rat(1), Rat(2)});
  CHECK(completion(*ctx, e) == e);
}

TEST_CASE("completion drops points with nonzero correction") {
  auto ctx = trivial_context();
  FinSet dom(std::vector<std::string>{"w0", "c1", "c2"});
  FinSet corr(std::vector<std::string>{"w0", "c1"});
  Extension e{dom, RatFn(dom, {Rat(0), Rat(1), Rat(2)}), corr,
              RatFn(corr, {Rat(0), Rat(1)}),
              FinMap::from_pairs(corr, ctx->conn, {{"w0", "d0"}, {"c1", "d0"}})};
  REQUIRE(validate_extension(*ctx, e).empty());
  Extension done = completion(*ctx, e);
  CHECK(done.correction.elements() == std::vector<std::string>{"w0"});
  CHECK(validate_extension(*ctx, done).empty());
  // decomposition with zero correction on the kept points
  for (const auto& c : done.correction.elements())
    CHECK(done.s_hat.at(c) == ctx->base_s.at(done.delta.apply(c)));
}

TEST_CASE("completion refuses to drop the zero form") {
  auto ctx = trivial_context();
  FinSet dom(std::vector<std::string>{"w0", "c1", "c2"});
  FinSet corr(std::vector<std::string>{"w0"});
  // delta sends w0 to d1 (base value 1): correction at w0 is -1
  Extension e{dom, RatFn(dom, {Rat(0), Rat(1), Rat(2)}), corr,
              RatFn(corr, {Rat(-1)}),
              FinMap::from_pairs(corr, ctx->conn, {{"w0", "d1"}})};
  REQUIRE(validate_extension(*ctx, e).empty());
  try {
    completion(*ctx, e);
    FAIL("expected ZeroExcluded");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::ZeroExcluded);
  }
}

TEST_CASE("unary coproduct returns the component") {
  auto ctx = trivial_context();
  Extension e = simple_extension(*ctx, {"w0", "c1", "c2", "p"},
                                 {Rat(0), Rat(1), Rat(2), Rat(3)});
  CHECK(coproduct(*ctx, {e}) == e);
}

TEST_CASE("binary coproduct over a shared core") {
  auto ctx = trivial_context();
  Extension ep = simple_extension(*ctx, {"w0", "c1", "c2", "p"},
                                  {Rat(0), Rat(1), Rat(2), Rat(3)});
  Extension eq = simple_extension(*ctx, {"w0", "c1", "c2", "q"},
                                  {Rat(0), Rat(1), Rat(2), Rat(3)});
  Extension u = coproduct(*ctx, {ep, eq});
  CHECK(u.domain == ctx->omega);
  CHECK(validate_extension(*ctx, u).empty());
  auto inj = coproduct_injections(*ctx, {ep, eq}, u);
  REQUIRE(inj.size() == 2);
  MorphismConfig cfg = MorphismConfig::strict();
  CHECK(morphism_satisfies(*ctx, ep, u, inj[0], cfg));
  CHECK(morphism_satisfies(*ctx, eq, u, inj[1], cfg));
  // injections are injective and jointly cover the union
  CHECK(map_properties(inj[0].f).injective);
  CHECK(map_properties(inj[1].f).injective);
  std::vector<bool> hit(u.domain.size(), false);
  for (auto v : inj[0].f.table()) hit[v] = true;
  for (auto v : inj[1].f.table()) hit[v] = true;
  CHECK(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }));
}

TEST_CASE("coproduct rejects core disagreement") {
  auto ctx = trivial_context();
  Extension ep = simple_extension(*ctx, {"w0", "c1", "c2", "p"},
                                  {Rat(0), Rat(1), Rat(2), Rat(3)});
  Extension eq = simple_extension(*ctx, {"w0", "c1", "c2", "q"},
                                  {Rat(0), Rat(5), Rat(2), Rat(3)});
  try {
    coproduct(*ctx, {ep, eq});
    FAIL("expected CoreDisagreement");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::CoreDisagreement);
  }
}

TEST_CASE("coproduct rejects overlap beyond the core") {
  auto ctx = trivial_context();
  Extension e1 = simple_extension(*ctx, {"w0", "c1", "c2", "p"},
                                  {Rat(0), Rat(1), Rat(2), Rat(3)});
  Extension e2 = simple_extension(*ctx, {"w0", "c1", "c2", "p", "q"},
                                  {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)});
  try {
    coproduct(*ctx, {e1, e2});
    FAIL("expected OverlapViolation");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::OverlapViolation);
  }
}

TEST_CASE("iso classes merge relabeled copies") {
  auto ctx = trivial_context();
  Extension ep = simple_extension(*ctx, {"w0", "c1", "c2", "p"},
                                  {Rat(0), Rat(1), Rat(2), Rat(3)});
  Extension eq = simple_extension(*ctx, {"w0", "c1", "c2", "q"},
                                  {Rat(0), Rat(1), Rat(2), Rat(3)});
  Extension other = simple_extension(*ctx, {"w0", "c1", "c2"},
                                     {Rat(0), Rat(1), Rat(2)});
  auto blocks = iso_classes(*ctx, {ep, eq, other}, MorphismConfig::strict(),
                            1000000);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<std::size_t>{0, 1});
  CHECK(blocks[1] == std::vector<std::size_t>{2});
}

TEST_CASE("singleton class yields one iso block") {
  auto ctx = trivial_context();
  Extension e = simple_extension(*ctx, {"w0", "c1", "c2"},
                                 {Rat(0), Rat(1), Rat(2)});
  auto blocks = iso_classes(*ctx, {e}, MorphismConfig::strict(), 1000000);
  CHECK(blocks.size() == 1);
}

TEST_CASE("iso classes agree with a pairwise invertibility oracle") {
  auto ctx = trivial_context();
  std::vector<Extension> members = {
      simple_extension(*ctx, {"w0", "c1", "c2"}, {Rat(0), Rat(1), Rat(2)}),
      simple_extension(*ctx, {"w0", "c1", "c2", "p"},
                       {Rat(0), Rat(1), Rat(2), Rat(3)}),
      simple_extension(*ctx, {"w0", "c1", "c2", "q"},
                       {Rat(0), Rat(1), Rat(2), Rat(3)}),
      simple_extension(*ctx, {"w0", "c1", "c2", "p", "q"},
                       {Rat(0), Rat(1), Rat(2), Rat(3), Rat(3)}),
      null_extension(*ctx),
  };
  MorphismConfig cfg = MorphismConfig::strict();
  auto blocks = iso_classes(*ctx, members, cfg, 1000000);
  // oracle: pairwise scan of full hom-sets for invertible pairs whose
  // inverses are again morphisms
  auto iso = [&](std::size_t i, std::size_t j) {
    for (const auto& mo : hom_set(*ctx, members[i], members[j], cfg, 1000000)) {
      auto fp = map_properties(mo.f);
      auto gp = map_properties(mo.g);
      if (!(fp.injective && fp.surjective && gp.injective && gp.surjective))
        continue;
      std::vector<std::uint32_t> finv(mo.f.codomain().size());
      for (std::size_t k = 0; k < mo.f.domain().size(); ++k)
        finv[mo.f.apply_index(k)] = static_cast<std::uint32_t>(k);
      std::vector<std::uint32_t> ginv(mo.g.codomain().size());
      for (std::size_t k = 0; k < mo.g.domain().size(); ++k)
        ginv[mo.g.apply_index(k)] = static_cast<std::uint32_t>(k);
      ExtMorphism inv{FinMap(mo.f.codomain(), mo.f.domain(), finv),
                      FinMap(mo.g.codomain(), mo.g.domain(), ginv)};
      if (morphism_satisfies(*ctx, members[j], members[i], inv, cfg))
        return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      bool same_block = false;
      for (const auto& b : blocks) {
        bool has_i = std::find(b.begin(), b.end(), i) != b.end();
        bool has_j = std::find(b.begin(), b.end(), j) != b.end();
        if (has_i && has_j) same_block = true;
      }
      CHECK(same_block == (i == j || iso(i, j)));
    }
}
