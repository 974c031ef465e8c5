#include <doctest.h>

#include <string>
#include <vector>

#include "finext/errors.hpp"
#include "finext/group.hpp"

using namespace finext;

namespace {

FinGroup cyclic(std::size_t m) {
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < m; ++i) elems.push_back("g" + std::to_string(i));
  FinSet es(elems);
  std::vector<std::uint32_t> mult(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      mult[i * m + j] = static_cast<std::uint32_t>((i + j) % m);
  return FinGroup(es, std::move(mult), "g0");
}

FinGroup sym3() {
  // e, r, r2 (rotations), s, sr, sr2 (reflections) as permutations of 3
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::string> names = {"e", "r", "rr", "s", "sr", "srr"};
  auto compose_perm = [](const std::array<int, 3>& a,
                         const std::array<int, 3>& b) {
    std::array<int, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = a[b[i]];
    return c;
  };
  std::vector<std::uint32_t> mult(36);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      auto c = compose_perm(perms[i], perms[j]);
      for (std::size_t k = 0; k < 6; ++k)
        if (perms[k] == c) mult[i * 6 + j] = static_cast<std::uint32_t>(k);
    }
  return FinGroup(FinSet(names), std::move(mult), "e");
}

// Z/2 swapping x,y and fixing z.
GroupAction swap_action() {
  FinGroup z2 = cyclic(2);
  FinSet carrier(std::vector<std::string>{"x", "y", "z"});
  std::vector<std::uint32_t> act{0, 1, 2, 1, 0, 2};
  return GroupAction(z2, carrier, std::move(act));
}

}  // namespace

TEST_CASE("group laws are enforced at construction") {
  CHECK_NOTHROW(cyclic(5));
  CHECK_NOTHROW(sym3());
  FinSet es(std::vector<std::string>{"e", "a"});
  // a*a = a breaks the inverse law
  std::vector<std::uint32_t> bad{0, 1, 1, 1};
  CHECK_THROWS_AS(FinGroup(es, std::move(bad), "e"), Error);
}

TEST_CASE("action laws are enforced at construction") {
  FinGroup z2 = cyclic(2);
  FinSet carrier(std::vector<std::string>{"x", "y"});
  // g1 sends both points to x: not compatible with g1*g1 = e
  std::vector<std::uint32_t> bad{0, 1, 0, 0};
  CHECK_THROWS_AS(GroupAction(z2, carrier, std::move(bad)), Error);
}

TEST_CASE("orbits of the trivial action are singletons") {
  FinGroup triv = cyclic(1);
  FinSet carrier(std::vector<std::string>{"x", "y"});
  auto blocks = orbits(GroupAction::trivial(triv, carrier), carrier);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].elements() == std::vector<std::string>{"x"});
  CHECK(blocks[1].elements() == std::vector<std::string>{"y"});
}

TEST_CASE("orbits of the swap action") {
  auto a = swap_action();
  auto blocks = orbits(a, a.carrier());
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].elements() == std::vector<std::string>{"x", "y"});
  CHECK(blocks[1].elements() == std::vector<std::string>{"z"});
}

TEST_CASE("orbits demand an invariant subset") {
  auto a = swap_action();
  FinSet justx(std::vector<std::string>{"x"});
  try {
    orbits(a, justx);
    FAIL("expected NotInvariant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvariant);
  }
}

TEST_CASE("left translation of sym3 on itself is transitive") {
  FinGroup s3 = sym3();
  const std::size_t n = s3.order();
  std::vector<std::uint32_t> act(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t x = 0; x < n; ++x)
      act[g * n + x] = static_cast<std::uint32_t>(s3.op(g, x));
  GroupAction translation(s3, s3.elements(), std::move(act));
  auto blocks = orbits(translation, s3.elements());
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].size() == 6);
  // table-walk oracle: every element reachable from e
  for (std::size_t x = 0; x < n; ++x) {
    bool reached = false;
    for (std::size_t g = 0; g < n; ++g)
      if (translation.act(g, s3.identity()) == x) reached = true;
    CHECK(reached);
  }
}

TEST_CASE("quotient of the trivial action is a bijection") {
  FinGroup triv = cyclic(1);
  FinSet carrier(std::vector<std::string>{"x", "y"});
  FinMap q = quotient_map(GroupAction::trivial(triv, carrier), carrier);
  CHECK(map_properties(q).injective);
  CHECK(map_properties(q).surjective);
}

TEST_CASE("quotient of the swap action picks least representatives") {
  auto a = swap_action();
  FinMap q = quotient_map(a, a.carrier());
  CHECK(q.codomain().elements() == std::vector<std::string>{"x", "z"});
  CHECK(q.apply("y") == "x");
  CHECK(q.apply("z") == "z");
}

TEST_CASE("quotient fibers match orbit blocks on a random Z/4 action") {
  FinGroup z4 = cyclic(4);
  // two 4-cycles on 8 points
  FinSet carrier(std::vector<std::string>{"a0", "a1", "a2", "a3", "b0", "b1",
                                          "b2", "b3"});
  std::vector<std::uint32_t> act(4 * 8);
  for (std::size_t g = 0; g < 4; ++g)
    for (std::size_t x = 0; x < 8; ++x) {
      std::size_t base = x < 4 ? 0 : 4;
      act[g * 8 + x] = static_cast<std::uint32_t>(base + ((x - base) + g) % 4);
    }
  GroupAction a(z4, carrier, std::move(act));
  auto blocks = orbits(a, carrier);
  FinMap q = quotient_map(a, carrier);
  REQUIRE(blocks.size() == q.codomain().size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (const auto& e : blocks[b].elements())
      CHECK(q.apply(e) == q.codomain().at(b));
}

TEST_CASE("invariance report: constants collapse orbits") {
  auto a = swap_action();
  RatFn f = RatFn::constant(a.carrier(), Rat(5));
  auto r = invariance_report(a, f, a.carrier());
  CHECK(r.invariant_subset);
  CHECK(r.invariant_fn);
  CHECK_FALSE(r.quotient_injective);  // two orbits, one value
}

TEST_CASE("invariance report: distinct orbit values are injective") {
  auto a = swap_action();
  RatFn f = RatFn::from_pairs(
      a.carrier(), {{"x", Rat(1, 2)}, {"y", Rat(1, 2)}, {"z", Rat(3)}});
  auto r = invariance_report(a, f, a.carrier());
  CHECK(r.invariant_subset);
  CHECK(r.invariant_fn);
  CHECK(r.quotient_injective);
}

TEST_CASE("invariance report: non-invariant functional detected") {
  auto a = swap_action();
  RatFn f = RatFn::from_pairs(a.carrier(),
                              {{"x", Rat(1)}, {"y", Rat(2)}, {"z", Rat(3)}});
  auto r = invariance_report(a, f, a.carrier());
  CHECK(r.invariant_subset);
  CHECK_FALSE(r.invariant_fn);
}

TEST_CASE("equivariance of identity and fixed-point constants") {
  auto a = swap_action();
  CHECK(is_equivariant(FinMap::identity(a.carrier()), a, a));
  CHECK(is_equivariant(FinMap::constant(a.carrier(), a.carrier(), "z"), a, a));
  CHECK_FALSE(is_equivariant(FinMap::constant(a.carrier(), a.carrier(), "x"), a, a));
}

TEST_CASE("equivariance of swap-to-swap intertwiners") {
  FinGroup z2 = cyclic(2);
  FinSet c1(std::vector<std::string>{"x", "y"});
  FinSet c2(std::vector<std::string>{"u", "v"});
  GroupAction a(z2, c1, {0, 1, 1, 0});
  GroupAction b(z2, c2, {0, 1, 1, 0});
  FinMap good = FinMap::from_pairs(c1, c2, {{"x", "u"}, {"y", "v"}});
  FinMap bad = FinMap::from_pairs(c1, c2, {{"x", "u"}, {"y", "u"}});
  CHECK(is_equivariant(good, a, b));
  CHECK_FALSE(is_equivariant(bad, a, b));
  // oracle: check all (group element, point) pairs by hand
  for (std::size_t g = 0; g < 2; ++g)
    for (std::size_t x = 0; x < 2; ++x) {
      CHECK(good.apply_index(a.act(g, x)) == b.act(g, good.apply_index(x)));
    }
}

TEST_CASE("maximal injective subsets: whole carrier when already injective") {
  auto a = swap_action();
  RatFn f = RatFn::from_pairs(
      a.carrier(), {{"x", Rat(1)}, {"y", Rat(1)}, {"z", Rat(2)}});
  auto r = maximal_injective_subsets(a, f, FinSet{});
  CHECK(r.core_feasible);
  REQUIRE(r.all_maximal.size() == 1);
  CHECK(r.all_maximal[0] == a.carrier());
  CHECK(r.canonical == a.carrier());
}

TEST_CASE("maximal injective subsets: equal fixed-point values exclude each other") {
  FinGroup triv = cyclic(1);
  FinSet carrier(std::vector<std::string>{"p", "q"});
  GroupAction a = GroupAction::trivial(triv, carrier);
  RatFn f = RatFn::from_pairs(carrier, {{"p", Rat(7)}, {"q", Rat(7)}});
  auto r = maximal_injective_subsets(a, f, FinSet{});
  CHECK(r.core_feasible);
  REQUIRE(r.all_maximal.size() == 2);
  CHECK(r.all_maximal[0].elements() == std::vector<std::string>{"p"});
  CHECK(r.all_maximal[1].elements() == std::vector<std::string>{"q"});
  // canonical keeps the earlier point, omitting the later one
  CHECK(r.canonical.elements() == std::vector<std::string>{"p"});
}

TEST_CASE("maximal injective subsets: infeasible core") {
  FinGroup triv = cyclic(1);
  FinSet carrier(std::vector<std::string>{"p", "q"});
  GroupAction a = GroupAction::trivial(triv, carrier);
  RatFn f = RatFn::from_pairs(carrier, {{"p", Rat(7)}, {"q", Rat(7)}});
  auto r = maximal_injective_subsets(a, f, carrier);
  CHECK_FALSE(r.core_feasible);
  CHECK(r.all_maximal.empty());
}

TEST_CASE("every maximal subset is maximal: adding any orbit breaks it") {
  FinGroup triv = cyclic(1);
  FinSet carrier(std::vector<std::string>{"a", "b", "c", "d"});
  GroupAction act = GroupAction::trivial(triv, carrier);
  RatFn f = RatFn::from_pairs(
      carrier, {{"a", Rat(1)}, {"b", Rat(1)}, {"c", Rat(2)}, {"d", Rat(1)}});
  auto r = maximal_injective_subsets(act, f, FinSet{});
  CHECK(r.all_maximal.size() == 3);  // choose one of a, b, d
  for (const auto& sub : r.all_maximal) {
    for (const auto& extra : carrier.elements()) {
      if (sub.contains(extra)) continue;
      // exhaustive: the enlarged subset must fail quotient-injectivity
      std::vector<bool> keep(carrier.size(), false);
      for (const auto& e : sub.elements()) keep[*carrier.index_of(e)] = true;
      keep[*carrier.index_of(extra)] = true;
      auto enlarged = carrier.filtered(keep);
      CHECK_FALSE(invariance_report(act, f, enlarged).quotient_injective);
    }
  }
}

TEST_CASE("restricted action renumbers an invariant subset") {
  auto a = swap_action();
  FinSet sub(std::vector<std::string>{"x", "y"});
  GroupAction r = a.restricted(sub);
  CHECK(r.carrier() == sub);
  CHECK(r.act(1, 0) == 1);
  CHECK_THROWS_AS(a.restricted(FinSet(std::vector<std::string>{"x"})), Error);
}
