#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "finext/errors.hpp"
#include "finext/finset.hpp"
#include "finext/universal.hpp"

using namespace finext;

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

FinSet named(const std::string& prefix, std::size_t n) {
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < n; ++i) elems.push_back(prefix + std::to_string(i));
  return FinSet(std::move(elems));
}

FinMap random_map(std::uint64_t& st, const FinSet& dom, const FinSet& cod) {
  std::vector<std::uint32_t> t(dom.size());
  for (auto& v : t) v = static_cast<std::uint32_t>(splitmix(st) % cod.size());
  return FinMap(dom, cod, std::move(t));
}

}  // namespace

TEST_CASE("rationals are exact and normalized") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) - Rat(1, 3) == Rat(0));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat::parse("-6/4") == Rat(-3, 2));
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat(1, 2).str() == "1/2");
  CHECK(Rat(-3).str() == "-3");
  CHECK_THROWS_AS(Rat(1, 0), Error);
}

TEST_CASE("finset construction rejects duplicates and keeps order") {
  FinSet s(std::vector<std::string>{"b", "a", "c"});
  CHECK(s.size() == 3);
  CHECK(s.at(0) == "b");
  CHECK(*s.index_of("c") == 2);
  CHECK_THROWS_AS(FinSet(std::vector<std::string>{"x", "x"}), Error);
}

TEST_CASE("compose satisfies the identity law") {
  FinSet ab(std::vector<std::string>{"a", "b"});
  FinSet cd(std::vector<std::string>{"c", "d"});
  FinMap g = FinMap::from_pairs(ab, cd, {{"a", "d"}, {"b", "c"}});
  CHECK(compose(FinMap::identity(ab), g) == g);
  CHECK(compose(g, FinMap::identity(cd)) == g);
}

TEST_CASE("compose chains one-element maps") {
  FinSet a(std::vector<std::string>{"a"});
  FinSet c(std::vector<std::string>{"c"});
  FinSet d(std::vector<std::string>{"d"});
  FinMap f = FinMap::from_pairs(a, c, {{"a", "c"}});
  FinMap g = FinMap::from_pairs(c, d, {{"c", "d"}});
  CHECK(compose(f, g).apply("a") == "d");
}

TEST_CASE("compose equals the pointwise oracle on random maps") {
  std::uint64_t st = 41;
  FinSet x = named("x", 5), y = named("y", 5), z = named("z", 5);
  for (int round = 0; round < 20; ++round) {
    FinMap f = random_map(st, x, y);
    FinMap g = random_map(st, y, z);
    FinMap h = compose(f, g);
    for (std::size_t i = 0; i < x.size(); ++i) {
      // independent pointwise evaluation
      const std::string& mid = y.at(f.apply_index(i));
      CHECK(h.apply(x.at(i)) == g.apply(mid));
    }
  }
}

TEST_CASE("compose is associative") {
  std::uint64_t st = 99;
  FinSet x = named("x", 4), y = named("y", 3), z = named("z", 5), w = named("w", 2);
  for (int round = 0; round < 20; ++round) {
    FinMap f = random_map(st, x, y);
    FinMap g = random_map(st, y, z);
    FinMap h = random_map(st, z, w);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
  }
}

TEST_CASE("compose rejects mismatched endpoints") {
  FinSet a(std::vector<std::string>{"a"});
  FinSet b(std::vector<std::string>{"b"});
  FinMap f = FinMap::from_pairs(a, b, {{"a", "b"}});
  CHECK_THROWS_AS(compose(f, f), Error);
}

TEST_CASE("map properties on identity and constant maps") {
  FinSet abc(std::vector<std::string>{"a", "b", "c"});
  auto id_props = map_properties(FinMap::identity(abc));
  CHECK(id_props.injective);
  CHECK(id_props.surjective);

  FinSet ab(std::vector<std::string>{"a", "b"});
  FinSet c(std::vector<std::string>{"c"});
  auto const_props = map_properties(FinMap::constant(ab, c, "c"));
  CHECK_FALSE(const_props.injective);
  CHECK(const_props.surjective);
}

TEST_CASE("map properties agree with a permutation oracle") {
  std::uint64_t st = 7;
  FinSet s = named("n", 4);
  for (int round = 0; round < 10; ++round) {
    // Fisher-Yates from the pinned stream
    std::vector<std::uint32_t> perm{0, 1, 2, 3};
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[splitmix(st) % i]);
    auto props = map_properties(FinMap(s, s, perm));
    CHECK(props.injective);
    CHECK(props.surjective);
  }
}

TEST_CASE("sections of a two-fiber surjection") {
  FinSet dom(std::vector<std::string>{"1", "2", "3"});
  FinSet cod(std::vector<std::string>{"a", "b"});
  FinMap p = FinMap::from_pairs(dom, cod, {{"1", "a"}, {"2", "a"}, {"3", "b"}});
  auto sections = enumerate_sections(p);
  CHECK(sections.size() == 2);
  for (const auto& s : sections)
    CHECK(compose(s, p) == FinMap::identity(cod));
}

TEST_CASE("a bijection has exactly one section, its inverse") {
  FinSet dom(std::vector<std::string>{"1", "2"});
  FinSet cod(std::vector<std::string>{"a", "b"});
  FinMap p = FinMap::from_pairs(dom, cod, {{"1", "b"}, {"2", "a"}});
  auto sections = enumerate_sections(p);
  REQUIRE(sections.size() == 1);
  CHECK(sections[0].apply("a") == "2");
  CHECK(sections[0].apply("b") == "1");
}

TEST_CASE("sections of a 6-over-2 surjection: 3*3 of them") {
  FinSet dom = named("x", 6);
  FinSet cod(std::vector<std::string>{"a", "b"});
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < 6; ++i)
    pairs.push_back({dom.at(i), i < 3 ? "a" : "b"});
  FinMap p = FinMap::from_pairs(dom, cod, pairs);
  auto sections = enumerate_sections(p);
  CHECK(sections.size() == 9);
  for (const auto& s : sections)
    CHECK(compose(s, p) == FinMap::identity(cod));
}

TEST_CASE("section count equals the product of fiber sizes") {
  std::uint64_t st = 1234;
  for (int round = 0; round < 10; ++round) {
    FinSet dom = named("x", 5);
    FinSet cod = named("y", 2 + splitmix(st) % 2);
    FinMap p = random_map(st, dom, cod);
    std::vector<std::size_t> fiber(cod.size(), 0);
    for (std::size_t i = 0; i < dom.size(); ++i) ++fiber[p.apply_index(i)];
    bool surjective = true;
    std::size_t product = 1;
    for (auto f : fiber) {
      if (f == 0) surjective = false;
      product *= f;
    }
    if (!surjective) {
      CHECK_THROWS_AS(enumerate_sections(p), Error);
    } else {
      CHECK(enumerate_sections(p).size() == product);
    }
  }
}

TEST_CASE("empty fibers raise rather than return an empty list") {
  FinSet dom(std::vector<std::string>{"1"});
  FinSet cod(std::vector<std::string>{"a", "b"});
  FinMap p = FinMap::from_pairs(dom, cod, {{"1", "a"}});
  try {
    enumerate_sections(p);
    FAIL("expected NotSurjective");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSurjective);
  }
}

TEST_CASE("pullback of identities is the diagonal point") {
  FinSet a(std::vector<std::string>{"a"});
  auto pb = set_pullback(FinMap::identity(a), FinMap::identity(a));
  REQUIRE(pb.object.size() == 1);
  CHECK(pb.object.at(0) == "(a,a)");
}

TEST_CASE("pullback picks the matching fiber") {
  FinSet as(std::vector<std::string>{"a1", "a2"});
  FinSet bs(std::vector<std::string>{"b1"});
  FinSet cs(std::vector<std::string>{"c1", "c2"});
  FinMap f = FinMap::from_pairs(as, cs, {{"a1", "c1"}, {"a2", "c2"}});
  FinMap g = FinMap::from_pairs(bs, cs, {{"b1", "c1"}});
  auto pb = set_pullback(f, g);
  REQUIRE(pb.object.size() == 1);
  CHECK(pb.object.at(0) == "(a1,b1)");
}

TEST_CASE("pullback equals the filtered product oracle on random maps") {
  std::uint64_t st = 2024;
  FinSet a = named("a", 4), b = named("b", 5), c = named("c", 3);
  for (int round = 0; round < 20; ++round) {
    FinMap f = random_map(st, a, c);
    FinMap g = random_map(st, b, c);
    auto pb = set_pullback(f, g);
    // independent filter over the full product
    std::vector<std::string> expect;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (f.apply_index(i) == g.apply_index(j))
          expect.push_back("(" + a.at(i) + "," + b.at(j) + ")");
    CHECK(pb.object.elements() == expect);
    for (std::size_t p = 0; p < pb.object.size(); ++p)
      CHECK(f.apply_index(pb.proj1.apply_index(p)) ==
            g.apply_index(pb.proj2.apply_index(p)));
    CHECK(compose(pb.proj1, f) == compose(pb.proj2, g));
  }
}

TEST_CASE("set_pullback output verifies universally") {
  std::uint64_t st = 555;
  FinSet a = named("a", 3), b = named("b", 3), c = named("c", 2);
  for (int round = 0; round < 10; ++round) {
    FinMap f = random_map(st, a, c);
    FinMap g = random_map(st, b, c);
    auto pb = set_pullback(f, g);
    auto w = UniversalWitness::pullback(pb.object, pb.proj1, pb.proj2, f, g);
    CHECK(verify_universal(w, 2));
    CHECK(verify_universal(w, 3));
  }
}

TEST_CASE("the unfiltered product is rejected as a pullback") {
  FinSet a(std::vector<std::string>{"a1", "a2"});
  FinSet b(std::vector<std::string>{"b1", "b2"});
  FinSet c(std::vector<std::string>{"c1", "c2"});
  FinMap f = FinMap::from_pairs(a, c, {{"a1", "c1"}, {"a2", "c2"}});
  FinMap g = FinMap::from_pairs(b, c, {{"b1", "c1"}, {"b2", "c2"}});
  std::vector<std::string> prod;
  std::vector<std::uint32_t> p1, p2;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      prod.push_back("(" + a.at(i) + "," + b.at(j) + ")");
      p1.push_back(static_cast<std::uint32_t>(i));
      p2.push_back(static_cast<std::uint32_t>(j));
    }
  FinSet apex(prod);
  auto w = UniversalWitness::pullback(apex, FinMap(apex, a, p1),
                                      FinMap(apex, b, p2), f, g);
  CHECK_FALSE(verify_universal(w, 2));
}

TEST_CASE("a duplicated-point apex fails uniqueness") {
  FinSet a(std::vector<std::string>{"a"});
  FinSet c(std::vector<std::string>{"c"});
  FinMap f = FinMap::from_pairs(a, c, {{"a", "c"}});
  FinSet apex(std::vector<std::string>{"x", "y"});
  auto w = UniversalWitness::pullback(apex, FinMap::constant(apex, a, "a"),
                                      FinMap::constant(apex, a, "a"), f, f);
  CHECK_FALSE(verify_universal(w, 2));
}

TEST_CASE("disjoint union of two 2-element sets is a coproduct") {
  FinSet a(std::vector<std::string>{"a1", "a2"});
  FinSet b(std::vector<std::string>{"b1", "b2"});
  FinSet apex(std::vector<std::string>{"a1", "a2", "b1", "b2"});
  FinMap i1 = FinMap::from_pairs(a, apex, {{"a1", "a1"}, {"a2", "a2"}});
  FinMap i2 = FinMap::from_pairs(b, apex, {{"b1", "b1"}, {"b2", "b2"}});
  auto w = UniversalWitness::coproduct(apex, {i1, i2});
  // all cocones into probe sets of size <= 4
  CHECK(verify_universal(w, 4));
}

TEST_CASE("an apex with an unhit point is not a coproduct") {
  FinSet a(std::vector<std::string>{"a1"});
  FinSet apex(std::vector<std::string>{"a1", "junk"});
  FinMap i1 = FinMap::from_pairs(a, apex, {{"a1", "a1"}});
  auto w = UniversalWitness::coproduct(apex, {i1});
  CHECK_FALSE(verify_universal(w, 2));
}

TEST_CASE("an apex with a doubly-hit point is not a coproduct") {
  FinSet a(std::vector<std::string>{"a1", "a2"});
  FinSet apex(std::vector<std::string>{"x"});
  FinMap i1 = FinMap::constant(a, apex, "x");
  auto w = UniversalWitness::coproduct(apex, {i1});
  CHECK_FALSE(verify_universal(w, 2));
}

TEST_CASE("terminal witness wants a singleton") {
  CHECK(verify_universal(
      UniversalWitness::terminal(FinSet(std::vector<std::string>{"t"})), 3));
  CHECK_FALSE(verify_universal(
      UniversalWitness::terminal(FinSet(std::vector<std::string>{"t", "u"})), 3));
}

TEST_CASE("carrier_union keeps carrier order") {
  FinSet carrier(std::vector<std::string>{"a", "b", "c", "d"});
  FinSet s1(std::vector<std::string>{"d", "a"});
  FinSet s2(std::vector<std::string>{"c"});
  FinSet u = carrier_union(carrier, {&s1, &s2});
  CHECK(u.elements() == std::vector<std::string>{"a", "c", "d"});
}
