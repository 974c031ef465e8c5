#include "finext/universal.hpp"

#include <string>

#include "finext/errors.hpp"

namespace finext {

UniversalWitness UniversalWitness::pullback(FinSet apex, FinMap proj1,
                                            FinMap proj2, FinMap f, FinMap g) {
  if (f.codomain() != g.codomain())
    fail(ErrorKind::InvalidConstruction, "pullback witness: cospan mismatch");
  if (proj1.domain() != apex || proj2.domain() != apex)
    fail(ErrorKind::InvalidConstruction, "pullback witness: legs not on apex");
  if (proj1.codomain() != f.domain() || proj2.codomain() != g.domain())
    fail(ErrorKind::InvalidConstruction, "pullback witness: legs off cospan feet");
  UniversalWitness w;
  w.kind = UniversalKind::Pullback;
  w.apex = std::move(apex);
  w.proj1 = std::move(proj1);
  w.proj2 = std::move(proj2);
  w.f = std::move(f);
  w.g = std::move(g);
  return w;
}

UniversalWitness UniversalWitness::coproduct(FinSet apex,
                                             std::vector<FinMap> injections) {
  for (const auto& inj : injections)
    if (inj.codomain() != apex)
      fail(ErrorKind::InvalidConstruction,
           "coproduct witness: injection not into apex");
  UniversalWitness w;
  w.kind = UniversalKind::Coproduct;
  w.apex = std::move(apex);
  w.injections = std::move(injections);
  return w;
}

UniversalWitness UniversalWitness::terminal(FinSet apex) {
  UniversalWitness w;
  w.kind = UniversalKind::Terminal;
  w.apex = std::move(apex);
  return w;
}

namespace {

FinSet probe_set(std::size_t n) {
  std::vector<std::string> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) elems.push_back("u" + std::to_string(i));
  return FinSet(std::move(elems));
}

// Steps an odometer over `digits` positions with the given base; returns
// false once the space is exhausted.
bool step(std::vector<std::size_t>& digits, std::size_t base) {
  std::size_t i = digits.size();
  while (i > 0) {
    --i;
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

std::uint64_t pow_capped(std::uint64_t base, std::size_t exp,
                         std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

bool verify_pullback(const UniversalWitness& w, std::size_t probe_limit,
                     std::uint64_t max_enumeration) {
  // The candidate legs must commute with the cospan at all.
  for (std::size_t p = 0; p < w.apex.size(); ++p)
    if (w.f.apply_index(w.proj1.apply_index(p)) !=
        w.g.apply_index(w.proj2.apply_index(p)))
      return false;

  // Competing cones from a probe Z are exactly the maps Z -> matched
  // pairs, and mediating maps are pinned pointwise, so the mediating
  // count for a cone is the product of apex-fiber sizes over its points.
  std::vector<std::pair<std::size_t, std::size_t>> matched;
  for (std::size_t a = 0; a < w.f.domain().size(); ++a)
    for (std::size_t b = 0; b < w.g.domain().size(); ++b)
      if (w.f.apply_index(a) == w.g.apply_index(b)) matched.emplace_back(a, b);

  std::vector<std::size_t> fiber(matched.size(), 0);
  for (std::size_t p = 0; p < w.apex.size(); ++p) {
    std::size_t a = w.proj1.apply_index(p), b = w.proj2.apply_index(p);
    for (std::size_t m = 0; m < matched.size(); ++m)
      if (matched[m].first == a && matched[m].second == b) {
        ++fiber[m];
        break;
      }
  }

  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= probe_limit; ++n)
    total += pow_capped(matched.size(), n, max_enumeration);
  if (total > max_enumeration || probe_limit == 0) {
    // Singleton cones decide the property; see header note.
    for (std::size_t m = 0; m < matched.size(); ++m)
      if (fiber[m] != 1) return false;
    return true;
  }

  for (std::size_t n = 1; n <= probe_limit; ++n) {
    if (matched.empty()) break;  // no cones from a nonempty probe
    std::vector<std::size_t> cone(n, 0);
    do {
      std::uint64_t mediators = 1;
      for (std::size_t z = 0; z < n; ++z) mediators *= fiber[cone[z]];
      if (mediators != 1) return false;
    } while (step(cone, matched.size()));
  }
  return true;
}

bool verify_coproduct(const UniversalWitness& w, std::size_t probe_limit,
                      std::uint64_t max_enumeration) {
  // Pins on a mediating map: apex point p <- (k, x) whenever the k-th
  // injection sends x to p. Exactly-one-mediator for every cocone is
  // equivalent to every apex point being hit exactly once overall;
  // failures need a 2-point probe to materialize, which the literal loop
  // below covers.
  std::size_t legs = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preim(
      w.apex.size());
  for (std::size_t k = 0; k < w.injections.size(); ++k) {
    const FinMap& inj = w.injections[k];
    legs += inj.domain().size();
    for (std::size_t x = 0; x < inj.domain().size(); ++x)
      preim[inj.apply_index(x)].emplace_back(k, x);
  }

  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= probe_limit; ++n)
    total += pow_capped(n, legs, max_enumeration);
  if (total > max_enumeration || probe_limit < 2) {
    for (const auto& pre : preim)
      if (pre.size() != 1) return false;
    return true;
  }

  // Leg points are flattened so a cocone is one digit per point.
  std::vector<std::pair<std::size_t, std::size_t>> flat;
  for (std::size_t k = 0; k < w.injections.size(); ++k)
    for (std::size_t x = 0; x < w.injections[k].domain().size(); ++x)
      flat.emplace_back(k, x);
  std::vector<std::vector<std::size_t>> flat_index(w.injections.size());
  for (std::size_t i = 0; i < flat.size(); ++i)
    flat_index[flat[i].first].push_back(i);

  for (std::size_t n = 1; n <= probe_limit; ++n) {
    std::vector<std::size_t> cocone(flat.size(), 0);
    do {
      std::uint64_t mediators = 1;
      for (std::size_t p = 0; p < w.apex.size() && mediators != 0; ++p) {
        if (preim[p].empty()) {
          mediators *= n;  // unpinned point
          continue;
        }
        std::size_t want = SIZE_MAX;
        for (const auto& [k, x] : preim[p]) {
          std::size_t v = cocone[flat_index[k][x]];
          if (want == SIZE_MAX)
            want = v;
          else if (want != v)
            mediators = 0;  // conflicting pins
        }
      }
      if (mediators != 1) return false;
    } while (step(cocone, n));
  }
  return true;
}

bool verify_terminal(const UniversalWitness& w, std::size_t probe_limit,
                     std::uint64_t max_enumeration) {
  (void)max_enumeration;
  for (std::size_t n = 1; n <= probe_limit; ++n)
    if (pow_capped(w.apex.size(), n, 4) != 1) return false;
  return probe_limit == 0 ? w.apex.size() == 1 : true;
}

}  // namespace

bool verify_universal(const UniversalWitness& w, std::size_t probe_limit,
                      std::uint64_t max_enumeration) {
  switch (w.kind) {
    case UniversalKind::Pullback:
      return verify_pullback(w, probe_limit, max_enumeration);
    case UniversalKind::Coproduct:
      return verify_coproduct(w, probe_limit, max_enumeration);
    case UniversalKind::Terminal:
      return verify_terminal(w, probe_limit, max_enumeration);
  }
  return false;
}

}  // namespace finext
