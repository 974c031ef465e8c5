#include "finext/group.hpp"

#include <algorithm>
#include <map>

#include "finext/errors.hpp"

namespace finext {

FinGroup::FinGroup(FinSet elements, std::vector<std::uint32_t> mult,
                   std::string_view identity)
    : elems_(std::move(elements)), mult_(std::move(mult)) {
  const std::size_t n = elems_.size();
  if (n == 0) fail(ErrorKind::InvalidConstruction, "empty group");
  if (mult_.size() != n * n)
    fail(ErrorKind::InvalidConstruction, "multiplication table size mismatch");
  for (auto v : mult_)
    if (v >= n)
      fail(ErrorKind::InvalidConstruction, "multiplication table value out of range");
  auto e = elems_.index_of(identity);
  if (!e) fail(ErrorKind::InvalidConstruction, "identity not a group element");
  identity_ = *e;

  for (std::size_t a = 0; a < n; ++a) {
    if (op(identity_, a) != a || op(a, identity_) != a)
      fail(ErrorKind::InvalidConstruction,
           "identity law fails at '" + elems_.at(a) + "'");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (op(op(a, b), c) != op(a, op(b, c)))
          fail(ErrorKind::InvalidConstruction, "associativity fails");

  inverse_.assign(n, UINT32_MAX);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (op(a, b) == identity_ && op(b, a) == identity_) {
        inverse_[a] = static_cast<std::uint32_t>(b);
        break;
      }
    }
    if (inverse_[a] == UINT32_MAX)
      fail(ErrorKind::InvalidConstruction,
           "no inverse for '" + elems_.at(a) + "'");
  }
}

GroupAction::GroupAction(FinGroup group, FinSet carrier,
                         std::vector<std::uint32_t> act)
    : group_(std::move(group)), carrier_(std::move(carrier)), act_(std::move(act)) {
  const std::size_t n = carrier_.size();
  const std::size_t m = group_.order();
  if (act_.size() != m * n)
    fail(ErrorKind::InvalidConstruction, "action table size mismatch");
  for (auto v : act_)
    if (v >= n) fail(ErrorKind::InvalidConstruction, "action value out of range");
  for (std::size_t x = 0; x < n; ++x)
    if (this->act(group_.identity(), x) != x)
      fail(ErrorKind::InvalidConstruction, "action identity law fails");
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      for (std::size_t x = 0; x < n; ++x)
        if (this->act(group_.op(g, h), x) != this->act(g, this->act(h, x)))
          fail(ErrorKind::InvalidConstruction, "action compatibility law fails");
}

GroupAction GroupAction::trivial(FinGroup group, FinSet carrier) {
  std::vector<std::uint32_t> act(group.order() * carrier.size());
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t x = 0; x < carrier.size(); ++x)
      act[g * carrier.size() + x] = static_cast<std::uint32_t>(x);
  return GroupAction(std::move(group), std::move(carrier), std::move(act));
}

std::vector<std::size_t> GroupAction::orbit_of(std::size_t x) const {
  std::vector<bool> in(carrier_.size(), false);
  for (std::size_t g = 0; g < group_.order(); ++g) in[act(g, x)] = true;
  std::vector<std::size_t> orbit;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) orbit.push_back(i);
  return orbit;
}

bool GroupAction::fixes(std::size_t x) const {
  for (std::size_t g = 0; g < group_.order(); ++g)
    if (act(g, x) != x) return false;
  return true;
}

bool GroupAction::subset_invariant(const FinSet& subset) const {
  for (const auto& e : subset.elements()) {
    auto xi = carrier_.index_of(e);
    if (!xi) return false;
    for (std::size_t g = 0; g < group_.order(); ++g)
      if (!subset.contains(carrier_.at(act(g, *xi)))) return false;
  }
  return true;
}

GroupAction GroupAction::restricted(const FinSet& subset) const {
  if (!subset_invariant(subset))
    fail(ErrorKind::NotInvariant, "restriction to non-invariant subset");
  std::vector<std::uint32_t> table(group_.order() * subset.size());
  for (std::size_t g = 0; g < group_.order(); ++g) {
    for (std::size_t x = 0; x < subset.size(); ++x) {
      std::size_t cx = *carrier_.index_of(subset.at(x));
      std::size_t cy = act(g, cx);
      table[g * subset.size() + x] =
          static_cast<std::uint32_t>(*subset.index_of(carrier_.at(cy)));
    }
  }
  return GroupAction(group_, subset, std::move(table));
}

GroupHom::GroupHom(FinGroup source, FinGroup target,
                   std::vector<std::uint32_t> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (table_.size() != source_.order())
    fail(ErrorKind::InvalidConstruction, "homomorphism table size mismatch");
  for (auto v : table_)
    if (v >= target_.order())
      fail(ErrorKind::InvalidConstruction, "homomorphism value out of range");
  if (table_[source_.identity()] != target_.identity())
    fail(ErrorKind::InvalidConstruction, "homomorphism does not preserve identity");
  for (std::size_t a = 0; a < source_.order(); ++a)
    for (std::size_t b = 0; b < source_.order(); ++b)
      if (table_[source_.op(a, b)] != target_.op(table_[a], table_[b]))
        fail(ErrorKind::InvalidConstruction, "homomorphism law fails");
}

GroupHom GroupHom::identity(const FinGroup& g) {
  std::vector<std::uint32_t> table(g.order());
  for (std::size_t i = 0; i < g.order(); ++i)
    table[i] = static_cast<std::uint32_t>(i);
  return GroupHom(g, g, std::move(table));
}

GroupHom GroupHom::trivial(FinGroup source, FinGroup target) {
  std::vector<std::uint32_t> table(
      source.order(), static_cast<std::uint32_t>(target.identity()));
  return GroupHom(std::move(source), std::move(target), std::move(table));
}

namespace {

void require_invariant(const GroupAction& a, const FinSet& subset,
                       const char* who) {
  if (!subset.subset_of(a.carrier()))
    fail(ErrorKind::NotInvariant,
         std::string(who) + ": subset not contained in carrier");
  if (!a.subset_invariant(subset))
    fail(ErrorKind::NotInvariant, std::string(who) + ": subset not invariant");
}

}  // namespace

std::vector<FinSet> orbits(const GroupAction& a, const FinSet& subset) {
  require_invariant(a, subset, "orbits");
  std::vector<bool> seen(a.carrier().size(), false);
  std::vector<FinSet> blocks;
  for (const auto& e : a.carrier().elements()) {
    auto xi = a.carrier().index_of(e);
    if (seen[*xi] || !subset.contains(e)) continue;
    auto orb = a.orbit_of(*xi);
    std::vector<std::string> names;
    for (auto o : orb) {
      seen[o] = true;
      names.push_back(a.carrier().at(o));
    }
    blocks.emplace_back(std::move(names));
  }
  return blocks;
}

FinMap quotient_map(const GroupAction& a, const FinSet& subset) {
  auto blocks = orbits(a, subset);
  std::vector<std::string> reps;
  reps.reserve(blocks.size());
  for (const auto& b : blocks) reps.push_back(b.at(0));
  FinSet rep_set(std::move(reps));
  std::vector<std::uint32_t> table(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].contains(subset.at(i))) {
        table[i] = static_cast<std::uint32_t>(*rep_set.index_of(blocks[b].at(0)));
        break;
      }
    }
  }
  return FinMap(subset, std::move(rep_set), std::move(table));
}

InvarianceReport invariance_report(const GroupAction& a, const RatFn& f,
                                   const FinSet& subset) {
  InvarianceReport r;
  if (!subset.subset_of(a.carrier()) || !subset.subset_of(f.domain()))
    fail(ErrorKind::DomainMismatch,
         "invariance_report: subset outside carrier or functional domain");
  r.invariant_subset = a.subset_invariant(subset);
  if (!r.invariant_subset) return r;

  r.invariant_fn = true;
  for (const auto& e : subset.elements()) {
    std::size_t xi = *a.carrier().index_of(e);
    for (std::size_t g = 0; g < a.group().order() && r.invariant_fn; ++g) {
      const std::string& gx = a.carrier().at(a.act(g, xi));
      if (!f.domain().contains(gx) || f.at(gx) != f.at(e))
        r.invariant_fn = false;
    }
  }
  if (!r.invariant_fn) return r;

  auto blocks = orbits(a, subset);
  r.quotient_injective = true;
  for (std::size_t i = 0; i < blocks.size() && r.quotient_injective; ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (f.at(blocks[i].at(0)) == f.at(blocks[j].at(0))) {
        r.quotient_injective = false;
        break;
      }
  return r;
}

bool is_equivariant(const FinMap& f, const GroupAction& a, const GroupAction& b,
                    const GroupHom* hom) {
  if (!f.domain().subset_of(a.carrier()) || !f.codomain().subset_of(b.carrier()))
    fail(ErrorKind::DomainMismatch, "is_equivariant: map outside carriers");
  if (hom == nullptr && !(a.group() == b.group()))
    fail(ErrorKind::DomainMismatch,
         "is_equivariant: identity homomorphism needs equal groups");
  for (std::size_t i = 0; i < f.domain().size(); ++i) {
    std::size_t ax = *a.carrier().index_of(f.domain().at(i));
    std::size_t by = *b.carrier().index_of(f.codomain().at(f.apply_index(i)));
    for (std::size_t g = 0; g < a.group().order(); ++g) {
      const std::string& gx = a.carrier().at(a.act(g, ax));
      auto gi = f.domain().index_of(gx);
      if (!gi) return false;  // domain not invariant: cannot commute
      std::size_t h = hom ? hom->apply(g) : g;
      const std::string& lhs = f.codomain().at(f.apply_index(*gi));
      const std::string& rhs = b.carrier().at(b.act(h, by));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

MaximalInjectiveResult maximal_injective_subsets(const GroupAction& a,
                                                 const RatFn& f,
                                                 const FinSet& required_core) {
  require_invariant(a, required_core, "maximal_injective_subsets");
  if (!(f.domain() == a.carrier()) && !a.carrier().subset_of(f.domain()))
    fail(ErrorKind::DomainMismatch,
         "maximal_injective_subsets: functional not defined on carrier");

  MaximalInjectiveResult out;
  {
    auto core_report = invariance_report(a, f, required_core);
    if (!core_report.all()) return out;  // infeasible, lists stay empty
  }
  out.core_feasible = true;

  // Orbits of the full carrier in carrier order; a candidate subset is a
  // union of admissible orbits (f constant on them) with pairwise
  // distinct values, containing every core orbit.
  auto blocks = orbits(a, a.carrier());
  struct OrbitInfo {
    std::size_t index;
    bool admissible;
    bool core;
    Rat value;
  };
  std::vector<OrbitInfo> info;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    OrbitInfo oi;
    oi.index = b;
    oi.core = required_core.contains(blocks[b].at(0));
    oi.admissible = true;
    oi.value = f.at(blocks[b].at(0));
    for (const auto& e : blocks[b].elements())
      if (f.at(e) != oi.value) oi.admissible = false;
    info.push_back(oi);
  }

  // Values claimed by core orbits exclude all other orbits of that value.
  std::vector<Rat> core_values;
  for (const auto& oi : info)
    if (oi.core) core_values.push_back(oi.value);
  auto value_taken_by_core = [&](const Rat& v) {
    return std::any_of(core_values.begin(), core_values.end(),
                       [&](const Rat& c) { return c == v; });
  };

  // Group the remaining candidate orbits by value, in first-occurrence
  // order; a maximal subset picks exactly one orbit per value group.
  std::vector<std::pair<Rat, std::vector<std::size_t>>> groups;
  for (const auto& oi : info) {
    if (oi.core || !oi.admissible || value_taken_by_core(oi.value)) continue;
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == oi.value; });
    if (it == groups.end())
      groups.push_back({oi.value, {oi.index}});
    else
      it->second.push_back(oi.index);
  }

  std::vector<std::size_t> pick(groups.size(), 0);
  auto emit = [&](const std::vector<std::size_t>& choice) {
    std::vector<bool> keep(a.carrier().size(), false);
    for (const auto& oi : info)
      if (oi.core)
        for (const auto& e : blocks[oi.index].elements())
          keep[*a.carrier().index_of(e)] = true;
    for (std::size_t gidx = 0; gidx < groups.size(); ++gidx)
      for (const auto& e : blocks[groups[gidx].second[choice[gidx]]].elements())
        keep[*a.carrier().index_of(e)] = true;
    return a.carrier().filtered(keep);
  };

  if (groups.empty()) {
    out.all_maximal.push_back(emit(pick));
  } else {
    for (;;) {
      out.all_maximal.push_back(emit(pick));
      std::size_t g = groups.size();
      bool done = true;
      while (g > 0) {
        --g;
        if (++pick[g] < groups[g].second.size()) {
          done = false;
          break;
        }
        pick[g] = 0;
      }
      if (done) break;
    }
  }
  // The greedy choice takes the earliest orbit of each value group, which
  // is the first emitted subset.
  out.canonical = out.all_maximal.front();
  return out;
}

}  // namespace finext
