#include "finext/finset.hpp"

#include <algorithm>

#include "finext/errors.hpp"

namespace finext {

FinSet::FinSet(std::vector<std::string> elements) : elems_(std::move(elements)) {
  for (std::size_t i = 0; i < elems_.size(); ++i)
    for (std::size_t j = i + 1; j < elems_.size(); ++j)
      if (elems_[i] == elems_[j])
        fail(ErrorKind::InvalidConstruction,
             "duplicate element '" + elems_[i] + "' in set");
}

std::optional<std::size_t> FinSet::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (elems_[i] == id) return i;
  return std::nullopt;
}

bool FinSet::subset_of(const FinSet& other) const {
  return std::all_of(elems_.begin(), elems_.end(),
                     [&](const std::string& e) { return other.contains(e); });
}

FinSet FinSet::filtered(const std::vector<bool>& keep) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (keep[i]) out.push_back(elems_[i]);
  return FinSet(std::move(out));
}

std::string FinSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) out += ",";
    out += elems_[i];
  }
  return out + "}";
}

FinSet carrier_union(const FinSet& carrier,
                     const std::vector<const FinSet*>& parts) {
  std::vector<std::string> out;
  for (const auto& e : carrier.elements()) {
    for (const FinSet* p : parts) {
      if (p->contains(e)) {
        out.push_back(e);
        break;
      }
    }
  }
  return FinSet(std::move(out));
}

FinSet carrier_intersection(const FinSet& carrier, const FinSet& a,
                            const FinSet& b) {
  std::vector<std::string> out;
  for (const auto& e : carrier.elements())
    if (a.contains(e) && b.contains(e)) out.push_back(e);
  return FinSet(std::move(out));
}

FinMap::FinMap(FinSet domain, FinSet codomain, std::vector<std::uint32_t> table)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      table_(std::move(table)) {
  if (table_.size() != domain_.size())
    fail(ErrorKind::InvalidConstruction, "map table is not total on domain");
  for (auto v : table_)
    if (v >= codomain_.size())
      fail(ErrorKind::InvalidConstruction, "map value outside codomain");
}

FinMap FinMap::from_pairs(
    FinSet domain, FinSet codomain,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::uint32_t> table(domain.size(), UINT32_MAX);
  for (const auto& [x, y] : pairs) {
    auto xi = domain.index_of(x);
    if (!xi) fail(ErrorKind::InvalidConstruction, "'" + x + "' not in domain");
    auto yi = codomain.index_of(y);
    if (!yi) fail(ErrorKind::InvalidConstruction, "'" + y + "' not in codomain");
    table[*xi] = static_cast<std::uint32_t>(*yi);
  }
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] == UINT32_MAX)
      fail(ErrorKind::InvalidConstruction,
           "map undefined at '" + domain.at(i) + "'");
  return FinMap(std::move(domain), std::move(codomain), std::move(table));
}

FinMap FinMap::identity(const FinSet& s) {
  std::vector<std::uint32_t> table(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    table[i] = static_cast<std::uint32_t>(i);
  return FinMap(s, s, std::move(table));
}

FinMap FinMap::constant(FinSet domain, FinSet codomain,
                        std::string_view target) {
  auto t = codomain.index_of(target);
  if (!t)
    fail(ErrorKind::InvalidConstruction,
         "constant target not in codomain");
  std::vector<std::uint32_t> table(domain.size(),
                                   static_cast<std::uint32_t>(*t));
  return FinMap(std::move(domain), std::move(codomain), std::move(table));
}

const std::string& FinMap::apply(std::string_view x) const {
  auto i = domain_.index_of(x);
  if (!i)
    fail(ErrorKind::DomainMismatch,
         "'" + std::string(x) + "' not in map domain");
  return codomain_.at(table_[*i]);
}

std::string FinMap::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (i) out += " ";
    out += domain_.at(i) + "->" + codomain_.at(table_[i]);
  }
  return out + "]";
}

RatFn::RatFn(FinSet domain, std::vector<Rat> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size())
    fail(ErrorKind::InvalidConstruction, "functional is not total on domain");
}

RatFn RatFn::from_pairs(FinSet domain,
                        const std::vector<std::pair<std::string, Rat>>& pairs) {
  std::vector<Rat> values(domain.size());
  std::vector<bool> seen(domain.size(), false);
  for (const auto& [x, v] : pairs) {
    auto xi = domain.index_of(x);
    if (!xi) fail(ErrorKind::InvalidConstruction, "'" + x + "' not in domain");
    values[*xi] = v;
    seen[*xi] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      fail(ErrorKind::InvalidConstruction,
           "functional undefined at '" + domain.at(i) + "'");
  return RatFn(std::move(domain), std::move(values));
}

RatFn RatFn::constant(FinSet domain, Rat value) {
  std::vector<Rat> values(domain.size(), value);
  return RatFn(std::move(domain), std::move(values));
}

const Rat& RatFn::at(std::string_view x) const {
  auto i = domain_.index_of(x);
  if (!i)
    fail(ErrorKind::DomainMismatch,
         "'" + std::string(x) + "' not in functional domain");
  return values_[*i];
}

RatFn RatFn::restrict_to(const FinSet& sub) const {
  std::vector<Rat> values;
  values.reserve(sub.size());
  for (const auto& e : sub.elements()) values.push_back(at(e));
  return RatFn(sub, std::move(values));
}

FinMap compose(const FinMap& f, const FinMap& g) {
  if (f.codomain() != g.domain())
    fail(ErrorKind::DomainMismatch,
         "compose: codomain of first map differs from domain of second");
  std::vector<std::uint32_t> table(f.domain().size());
  for (std::size_t i = 0; i < table.size(); ++i)
    table[i] = static_cast<std::uint32_t>(g.apply_index(f.apply_index(i)));
  return FinMap(f.domain(), g.codomain(), std::move(table));
}

MapProperties map_properties(const FinMap& f) {
  MapProperties p;
  std::vector<std::size_t> hits(f.codomain().size(), 0);
  for (std::size_t i = 0; i < f.domain().size(); ++i) ++hits[f.apply_index(i)];
  p.injective = std::all_of(hits.begin(), hits.end(),
                            [](std::size_t h) { return h <= 1; });
  p.surjective = std::all_of(hits.begin(), hits.end(),
                             [](std::size_t h) { return h >= 1; });
  return p;
}

std::vector<FinMap> enumerate_sections(const FinMap& p) {
  // Fibers in codomain order; empty fiber = not surjective. A section is
  // one choice per fiber, enumerated odometer-style with the last fiber
  // varying fastest.
  std::vector<std::vector<std::uint32_t>> fibers(p.codomain().size());
  for (std::size_t i = 0; i < p.domain().size(); ++i)
    fibers[p.apply_index(i)].push_back(static_cast<std::uint32_t>(i));
  for (std::size_t c = 0; c < fibers.size(); ++c)
    if (fibers[c].empty())
      fail(ErrorKind::NotSurjective,
           "no preimage for '" + p.codomain().at(c) + "'");

  std::vector<FinMap> sections;
  std::vector<std::size_t> pick(fibers.size(), 0);
  for (;;) {
    std::vector<std::uint32_t> table(fibers.size());
    for (std::size_t c = 0; c < fibers.size(); ++c)
      table[c] = fibers[c][pick[c]];
    sections.emplace_back(p.codomain(), p.domain(), std::move(table));
    std::size_t c = fibers.size();
    while (c > 0) {
      --c;
      if (++pick[c] < fibers[c].size()) break;
      pick[c] = 0;
      if (c == 0) return sections;
    }
    if (fibers.empty()) return sections;
  }
}

SetPullback set_pullback(const FinMap& f, const FinMap& g) {
  if (f.codomain() != g.codomain())
    fail(ErrorKind::DomainMismatch, "pullback: maps have different codomains");
  std::vector<std::string> elems;
  std::vector<std::uint32_t> t1, t2;
  for (std::size_t a = 0; a < f.domain().size(); ++a) {
    for (std::size_t b = 0; b < g.domain().size(); ++b) {
      if (f.apply_index(a) == g.apply_index(b)) {
        elems.push_back("(" + f.domain().at(a) + "," + g.domain().at(b) + ")");
        t1.push_back(static_cast<std::uint32_t>(a));
        t2.push_back(static_cast<std::uint32_t>(b));
      }
    }
  }
  FinSet object(std::move(elems));
  SetPullback out;
  out.proj1 = FinMap(object, f.domain(), std::move(t1));
  out.proj2 = FinMap(object, g.domain(), std::move(t2));
  out.object = std::move(object);
  return out;
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotInjectiveInvariant: return "NotInjectiveInvariant";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::ZeroExcluded: return "ZeroExcluded";
    case ErrorKind::CoreDisagreement: return "CoreDisagreement";
    case ErrorKind::OverlapViolation: return "OverlapViolation";
    case ErrorKind::BaseNotInjective: return "BaseNotInjective";
    case ErrorKind::ZeroDecomposition: return "ZeroDecomposition";
    case ErrorKind::NotCoherentInput: return "NotCoherentInput";
    case ErrorKind::NotGaunt: return "NotGaunt";
    case ErrorKind::IncompatibleQuotient: return "IncompatibleQuotient";
    case ErrorKind::EmptyConnHat: return "EmptyConnHat";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ResolutionError: return "ResolutionError";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::InvalidConstruction: return "InvalidConstruction";
  }
  return "Error";
}

}  // namespace finext
