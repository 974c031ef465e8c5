#include "finext/order.hpp"

#include <algorithm>
#include <functional>

#include "finext/errors.hpp"

namespace finext {

namespace {

void require_same_context(const ExtClass& a, const ExtClass& b,
                          const char* who) {
  if (a.ctx.get() != b.ctx.get())
    fail(ErrorKind::DomainMismatch,
         std::string(who) + ": classes live over different contexts");
}

RelationMatrix exists_matrix(const ExtClass& cl, std::uint64_t budget) {
  const std::size_t n = cl.members.size();
  RelationMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = hom_count_limited(*cl.ctx, cl.members[i], cl.members[j], cl.cfg,
                                  budget, 1) >= 1;
  return m;
}

RelationMatrix unique_matrix(const ExtClass& cl, std::uint64_t budget) {
  const std::size_t n = cl.members.size();
  RelationMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = hom_count_limited(*cl.ctx, cl.members[i], cl.members[j], cl.cfg,
                                  budget, 2) == 1;
  return m;
}

}  // namespace

ExtClass make_class(std::shared_ptr<const ExtensionContext> ctx,
                    std::vector<Extension> members,
                    std::vector<std::string> labels, MorphismConfig cfg) {
  if (!ctx) fail(ErrorKind::InvalidConstruction, "class without context");
  if (labels.size() != members.size())
    fail(ErrorKind::InvalidConstruction, "class labels/members size mismatch");
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto bad = validate_extension(*ctx, members[i]);
    if (!bad.empty())
      fail(ErrorKind::InvalidConstruction,
           "class member '" + labels[i] + "' invalid: " + bad.front());
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i] == members[j])
        fail(ErrorKind::InvalidConstruction,
             "duplicate class members '" + labels[i] + "' and '" + labels[j] +
                 "'");
  }
  ExtClass cl;
  cl.ctx = std::move(ctx);
  cl.members = std::move(members);
  cl.labels = std::move(labels);
  cl.cfg = cfg;
  return cl;
}

RelationMatrix build_preorder(const ExtClass& cl, std::uint64_t budget) {
  return exists_matrix(cl, budget);
}

IsoPoset iso_poset(const ExtClass& cl, std::uint64_t budget) {
  IsoPoset p;
  p.blocks = iso_classes(*cl.ctx, cl.members, cl.cfg, budget);
  for (const auto& b : p.blocks) p.reps.push_back(b.front());
  RelationMatrix pre = exists_matrix(cl, budget);

  const std::size_t k = p.blocks.size();
  p.leq.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      p.leq[a][b] = pre[p.reps[a]][p.reps[b]];

  // The relation must not depend on the chosen representatives. It cannot
  // fail for a full subcategory; kept as a tripwire.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t i : p.blocks[a])
        for (std::size_t j : p.blocks[b])
          if (pre[i][j] != p.leq[a][b])
            fail(ErrorKind::IncompatibleQuotient,
                 "morphism relation does not descend to iso classes at '" +
                     cl.label(i) + "' -> '" + cl.label(j) + "'");

  // Antisymmetry is asserted by the source construction but refutable in
  // a finite model; refuse to return a non-poset.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (p.leq[a][b] && p.leq[b][a])
        fail(ErrorKind::IncompatibleQuotient,
             "antisymmetry fails between iso classes of '" +
                 cl.label(p.reps[a]) + "' and '" + cl.label(p.reps[b]) + "'");
  return p;
}

std::optional<std::size_t> greatest_element(const IsoPoset& p) {
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    bool top = true;
    for (std::size_t a = 0; a < p.blocks.size() && top; ++a)
      if (!p.leq[a][b]) top = false;
    if (top) return b;
  }
  return std::nullopt;
}

std::vector<std::size_t> terminal_objects(const ExtClass& cl,
                                          std::uint64_t budget) {
  RelationMatrix uniq = unique_matrix(cl, budget);
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < cl.members.size(); ++t) {
    bool terminal = true;
    for (std::size_t m = 0; m < cl.members.size() && terminal; ++m)
      if (!uniq[m][t]) terminal = false;
    if (terminal) out.push_back(t);
  }
  return out;
}

std::vector<std::size_t> initial_objects(const ExtClass& cl,
                                         std::uint64_t budget) {
  RelationMatrix uniq = unique_matrix(cl, budget);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cl.members.size(); ++i) {
    bool initial = true;
    for (std::size_t m = 0; m < cl.members.size() && initial; ++m)
      if (!uniq[i][m]) initial = false;
    if (initial) out.push_back(i);
  }
  return out;
}

namespace {

std::optional<FinMap> invert_bijection(const FinMap& m) {
  auto props = map_properties(m);
  if (!props.injective || !props.surjective) return std::nullopt;
  std::vector<std::uint32_t> table(m.codomain().size());
  for (std::size_t i = 0; i < m.domain().size(); ++i)
    table[m.apply_index(i)] = static_cast<std::uint32_t>(i);
  return FinMap(m.codomain(), m.domain(), std::move(table));
}

bool is_isomorphism(const ExtensionContext& ctx, const Extension& e1,
                    const Extension& e2, const ExtMorphism& m,
                    const MorphismConfig& cfg) {
  auto finv = invert_bijection(m.f);
  auto ginv = invert_bijection(m.g);
  if (!finv || !ginv) return false;
  return morphism_satisfies(ctx, e2, e1, ExtMorphism{*finv, *ginv}, cfg);
}

}  // namespace

bool is_gaunt(const ExtClass& cl, std::uint64_t budget) {
  for (std::size_t i = 0; i < cl.members.size(); ++i) {
    auto endos = hom_set(*cl.ctx, cl.members[i], cl.members[i], cl.cfg, budget);
    ExtMorphism id = identity_morphism(cl.members[i]);
    for (const auto& m : endos) {
      if (m == id) continue;
      if (is_isomorphism(*cl.ctx, cl.members[i], cl.members[i], m, cl.cfg))
        return false;  // nonidentity automorphism
    }
    for (std::size_t j = 0; j < cl.members.size(); ++j) {
      if (i == j) continue;
      if (find_isomorphism(*cl.ctx, cl.members[i], cl.members[j], cl.cfg,
                           budget))
        return false;
    }
  }
  return true;
}

RelationMatrix unique_morphism_order(const ExtClass& cl, std::uint64_t budget) {
  if (!is_gaunt(cl, budget))
    fail(ErrorKind::NotGaunt,
         "unique-morphism order requires a gaunt class");
  return unique_matrix(cl, budget);
}

const char* max_mode_name(MaxMode m) {
  switch (m) {
    case MaxMode::Maximal: return "maximal";
    case MaxMode::Universal: return "universal";
    case MaxMode::WeakMaximal: return "weak-maximal";
    case MaxMode::WeakUniversal: return "weak-universal";
  }
  return "?";
}

MaxMode parse_max_mode(const std::string& s) {
  if (s == "maximal") return MaxMode::Maximal;
  if (s == "universal") return MaxMode::Universal;
  if (s == "weak-maximal") return MaxMode::WeakMaximal;
  if (s == "weak-universal") return MaxMode::WeakUniversal;
  fail(ErrorKind::UsageError, "unknown maximality mode '" + s + "'");
}

namespace {

// ----- functor machinery for the weak modes -----

struct CategoryData {
  const ExtClass* cl = nullptr;
  // hom[i][j]: all morphisms members[i] -> members[j]
  std::vector<std::vector<std::vector<ExtMorphism>>> hom;
  std::vector<std::size_t> id_index;  // position of 1_i in hom[i][i]
  struct Entry {
    std::size_t i, j, m;
  };
  std::vector<Entry> entries;  // flattened morphisms in (i, j, m) order
  std::vector<std::vector<std::vector<std::size_t>>> entry_id;
  struct Triple {
    std::size_t a, b, c;  // entry ids with c = b after a
  };
  std::vector<Triple> triples;
};

std::size_t find_morphism(const std::vector<ExtMorphism>& homs,
                          const ExtMorphism& m) {
  for (std::size_t k = 0; k < homs.size(); ++k)
    if (homs[k] == m) return k;
  fail(ErrorKind::InvalidConstruction,
       "composite morphism missing from hom-set");
}

CategoryData build_category(const ExtClass& cl, std::uint64_t budget) {
  CategoryData d;
  d.cl = &cl;
  const std::size_t n = cl.members.size();
  d.hom.assign(n, {});
  d.entry_id.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    d.hom[i].resize(n);
    d.entry_id[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      d.hom[i][j] = hom_set(*cl.ctx, cl.members[i], cl.members[j], cl.cfg, budget);
      d.entry_id[i][j].resize(d.hom[i][j].size());
      for (std::size_t m = 0; m < d.hom[i][j].size(); ++m) {
        d.entry_id[i][j][m] = d.entries.size();
        d.entries.push_back({i, j, m});
      }
    }
  }
  d.id_index.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    d.id_index[i] = find_morphism(d.hom[i][i], identity_morphism(cl.members[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < d.hom[i][j].size(); ++a)
          for (std::size_t b = 0; b < d.hom[j][k].size(); ++b) {
            ExtMorphism comp = compose_morphisms(d.hom[i][j][a], d.hom[j][k][b]);
            std::size_t c = find_morphism(d.hom[i][k], comp);
            d.triples.push_back({d.entry_id[i][j][a], d.entry_id[j][k][b],
                                 d.entry_id[i][k][c]});
          }
  return d;
}

struct Functor {
  std::vector<std::size_t> obj;    // object map
  std::vector<std::size_t> morph;  // image morphism index per source entry
};

// All functors source -> target, in lexicographic (object map, morphism
// assignment) order. Throws SearchBudgetExceeded if the exploration
// exceeds the budget.
std::vector<Functor> enumerate_functors(const CategoryData& src,
                                        const CategoryData& dst,
                                        std::uint64_t budget) {
  std::vector<Functor> out;
  const std::size_t n0 = src.cl->members.size();
  const std::size_t n1 = dst.cl->members.size();
  if (n0 == 0) {
    out.push_back(Functor{});
    return out;
  }
  if (n1 == 0) return out;

  std::uint64_t explored = 0;
  std::vector<std::size_t> obj(n0, 0);

  auto try_object_map = [&]() {
    // Assign morphism images entry by entry with incremental composition
    // and identity checks.
    const auto& entries = src.entries;
    std::vector<std::size_t> img(entries.size(), 0);

    std::function<bool(std::size_t)> assign = [&](std::size_t t) -> bool {
      if (++explored > budget)
        fail(ErrorKind::SearchBudgetExceeded, "functor enumeration budget");
      if (t == entries.size()) {
        out.push_back(Functor{obj, img});
        return true;
      }
      const auto& entry = entries[t];
      const auto& targets = dst.hom[obj[entry.i]][obj[entry.j]];
      for (std::size_t cand = 0; cand < targets.size(); ++cand) {
        if (entry.i == entry.j && entry.m == src.id_index[entry.i] &&
            cand != dst.id_index[obj[entry.i]])
          continue;  // identities map to identities
        img[t] = cand;
        bool ok = true;
        for (const auto& tr : src.triples) {
          if (tr.a > t || tr.b > t || tr.c > t) continue;
          const auto& ea = src.entries[tr.a];
          const auto& eb = src.entries[tr.b];
          ExtMorphism comp =
              compose_morphisms(dst.hom[obj[ea.i]][obj[ea.j]][img[tr.a]],
                                dst.hom[obj[eb.i]][obj[eb.j]][img[tr.b]]);
          if (!(comp == dst.hom[obj[ea.i]][obj[eb.j]][img[tr.c]])) {
            ok = false;
            break;
          }
        }
        if (ok) assign(t + 1);
      }
      return true;
    };
    assign(0);
  };

  for (;;) {
    bool feasible = true;
    for (std::size_t i = 0; i < n0 && feasible; ++i)
      for (std::size_t j = 0; j < n0 && feasible; ++j)
        if (!src.hom[i][j].empty() && dst.hom[obj[i]][obj[j]].empty())
          feasible = false;
    if (feasible) try_object_map();
    std::size_t i = n0;
    bool done = true;
    while (i > 0) {
      --i;
      if (++obj[i] < n1) {
        done = false;
        break;
      }
      obj[i] = 0;
    }
    if (done) break;
  }
  return out;
}

// Number of natural transformations nu => mu, counted up to `limit`.
std::size_t count_transformations(const CategoryData& src,
                                  const CategoryData& dst, const Functor& nu,
                                  const Functor& mu, std::size_t limit) {
  const std::size_t n0 = src.cl->members.size();
  std::vector<const std::vector<ExtMorphism>*> comp_cands(n0);
  for (std::size_t s = 0; s < n0; ++s) {
    comp_cands[s] = &dst.hom[nu.obj[s]][mu.obj[s]];
    if (comp_cands[s]->empty()) return 0;
  }
  std::size_t count = 0;
  std::vector<std::size_t> pick(n0, 0);
  for (;;) {
    bool natural = true;
    for (std::size_t t = 0; t < src.entries.size() && natural; ++t) {
      const auto& entry = src.entries[t];
      const ExtMorphism& num =
          dst.hom[nu.obj[entry.i]][nu.obj[entry.j]][nu.morph[t]];
      const ExtMorphism& mum =
          dst.hom[mu.obj[entry.i]][mu.obj[entry.j]][mu.morph[t]];
      ExtMorphism left = compose_morphisms(num, (*comp_cands[entry.j])[pick[entry.j]]);
      ExtMorphism right = compose_morphisms((*comp_cands[entry.i])[pick[entry.i]], mum);
      if (!(left == right)) natural = false;
    }
    if (natural && ++count >= limit) return count;
    std::size_t s = n0;
    bool done = true;
    while (s > 0) {
      --s;
      if (++pick[s] < comp_cands[s]->size()) {
        done = false;
        break;
      }
      pick[s] = 0;
    }
    if (done) return count;
  }
}

MaximalityVerdict weak_check(const ExtClass& e0, const ExtClass& e1,
                             bool unique, std::uint64_t budget) {
  MaximalityVerdict v;
  if (e0.members.empty()) {
    v.holds = true;
    v.witness = std::vector<std::size_t>{};
    v.trace.push_back("empty source class: holds vacuously");
    return v;
  }
  CategoryData d0 = build_category(e0, budget);
  CategoryData d1 = build_category(e1, budget);
  auto functors = enumerate_functors(d0, d1, budget);
  if (functors.empty()) {
    v.trace.push_back("no functors exist into the target class");
    return v;
  }
  for (const auto& mu : functors) {
    bool ok = true;
    std::string blocker;
    for (const auto& nu : functors) {
      std::size_t c = count_transformations(d0, d1, nu, mu, 2);
      bool good = unique ? (c == 1) : (c >= 1);
      if (!good) {
        ok = false;
        blocker = "blocked: transformation count " + std::to_string(c) +
                  " from competing functor";
        break;
      }
    }
    if (ok) {
      v.holds = true;
      v.witness = mu.obj;
      return v;
    }
    if (v.trace.empty())
      v.trace.push_back("candidate functor rejected; " + blocker);
  }
  v.trace.push_back("no functor absorbs every competing functor");
  return v;
}

}  // namespace

MaximalityVerdict check_maximality(const ExtClass& e0, const ExtClass& e1,
                                   MaxMode mode, std::uint64_t budget) {
  require_same_context(e0, e1, "check_maximality");
  if (mode == MaxMode::WeakMaximal || mode == MaxMode::WeakUniversal)
    return weak_check(e0, e1, mode == MaxMode::WeakUniversal, budget);

  MaximalityVerdict v;
  if (e0.members.empty()) {
    v.holds = true;
    v.witness = std::vector<std::size_t>{};
    v.trace.push_back("empty source class: holds vacuously");
    return v;
  }
  if (e1.members.empty()) {
    v.trace.push_back("target class empty: no object maps exist");
    return v;
  }

  RelationMatrix good_rel = (mode == MaxMode::Maximal)
                                ? exists_matrix(e1, budget)
                                : unique_matrix(e1, budget);
  // mu must absorb nu(s) for every competing map and member, and nu(s)
  // ranges over all of e1; so a target u works iff every member reaches
  // it (uniquely, for the universal mode).
  std::optional<std::size_t> good;
  for (std::size_t u = 0; u < e1.members.size() && !good; ++u) {
    bool ok = true;
    for (std::size_t t = 0; t < e1.members.size() && ok; ++t)
      if (!good_rel[t][u]) ok = false;
    if (ok) good = u;
  }
  if (good) {
    v.holds = true;
    v.witness = std::vector<std::size_t>(e0.members.size(), *good);
    return v;
  }
  for (std::size_t u = 0; u < e1.members.size(); ++u) {
    for (std::size_t t = 0; t < e1.members.size(); ++t) {
      if (!good_rel[t][u]) {
        v.trace.push_back("mu(s)='" + e1.label(u) + "' blocked by nu(s)='" +
                          e1.label(t) + "'");
        break;
      }
    }
  }
  return v;
}

DensityVerdict density_check(const ExtClass& cl, const Extension& candidate,
                             MaxMode mode, std::uint64_t budget) {
  DensityVerdict v;
  const std::size_t n = cl.members.size();
  if (n > 20)
    fail(ErrorKind::SearchBudgetExceeded,
         "density check needs 2^|class| subsets; class too large");

  // Extended class with the candidate appended.
  std::vector<Extension> all = cl.members;
  std::vector<std::string> labels = cl.labels;
  std::size_t cand_index = n;
  for (std::size_t i = 0; i < n; ++i)
    if (cl.members[i] == candidate) cand_index = i;
  if (cand_index == n) {
    all.push_back(candidate);
    labels.push_back("candidate");
  }
  ExtClass ext = make_class(cl.ctx, all, labels, cl.cfg);

  RelationMatrix rel;
  if (mode == MaxMode::Maximal)
    rel = exists_matrix(ext, budget);
  else if (mode == MaxMode::Universal)
    rel = unique_matrix(ext, budget);

  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) subset.push_back(i);
    bool in_subset_already = false;
    for (auto i : subset)
      if (i == cand_index) in_subset_already = true;
    std::vector<std::size_t> scope = subset;
    if (!in_subset_already) scope.push_back(cand_index);

    bool ok;
    if (mode == MaxMode::Maximal || mode == MaxMode::Universal) {
      ok = false;
      for (auto u : scope) {
        bool all_reach = true;
        for (auto t : scope)
          if (!rel[t][u]) {
            all_reach = false;
            break;
          }
        if (all_reach) {
          ok = true;
          break;
        }
      }
    } else {
      std::vector<Extension> sub_members;
      std::vector<std::string> sub_labels;
      for (auto i : scope) {
        sub_members.push_back(ext.members[i]);
        sub_labels.push_back(ext.labels[i]);
      }
      ExtClass sub = make_class(ext.ctx, sub_members, sub_labels, ext.cfg);
      ok = check_maximality(sub, sub, mode, budget).holds;
    }
    if (!ok) {
      v.witness_subset = subset;
      return v;
    }
  }
  v.holds = true;
  return v;
}

ExtClass class_E_of_I(const ExtClass& cl, std::size_t i_card,
                      bool closure_reading) {
  ExtClass out;
  out.ctx = cl.ctx;
  out.cfg = cl.cfg;
  if (i_card == 0) {
    if (closure_reading) {
      for (std::size_t i = 0; i < cl.members.size(); ++i)
        if (classify_trivial(*cl.ctx, cl.members[i]) == TrivialKind::NullType) {
          out.members.push_back(cl.members[i]);
          out.labels.push_back(cl.labels[i]);
        }
    }
    return out;
  }
  out.members = cl.members;
  out.labels = cl.labels;
  return out;
}

std::optional<CategoricalCoproduct> categorical_coproduct(
    const ExtClass& cl, const std::vector<std::size_t>& family,
    std::uint64_t budget) {
  const std::size_t n = cl.members.size();
  // hom-sets reused across candidates and probes
  std::vector<std::vector<std::vector<ExtMorphism>>> hom(n);
  for (std::size_t i = 0; i < n; ++i) {
    hom[i].resize(n);
    for (std::size_t j = 0; j < n; ++j)
      hom[i][j] = hom_set(*cl.ctx, cl.members[i], cl.members[j], cl.cfg, budget);
  }

  std::uint64_t work = 0;
  for (std::size_t c = 0; c < n; ++c) {
    bool candidate_ok = true;
    for (auto k : family)
      if (hom[k][c].empty()) candidate_ok = false;
    if (!candidate_ok) continue;

    std::vector<std::size_t> pick(family.size(), 0);
    for (;;) {
      // proposed injections: hom[family[k]][c][pick[k]]
      bool universal = true;
      for (std::size_t z = 0; z < n && universal; ++z) {
        std::vector<std::size_t> cpick(family.size(), 0);
        bool any_empty = false;
        for (auto k : family)
          if (hom[k][z].empty()) any_empty = true;
        if (any_empty) continue;  // no cocones into z from this family
        for (;;) {
          if (++work > budget)
            fail(ErrorKind::SearchBudgetExceeded,
                 "categorical coproduct search budget");
          std::size_t mediators = 0;
          for (const auto& m : hom[c][z]) {
            bool fits = true;
            for (std::size_t k = 0; k < family.size() && fits; ++k) {
              ExtMorphism through =
                  compose_morphisms(hom[family[k]][c][pick[k]], m);
              if (!(through == hom[family[k]][z][cpick[k]])) fits = false;
            }
            if (fits && ++mediators > 1) break;
          }
          if (mediators != 1) {
            universal = false;
            break;
          }
          std::size_t k = family.size();
          bool done = true;
          while (k > 0) {
            --k;
            if (++cpick[k] < hom[family[k]][z].size()) {
              done = false;
              break;
            }
            cpick[k] = 0;
          }
          if (done) break;
        }
      }
      if (universal) {
        CategoricalCoproduct out;
        out.candidate = c;
        for (std::size_t k = 0; k < family.size(); ++k)
          out.injections.push_back(hom[family[k]][c][pick[k]]);
        return out;
      }
      std::size_t k = family.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++pick[k] < hom[family[k]][c].size()) {
          done = false;
          break;
        }
        pick[k] = 0;
      }
      if (done) break;
    }
  }
  return std::nullopt;
}

bool coproduct_is_universal(const ExtensionContext& ctx,
                            const std::vector<Extension>& family,
                            const Extension& candidate,
                            const std::vector<Extension>& probes,
                            const MorphismConfig& cfg, std::uint64_t budget) {
  auto injections = coproduct_injections(ctx, family, candidate);
  for (std::size_t k = 0; k < injections.size(); ++k)
    if (!morphism_satisfies(ctx, family[k], candidate, injections[k], cfg))
      return false;

  for (const auto& z : probes) {
    std::vector<std::vector<ExtMorphism>> legs;
    for (const auto& e : family)
      legs.push_back(hom_set(ctx, e, z, cfg, budget));
    auto mediators_pool = hom_set(ctx, candidate, z, cfg, budget);
    bool any_empty = std::any_of(legs.begin(), legs.end(),
                                 [](const auto& l) { return l.empty(); });
    if (any_empty) continue;  // no cocones into this probe

    std::vector<std::size_t> pick(family.size(), 0);
    for (;;) {
      std::size_t mediators = 0;
      for (const auto& m : mediators_pool) {
        bool fits = true;
        for (std::size_t k = 0; k < family.size() && fits; ++k)
          if (!(compose_morphisms(injections[k], m) == legs[k][pick[k]]))
            fits = false;
        if (fits && ++mediators > 1) break;
      }
      if (mediators != 1) return false;
      std::size_t k = family.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++pick[k] < legs[k].size()) {
          done = false;
          break;
        }
        pick[k] = 0;
      }
      if (done) break;
    }
  }
  return true;
}

CoherenceVerdict coherence_check(const ExtClass& cl,
                                 const std::vector<FinSet>& index_domains,
                                 CoherenceMode mode, std::uint64_t budget) {
  CoherenceVerdict v;
  v.initial_members = initial_objects(cl, budget);

  if (index_domains.empty()) {
    v.trace.push_back(
        "empty index family: only initial structure reported, coproduct "
        "obligations are vacuous");
    v.holds = true;
    return v;
  }

  // Members grouped by extended domain, per index entry.
  std::vector<std::vector<std::size_t>> by_domain(index_domains.size());
  for (std::size_t d = 0; d < index_domains.size(); ++d)
    for (std::size_t i = 0; i < cl.members.size(); ++i)
      if (cl.members[i].domain == index_domains[d]) by_domain[d].push_back(i);

  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << index_domains.size());
       ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t d = 0; d < index_domains.size(); ++d)
      if (mask & (std::uint64_t(1) << d)) chosen.push_back(d);
    bool missing = false;
    for (auto d : chosen)
      if (by_domain[d].empty()) missing = true;
    if (missing) {
      v.trace.push_back("subfamily skipped: no members over some domain of J");
      continue;
    }
    std::vector<std::size_t> pick(chosen.size(), 0);
    for (;;) {
      std::vector<std::size_t> family;
      for (std::size_t k = 0; k < chosen.size(); ++k)
        family.push_back(by_domain[chosen[k]][pick[k]]);
      auto cop = categorical_coproduct(cl, family, budget);
      if (!cop) {
        std::string who;
        for (auto i : family) who += (who.empty() ? "" : ",") + cl.label(i);
        v.trace.push_back("no coproduct in class for subfamily {" + who + "}");
        return v;
      }
      std::size_t k = chosen.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++pick[k] < by_domain[chosen[k]].size()) {
          done = false;
          break;
        }
        pick[k] = 0;
      }
      if (done) break;
    }
  }

  // Totality of the induced order on E(I) (the literal reading keeps the
  // whole class for a nonempty index family).
  ExtClass scope = class_E_of_I(cl, index_domains.size());
  IsoPoset poset = iso_poset(scope, budget);
  for (std::size_t a = 0; a < poset.blocks.size(); ++a)
    for (std::size_t b = a + 1; b < poset.blocks.size(); ++b)
      if (!poset.leq[a][b] && !poset.leq[b][a]) {
        v.trace.push_back("order not total: '" + scope.label(poset.reps[a]) +
                          "' and '" + scope.label(poset.reps[b]) +
                          "' are incomparable");
        return v;
      }

  if (mode == CoherenceMode::Universality) {
    if (!is_gaunt(scope, budget)) {
      v.trace.push_back("universality coherence requires a gaunt class");
      return v;
    }
    RelationMatrix uniq = unique_matrix(scope, budget);
    for (std::size_t i = 0; i < scope.members.size(); ++i)
      for (std::size_t j = i + 1; j < scope.members.size(); ++j)
        if (!uniq[i][j] && !uniq[j][i]) {
          v.trace.push_back("unique-morphism order not total: '" +
                            scope.label(i) + "' and '" + scope.label(j) + "'");
          return v;
        }
  }

  v.holds = true;
  return v;
}

}  // namespace finext
