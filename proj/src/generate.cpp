#include <string>
#include <vector>

#include "finext/errors.hpp"
#include "finext/instance.hpp"

namespace finext {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Section section(const std::string& type, const std::string& name) {
  Section s;
  s.type = type;
  s.name = name;
  return s;
}

void bind(Section& s, const std::string& key, std::vector<std::string> tokens) {
  Binding b;
  b.key = key;
  b.tokens = std::move(tokens);
  s.bindings.push_back(std::move(b));
}

std::vector<std::string> pair_tokens(
    const std::vector<std::pair<std::string, std::string>>& kv,
    const char* sep) {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv) out.push_back(k + sep + v);
  return out;
}

std::vector<std::string> value_tokens(
    const std::vector<std::pair<std::string, Rat>>& kv) {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv) out.push_back(k + "=" + v.str());
  return out;
}

void add_trivial_base(InstanceFile& f) {
  Section g = section("group", "gbase");
  bind(g, "elements", {"e"});
  bind(g, "identity", {"e"});
  bind(g, "table", {"e.e=e"});
  f.sections.push_back(std::move(g));
  Section a = section("action", "abase");
  bind(a, "group", {"gbase"});
  bind(a, "carrier", {"conn"});
  f.sections.push_back(std::move(a));
}

void add_trivial_ghat(InstanceFile& f) {
  Section g = section("group", "ghat");
  bind(g, "elements", {"e"});
  bind(g, "identity", {"e"});
  bind(g, "table", {"e.e=e"});
  f.sections.push_back(std::move(g));
  Section a = section("action", "ahat");
  bind(a, "group", {"ghat"});
  bind(a, "carrier", {"omega"});
  f.sections.push_back(std::move(a));
  Section xi = section("hom", "xi");
  bind(xi, "source", {"gbase"});
  bind(xi, "target", {"ghat"});
  bind(xi, "map", {"e->e"});
  f.sections.push_back(std::move(xi));
}

// Cyclic group g0..g{m-1} acting by rotation on the listed orbits.
void add_cyclic_ghat(InstanceFile& f, std::size_t m,
                     const std::vector<std::vector<std::string>>& orbits) {
  Section g = section("group", "ghat");
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < m; ++i) elems.push_back("g" + std::to_string(i));
  bind(g, "elements", elems);
  bind(g, "identity", {"g0"});
  std::vector<std::string> table;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      table.push_back("g" + std::to_string(i) + ".g" + std::to_string(j) +
                      "=g" + std::to_string((i + j) % m));
  bind(g, "table", table);
  f.sections.push_back(std::move(g));

  Section a = section("action", "ahat");
  bind(a, "group", {"ghat"});
  bind(a, "carrier", {"omega"});
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<std::string> moves{"g" + std::to_string(i) + ":"};
    for (const auto& orbit : orbits)
      for (std::size_t j = 0; j < orbit.size(); ++j)
        moves.push_back(orbit[j] + "->" + orbit[(j + i) % orbit.size()]);
    Binding b;
    b.key = "move";
    b.tokens = std::move(moves);
    a.bindings.push_back(std::move(b));
  }
  f.sections.push_back(std::move(a));

  Section xi = section("hom", "xi");
  bind(xi, "source", {"gbase"});
  bind(xi, "target", {"ghat"});
  bind(xi, "map", {"e->g0"});
  f.sections.push_back(std::move(xi));
}

void add_context(InstanceFile& f, const std::vector<std::string>& conn_hat) {
  Section c = section("context", "ctx");
  bind(c, "omega", {"omega"});
  bind(c, "gau_hat", {"ahat"});
  bind(c, "conn_hat", conn_hat);
  bind(c, "conn", {"conn"});
  bind(c, "gau", {"abase"});
  bind(c, "xi", {"xi"});
  bind(c, "base_s", {"base_s"});
  f.sections.push_back(std::move(c));
}

void add_config(InstanceFile& f, std::uint64_t seed) {
  Section c = section("config", "main");
  bind(c, "cfg", {"strict"});
  bind(c, "budget", {"10000000"});
  bind(c, "seed", {std::to_string(seed)});
  f.sections.push_back(std::move(c));
}

void add_meta(InstanceFile& f, const std::string& profile, std::size_t index) {
  Section meta = section("meta", "info");
  bind(meta, "profile", {profile});
  bind(meta, "index", {std::to_string(index)});
  f.sections.push_back(std::move(meta));
}

void add_extension(InstanceFile& f, const std::string& name,
                   const std::vector<std::string>& domain,
                   const std::vector<std::pair<std::string, Rat>>& s_hat,
                   const std::vector<std::string>& corr,
                   const std::vector<std::pair<std::string, Rat>>& corr_fn,
                   const std::vector<std::pair<std::string, std::string>>& delta) {
  Section e = section("extension", name);
  bind(e, "context", {"ctx"});
  bind(e, "domain", domain);
  bind(e, "s_hat", value_tokens(s_hat));
  bind(e, "correction", corr);
  bind(e, "correction_fn", value_tokens(corr_fn));
  bind(e, "delta", pair_tokens(delta, "->"));
  f.sections.push_back(std::move(e));
}

void add_member_class(InstanceFile& f, const std::string& name,
                      const std::vector<std::string>& members) {
  Section c = section("class", name);
  bind(c, "context", {"ctx"});
  bind(c, "cfg", {"strict"});
  bind(c, "members", members);
  f.sections.push_back(std::move(c));
}

void add_pb_class(InstanceFile& f) {
  Section c = section("class", "pb");
  bind(c, "context", {"ctx"});
  bind(c, "cfg", {"strict"});
  bind(c, "build", {"Pb"});
  bind(c, "functional", {"s_omega"});
  f.sections.push_back(std::move(c));
}

void add_domain(InstanceFile& f, const std::string& name,
                const std::vector<std::string>& elems) {
  Section d = section("domain", name);
  bind(d, "context", {"ctx"});
  bind(d, "elements", elems);
  f.sections.push_back(std::move(d));
}

void add_domainset(InstanceFile& f, const std::string& name,
                   const std::vector<std::string>& domains) {
  Section d = section("domainset", name);
  bind(d, "context", {"ctx"});
  bind(d, "domains", domains);
  f.sections.push_back(std::move(d));
}

InstanceFile chain_instance(std::uint64_t rng_seed, std::uint64_t seed,
                            std::size_t index) {
  std::uint64_t st = rng_seed;
  std::size_t m = 2 + (index % 2);
  bool has_kk = (index / 2) % 2 == 0;
  Rat u(static_cast<std::int64_t>(1 + splitmix(st) % 3));
  Rat w = u + Rat(1);
  Rat v = u + Rat(2);

  InstanceFile f;
  add_meta(f, "chain", index);

  std::vector<std::string> core_orbit, tower_orbit;
  for (std::size_t i = 1; i <= m; ++i) {
    core_orbit.push_back("k" + std::to_string(i));
    tower_orbit.push_back("p" + std::to_string(i));
  }
  std::vector<std::string> omega{"w0"};
  for (const auto& k : core_orbit) omega.push_back(k);
  if (has_kk) omega.push_back("kk");
  for (const auto& p : tower_orbit) omega.push_back(p);
  omega.push_back("r");

  Section so = section("set", "omega");
  bind(so, "elements", omega);
  bind(so, "basepoint", {"w0"});
  f.sections.push_back(std::move(so));

  std::vector<std::string> conn{"d0", "d1"};
  std::vector<std::pair<std::string, Rat>> base{{"d0", Rat(0)}, {"d1", u}};
  if (has_kk) {
    conn.push_back("d2");
    base.push_back({"d2", w});
  }
  Section sc = section("set", "conn");
  bind(sc, "elements", conn);
  bind(sc, "basepoint", {"d0"});
  f.sections.push_back(std::move(sc));

  add_trivial_base(f);
  add_cyclic_ghat(f, m, {core_orbit, tower_orbit});

  Section fb = section("fn", "base_s");
  bind(fb, "domain", {"conn"});
  bind(fb, "values", value_tokens(base));
  f.sections.push_back(std::move(fb));

  std::vector<std::pair<std::string, Rat>> sval{{"w0", Rat(0)}};
  for (const auto& k : core_orbit) sval.push_back({k, u});
  if (has_kk) sval.push_back({"kk", w});
  for (const auto& p : tower_orbit) sval.push_back({p, v});
  sval.push_back({"r", v});
  Section fs = section("fn", "s_omega");
  bind(fs, "domain", {"omega"});
  bind(fs, "values", value_tokens(sval));
  f.sections.push_back(std::move(fs));

  std::vector<std::string> conn_hat = core_orbit;
  if (has_kk) conn_hat.push_back("kk");
  add_context(f, conn_hat);

  std::vector<std::string> d0_elems{"w0"};
  for (const auto& k : core_orbit) d0_elems.push_back(k);
  if (has_kk) d0_elems.push_back("kk");
  std::vector<std::string> d1_elems = d0_elems;
  for (const auto& p : tower_orbit) d1_elems.push_back(p);
  std::vector<std::string> d2_elems = d0_elems;
  d2_elems.push_back("r");

  auto restrict_vals = [&](const std::vector<std::string>& dom) {
    std::vector<std::pair<std::string, Rat>> out;
    for (const auto& x : dom)
      for (const auto& [k, val] : sval)
        if (k == x) out.push_back({k, val});
    return out;
  };

  add_extension(f, "ea", d0_elems, restrict_vals(d0_elems), {"w0"},
                {{"w0", Rat(0)}}, {{"w0", "d0"}});
  add_extension(f, "eb", d1_elems, restrict_vals(d1_elems), {"w0"},
                {{"w0", Rat(0)}}, {{"w0", "d0"}});
  add_extension(f, "einc", d0_elems, restrict_vals(d0_elems), {"w0", "k1"},
                {{"w0", Rat(0)}, {"k1", u}}, {{"w0", "d0"}, {"k1", "d0"}});

  add_member_class(f, "e0single", {"ea"});
  add_member_class(f, "main", {"ea", "eb", "einc"});
  add_pb_class(f);

  add_domain(f, "dom0", d0_elems);
  add_domain(f, "dom1", d1_elems);
  add_domain(f, "dom2", d2_elems);
  add_domainset(f, "I1", {"dom1"});

  Section v0 = section("verify", "main");
  bind(v0, "theorem_A", {"e0single", "pb"});
  bind(v0, "theorem_B", {"pb", "I1", "e0single"});
  f.sections.push_back(std::move(v0));

  add_config(f, seed);
  return f;
}

InstanceFile antichain_instance(std::uint64_t rng_seed, std::uint64_t seed,
                                std::size_t index) {
  std::uint64_t st = rng_seed;
  Rat vp(static_cast<std::int64_t>(2 + splitmix(st) % 2));
  Rat vq = vp + Rat(1);

  InstanceFile f;
  add_meta(f, "antichain", index);

  Section so = section("set", "omega");
  bind(so, "elements", {"w0", "c1", "p", "q"});
  bind(so, "basepoint", {"w0"});
  f.sections.push_back(std::move(so));
  Section sc = section("set", "conn");
  bind(sc, "elements", {"d0", "d1"});
  bind(sc, "basepoint", {"d0"});
  f.sections.push_back(std::move(sc));

  add_trivial_base(f);
  add_trivial_ghat(f);

  Section fb = section("fn", "base_s");
  bind(fb, "domain", {"conn"});
  bind(fb, "values", value_tokens({{"d0", Rat(0)}, {"d1", Rat(1)}}));
  f.sections.push_back(std::move(fb));

  Section fs = section("fn", "s_omega");
  bind(fs, "domain", {"omega"});
  bind(fs, "values",
       value_tokens({{"w0", Rat(0)}, {"c1", Rat(1)}, {"p", vp}, {"q", vq}}));
  f.sections.push_back(std::move(fs));

  add_context(f, {"c1"});

  add_extension(f, "ea", {"w0", "c1"}, {{"w0", Rat(0)}, {"c1", Rat(1)}},
                {"w0", "c1"}, {{"w0", Rat(0)}, {"c1", Rat(0)}},
                {{"w0", "d0"}, {"c1", "d1"}});
  add_extension(f, "ep", {"w0", "c1", "p"},
                {{"w0", Rat(0)}, {"c1", Rat(1)}, {"p", vp}}, {"w0", "c1"},
                {{"w0", Rat(0)}, {"c1", Rat(0)}},
                {{"w0", "d0"}, {"c1", "d1"}});
  add_extension(f, "eq", {"w0", "c1", "q"},
                {{"w0", Rat(0)}, {"c1", Rat(1)}, {"q", vq}}, {"w0", "c1"},
                {{"w0", Rat(0)}, {"c1", Rat(0)}},
                {{"w0", "d0"}, {"c1", "d1"}});
  // Components with one-point correction subspaces: their disjoint union
  // is defined, unlike the locus-sharing pair above.
  add_extension(f, "cop1", {"w0", "c1", "p"},
                {{"w0", Rat(0)}, {"c1", Rat(1)}, {"p", vp}}, {"w0"},
                {{"w0", Rat(0)}}, {{"w0", "d0"}});
  add_extension(f, "cop2", {"w0", "c1", "q"},
                {{"w0", Rat(0)}, {"c1", Rat(1)}, {"q", vq}}, {"w0"},
                {{"w0", Rat(0)}}, {{"w0", "d0"}});
  // Planted disagreement at a shared core point.
  add_extension(f, "cd2", {"w0", "c1", "q"},
                {{"w0", Rat(0)}, {"c1", Rat(5)}, {"q", vq}}, {"w0"},
                {{"w0", Rat(0)}}, {{"w0", "d0"}});

  add_member_class(f, "e0single", {"ea"});
  add_member_class(f, "anti", {"ep", "eq"});
  add_member_class(f, "main", {"ea", "ep", "eq"});
  add_pb_class(f);

  add_domain(f, "dom0", {"w0", "c1"});
  add_domain(f, "dom_p", {"w0", "c1", "p"});
  add_domain(f, "dom_q", {"w0", "c1", "q"});
  add_domainset(f, "I1", {"dom_p", "dom_q"});

  Section v0 = section("verify", "main");
  bind(v0, "theorem_A", {"e0single", "anti"});
  bind(v0, "theorem_C", {"ctx", "I1", "s_omega", "e0single"});
  f.sections.push_back(std::move(v0));

  add_config(f, seed);
  return f;
}

InstanceFile disjoint_core_instance(std::uint64_t rng_seed, std::uint64_t seed,
                                    std::size_t index) {
  std::uint64_t st = rng_seed;
  bool matched = index % 2 == 0;
  Rat v(static_cast<std::int64_t>(3 + splitmix(st) % 3));

  InstanceFile f;
  add_meta(f, "disjoint-core", index);

  Section so = section("set", "omega");
  bind(so, "elements", {"w0", "c1", "c2", "p", "q"});
  bind(so, "basepoint", {"w0"});
  f.sections.push_back(std::move(so));
  Section sc = section("set", "conn");
  bind(sc, "elements", {"d0", "d1", "d2"});
  bind(sc, "basepoint", {"d0"});
  f.sections.push_back(std::move(sc));

  add_trivial_base(f);
  add_trivial_ghat(f);

  // Matched variant: the base range meets the core values, so the
  // pullback locus is the whole of conn_hat. Off-range variant: empty
  // locus, one-point correction subspaces, disjoint unions defined.
  Rat b1 = matched ? Rat(1) : Rat(7);
  Rat b2 = matched ? Rat(2) : Rat(8);
  Section fb = section("fn", "base_s");
  bind(fb, "domain", {"conn"});
  bind(fb, "values",
       value_tokens({{"d0", Rat(0)}, {"d1", b1}, {"d2", b2}}));
  f.sections.push_back(std::move(fb));

  Section fs = section("fn", "s_omega");
  bind(fs, "domain", {"omega"});
  bind(fs, "values",
       value_tokens(
           {{"w0", Rat(0)}, {"c1", Rat(1)}, {"c2", Rat(2)}, {"p", v}, {"q", v}}));
  f.sections.push_back(std::move(fs));

  add_context(f, {"c1", "c2"});

  std::vector<std::string> corr =
      matched ? std::vector<std::string>{"w0", "c1", "c2"}
              : std::vector<std::string>{"w0"};
  std::vector<std::pair<std::string, Rat>> corr_fn;
  std::vector<std::pair<std::string, std::string>> delta;
  for (const auto& c : corr) corr_fn.push_back({c, Rat(0)});
  delta.push_back({"w0", "d0"});
  if (matched) {
    delta.push_back({"c1", "d1"});
    delta.push_back({"c2", "d2"});
  }

  add_extension(f, "ech", {"w0", "c1", "c2"},
                {{"w0", Rat(0)}, {"c1", Rat(1)}, {"c2", Rat(2)}}, corr, corr_fn,
                delta);
  add_extension(f, "ep", {"w0", "c1", "c2", "p"},
                {{"w0", Rat(0)}, {"c1", Rat(1)}, {"c2", Rat(2)}, {"p", v}},
                corr, corr_fn, delta);
  add_extension(f, "eq", {"w0", "c1", "c2", "q"},
                {{"w0", Rat(0)}, {"c1", Rat(1)}, {"c2", Rat(2)}, {"q", v}},
                corr, corr_fn, delta);

  add_member_class(f, "e0cls", {"ech"});
  add_member_class(f, "main", {"ech", "ep", "eq"});
  add_pb_class(f);

  add_domain(f, "dom0", {"w0", "c1", "c2"});
  add_domain(f, "dom_p", {"w0", "c1", "c2", "p"});
  add_domain(f, "dom_q", {"w0", "c1", "c2", "q"});
  add_domainset(f, "I1", {"dom_p", "dom_q"});

  Section v0 = section("verify", "main");
  bind(v0, "theorem_B", {"pb", "I1", "e0cls"});
  bind(v0, "theorem_C", {"ctx", "I1", "s_omega", "e0cls"});
  f.sections.push_back(std::move(v0));

  add_config(f, seed);
  return f;
}

InstanceFile conflicting_instance(std::uint64_t rng_seed, std::uint64_t seed,
                                  std::size_t index) {
  std::uint64_t st = rng_seed;
  bool z2 = index % 2 == 1;
  Rat v(static_cast<std::int64_t>(3 + splitmix(st) % 4));

  InstanceFile f;
  add_meta(f, "conflicting-orbits", index);

  if (!z2) {
    Section so = section("set", "omega");
    bind(so, "elements", {"w0", "a", "c1"});
    bind(so, "basepoint", {"w0"});
    f.sections.push_back(std::move(so));
  } else {
    Section so = section("set", "omega");
    bind(so, "elements", {"w0", "a1", "a2", "k1", "k2"});
    bind(so, "basepoint", {"w0"});
    f.sections.push_back(std::move(so));
  }
  Section sc = section("set", "conn");
  bind(sc, "elements", {"d0", "d1"});
  bind(sc, "basepoint", {"d0"});
  f.sections.push_back(std::move(sc));

  add_trivial_base(f);
  if (!z2) {
    add_trivial_ghat(f);
  } else {
    add_cyclic_ghat(f, 2, {{"a1", "a2"}, {"k1", "k2"}});
  }

  Section fb = section("fn", "base_s");
  bind(fb, "domain", {"conn"});
  bind(fb, "values", value_tokens({{"d0", Rat(0)}, {"d1", v}}));
  f.sections.push_back(std::move(fb));

  std::vector<std::string> non_base = z2
      ? std::vector<std::string>{"a1", "a2", "k1", "k2"}
      : std::vector<std::string>{"a", "c1"};
  std::vector<std::pair<std::string, Rat>> sval{{"w0", Rat(0)}};
  for (const auto& x : non_base) sval.push_back({x, v});
  Section fs = section("fn", "s_omega");
  bind(fs, "domain", {"omega"});
  bind(fs, "values", value_tokens(sval));
  f.sections.push_back(std::move(fs));

  add_context(f, z2 ? std::vector<std::string>{"k1", "k2"}
                    : std::vector<std::string>{"c1"});

  std::vector<std::string> full = z2
      ? std::vector<std::string>{"w0", "a1", "a2", "k1", "k2"}
      : std::vector<std::string>{"w0", "a", "c1"};
  std::vector<std::string> core_dom = z2
      ? std::vector<std::string>{"w0", "k1", "k2"}
      : std::vector<std::string>{"w0", "c1"};
  std::vector<std::pair<std::string, Rat>> sfull{{"w0", Rat(0)}};
  for (const auto& x : non_base) sfull.push_back({x, v});
  std::vector<std::pair<std::string, Rat>> score{{"w0", Rat(0)}};
  for (const auto& x : core_dom)
    if (x != "w0") score.push_back({x, v});

  add_extension(f, "econf", full, sfull, {"w0"}, {{"w0", Rat(0)}},
                {{"w0", "d0"}});
  add_extension(f, "ea", core_dom, score, {"w0"}, {{"w0", Rat(0)}},
                {{"w0", "d0"}});

  add_member_class(f, "main", {"econf", "ea"});
  add_pb_class(f);
  add_domain(f, "dom0", core_dom);

  add_config(f, seed);
  return f;
}

}  // namespace

std::vector<InstanceFile> generate_instances(std::uint64_t seed,
                                             const std::string& profile,
                                             std::size_t count) {
  std::vector<InstanceFile> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t rng_seed =
        seed * 1000003ull + i * 7919ull + fnv1a64(profile);
    InstanceFile f;
    if (profile == "chain")
      f = chain_instance(rng_seed, seed, i);
    else if (profile == "antichain")
      f = antichain_instance(rng_seed, seed, i);
    else if (profile == "disjoint-core")
      f = disjoint_core_instance(rng_seed, seed, i);
    else if (profile == "conflicting-orbits")
      f = conflicting_instance(rng_seed, seed, i);
    else
      fail(ErrorKind::UsageError, "unknown profile '" + profile + "'");
    // Emitted instances must resolve; a throw here is a generator bug.
    resolve_instance(f);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace finext
