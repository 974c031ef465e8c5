#include "finext/instance.hpp"

#include <fstream>
#include <sstream>

#include "finext/errors.hpp"
#include "finext/report.hpp"

namespace finext {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      return false;
  return true;
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

const Binding* Section::find(const std::string& key) const {
  for (const auto& b : bindings)
    if (b.key == key) return &b;
  return nullptr;
}

std::vector<const Binding*> Section::find_all(const std::string& key) const {
  std::vector<const Binding*> out;
  for (const auto& b : bindings)
    if (b.key == key) out.push_back(&b);
  return out;
}

InstanceFile parse_instance_text(const std::string& text) {
  InstanceFile f;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  Section* current = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    auto tokens_check = tokenize(line);
    if (tokens_check.empty()) continue;

    std::size_t first = line.find_first_not_of(" \t");
    std::size_t last = line.find_last_not_of(" \t");
    std::string trimmed = line.substr(first, last - first + 1);

    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') parse_fail(lineno, "unterminated section header");
      auto inner = tokenize(trimmed.substr(1, trimmed.size() - 2));
      if (inner.size() != 2)
        parse_fail(lineno, "section header needs a type and a name");
      if (!valid_identifier(inner[0]) || !valid_identifier(inner[1]))
        parse_fail(lineno, "bad section identifier");
      Section s;
      s.type = inner[0];
      s.name = inner[1];
      s.line = lineno;
      f.sections.push_back(std::move(s));
      current = &f.sections.back();
      continue;
    }

    auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      parse_fail(lineno, "expected 'key = value' binding");
    if (!current) parse_fail(lineno, "binding outside any section");
    auto keys = tokenize(trimmed.substr(0, eq));
    if (keys.size() != 1) parse_fail(lineno, "binding needs exactly one key");
    Binding b;
    b.key = keys[0];
    b.tokens = tokenize(trimmed.substr(eq + 1));
    b.line = lineno;
    current->bindings.push_back(std::move(b));
  }
  return f;
}

InstanceFile parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorKind::ParseError, "cannot open instance file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

std::string serialize_instance(const InstanceFile& f) {
  std::string out;
  for (const auto& s : f.sections) {
    out += "[" + s.type + " " + s.name + "]\n";
    for (const auto& b : s.bindings) {
      out += b.key + " =";
      for (const auto& t : b.tokens) out += " " + t;
      out += "\n";
    }
    out += "\n";
  }
  return out;
}

namespace {

[[noreturn]] void resolve_fail(const std::string& what) {
  fail(ErrorKind::ResolutionError, what);
}

const Binding& need(const Section& s, const std::string& key) {
  const Binding* b = s.find(key);
  if (!b)
    resolve_fail("section [" + s.type + " " + s.name + "] misses '" + key + "'");
  return *b;
}

std::string need_one(const Section& s, const std::string& key) {
  const Binding& b = need(s, key);
  if (b.tokens.size() != 1)
    resolve_fail("binding '" + key + "' in [" + s.type + " " + s.name +
                 "] needs exactly one value");
  return b.tokens[0];
}

// "x->y" pairs
std::vector<std::pair<std::string, std::string>> arrow_pairs(
    const Binding& b, const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& t : b.tokens) {
    auto arrow = t.find("->");
    if (arrow == std::string::npos)
      resolve_fail(where + ": expected 'x->y', got '" + t + "'");
    out.emplace_back(t.substr(0, arrow), t.substr(arrow + 2));
  }
  return out;
}

// "x=value" pairs with rational values
std::vector<std::pair<std::string, Rat>> value_pairs(const Binding& b,
                                                     const std::string& where) {
  std::vector<std::pair<std::string, Rat>> out;
  for (const auto& t : b.tokens) {
    auto eq = t.find('=');
    if (eq == std::string::npos)
      resolve_fail(where + ": expected 'x=value', got '" + t + "'");
    out.emplace_back(t.substr(0, eq), Rat::parse(t.substr(eq + 1)));
  }
  return out;
}

}  // namespace

const FinSet& Model::set(const std::string& name) const {
  auto it = sets.find(name);
  if (it == sets.end()) resolve_fail("unknown set '" + name + "'");
  return it->second;
}

const std::shared_ptr<const ExtensionContext>& Model::context(
    const std::string& name) const {
  auto it = contexts.find(name);
  if (it == contexts.end()) resolve_fail("unknown context '" + name + "'");
  return it->second;
}

const Model::NamedExtension& Model::extension(const std::string& name) const {
  auto it = extensions.find(name);
  if (it == extensions.end()) resolve_fail("unknown extension '" + name + "'");
  return it->second;
}

const Model::NamedDomain& Model::domain(const std::string& name) const {
  auto it = domains.find(name);
  if (it == domains.end()) resolve_fail("unknown domain '" + name + "'");
  return it->second;
}

const Model::NamedDomainSet& Model::domainset(const std::string& name) const {
  auto it = domainsets.find(name);
  if (it == domainsets.end()) resolve_fail("unknown domainset '" + name + "'");
  return it->second;
}

const RatFn& Model::fn(const std::string& name) const {
  auto it = fns.find(name);
  if (it == fns.end()) resolve_fail("unknown functional '" + name + "'");
  return it->second;
}

const ClassDecl& Model::class_decl(const std::string& name) const {
  auto it = classes.find(name);
  if (it == classes.end()) resolve_fail("unknown class '" + name + "'");
  return it->second;
}

ExtClass Model::build(const std::string& class_name,
                      std::optional<MorphismConfig> cfg_override,
                      std::optional<std::uint64_t> budget_override) const {
  const ClassDecl& decl = class_decl(class_name);
  MorphismConfig cfg = cfg_override.value_or(decl.cfg);
  std::uint64_t b = budget_override.value_or(budget);
  auto ctx = context(decl.context);

  if (decl.build_kind) {
    ClassBuildSpec spec;
    spec.kind = *decl.build_kind;
    spec.budget = b;
    if (decl.build_functional) spec.functional = fn(*decl.build_functional);
    spec.palette = decl.build_palette;
    return build_class(ctx, spec, cfg);
  }

  std::vector<Extension> members;
  std::vector<std::string> labels;
  for (const auto& name : decl.member_names) {
    const auto& ne = extension(name);
    if (ne.context != decl.context)
      resolve_fail("class '" + class_name + "' member '" + name +
                   "' lives over a different context");
    members.push_back(ne.ext);
    labels.push_back(name);
  }
  return make_class(ctx, std::move(members), std::move(labels), cfg);
}

std::vector<FinSet> Model::domainset_domains(const std::string& name) const {
  const auto& ds = domainset(name);
  std::vector<FinSet> out;
  for (const auto& dn : ds.domain_names) out.push_back(domain(dn).domain);
  return out;
}

Model resolve_instance(const InstanceFile& f) {
  Model m;
  m.file = f;
  m.digest = hex_digest(fnv1a64(serialize_instance(f)));
  m.default_cfg = MorphismConfig::strict();

  try {
    for (const auto& s : f.sections) {
      if (s.type == "set") {
        FinSet set(need(s, "elements").tokens);
        if (const Binding* bp = s.find("basepoint")) {
          if (bp->tokens.size() != 1 || !set.contains(bp->tokens[0]))
            resolve_fail("basepoint of set '" + s.name + "' not an element");
          m.basepoints[s.name] = bp->tokens[0];
        }
        if (!m.sets.emplace(s.name, std::move(set)).second)
          resolve_fail("duplicate set '" + s.name + "'");
      } else if (s.type == "group") {
        FinSet elems(need(s, "elements").tokens);
        std::string identity = need_one(s, "identity");
        std::vector<std::uint32_t> mult(elems.size() * elems.size(), UINT32_MAX);
        for (const auto& t : need(s, "table").tokens) {
          auto dot = t.find('.');
          auto eq = t.find('=', dot == std::string::npos ? 0 : dot);
          if (dot == std::string::npos || eq == std::string::npos)
            resolve_fail("group '" + s.name + "': table entry '" + t +
                         "' is not 'a.b=c'");
          auto a = elems.index_of(t.substr(0, dot));
          auto b = elems.index_of(t.substr(dot + 1, eq - dot - 1));
          auto c = elems.index_of(t.substr(eq + 1));
          if (!a || !b || !c)
            resolve_fail("group '" + s.name + "': unknown element in '" + t + "'");
          mult[*a * elems.size() + *b] = static_cast<std::uint32_t>(*c);
        }
        for (auto v : mult)
          if (v == UINT32_MAX)
            resolve_fail("group '" + s.name + "': incomplete table");
        if (!m.groups.emplace(s.name, FinGroup(elems, std::move(mult), identity))
                 .second)
          resolve_fail("duplicate group '" + s.name + "'");
      } else if (s.type == "action") {
        auto git = m.groups.find(need_one(s, "group"));
        if (git == m.groups.end())
          resolve_fail("action '" + s.name + "': unknown group");
        const FinSet& carrier = m.set(need_one(s, "carrier"));
        const FinGroup& g = git->second;
        std::vector<std::uint32_t> act(g.order() * carrier.size());
        for (std::size_t gi = 0; gi < g.order(); ++gi)
          for (std::size_t x = 0; x < carrier.size(); ++x)
            act[gi * carrier.size() + x] = static_cast<std::uint32_t>(x);
        for (const Binding* mv : s.find_all("move")) {
          if (mv->tokens.empty())
            resolve_fail("action '" + s.name + "': empty move line");
          std::string gname = mv->tokens[0];
          if (gname.empty() || gname.back() != ':')
            resolve_fail("action '" + s.name +
                         "': move line must start with 'element:'");
          gname.pop_back();
          auto gi = g.elements().index_of(gname);
          if (!gi) resolve_fail("action '" + s.name + "': unknown group element");
          for (std::size_t t = 1; t < mv->tokens.size(); ++t) {
            auto arrow = mv->tokens[t].find("->");
            if (arrow == std::string::npos)
              resolve_fail("action '" + s.name + "': expected 'x->y'");
            auto x = carrier.index_of(mv->tokens[t].substr(0, arrow));
            auto y = carrier.index_of(mv->tokens[t].substr(arrow + 2));
            if (!x || !y)
              resolve_fail("action '" + s.name + "': unknown carrier element");
            act[*gi * carrier.size() + *x] = static_cast<std::uint32_t>(*y);
          }
        }
        if (!m.actions.emplace(s.name, GroupAction(g, carrier, std::move(act)))
                 .second)
          resolve_fail("duplicate action '" + s.name + "'");
      } else if (s.type == "hom") {
        auto src = m.groups.find(need_one(s, "source"));
        auto dst = m.groups.find(need_one(s, "target"));
        if (src == m.groups.end() || dst == m.groups.end())
          resolve_fail("hom '" + s.name + "': unknown group");
        std::vector<std::uint32_t> table(src->second.order(), UINT32_MAX);
        for (const auto& [a, b] : arrow_pairs(need(s, "map"), "hom " + s.name)) {
          auto ai = src->second.elements().index_of(a);
          auto bi = dst->second.elements().index_of(b);
          if (!ai || !bi) resolve_fail("hom '" + s.name + "': unknown element");
          table[*ai] = static_cast<std::uint32_t>(*bi);
        }
        for (auto v : table)
          if (v == UINT32_MAX) resolve_fail("hom '" + s.name + "': not total");
        if (!m.homs
                 .emplace(s.name,
                          GroupHom(src->second, dst->second, std::move(table)))
                 .second)
          resolve_fail("duplicate hom '" + s.name + "'");
      } else if (s.type == "fn") {
        const FinSet& dom = m.set(need_one(s, "domain"));
        auto pairs = value_pairs(need(s, "values"), "fn " + s.name);
        if (!m.fns.emplace(s.name, RatFn::from_pairs(dom, pairs)).second)
          resolve_fail("duplicate fn '" + s.name + "'");
      } else if (s.type == "context") {
        const std::string omega_name = need_one(s, "omega");
        const std::string conn_name = need_one(s, "conn");
        const FinSet& omega = m.set(omega_name);
        const FinSet& conn = m.set(conn_name);
        auto ob = m.basepoints.find(omega_name);
        auto cb = m.basepoints.find(conn_name);
        if (ob == m.basepoints.end())
          resolve_fail("context '" + s.name + "': omega set has no basepoint");
        if (cb == m.basepoints.end())
          resolve_fail("context '" + s.name + "': conn set has no basepoint");
        auto ahat = m.actions.find(need_one(s, "gau_hat"));
        auto a = m.actions.find(need_one(s, "gau"));
        if (ahat == m.actions.end() || a == m.actions.end())
          resolve_fail("context '" + s.name + "': unknown action");
        auto xi = m.homs.find(need_one(s, "xi"));
        if (xi == m.homs.end())
          resolve_fail("context '" + s.name + "': unknown xi");
        const RatFn& base_s = m.fn(need_one(s, "base_s"));

        std::vector<bool> keep(omega.size(), false);
        for (const auto& e : need(s, "conn_hat").tokens) {
          auto i = omega.index_of(e);
          if (!i)
            resolve_fail("context '" + s.name + "': conn_hat element '" + e +
                         "' not in omega");
          keep[*i] = true;
        }
        FinSet conn_hat = omega.filtered(keep);

        std::optional<FinMap> embedding;
        if (const Binding* emb = s.find("embedding"))
          embedding = FinMap::from_pairs(conn, omega,
                                         arrow_pairs(*emb, "context " + s.name));

        auto ctx = std::make_shared<const ExtensionContext>(ExtensionContext::make(
            omega, ob->second, ahat->second, std::move(conn_hat), conn,
            cb->second, a->second, xi->second, base_s, std::move(embedding)));
        if (!m.contexts.emplace(s.name, std::move(ctx)).second)
          resolve_fail("duplicate context '" + s.name + "'");
      } else if (s.type == "extension") {
        const std::string ctx_name = need_one(s, "context");
        const auto& ctx = m.context(ctx_name);
        FinSet domain(need(s, "domain").tokens);
        RatFn s_hat = RatFn::from_pairs(
            domain, value_pairs(need(s, "s_hat"), "extension " + s.name));
        FinSet corr(need(s, "correction").tokens);
        RatFn corr_fn = RatFn::from_pairs(
            corr,
            value_pairs(need(s, "correction_fn"), "extension " + s.name));
        FinMap delta = FinMap::from_pairs(
            corr, ctx->conn, arrow_pairs(need(s, "delta"), "extension " + s.name));
        Extension e = normalize_extension(*ctx, domain, s_hat, corr, corr_fn,
                                          delta);
        auto bad = validate_extension(*ctx, e);
        if (!bad.empty())
          resolve_fail("extension '" + s.name + "' invalid: " + bad.front());
        if (!m.extensions.emplace(s.name, Model::NamedExtension{ctx_name, e})
                 .second)
          resolve_fail("duplicate extension '" + s.name + "'");
      } else if (s.type == "domain") {
        const std::string ctx_name = need_one(s, "context");
        const auto& ctx = m.context(ctx_name);
        std::vector<bool> keep(ctx->omega.size(), false);
        for (const auto& e : need(s, "elements").tokens) {
          auto i = ctx->omega.index_of(e);
          if (!i)
            resolve_fail("domain '" + s.name + "': element '" + e +
                         "' not in omega");
          keep[*i] = true;
        }
        m.domains[s.name] =
            Model::NamedDomain{ctx_name, ctx->omega.filtered(keep)};
      } else if (s.type == "domainset") {
        Model::NamedDomainSet ds;
        ds.context = need_one(s, "context");
        m.context(ds.context);
        ds.domain_names = need(s, "domains").tokens;
        m.domainsets[s.name] = std::move(ds);
      } else if (s.type == "class") {
        ClassDecl decl;
        decl.name = s.name;
        decl.context = need_one(s, "context");
        m.context(decl.context);
        decl.cfg = MorphismConfig::strict();
        if (const Binding* c = s.find("cfg")) {
          std::string spec;
          for (const auto& t : c->tokens) spec += (spec.empty() ? "" : ",") + t;
          decl.cfg = MorphismConfig::parse(spec);
        }
        if (const Binding* b = s.find("build")) {
          if (b->tokens.size() != 1)
            resolve_fail("class '" + s.name + "': build needs one kind");
          decl.build_kind = parse_class_kind(b->tokens[0]);
          if (const Binding* fnb = s.find("functional"))
            decl.build_functional = fnb->tokens.at(0);
          if (const Binding* pal = s.find("palette"))
            for (const auto& t : pal->tokens)
              decl.build_palette.push_back(Rat::parse(t));
          if (!decl.build_functional && decl.build_palette.empty())
            resolve_fail("class '" + s.name +
                         "': build needs a functional or a palette");
        } else {
          decl.member_names = need(s, "members").tokens;
        }
        m.classes[s.name] = std::move(decl);
      } else if (s.type == "config") {
        if (const Binding* c = s.find("cfg")) {
          std::string spec;
          for (const auto& t : c->tokens) spec += (spec.empty() ? "" : ",") + t;
          m.default_cfg = MorphismConfig::parse(spec);
        }
        if (const Binding* b = s.find("budget"))
          m.budget = std::stoull(b->tokens.at(0));
        if (const Binding* sd = s.find("seed"))
          m.seed = std::stoull(sd->tokens.at(0));
      } else if (s.type == "verify") {
        for (const Binding* b : s.find_all("theorem_A")) {
          if (b->tokens.size() != 2)
            resolve_fail("theorem_A binding needs 'e0class e1class'");
          m.theorem_a.push_back({b->tokens[0], b->tokens[1]});
        }
        for (const Binding* b : s.find_all("theorem_B")) {
          if (b->tokens.size() < 2)
            resolve_fail("theorem_B binding needs 'e1class domainset [e0...]'");
          TheoremBBinding tb;
          tb.e1 = b->tokens[0];
          tb.domainset = b->tokens[1];
          for (std::size_t i = 2; i < b->tokens.size(); ++i)
            tb.e0.push_back(b->tokens[i]);
          m.theorem_b.push_back(std::move(tb));
        }
        for (const Binding* b : s.find_all("theorem_C")) {
          if (b->tokens.size() < 3)
            resolve_fail(
                "theorem_C binding needs 'context domainset functional [e0...]'");
          TheoremCBinding tc;
          tc.context = b->tokens[0];
          tc.domainset = b->tokens[1];
          tc.functional = b->tokens[2];
          for (std::size_t i = 3; i < b->tokens.size(); ++i)
            tc.e0.push_back(b->tokens[i]);
          m.theorem_c.push_back(std::move(tc));
        }
      } else if (s.type == "meta") {
        // free-form, ignored semantically
      } else {
        resolve_fail("unknown section type '" + s.type + "'");
      }
    }

    // Cross checks that need everything in place.
    for (const auto& [name, decl] : m.classes) {
      for (const auto& mem : decl.member_names) m.extension(mem);
      if (decl.build_functional) m.fn(*decl.build_functional);
    }
    for (const auto& [name, ds] : m.domainsets)
      for (const auto& dn : ds.domain_names) m.domain(dn);
    for (const auto& tb : m.theorem_a) {
      m.class_decl(tb.e0);
      m.class_decl(tb.e1);
    }
    for (const auto& tb : m.theorem_b) {
      m.class_decl(tb.e1);
      m.domainset(tb.domainset);
      for (const auto& e0 : tb.e0) m.class_decl(e0);
    }
    for (const auto& tc : m.theorem_c) {
      m.context(tc.context);
      m.domainset(tc.domainset);
      m.fn(tc.functional);
      for (const auto& e0 : tc.e0) m.class_decl(e0);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ResolutionError || e.kind() == ErrorKind::ParseError)
      throw;
    fail(ErrorKind::ResolutionError, e.what());
  }
  return m;
}

Model load_instance(const std::string& path) {
  return resolve_instance(parse_instance_file(path));
}

}  // namespace finext
