#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finext/construct.hpp"
#include "finext/extension.hpp"
#include "finext/order.hpp"

namespace finext {

// ---- syntax layer ----
//
// Line-oriented instance files: `[type name]` section headers followed by
// `key = token...` bindings; `#` starts a comment; rationals are written
// p/q. Parsing normalizes whitespace only, so parse(serialize(x)) == x.

struct Binding {
  std::string key;
  std::vector<std::string> tokens;
  std::size_t line = 0;

  friend bool operator==(const Binding& a, const Binding& b) {
    return a.key == b.key && a.tokens == b.tokens;
  }
};

struct Section {
  std::string type;
  std::string name;
  std::vector<Binding> bindings;
  std::size_t line = 0;

  friend bool operator==(const Section& a, const Section& b) {
    return a.type == b.type && a.name == b.name && a.bindings == b.bindings;
  }

  const Binding* find(const std::string& key) const;
  std::vector<const Binding*> find_all(const std::string& key) const;
};

struct InstanceFile {
  std::vector<Section> sections;

  friend bool operator==(const InstanceFile& a, const InstanceFile& b) {
    return a.sections == b.sections;
  }
};

InstanceFile parse_instance_text(const std::string& text);
InstanceFile parse_instance_file(const std::string& path);
std::string serialize_instance(const InstanceFile& f);

// ---- semantic layer ----

struct ClassDecl {
  std::string name;
  std::string context;
  MorphismConfig cfg;
  std::vector<std::string> member_names;       // declared-member class
  std::optional<ClassKind> build_kind;         // or a built class
  std::optional<std::string> build_functional; // pinned functional name
  std::vector<Rat> build_palette;
};

struct TheoremABinding {
  std::string e0, e1;
};
struct TheoremBBinding {
  std::string e1, domainset;
  std::vector<std::string> e0;
};
struct TheoremCBinding {
  std::string domainset, functional, context;
  std::vector<std::string> e0;
};

// Fully resolved instance: every structure has passed its constructor
// checks, extensions are normalized to carrier order and validated.
struct Model {
  InstanceFile file;
  std::string digest;  // of the serialized file

  std::map<std::string, FinSet> sets;
  std::map<std::string, std::string> basepoints;
  std::map<std::string, FinGroup> groups;
  std::map<std::string, GroupAction> actions;
  std::map<std::string, GroupHom> homs;
  std::map<std::string, RatFn> fns;
  std::map<std::string, std::shared_ptr<const ExtensionContext>> contexts;

  struct NamedExtension {
    std::string context;
    Extension ext;
  };
  std::map<std::string, NamedExtension> extensions;

  struct NamedDomain {
    std::string context;
    FinSet domain;
  };
  std::map<std::string, NamedDomain> domains;

  struct NamedDomainSet {
    std::string context;
    std::vector<std::string> domain_names;
  };
  std::map<std::string, NamedDomainSet> domainsets;

  std::map<std::string, ClassDecl> classes;

  MorphismConfig default_cfg;
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 0;

  std::vector<TheoremABinding> theorem_a;
  std::vector<TheoremBBinding> theorem_b;
  std::vector<TheoremCBinding> theorem_c;

  // lookups failing with ResolutionError
  const FinSet& set(const std::string& name) const;
  const std::shared_ptr<const ExtensionContext>& context(const std::string& name) const;
  const NamedExtension& extension(const std::string& name) const;
  const NamedDomain& domain(const std::string& name) const;
  const NamedDomainSet& domainset(const std::string& name) const;
  const RatFn& fn(const std::string& name) const;
  const ClassDecl& class_decl(const std::string& name) const;

  // Builds the class (declared members or enumerated kind) under an
  // optional cfg/budget override.
  ExtClass build(const std::string& class_name,
                 std::optional<MorphismConfig> cfg_override = std::nullopt,
                 std::optional<std::uint64_t> budget_override = std::nullopt) const;

  std::vector<FinSet> domainset_domains(const std::string& name) const;
};

Model resolve_instance(const InstanceFile& f);
Model load_instance(const std::string& path);

// ---- generator ----

// Deterministic desk-scale instance families. Profiles: "chain",
// "antichain", "disjoint-core", "conflicting-orbits". Every emitted
// instance resolves cleanly.
std::vector<InstanceFile> generate_instances(std::uint64_t seed,
                                             const std::string& profile,
                                             std::size_t count);

}  // namespace finext
