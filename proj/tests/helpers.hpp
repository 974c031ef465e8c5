#pragma once

// Shared fixtures: small contexts over trivial and Z/2 gauge groups, with
// injective base functionals so delta maps are pinned by values.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "finext/extension.hpp"
#include "finext/group.hpp"

namespace finext::testing {

inline FinGroup cyclic_group(std::size_t m) {
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < m; ++i) elems.push_back("g" + std::to_string(i));
  FinSet es(elems);
  std::vector<std::uint32_t> mult(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      mult[i * m + j] = static_cast<std::uint32_t>((i + j) % m);
  return FinGroup(es, std::move(mult), "g0");
}

// omega = {w0, c1, c2, p, q}, all points fixed; conn_hat = {c1, c2};
// conn = {d0, d1, d2} with base values 0, 1, 2. The name vector can be
// overridden to test relabeling invariance.
inline std::shared_ptr<const ExtensionContext> trivial_context(
    std::vector<std::string> omega_names = {"w0", "c1", "c2", "p", "q"},
    std::vector<Rat> base_values = {Rat(0), Rat(1), Rat(2)}) {
  FinSet omega(omega_names);
  FinSet conn(std::vector<std::string>{"d0", "d1", "d2"});
  FinGroup triv = cyclic_group(1);
  GroupAction ahat = GroupAction::trivial(triv, omega);
  GroupAction abase = GroupAction::trivial(triv, conn);
  GroupHom xi = GroupHom::identity(triv);
  RatFn base_s(conn, base_values);
  FinSet conn_hat(std::vector<std::string>{omega_names[1], omega_names[2]});
  return std::make_shared<const ExtensionContext>(ExtensionContext::make(
      omega, omega_names[0], ahat, conn_hat, conn, "d0", abase, xi, base_s));
}

// omega = {w0, k1, k2, p1, p2, r}; Z/2 swaps k1/k2 and p1/p2, fixes w0, r;
// conn_hat = {k1, k2}; conn = {d0, d1} with base values 0, 1.
inline std::shared_ptr<const ExtensionContext> z2_context() {
  FinSet omega(std::vector<std::string>{"w0", "k1", "k2", "p1", "p2", "r"});
  FinSet conn(std::vector<std::string>{"d0", "d1"});
  FinGroup z2 = cyclic_group(2);
  std::vector<std::uint32_t> act{0, 1, 2, 3, 4, 5, 0, 2, 1, 4, 3, 5};
  GroupAction ahat(z2, omega, std::move(act));
  FinGroup triv = cyclic_group(1);
  GroupAction abase = GroupAction::trivial(triv, conn);
  GroupHom xi = GroupHom::trivial(triv, z2);
  RatFn base_s(conn, {Rat(0), Rat(1)});
  FinSet conn_hat(std::vector<std::string>{"k1", "k2"});
  return std::make_shared<const ExtensionContext>(ExtensionContext::make(
      omega, "w0", ahat, conn_hat, conn, "d0", abase, xi, base_s));
}

// An extension over trivial_context() with the given domain elements and
// values; correction is {w0} with delta to d0 unless widened.
inline Extension simple_extension(const ExtensionContext& ctx,
                                  const std::vector<std::string>& domain,
                                  const std::vector<Rat>& values) {
  FinSet dom(domain);
  RatFn s_hat(dom, values);
  FinSet corr(std::vector<std::string>{ctx.omega_base});
  return Extension{dom, s_hat, corr, RatFn::constant(corr, Rat(0)),
                   FinMap::constant(corr, ctx.conn, ctx.conn_base)};
}

}  // namespace finext::testing
