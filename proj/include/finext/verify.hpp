#pragma once

#include <optional>
#include <string>

#include "finext/instance.hpp"
#include "finext/report.hpp"

namespace finext {

// Theorem-level verification over the instance's declared hypotheses.
// Every verdict is per-hypothesis: if the premise is not met under the
// configuration (no terminal object, index domains not disjoint beyond
// the core) the report says so rather than claiming the statement false.
Report verify_theorem(const Model& m, char name,
                      std::optional<MorphismConfig> cfg_override,
                      std::optional<std::uint64_t> budget_override);

}  // namespace finext
