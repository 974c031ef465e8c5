#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finext {

// Verdict vocabulary: "confirmed" for a passed check, "refuted" for a
// counterexample, "hypothesis-unmet" when the claim's premise fails, and
// "info" for reported facts that never gate the exit code.
struct CheckLine {
  std::string name;
  std::string verdict;
  std::string detail;
};

struct Report {
  std::string command;
  std::string digest;
  std::string cfg;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<CheckLine> checks;
  std::vector<std::string> deviations;
  std::vector<std::string> notes;
  // Populated only on request (--timing); reports are byte-stable by
  // default.
  std::optional<std::int64_t> timing_ms;

  void confirmed(std::string name, std::string detail = "");
  void refuted(std::string name, std::string detail = "");
  void unmet(std::string name, std::string detail = "");
  void info(std::string name, std::string detail = "");

  // 0 all confirmed, 2 hypothesis unmet, 3 counterexample found.
  int exit_code() const;
};

std::string render_text(const Report& r);
std::string render_structured(const Report& r);

std::uint64_t fnv1a64(std::string_view data);
std::string hex_digest(std::uint64_t h);

}  // namespace finext
