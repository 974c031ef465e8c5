#include "finext/report.hpp"

#include <nlohmann/json.hpp>

namespace finext {

void Report::confirmed(std::string name, std::string detail) {
  checks.push_back({std::move(name), "confirmed", std::move(detail)});
}
void Report::refuted(std::string name, std::string detail) {
  checks.push_back({std::move(name), "refuted", std::move(detail)});
}
void Report::unmet(std::string name, std::string detail) {
  checks.push_back({std::move(name), "hypothesis-unmet", std::move(detail)});
}
void Report::info(std::string name, std::string detail) {
  checks.push_back({std::move(name), "info", std::move(detail)});
}

int Report::exit_code() const {
  bool unmet_seen = false;
  for (const auto& c : checks) {
    if (c.verdict == "refuted") return 3;
    if (c.verdict == "hypothesis-unmet") unmet_seen = true;
  }
  return unmet_seen ? 2 : 0;
}

std::string render_text(const Report& r) {
  std::string out;
  out += "command: " + r.command + "\n";
  out += "instance: " + r.digest + "\n";
  out += "cfg: " + r.cfg + "\n";
  out += "budget: " + std::to_string(r.budget) + "\n";
  out += "seed: " + std::to_string(r.seed) + "\n";
  for (const auto& c : r.checks) {
    out += "check: " + c.name + " | " + c.verdict;
    if (!c.detail.empty()) out += " | " + c.detail;
    out += "\n";
  }
  for (const auto& d : r.deviations) out += "deviation: " + d + "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  out += "timing_ms: " +
         (r.timing_ms ? std::to_string(*r.timing_ms) : std::string("-")) + "\n";
  out += "exit: " + std::to_string(r.exit_code()) + "\n";
  return out;
}

std::string render_structured(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["instance"] = r.digest;
  j["cfg"] = r.cfg;
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["verdict"] = c.verdict;
    jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  j["deviations"] = r.deviations;
  j["notes"] = r.notes;
  if (r.timing_ms)
    j["timing_ms"] = *r.timing_ms;
  else
    j["timing_ms"] = nullptr;
  j["exit"] = r.exit_code();
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex_digest(std::uint64_t h) {
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace finext
