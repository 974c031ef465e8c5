#pragma once

#include <cstdint>
#include <string>

namespace finext {

// Exact rational value, always stored in lowest terms with a positive
// denominator. Equality is exact; there is no floating point anywhere in
// the calculus, otherwise the diagram equalities would be undecidable.
class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  std::string str() const;
  // Accepts "p" or "p/q" with optional leading '-'.
  static Rat parse(const std::string& text);

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a);
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace finext
