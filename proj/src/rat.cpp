#include "finext/rat.hpp"

#include <numeric>

#include "finext/errors.hpp"

namespace finext {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN)
    fail(ErrorKind::InvalidConstruction, "rational overflow");
  return static_cast<std::int64_t>(p);
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) fail(ErrorKind::InvalidConstruction, "zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(text));
    return Rat(std::stoll(text.substr(0, slash)),
               std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "bad rational literal '" + text + "'");
  }
}

Rat operator+(const Rat& a, const Rat& b) {
  return Rat(checked_mul(a.num_, b.den_) + checked_mul(b.num_, a.den_),
             checked_mul(a.den_, b.den_));
}

Rat operator-(const Rat& a, const Rat& b) {
  return Rat(checked_mul(a.num_, b.den_) - checked_mul(b.num_, a.den_),
             checked_mul(a.den_, b.den_));
}

Rat operator*(const Rat& a, const Rat& b) {
  return Rat(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
}

Rat operator-(const Rat& a) { return Rat(-a.num_, a.den_); }

bool operator<(const Rat& a, const Rat& b) {
  return static_cast<__int128>(a.num_) * b.den_ <
         static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace finext
