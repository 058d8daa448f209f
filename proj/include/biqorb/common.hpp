#pragma once

// Shared error types, exact rational scalar, and hard session limits.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace biqorb {

// All enumerations are desk-scale by contract: q an odd prime <= 13,
// extension degrees <= 6, field scans capped by kMaxFieldScan elements.
inline constexpr int kMaxQ = 13;
inline constexpr int kMaxExtDeg = 6;
inline constexpr long kMaxFieldScan = 2'000'000;
inline constexpr long kMaxSolutionEnum = 1'000'000;

// Exit-code contract of the CLI: 1 = a mathematical property failed,
// 2 = configuration error, 3 = capacity exceeded.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};
struct MathCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define BIQORB_CHECK(cond, msg)                       \
  do {                                                \
    if (!(cond)) throw ::biqorb::InternalError(msg);  \
  } while (0)

// Arbitrary-precision rational with a closed constructor set (the raw boost
// number type interferes with Eigen overload resolution).
class Rat {
 public:
  Rat() = default;
  Rat(int v) : v_(v) {}                 // NOLINT: implicit by design
  Rat(long long v) : v_(v) {}           // NOLINT
  explicit Rat(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.v_ + b.v_); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.v_ - b.v_); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.v_ * b.v_); }
  friend Rat operator/(const Rat& a, const Rat& b) { return Rat(a.v_ / b.v_); }
  Rat operator-() const { return Rat(-v_); }
  Rat& operator+=(const Rat& o) {
    v_ += o.v_;
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    v_ -= o.v_;
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    v_ *= o.v_;
    return *this;
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

  bool is_integer() const { return boost::multiprecision::denominator(v_) == 1; }
  std::string str() const { return v_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.v_; }

 private:
  boost::multiprecision::cpp_rational v_{};
};

inline std::string to_string(const Rat& r) { return r.str(); }

inline Rat rat_pow(const Rat& base, int e) {
  BIQORB_CHECK(e >= 0, "rat_pow: negative exponent");
  Rat acc(1);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

inline long long ipow(long long b, int e) {
  long long acc = 1;
  for (int i = 0; i < e; ++i) acc *= b;
  return acc;
}

}  // namespace biqorb
