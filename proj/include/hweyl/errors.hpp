#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hweyl {

// Bad input: malformed quotient data, alpha out of range, nonpositive threshold.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured point/term cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t cap)
      : std::runtime_error(what + " (budget " + std::to_string(cap) + ")"), cap_(cap) {}

  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error " + format(achieved) + ")"),
        achieved_(achieved) {}

  double achieved_error() const noexcept { return achieved_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

  double achieved_;
};

}  // namespace hweyl
