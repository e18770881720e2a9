#pragma once

#include <stdexcept>
#include <string>

namespace randroots {

class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quantity that should be nonnegative came out negative beyond rounding.
class NumericalDegeneracy : public std::runtime_error {
 public:
  NumericalDegeneracy(const std::string& what, double raw)
      : std::runtime_error(what + " (raw value " + std::to_string(raw) + ")"), raw_(raw) {}
  double raw() const { return raw_; }

 private:
  double raw_;
};

}  // namespace randroots
