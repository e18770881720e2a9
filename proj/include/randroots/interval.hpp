#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace randroots {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(std::isfinite(l) && std::isfinite(h)) || l > h)
      throw std::invalid_argument("interval must satisfy lo <= hi with finite ends");
  }

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }

  // "LO:HI"; `pi` is accepted as a factor, e.g. "0:2pi".
  static Interval parse(const std::string& text);
};

// Parses a real with optional pi factor: "1.5", "pi", "2pi", "pi/2", "-3*pi".
double parse_real(const std::string& text);

}  // namespace randroots
