#include "randroots/interval.hpp"

#include <cctype>
#include <numbers>

namespace randroots {

namespace {

double parse_plain(const std::string& t) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse number '" + t + "'");
  }
  if (used != t.size()) throw std::invalid_argument("cannot parse number '" + t + "'");
  return v;
}

}  // namespace

double parse_real(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(c));
  if (t.empty()) throw std::invalid_argument("empty number");

  double divisor = 1.0;
  if (auto slash = t.find('/'); slash != std::string::npos) {
    divisor = parse_plain(t.substr(slash + 1));
    t = t.substr(0, slash);
  }
  double v = 0.0;
  if (auto p = t.find("pi"); p != std::string::npos) {
    if (p + 2 != t.size()) throw std::invalid_argument("cannot parse number '" + text + "'");
    std::string head = t.substr(0, p);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double factor = 1.0;
    if (head == "-") factor = -1.0;
    else if (head == "+" || head.empty()) factor = 1.0;
    else factor = parse_plain(head);
    v = factor * std::numbers::pi;
  } else {
    v = parse_plain(t);
  }
  return v / divisor;
}

Interval Interval::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("interval must be LO:HI, got '" + text + "'");
  return Interval(parse_real(text.substr(0, colon)), parse_real(text.substr(colon + 1)));
}

}  // namespace randroots
