#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "randroots/rng.hpp"

namespace randroots {

enum class DistKind { Gaussian, Rademacher, UniformSym, Custom };

// Coefficient law, always standardized to mean 0 and variance 1.
class CoeffDist {
 public:
  static constexpr std::size_t kQuantilePoints = 1024;

  CoeffDist() = default;
  static CoeffDist gaussian() { return CoeffDist(DistKind::Gaussian); }
  static CoeffDist rademacher() { return CoeffDist(DistKind::Rademacher); }
  static CoeffDist uniform() { return CoeffDist(DistKind::UniformSym); }

  // Quantiles at probabilities (k + 1/2)/1024, k = 0..1023, nondecreasing.
  // The table is shifted and scaled so the interpolated law has exactly
  // mean 0 and variance 1.
  static CoeffDist from_quantiles(std::vector<double> q);

  static CoeffDist parse(const std::string& name);  // gauss|rademacher|uniform

  DistKind kind() const { return kind_; }
  std::string name() const;
  const std::vector<double>& quantiles() const { return table_; }

  double draw(Stream& s) const;
  // Quantile function of the custom table.
  double quantile(double u) const;

 private:
  explicit CoeffDist(DistKind k) : kind_(k) {}
  DistKind kind_ = DistKind::Gaussian;
  std::vector<double> table_;
};

void fill_coefficients(const CoeffDist& dist, Stream& s, std::span<double> out);

std::vector<double> sample_coefficients(const CoeffDist& dist, std::size_t count,
                                        std::uint64_t seed);

}  // namespace randroots
