#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace randroots {

// Randomized instance campaigns over the lemma oracles. Instance k draws its
// parameters from derive_seed(seed, k), so results do not depend on workers.
struct CampaignSummary {
  std::string lemma;
  int instances = 0;
  int holds = 0;
  int fails = 0;
  int skipped = 0;
  double worst_ratio = 0.0;  // max lhs/rhs (or error/tolerance) over checked instances
  bool exact = true;         // a failing instance is a hard failure
  nlohmann::json detail;
};

// largesieve, interp, stability, weylterm, weylderiv, bwnorm, bernstein, overcrowd
const std::vector<std::string>& campaign_names();

CampaignSummary run_campaign(const std::string& lemma, int instances, std::uint64_t seed,
                             int workers = 1);

nlohmann::json to_json(const CampaignSummary& s);

// Central finite difference of order d for exp(-x^2/2) x^i / sqrt(i!), in
// 100-digit arithmetic with step h.
double weyl_term_derivative_fd(int i, double x, int d, double h = 1e-6);

}  // namespace randroots
