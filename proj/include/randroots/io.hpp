#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "randroots/analysis.hpp"
#include "randroots/kernels.hpp"

namespace randroots {

constexpr int kSchemaVersion = 1;

std::string ensemble_name(const EnsembleSpec& spec);
nlohmann::json to_json(const EnsembleSpec& spec);
EnsembleSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TailEstimate& t);
nlohmann::json to_json(const RepulsionTable& t);
nlohmann::json to_json(const PersistenceEstimate& p);

// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string manifest_hash(const nlohmann::json& reproducible_config);

// CSV with a leading "# {json}" comment line.
void write_csv(const std::filesystem::path& path, const nlohmann::json& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

std::string format_real(double v);

void write_counts_csv(const std::filesystem::path& path, const ExperimentReport& r,
                      const std::string& hash);
void write_intensity_csv(const std::filesystem::path& path, const IntensityCurve& c,
                         const std::string& hash);
void write_tails_csv(const std::filesystem::path& path, const TailEstimate& t,
                     const std::string& hash);
void write_repulsion_csv(const std::filesystem::path& path, const RepulsionTable& t,
                         const std::string& hash);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace randroots
