#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "randroots/io.hpp"

using namespace randroots;
using nlohmann::json;

TEST(Io, ManifestHashIsFnv1a) {
  // FNV-1a 64 of "" and of {"n":5,"x":"kac"}
  EXPECT_EQ(manifest_hash(json::parse(R"({"x":"kac","n":5})")), "868951b786c960db");
  EXPECT_EQ(manifest_hash(json::parse(R"({"n":5,"x":"kac"})")), "868951b786c960db");
}

TEST(Io, FormatRealRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
}

TEST(Io, SpecRoundTrip) {
  const auto s = EnsembleSpec::parse("jacobi", 7, CoeffDist::uniform(), 0.5, 1.5);
  const auto t = spec_from_json(to_json(s));
  EXPECT_EQ(t.kind, s.kind);
  EXPECT_EQ(t.degree, 7);
  EXPECT_EQ(t.basis, s.basis);
  EXPECT_EQ(t.dist.kind(), DistKind::UniformSym);
}

TEST(Io, ReportRoundTrip) {
  ExperimentReport r;
  r.config.spec = EnsembleSpec(EnsembleKind::Weyl, 16);
  r.config.interval = Interval(-40, 40);
  r.config.trials = 3;
  r.config.base_seed = 12345678901234ULL;
  r.counts = {2, 4, 0};
  summarize(r);
  const auto back = report_from_json(to_json(r));
  EXPECT_EQ(back.counts, r.counts);
  EXPECT_EQ(back.config.base_seed, r.config.base_seed);
  EXPECT_EQ(back.config.interval.lo, -40.0);
  EXPECT_DOUBLE_EQ(back.mean, 2.0);
}

TEST(Io, CountsCsvHeader) {
  ExperimentReport r;
  r.config.spec = EnsembleSpec(EnsembleKind::Kac, 4);
  r.config.interval = Interval(-1, 1);
  r.config.trials = 2;
  r.counts = {1, 3};
  const auto dir = std::filesystem::temp_directory_path() / "randroots_io_test";
  std::filesystem::create_directories(dir);
  write_counts_csv(dir / "counts.csv", r, "00ff");
  std::ifstream in(dir / "counts.csv");
  std::string first, second, third;
  std::getline(in, first);
  std::getline(in, second);
  std::getline(in, third);
  EXPECT_EQ(first.rfind("# {", 0), 0u);
  EXPECT_NE(first.find("00ff"), std::string::npos);
  EXPECT_NE(second.find("count"), std::string::npos);
  EXPECT_NE(third.find("1"), std::string::npos);
  std::filesystem::remove_all(dir);
}
