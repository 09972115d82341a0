#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msetcorr/benchmark.hpp"

namespace msetcorr::cli {

struct CorrelateConfig {
  std::vector<std::string> methods = {"classic", "jaccard", "coincidence"};
  std::optional<std::filesystem::path> object_csv;
  std::optional<std::filesystem::path> write_object;
  ObjectSpec object{};
  TemplateSpec tmpl{};
  int noise_level = 0;
  std::uint64_t realization = 0;
  std::uint64_t seed = 0;
  double noise_multiplier = 1.0;
  Boundary boundary = Boundary::zero_pad;
  SimilarityConfig similarity{};
  bool normalize = false;
  std::filesystem::path out_dir = ".";
};

struct BenchConfig {
  SweepConfig sweep = SweepConfig::defaults();
  SimilarityConfig similarity{};
  std::vector<std::string> methods = {"classic", "jaccard", "coincidence", "combined_coincidence"};
  std::filesystem::path out_dir = ".";
};

struct PcaConfig {
  std::filesystem::path records = "records.csv";
  std::vector<int> levels = {1, 10, 20};
  std::vector<std::string> methods = {"classic", "jaccard", "coincidence"};
  bool standardize = true;
  std::filesystem::path out_dir = ".";
};

/// Resolved configuration as a single `key=value ...` line for CSV provenance headers.
std::string describe(const CorrelateConfig& cfg);
std::string describe(const BenchConfig& cfg);
std::string describe(const PcaConfig& cfg, int level);

/// Returns the written files. Peak summaries and warnings go to `out` / `err`.
std::vector<std::filesystem::path> cmd_correlate(const CorrelateConfig& cfg, std::ostream& out);
std::vector<std::filesystem::path> cmd_bench(const BenchConfig& cfg, std::ostream& out);
std::vector<std::filesystem::path> cmd_pca(const PcaConfig& cfg, std::ostream& out,
                                           std::ostream& err);

}  // namespace msetcorr::cli
