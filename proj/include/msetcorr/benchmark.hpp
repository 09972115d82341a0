#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msetcorr/correlation.hpp"
#include "msetcorr/signal.hpp"

namespace msetcorr {

/// Half-open sampling grid [x_start, x_end) with n_samples points.
struct Grid {
  double x_start = 0.0;
  double x_end = 6.4;
  Eigen::Index n_samples = 640;

  double dx() const { return (x_end - x_start) / static_cast<double>(n_samples); }
};

/// Principal plus secondary Gaussian object.
struct ObjectSpec {
  double h_p = 2.0;
  double h_s = 1.0;
  double sigma_p = 0.3;
  double sigma_s = 0.15;
  double x_p = 4.5;
  double x_s = 1.8;
  Grid grid{};

  void validate() const;
};

enum class TemplateShape { half_sine };

struct TemplateSpec {
  TemplateShape shape = TemplateShape::half_sine;
  double width = 1.2;
  double amplitude = 2.0;

  void validate() const;
};

/// Additive uniform noise L_v * (u - 0.5) with L_v = multiplier * v / 20.
struct NoiseSpec {
  int level = 0;
  std::uint64_t seed = 0;
  std::uint64_t realization = 0;
  double multiplier = 1.0;

  static constexpr int kMaxLevel = 20;

  void validate() const;
  double amplitude() const { return multiplier * static_cast<double>(level) / kMaxLevel; }
};

Signal gen_object(const ObjectSpec& spec);
Signal gen_template(const TemplateSpec& spec, double dx);

/// Seed of the noise stream for one (base seed, level, realization) cell.
std::uint64_t derive_seed(std::uint64_t base_seed, int level, std::uint64_t realization);

Signal add_noise(const Signal& signal, const NoiseSpec& noise);

struct PeakMeasurement {
  double x1 = 0.0;
  double h1 = 0.0;
  double w1 = 0.0;
  Eigen::Index i1 = 0;
  bool has_secondary = false;
  double x2 = 0.0;
  double h2 = 0.0;
  double w2 = 0.0;
  Eigen::Index i2 = 0;
};

/// Minimum distance between the principal and the secondary peak.
double exclusion_radius(const ObjectSpec& spec);

/// Contiguous extent around `peak` where the profile stays at or above 75% of its value,
/// with linear interpolation at both crossings. Never narrower than one grid step.
double width_at_75(const Eigen::VectorXd& values, Eigen::Index peak, double dx);

/// Global maximum (leftmost on ties) plus the highest positive local maximum farther than
/// the exclusion radius from it.
PeakMeasurement detect_peaks(const CorrelationResult& profile, const ObjectSpec& spec);

struct IndexOptions {
  /// Integrate max(s, 0) instead of s between the two peaks.
  bool clamp_overlap_positive = false;
};

/// The six merit figures; entries that need the secondary peak are empty when it is absent.
struct PerformanceIndices {
  double r_xp = 0.0;
  std::optional<double> r_xs;
  std::optional<double> r_h;
  double r_wp = 0.0;
  std::optional<double> r_ws;
  std::optional<double> alpha_overlap;

  static constexpr std::size_t kCount = 6;
  static const std::array<std::string, kCount>& names();
  std::array<std::optional<double>, kCount> values() const;
  bool complete() const { return r_xs && r_h && r_ws && alpha_overlap; }
};

/// Heights and widths are taken on the profile rescaled to a unit principal peak.
PerformanceIndices compute_indices(const PeakMeasurement& pm, const ObjectSpec& spec,
                                   const CorrelationResult& profile,
                                   const IndexOptions& options = {});

struct SweepConfig {
  std::vector<MatchSpec> methods;
  ObjectSpec object{};
  TemplateSpec tmpl{};
  std::vector<int> levels;
  int realizations = 300;
  std::uint64_t base_seed = 0;
  double noise_multiplier = 1.0;
  Boundary boundary = Boundary::zero_pad;
  IndexOptions index_options{};
  /// Worker threads; 0 picks the hardware concurrency. Never affects results.
  unsigned threads = 0;

  /// classic, jaccard, coincidence and combined_coincidence over levels 0..20.
  static SweepConfig defaults();
  void validate() const;
};

struct SweepRecord {
  std::string method;
  int level = 0;
  int realization = 0;
  /// Empty when the profile had no measurable principal peak.
  std::optional<PerformanceIndices> indices;
};

struct IndexStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 when n < 2
  int n = 0;
  int excluded = 0;
};

struct SweepAggregate {
  std::string method;
  int level = 0;
  std::array<IndexStats, PerformanceIndices::kCount> stats;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // ordered by method, level, realization
  std::vector<SweepAggregate> aggregates;

  const SweepAggregate* find(const std::string& method, int level) const;
};

SweepResult run_sweep(const SweepConfig& cfg);

/// Mean and sample standard deviation per index over present values.
std::vector<SweepAggregate> aggregate(const std::vector<SweepRecord>& records);

}  // namespace msetcorr
