#include "msetcorr/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <thread>

namespace msetcorr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53 random bits mapped onto [0, 1); identical on every platform, unlike
// std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ObjectSpec::validate() const {
  if (!(h_p >= h_s && h_s > 0.0) || !std::isfinite(h_p)) {
    throw DomainError("object heights must satisfy h_p >= h_s > 0");
  }
  if (!finite_positive(sigma_p) || !finite_positive(sigma_s)) {
    throw DomainError("Gaussian widths must be positive");
  }
  if (x_p == x_s) throw DomainError("principal and secondary peaks must not coincide");
  if (grid.n_samples < 2 || !(grid.x_end > grid.x_start) || !std::isfinite(grid.x_end - grid.x_start)) {
    throw DomainError("degenerate grid");
  }
  const auto inside = [&](double x, double sigma) {
    return x - 4.0 * sigma >= grid.x_start && x + 4.0 * sigma <= grid.x_end;
  };
  if (!inside(x_p, sigma_p) || !inside(x_s, sigma_s)) {
    throw DomainError("degenerate grid: both peaks need a 4-sigma margin inside the grid");
  }
}

void TemplateSpec::validate() const {
  if (!finite_positive(width) || !finite_positive(amplitude)) {
    throw DomainError("template width and amplitude must be positive");
  }
}

void NoiseSpec::validate() const {
  if (level < 0 || level > kMaxLevel) throw DomainError("noise level must lie in 0..20");
  if (!(multiplier >= 0.0) || !std::isfinite(multiplier)) {
    throw DomainError("noise multiplier must be a non-negative number");
  }
}

Signal gen_object(const ObjectSpec& spec) {
  spec.validate();
  const double dx = spec.grid.dx();
  const Eigen::ArrayXd x =
      Eigen::ArrayXd::LinSpaced(spec.grid.n_samples, 0.0, double(spec.grid.n_samples - 1)) * dx +
      spec.grid.x_start;
  const auto gaussian = [&](double h, double mu, double sigma) -> Eigen::ArrayXd {
    return h * (-(x - mu).square() / (2.0 * sigma * sigma)).exp();
  };
  Eigen::VectorXd samples =
      (gaussian(spec.h_p, spec.x_p, spec.sigma_p) + gaussian(spec.h_s, spec.x_s, spec.sigma_s))
          .matrix();
  return Signal(std::move(samples), spec.grid.x_start, dx);
}

Signal gen_template(const TemplateSpec& spec, double dx) {
  spec.validate();
  if (!finite_positive(dx)) throw DomainError("template spacing must be positive");
  if (spec.width < 2.0 * dx) throw DomainError("template width must span at least two grid steps");
  const auto intervals = static_cast<Eigen::Index>(std::lround(spec.width / dx));
  Eigen::VectorXd samples(intervals + 1);
  for (Eigen::Index j = 0; j <= intervals; ++j) {
    samples[j] = spec.amplitude * std::sin(std::numbers::pi * double(j) / double(intervals));
  }
  samples[intervals] = 0.0;
  return Signal(std::move(samples), 0.0, dx);
}

std::uint64_t derive_seed(std::uint64_t base_seed, int level, std::uint64_t realization) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(level));
  return splitmix64(h ^ realization);
}

Signal add_noise(const Signal& signal, const NoiseSpec& noise) {
  noise.validate();
  const double amplitude = noise.amplitude();
  if (amplitude == 0.0) return signal;
  std::mt19937_64 rng(derive_seed(noise.seed, noise.level, noise.realization));
  Eigen::VectorXd out = signal.samples();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] += amplitude * (unit_uniform(rng) - 0.5);
  }
  return Signal(std::move(out), signal.x0(), signal.dx());
}

double exclusion_radius(const ObjectSpec& spec) { return 3.0 * std::max(spec.sigma_p, spec.sigma_s); }

double width_at_75(const Eigen::VectorXd& values, Eigen::Index peak, double dx) {
  const Eigen::Index n = values.size();
  const double threshold = 0.75 * values[peak];
  Eigen::Index left = peak;
  while (left > 0 && values[left - 1] >= threshold) --left;
  Eigen::Index right = peak;
  while (right < n - 1 && values[right + 1] >= threshold) ++right;

  double lo = static_cast<double>(left);
  if (left > 0) lo -= (values[left] - threshold) / (values[left] - values[left - 1]);
  double hi = static_cast<double>(right);
  if (right < n - 1) hi += (values[right] - threshold) / (values[right] - values[right + 1]);
  return std::max(dx, (hi - lo) * dx);
}

PeakMeasurement detect_peaks(const CorrelationResult& profile, const ObjectSpec& spec) {
  const Eigen::VectorXd& v = profile.values;
  const Eigen::Index n = v.size();
  if (n < 3 || v.maxCoeff() == v.minCoeff()) {
    throw DomainError("cannot detect peaks on a constant profile");
  }
  PeakMeasurement pm;
  v.maxCoeff(&pm.i1);  // first occurrence, so ties resolve leftmost
  pm.x1 = profile.lags[pm.i1];
  pm.h1 = v[pm.i1];
  pm.w1 = width_at_75(v, pm.i1, profile.dx);

  const double radius = exclusion_radius(spec);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const bool local_max = v[i] > v[i - 1] && v[i] >= v[i + 1];
    if (!local_max || v[i] <= 0.0 || std::abs(profile.lags[i] - pm.x1) <= radius) continue;
    if (!pm.has_secondary || v[i] > pm.h2) {
      pm.has_secondary = true;
      pm.i2 = i;
      pm.h2 = v[i];
    }
  }
  if (pm.has_secondary) {
    pm.x2 = profile.lags[pm.i2];
    pm.w2 = width_at_75(v, pm.i2, profile.dx);
  }
  return pm;
}

const std::array<std::string, PerformanceIndices::kCount>& PerformanceIndices::names() {
  static const std::array<std::string, kCount> kNames = {"r_xp", "r_xs", "r_h",
                                                         "r_wp", "r_ws", "alpha_overlap"};
  return kNames;
}

std::array<std::optional<double>, PerformanceIndices::kCount> PerformanceIndices::values() const {
  return {r_xp, r_xs, r_h, r_wp, r_ws, alpha_overlap};
}

PerformanceIndices compute_indices(const PeakMeasurement& pm, const ObjectSpec& spec,
                                   const CorrelationResult& profile, const IndexOptions& options) {
  const Eigen::VectorXd& v = profile.values;
  const double scale = pm.h1 > 0.0 ? pm.h1 : v.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw DomainError("cannot score an all-zero profile");

  PerformanceIndices out;
  out.r_xp = (spec.x_p - pm.x1) / spec.x_p;
  out.r_wp = pm.w1 / (pm.h1 / scale);
  if (!pm.has_secondary) return out;

  out.r_xs = (spec.x_s - pm.x2) / spec.x_s;
  out.r_h = (pm.h1 / pm.h2) / (spec.h_p / spec.h_s);
  out.r_ws = pm.w2 / (pm.h2 / scale);

  const Eigen::Index a = std::min(pm.i1, pm.i2);
  const Eigen::Index b = std::max(pm.i1, pm.i2);
  Eigen::ArrayXd span = v.segment(a, b - a + 1).array() / scale;
  if (options.clamp_overlap_positive) span = span.max(0.0);
  out.alpha_overlap = profile.dx * span.sum();
  return out;
}

SweepConfig SweepConfig::defaults() {
  SweepConfig cfg;
  for (const char* name : {"classic", "jaccard", "coincidence", "combined_coincidence"}) {
    cfg.methods.push_back(parse_match_spec(name));
  }
  for (int v = 0; v <= NoiseSpec::kMaxLevel; ++v) cfg.levels.push_back(v);
  return cfg;
}

void SweepConfig::validate() const {
  if (methods.empty()) throw DomainError("sweep needs at least one method");
  std::set<std::string> seen;
  for (const auto& m : methods) {
    m.method.cfg.validate();
    if (!seen.insert(to_string(m)).second) throw DomainError("duplicate method " + to_string(m));
  }
  if (levels.empty()) throw DomainError("sweep needs at least one noise level");
  for (int v : levels) NoiseSpec{v, base_seed, 0, noise_multiplier}.validate();
  if (realizations < 1) throw DomainError("sweep needs at least one realization");
  object.validate();
  tmpl.validate();
}

const SweepAggregate* SweepResult::find(const std::string& method, int level) const {
  for (const auto& a : aggregates) {
    if (a.method == method && a.level == level) return &a;
  }
  return nullptr;
}

std::vector<SweepAggregate> aggregate(const std::vector<SweepRecord>& records) {
  std::vector<SweepAggregate> out;
  std::vector<std::vector<std::array<std::optional<double>, PerformanceIndices::kCount>>> cells;
  for (const auto& rec : records) {
    if (out.empty() || out.back().method != rec.method || out.back().level != rec.level) {
      out.push_back({rec.method, rec.level, {}});
      cells.emplace_back();
    }
    cells.back().push_back(rec.indices ? rec.indices->values()
                                       : std::array<std::optional<double>, PerformanceIndices::kCount>{});
  }
  for (std::size_t c = 0; c < out.size(); ++c) {
    for (std::size_t k = 0; k < PerformanceIndices::kCount; ++k) {
      IndexStats& st = out[c].stats[k];
      double sum = 0.0;
      for (const auto& row : cells[c]) {
        if (row[k]) {
          sum += *row[k];
          ++st.n;
        }
      }
      st.excluded = static_cast<int>(cells[c].size()) - st.n;
      if (st.n == 0) {
        st.mean = std::nan("");
        continue;
      }
      st.mean = sum / st.n;
      double sq = 0.0;
      for (const auto& row : cells[c]) {
        if (row[k]) sq += (*row[k] - st.mean) * (*row[k] - st.mean);
      }
      st.stddev = st.n > 1 ? std::sqrt(sq / (st.n - 1)) : 0.0;
    }
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const Signal object = gen_object(cfg.object);
  const Signal tmpl = gen_template(cfg.tmpl, object.dx());
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_cells = cfg.levels.size() * static_cast<std::size_t>(cfg.realizations);

  // results[method][cell]; each (level, realization) cell is an independent work unit.
  std::vector<std::vector<std::optional<PerformanceIndices>>> results(
      n_methods, std::vector<std::optional<PerformanceIndices>>(n_cells));

  const auto run_cell = [&](std::size_t cell) {
    const int level = cfg.levels[cell / cfg.realizations];
    const auto realization = static_cast<std::uint64_t>(cell % cfg.realizations);
    const Signal noisy =
        add_noise(object, NoiseSpec{level, cfg.base_seed, realization, cfg.noise_multiplier});
    // Every method sees the same noisy object.
    for (std::size_t m = 0; m < n_methods; ++m) {
      try {
        const CorrelationResult profile = match(noisy, tmpl, cfg.methods[m], cfg.boundary);
        const PeakMeasurement pm = detect_peaks(profile, cfg.object);
        results[m][cell] = compute_indices(pm, cfg.object, profile, cfg.index_options);
      } catch (const DomainError&) {
        results[m][cell].reset();
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_cells));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t cell = next++; cell < n_cells; cell = next++) {
      try {
        run_cell(cell);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_cells;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  out.records.reserve(n_methods * n_cells);
  for (std::size_t m = 0; m < n_methods; ++m) {
    const std::string name = to_string(cfg.methods[m]);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      out.records.push_back({name, cfg.levels[cell / cfg.realizations],
                             static_cast<int>(cell % cfg.realizations), results[m][cell]});
    }
  }
  out.aggregates = aggregate(out.records);
  return out;
}

}  // namespace msetcorr
