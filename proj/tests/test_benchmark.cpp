#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "msetcorr/benchmark.hpp"

namespace {

using namespace msetcorr;

CorrelationResult profile_from(const Eigen::VectorXd& values, double x0, double dx) {
  CorrelationResult r;
  r.values = values;
  r.lags = Eigen::VectorXd::LinSpaced(values.size(), 0.0, double(values.size() - 1)) * dx +
           Eigen::VectorXd::Constant(values.size(), x0);
  r.dx = dx;
  return r;
}

// Unit triangles of half-width `hw` centred at each of `centres`, sampled on [0, n*dx).
Eigen::VectorXd triangles(Eigen::Index n, double dx, std::vector<double> centres, double hw,
                          std::vector<double> heights = {}) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (std::size_t c = 0; c < centres.size(); ++c) {
    const double h = heights.empty() ? 1.0 : heights[c];
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = std::fabs(double(i) * dx - centres[c]) / hw;
      if (t < 1.0) v[i] += h * (1.0 - t);
    }
  }
  return v;
}

TEST(Generators, DefaultObjectValues) {
  const ObjectSpec spec;
  const Signal s = gen_object(spec);
  EXPECT_EQ(s.size(), 640);
  EXPECT_DOUBLE_EQ(s.dx(), 0.01);
  EXPECT_NEAR(s[450], 2.0, 1e-10);
  EXPECT_NEAR(s[180], 1.0 + 2.0 * std::exp(-2.7 * 2.7 / (2 * 0.09)), 1e-12);
  EXPECT_NEAR(s[180], 1.0, 1e-10);
}

TEST(Generators, SymmetricObject) {
  ObjectSpec spec;
  spec.h_p = spec.h_s = 1.0;
  spec.sigma_s = spec.sigma_p = 0.3;
  spec.x_s = 2.0;
  spec.x_p = 4.4;
  spec.grid = Grid{0.0, 6.41, 641};
  const Signal s = gen_object(spec);
  // Peaks at 2.0 and 4.4 are mirror images around 3.2 = sample 320.
  for (Eigen::Index i = 0; i <= 320; ++i) EXPECT_NEAR(s[320 - i], s[320 + i], 1e-12);
}

TEST(Generators, ObjectErrors) {
  ObjectSpec spec;
  spec.grid.n_samples = 1;
  EXPECT_THROW(gen_object(spec), DomainError);
  spec = ObjectSpec{};
  spec.x_p = 6.3;
  EXPECT_THROW(gen_object(spec), DomainError);
  spec = ObjectSpec{};
  spec.h_s = 2.5;
  EXPECT_THROW(gen_object(spec), DomainError);
  spec = ObjectSpec{};
  spec.sigma_p = 0.0;
  EXPECT_THROW(gen_object(spec), DomainError);
}

TEST(Generators, HalfSineTemplate) {
  const TemplateSpec spec{TemplateShape::half_sine, 1.2, 3.0};
  const Signal t = gen_template(spec, 0.01);
  ASSERT_EQ(t.size() % 2, 1);
  EXPECT_DOUBLE_EQ(t[t.size() / 2], 3.0);
  EXPECT_DOUBLE_EQ(t.samples().maxCoeff(), 3.0);
  EXPECT_EQ(t[0], 0.0);
  EXPECT_EQ(t[t.size() - 1], 0.0);
  EXPECT_GE(t.samples().minCoeff(), 0.0);
  const double integral = t.samples().sum() * t.dx();
  const double analytic = 2.0 * 3.0 * 1.2 / M_PI;
  EXPECT_LE(std::fabs(integral - analytic) / analytic, 0.01);
  EXPECT_THROW(gen_template(TemplateSpec{TemplateShape::half_sine, 0.015, 1.0}, 0.01), DomainError);
}

TEST(Noise, LevelZeroIsIdentity) {
  const Signal s = gen_object(ObjectSpec{});
  const Signal n = add_noise(s, NoiseSpec{0, 99, 3, 1.0});
  EXPECT_EQ(n.samples(), s.samples());
}

TEST(Noise, Deterministic) {
  const Signal s = gen_object(ObjectSpec{});
  const Signal a = add_noise(s, NoiseSpec{7, 5, 11, 1.0});
  const Signal b = add_noise(s, NoiseSpec{7, 5, 11, 1.0});
  EXPECT_EQ(a.samples(), b.samples());
  const Signal c = add_noise(s, NoiseSpec{7, 5, 12, 1.0});
  EXPECT_NE(a.samples(), c.samples());
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
  EXPECT_NE(derive_seed(0, 0, 1), derive_seed(0, 1, 0));
}

TEST(Noise, UniformMoments) {
  const Eigen::Index n = 200000;
  const Signal zero(Eigen::VectorXd::Zero(n), 0.0, 1.0);
  const NoiseSpec spec{20, 123, 0, 1.0};
  const double L = spec.amplitude();
  ASSERT_DOUBLE_EQ(L, 1.0);
  const Eigen::VectorXd d = add_noise(zero, spec).samples();
  const double mean = d.mean();
  const double var = (d.array() - mean).square().sum() / double(n - 1);
  const double sd_mean = L / std::sqrt(12.0 * double(n));
  EXPECT_LE(std::fabs(mean), 3 * sd_mean);
  // Var of the sample variance of U(-L/2, L/2): (mu4 - sigma^4)/n with mu4 = L^4/80.
  const double sd_var = std::sqrt((std::pow(L, 4) / 80 - std::pow(L * L / 12, 2)) / double(n));
  EXPECT_LE(std::fabs(var - L * L / 12), 3 * sd_var);
  EXPECT_LE(d.cwiseAbs().maxCoeff(), L / 2);
}

TEST(Noise, MultiplierScalesAmplitude) {
  EXPECT_DOUBLE_EQ((NoiseSpec{10, 0, 0, 1.0}.amplitude()), 0.5);
  EXPECT_DOUBLE_EQ((NoiseSpec{10, 0, 0, 4.0}.amplitude()), 2.0);
  EXPECT_THROW(add_noise(gen_object(ObjectSpec{}), NoiseSpec{21, 0, 0, 1.0}), DomainError);
  EXPECT_THROW(add_noise(gen_object(ObjectSpec{}), NoiseSpec{-1, 0, 0, 1.0}), DomainError);
}

TEST(Peaks, TriangleWidth) {
  const double dx = 0.01;
  const Eigen::VectorXd v = triangles(200, dx, {1.0}, 4 * dx);
  const Eigen::Index peak = 100;
  ASSERT_DOUBLE_EQ(v[peak], 1.0);
  // Samples >= 0.75 span one step each side; crossings land exactly on them.
  EXPECT_NEAR(width_at_75(v, peak, dx), 2 * dx, 1e-12);
}

TEST(Peaks, InterpolatedTriangleWidth) {
  const double dx = 0.01;
  const double hw = 0.5;
  const Eigen::VectorXd v = triangles(300, dx, {1.5}, hw);
  EXPECT_NEAR(width_at_75(v, 150, dx), 2 * 0.25 * hw, 1e-12);
}

TEST(Peaks, GaussianWidth) {
  const double dx = 0.01;
  for (double sigma : {0.1, 0.15, 0.3, 0.5}) {
    Eigen::VectorXd v(800);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double x = double(i) * dx - 4.0;
      v[i] = std::exp(-x * x / (2 * sigma * sigma));
    }
    const double analytic = 2 * sigma * std::sqrt(2 * std::log(4.0 / 3.0));
    EXPECT_NEAR(analytic / sigma, 1.517, 1e-3);
    EXPECT_NEAR(width_at_75(v, 400, dx), analytic, 2 * dx);
  }
}

TEST(Peaks, WidthNeverBelowOneStep) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(9);
  v[4] = 1.0;
  EXPECT_DOUBLE_EQ(width_at_75(v, 4, 0.1), 0.1);
}

TEST(Peaks, TieBreakIsLeftmost) {
  const double dx = 0.01;
  const CorrelationResult r = profile_from(triangles(500, dx, {1.0, 3.0}, 0.5), 0.0, dx);
  const PeakMeasurement pm = detect_peaks(r, ObjectSpec{});
  EXPECT_NEAR(pm.x1, 1.0, 1e-12);
  ASSERT_TRUE(pm.has_secondary);
  EXPECT_NEAR(pm.x2, 3.0, 1e-12);
}

TEST(Peaks, SecondaryRespectsExclusionRadius) {
  const double dx = 0.01;
  // A bump 0.5 away from the main peak sits inside 3 * 0.3 and is ignored.
  const CorrelationResult near =
      profile_from(triangles(500, dx, {2.0, 2.5}, 0.1, {1.0, 0.5}), 0.0, dx);
  EXPECT_FALSE(detect_peaks(near, ObjectSpec{}).has_secondary);
  const CorrelationResult far =
      profile_from(triangles(500, dx, {2.0, 3.5}, 0.1, {1.0, 0.5}), 0.0, dx);
  const PeakMeasurement pm = detect_peaks(far, ObjectSpec{});
  ASSERT_TRUE(pm.has_secondary);
  EXPECT_NEAR(pm.h2, 0.5, 1e-12);
  // Negative local maxima never count.
  const CorrelationResult neg = profile_from(
      triangles(500, dx, {2.0, 4.0}, 0.1, {1.0, -0.5}).array() - 0.1, 0.0, dx);
  EXPECT_FALSE(detect_peaks(neg, ObjectSpec{}).has_secondary);
}

TEST(Peaks, ConstantProfileIsRejected) {
  EXPECT_THROW(detect_peaks(profile_from(Eigen::VectorXd::Ones(50), 0.0, 0.1), ObjectSpec{}),
               DomainError);
}

TEST(Indices, PerfectResult) {
  const ObjectSpec spec;
  PeakMeasurement pm;
  pm.x1 = spec.x_p;
  pm.h1 = 2.0;
  pm.w1 = 0.4;
  pm.has_secondary = true;
  pm.x2 = spec.x_s;
  pm.h2 = 1.0;
  pm.w2 = 0.2;
  pm.i1 = 450;
  pm.i2 = 180;
  const CorrelationResult r = profile_from(gen_object(spec).samples(), 0.0, 0.01);
  const PerformanceIndices idx = compute_indices(pm, spec, r);
  EXPECT_EQ(idx.r_xp, 0.0);
  EXPECT_EQ(*idx.r_xs, 0.0);
  EXPECT_DOUBLE_EQ(*idx.r_h, 1.0);
  EXPECT_DOUBLE_EQ(idx.r_wp, 0.4);
  EXPECT_DOUBLE_EQ(*idx.r_ws, 0.4);
  EXPECT_TRUE(idx.complete());
}

TEST(Indices, OverlapOfTwoTriangles) {
  const double dx = 0.01;
  const CorrelationResult r = profile_from(triangles(500, dx, {1.0, 3.0}, 0.5), 0.0, dx);
  const PeakMeasurement pm = detect_peaks(r, ObjectSpec{});
  const PerformanceIndices idx = compute_indices(pm, ObjectSpec{}, r);
  // Each inner half contributes dx * sum_{j=0}^{50} (1 - j/50) = 0.255.
  double expected = 0.0;
  for (int j = 0; j <= 50; ++j) expected += 2 * dx * (1.0 - j / 50.0);
  ASSERT_TRUE(idx.alpha_overlap);
  EXPECT_NEAR(*idx.alpha_overlap, expected, 1e-12);
  EXPECT_NEAR(expected, 0.51, 1e-12);
}

TEST(Indices, OverlapClampOption) {
  const double dx = 0.01;
  Eigen::VectorXd v = triangles(500, dx, {1.0, 3.0}, 0.5);
  v.segment(180, 40).array() -= 0.3;  // a dip between the peaks
  const CorrelationResult r = profile_from(v, 0.0, dx);
  const PeakMeasurement pm = detect_peaks(r, ObjectSpec{});
  const double raw = *compute_indices(pm, ObjectSpec{}, r).alpha_overlap;
  const double clamped = *compute_indices(pm, ObjectSpec{}, r, IndexOptions{true}).alpha_overlap;
  EXPECT_NEAR(raw, 0.51 - 40 * 0.3 * dx, 1e-12);
  EXPECT_NEAR(clamped, 0.51, 1e-12);
}

TEST(Indices, MissingSecondaryLeavesFieldsEmpty) {
  const double dx = 0.01;
  const CorrelationResult r = profile_from(triangles(500, dx, {2.0}, 0.3), 0.0, dx);
  const PeakMeasurement pm = detect_peaks(r, ObjectSpec{});
  EXPECT_FALSE(pm.has_secondary);
  const PerformanceIndices idx = compute_indices(pm, ObjectSpec{}, r);
  EXPECT_FALSE(idx.r_xs || idx.r_h || idx.r_ws || idx.alpha_overlap);
  EXPECT_FALSE(idx.complete());
  EXPECT_NEAR(idx.r_xp, (4.5 - 2.0) / 4.5, 1e-12);
}

TEST(Indices, ScaleInvariantWidthsAndOverlap) {
  const double dx = 0.01;
  const Eigen::VectorXd v = triangles(500, dx, {1.0, 3.0}, 0.5, {1.0, 0.6});
  const CorrelationResult a = profile_from(v, 0.0, dx);
  const CorrelationResult b = profile_from(37.0 * v, 0.0, dx);
  const auto ia = compute_indices(detect_peaks(a, ObjectSpec{}), ObjectSpec{}, a);
  const auto ib = compute_indices(detect_peaks(b, ObjectSpec{}), ObjectSpec{}, b);
  EXPECT_NEAR(ia.r_wp, ib.r_wp, 1e-12);
  EXPECT_NEAR(*ia.r_ws, *ib.r_ws, 1e-12);
  EXPECT_NEAR(*ia.r_h, *ib.r_h, 1e-12);
  EXPECT_NEAR(*ia.alpha_overlap, *ib.alpha_overlap, 1e-12);
}

struct Noiseless {
  PeakMeasurement pm;
  PerformanceIndices idx;
};

Noiseless noiseless(const char* method) {
  const ObjectSpec spec;
  const Signal object = gen_object(spec);
  const Signal tmpl = gen_template(TemplateSpec{}, object.dx());
  const CorrelationResult r = match(object, tmpl, parse_match_spec(method));
  const PeakMeasurement pm = detect_peaks(r, spec);
  return {pm, compute_indices(pm, spec, r)};
}

TEST(Indices, NoiselessOrderingsAcrossMethods) {
  const Noiseless classic = noiseless("classic");
  const Noiseless jaccard = noiseless("jaccard");
  const Noiseless coincidence = noiseless("coincidence");
  ASSERT_TRUE(classic.idx.complete() && jaccard.idx.complete() && coincidence.idx.complete());
  EXPECT_GT(*coincidence.idx.r_h, *jaccard.idx.r_h);
  EXPECT_GT(*jaccard.idx.r_h, *classic.idx.r_h);
  EXPECT_LT(coincidence.pm.w1, jaccard.pm.w1);
  EXPECT_LT(jaccard.pm.w1, classic.pm.w1);
  EXPECT_LE(std::fabs(coincidence.idx.r_xp), 0.01 / 4.5 + 1e-12);
}

SweepConfig small_sweep() {
  SweepConfig cfg = SweepConfig::defaults();
  cfg.levels = {0, 10, 20};
  cfg.realizations = 4;
  cfg.base_seed = 42;
  return cfg;
}

bool same_records(const SweepResult& a, const SweepResult& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.method != y.method || x.level != y.level || x.realization != y.realization) return false;
    if (x.indices.has_value() != y.indices.has_value()) return false;
    if (x.indices && x.indices->values() != y.indices->values()) return false;
  }
  return true;
}

TEST(Sweep, DeterministicAndThreadIndependent) {
  SweepConfig cfg = small_sweep();
  cfg.threads = 1;
  const SweepResult a = run_sweep(cfg);
  const SweepResult b = run_sweep(cfg);
  cfg.threads = 3;
  const SweepResult c = run_sweep(cfg);
  EXPECT_TRUE(same_records(a, b));
  EXPECT_TRUE(same_records(a, c));
  ASSERT_EQ(a.records.size(), 4u * 3 * 4);
  EXPECT_EQ(a.records.front().method, "classic");
  EXPECT_EQ(a.records.back().method, "combined_coincidence");
  EXPECT_EQ(a.records.back().level, 20);
  EXPECT_EQ(a.records.back().realization, 3);
}

TEST(Sweep, MethodsShareTheNoisyObject) {
  SweepConfig cfg = small_sweep();
  const SweepResult all = run_sweep(cfg);
  cfg.methods = {parse_match_spec("coincidence")};
  const SweepResult one = run_sweep(cfg);
  std::vector<SweepRecord> subset;
  for (const auto& r : all.records) {
    if (r.method == "coincidence") subset.push_back(r);
  }
  SweepResult filtered;
  filtered.records = subset;
  EXPECT_TRUE(same_records(filtered, one));
}

TEST(Sweep, LevelZeroHasNoSpread) {
  SweepConfig cfg = small_sweep();
  cfg.levels = {0};
  const SweepResult r = run_sweep(cfg);
  for (const auto& agg : r.aggregates) {
    for (const auto& st : agg.stats) {
      EXPECT_EQ(st.stddev, 0.0) << agg.method;
      EXPECT_EQ(st.n + st.excluded, cfg.realizations);
    }
  }
}

TEST(Sweep, SingleRecordAggregatesEqualTheRecord) {
  SweepConfig cfg = small_sweep();
  cfg.methods = {parse_match_spec("coincidence")};
  cfg.levels = {0};
  cfg.realizations = 1;
  const SweepResult r = run_sweep(cfg);
  ASSERT_EQ(r.records.size(), 1u);
  ASSERT_EQ(r.aggregates.size(), 1u);
  const auto values = r.records[0].indices->values();
  for (std::size_t k = 0; k < PerformanceIndices::kCount; ++k) {
    EXPECT_EQ(r.aggregates[0].stats[k].mean, *values[k]);
    EXPECT_EQ(r.aggregates[0].stats[k].n, 1);
    EXPECT_EQ(r.aggregates[0].stats[k].stddev, 0.0);
  }
  EXPECT_NE(r.find("coincidence", 0), nullptr);
  EXPECT_EQ(r.find("coincidence", 1), nullptr);
}

TEST(Sweep, AggregateExcludesMissingValues) {
  PerformanceIndices with;
  with.r_xp = 1.0;
  with.r_wp = 2.0;
  with.r_xs = 3.0;
  with.r_h = 4.0;
  with.r_ws = 5.0;
  with.alpha_overlap = 6.0;
  PerformanceIndices without;
  without.r_xp = 3.0;
  without.r_wp = 4.0;
  const std::vector<SweepRecord> records = {
      {"m", 1, 0, with}, {"m", 1, 1, without}, {"m", 1, 2, std::nullopt}};
  const auto agg = aggregate(records);
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_DOUBLE_EQ(agg[0].stats[0].mean, 2.0);
  EXPECT_DOUBLE_EQ(agg[0].stats[0].stddev, std::sqrt(2.0));
  EXPECT_EQ(agg[0].stats[0].n, 2);
  EXPECT_EQ(agg[0].stats[0].excluded, 1);
  EXPECT_DOUBLE_EQ(agg[0].stats[1].mean, 3.0);
  EXPECT_EQ(agg[0].stats[1].n, 1);
  EXPECT_EQ(agg[0].stats[1].excluded, 2);
}

TEST(Sweep, ConfigValidation) {
  SweepConfig cfg = small_sweep();
  cfg.methods.push_back(parse_match_spec("classic"));
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = small_sweep();
  cfg.levels = {25};
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = small_sweep();
  cfg.realizations = 0;
  EXPECT_THROW(run_sweep(cfg), DomainError);
}

}  // namespace
