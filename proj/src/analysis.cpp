#include "msetcorr/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace msetcorr {

void FeatureMatrix::validate() const {
  if (values.rows() < 2) throw AnalysisError("feature matrix needs at least 2 rows");
  if (values.cols() < 2) throw AnalysisError("feature matrix needs at least 2 columns");
  if (static_cast<Eigen::Index>(columns.size()) != values.cols()) {
    throw AnalysisError("feature matrix column names do not match its width");
  }
  if (static_cast<Eigen::Index>(labels.size()) != values.rows()) {
    throw AnalysisError("feature matrix labels do not match its height");
  }
  if (!values.allFinite()) throw AnalysisError("feature matrix contains missing values");
}

FeatureMatrix build_feature_matrix(const std::vector<SweepRecord>& records, int level,
                                   const std::vector<std::string>& methods) {
  const auto wanted = [&](const std::string& name) {
    return methods.empty() || std::find(methods.begin(), methods.end(), name) != methods.end();
  };
  FeatureMatrix m;
  m.columns.assign(PerformanceIndices::names().begin(), PerformanceIndices::names().end());
  std::vector<std::array<double, PerformanceIndices::kCount>> rows;
  for (const auto& rec : records) {
    if (rec.level != level || !wanted(rec.method)) continue;
    if (!rec.indices || !rec.indices->complete()) {
      ++m.dropped_rows;
      continue;
    }
    const auto v = rec.indices->values();
    std::array<double, PerformanceIndices::kCount> row{};
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = *v[k];
    rows.push_back(row);
    m.labels.push_back(rec.method);
  }
  m.values.resize(static_cast<Eigen::Index>(rows.size()), PerformanceIndices::kCount);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < PerformanceIndices::kCount; ++k) {
      m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = rows[r][k];
    }
  }
  return m;
}

PcaModel pca_fit(const FeatureMatrix& m, bool standardize) {
  m.validate();
  const Eigen::Index n = m.values.rows();
  const Eigen::RowVectorXd mean = m.values.colwise().mean();
  const Eigen::MatrixXd centered = m.values.rowwise() - mean;
  const Eigen::RowVectorXd sd =
      (centered.colwise().squaredNorm() / static_cast<double>(n - 1)).cwiseSqrt();

  PcaModel model;
  model.standardized = standardize;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
    const std::string& name = m.columns[static_cast<std::size_t>(j)];
    if (sd[j] <= 1e-12 * (1.0 + std::abs(mean[j]))) {
      model.dropped_columns.push_back(name);
      model.warnings.push_back("column '" + name + "' has zero variance and was dropped");
      continue;
    }
    kept.push_back(j);
    model.columns.push_back(name);
  }
  const auto k = static_cast<Eigen::Index>(kept.size());
  if (k < 2) throw AnalysisError("fewer than 2 columns with nonzero variance; rank < 2");

  model.means.resize(k);
  model.scales.resize(k);
  Eigen::MatrixXd z(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::Index j = kept[static_cast<std::size_t>(c)];
    model.means[c] = mean[j];
    model.scales[c] = standardize ? sd[j] : 1.0;
    z.col(c) = centered.col(j) / model.scales[c];
  }

  const Eigen::MatrixXd cov = (z.transpose() * z) / static_cast<double>(n - 1);
  const auto eig = jacobi_eigen(cov);
  model.eigenvalues = eig.values;
  model.axes = eig.vectors.leftCols(2);
  const double total = eig.values.sum();
  if (!(total > 0.0)) throw AnalysisError("covariance has no positive variance");
  model.variance_explained = eig.values.head<2>() / total;
  return model;
}

std::vector<Projection> project(const FeatureMatrix& m, const PcaModel& model) {
  if (static_cast<Eigen::Index>(m.columns.size()) != m.values.cols() ||
      static_cast<Eigen::Index>(m.labels.size()) != m.values.rows()) {
    throw AnalysisError("malformed feature matrix");
  }
  const auto k = static_cast<Eigen::Index>(model.columns.size());
  Eigen::MatrixXd z(m.values.rows(), k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const auto it = std::find(m.columns.begin(), m.columns.end(), model.columns[c]);
    if (it == m.columns.end()) {
      throw AnalysisError("schema mismatch: column '" + model.columns[c] + "' is missing");
    }
    const auto j = static_cast<Eigen::Index>(it - m.columns.begin());
    z.col(c) = (m.values.col(j).array() - model.means[c]) / model.scales[c];
  }
  const Eigen::MatrixXd scores = z * model.axes;
  std::vector<Projection> out;
  out.reserve(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    out.push_back({m.labels[static_cast<std::size_t>(r)], scores(r, 0), scores(r, 1)});
  }
  return out;
}

const double* GroupDispersion::find(const std::string& label) const {
  for (const auto& [name, value] : dispersion) {
    if (name == label) return &value;
  }
  return nullptr;
}

const Eigen::Vector2d* GroupDispersion::centroid(const std::string& label) const {
  for (const auto& [name, value] : centroids) {
    if (name == label) return &value;
  }
  return nullptr;
}

GroupDispersion group_dispersion(const std::vector<Projection>& points) {
  std::vector<std::string> labels;
  for (const auto& p : points) {
    if (std::find(labels.begin(), labels.end(), p.label) == labels.end()) labels.push_back(p.label);
  }
  GroupDispersion out;
  for (const auto& label : labels) {
    std::vector<Eigen::Vector2d> group;
    for (const auto& p : points) {
      if (p.label == label) group.emplace_back(p.pc1, p.pc2);
    }
    if (group.size() < 2) {
      out.warnings.push_back("label '" + label + "' has fewer than 2 points and was skipped");
      continue;
    }
    Eigen::Vector2d centre = Eigen::Vector2d::Zero();
    for (const auto& q : group) centre += q;
    centre /= static_cast<double>(group.size());
    double spread = 0.0;
    for (const auto& q : group) spread += (q - centre).norm();
    out.dispersion.emplace_back(label, spread / static_cast<double>(group.size()));
    out.centroids.emplace_back(label, centre);
  }
  return out;
}

}  // namespace msetcorr
