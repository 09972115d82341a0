#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "msetcorr/benchmark.hpp"

namespace msetcorr {

/// Eigenpairs of a symmetric matrix, eigenvalues in non-increasing order.
template <typename Scalar>
struct SymmetricEigen {
  Vector<Scalar> values;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // one eigenvector per column
  int sweeps = 0;
};

/// Cyclic Jacobi rotations. Each eigenvector is signed so its largest-magnitude component
/// (first one on ties) is positive.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& a,
                                                      int max_sweeps = 100);

struct FeatureMatrix {
  Eigen::MatrixXd values;            // rows = observations
  std::vector<std::string> columns;  // column names
  std::vector<std::string> labels;   // one per row
  std::size_t dropped_rows = 0;      // observations discarded for missing values

  void validate() const;
};

/// Rows for one noise level: every complete record of the listed methods (all methods when
/// `methods` is empty).
FeatureMatrix build_feature_matrix(const std::vector<SweepRecord>& records, int level,
                                   const std::vector<std::string>& methods = {});

struct PcaModel {
  std::vector<std::string> columns;       // retained columns
  std::vector<std::string> dropped_columns;
  Eigen::VectorXd means;
  Eigen::VectorXd scales;                 // ones when not standardized
  Eigen::VectorXd eigenvalues;            // all of them, non-increasing
  Eigen::MatrixXd axes;                   // columns.size() x 2
  Eigen::Vector2d variance_explained;
  bool standardized = true;
  std::vector<std::string> warnings;
};

PcaModel pca_fit(const FeatureMatrix& m, bool standardize = true);

struct Projection {
  std::string label;
  double pc1 = 0.0;
  double pc2 = 0.0;
};

std::vector<Projection> project(const FeatureMatrix& m, const PcaModel& model);

struct GroupDispersion {
  std::vector<std::pair<std::string, double>> dispersion;  // first-appearance label order
  std::vector<std::pair<std::string, Eigen::Vector2d>> centroids;
  std::vector<std::string> warnings;

  const double* find(const std::string& label) const;
  const Eigen::Vector2d* centroid(const std::string& label) const;
};

/// Mean distance of each label's points to the label centroid in the (pc1, pc2) plane.
GroupDispersion group_dispersion(const std::vector<Projection>& points);

// ---------------------------------------------------------------------------

template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                      int max_sweeps) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using std::abs;
  using std::sqrt;
  if (input.rows() != input.cols()) throw AnalysisError("jacobi_eigen needs a square matrix");
  const Eigen::Index n = input.rows();
  Mat a = (input + input.transpose()) / Scalar(2);
  Mat v = Mat::Identity(n, n);

  SymmetricEigen<Scalar> out;
  const Scalar scale = std::max(a.cwiseAbs().maxCoeff(), std::numeric_limits<Scalar>::min());
  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    Scalar off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (sqrt(off) <= std::numeric_limits<Scalar>::epsilon() * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        // Rotation angle that annihilates a(p, q).
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * a(p, q));
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                         (abs(theta) + sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values[k] = a(src, src);
    Vector<Scalar> col = v.col(src);
    Eigen::Index lead = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (abs(col[i]) > abs(col[lead])) lead = i;
    }
    if (col[lead] < Scalar(0)) col = -col;
    out.vectors.col(k) = col.normalized();
  }
  return out;
}

}  // namespace msetcorr
