#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "msetcorr/errors.hpp"

namespace msetcorr {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A real function sampled on the uniform grid x_i = x0 + i * dx.
template <typename Scalar>
class BasicSignal {
 public:
  using scalar_type = Scalar;

  BasicSignal(Vector<Scalar> samples, Scalar x0, Scalar dx)
      : samples_(std::move(samples)), x0_(x0), dx_(dx) {
    if (!(dx_ > Scalar(0)) || !std::isfinite(static_cast<double>(dx_))) {
      throw DomainError("signal spacing dx must be a positive finite number");
    }
    if (!std::isfinite(static_cast<double>(x0_))) {
      throw DomainError("signal origin x0 must be finite");
    }
    if (samples_.size() == 0) {
      throw DomainError("signal must contain at least one sample");
    }
    if (!samples_.allFinite()) {
      throw DomainError("signal samples must be finite");
    }
  }

  const Vector<Scalar>& samples() const noexcept { return samples_; }
  Scalar x0() const noexcept { return x0_; }
  Scalar dx() const noexcept { return dx_; }
  Eigen::Index size() const noexcept { return samples_.size(); }

  Scalar x(Eigen::Index i) const noexcept { return x0_ + static_cast<Scalar>(i) * dx_; }
  Scalar operator[](Eigen::Index i) const noexcept { return samples_[i]; }

  /// Abscissae of every sample.
  Vector<Scalar> grid() const {
    return Vector<Scalar>::LinSpaced(size(), Scalar(0), static_cast<Scalar>(size() - 1)) * dx_ +
           Vector<Scalar>::Constant(size(), x0_);
  }

 private:
  Vector<Scalar> samples_;
  Scalar x0_;
  Scalar dx_;
};

using Signal = BasicSignal<double>;

namespace detail {

template <typename Scalar>
bool nearly_equal(Scalar a, Scalar b) {
  using std::abs;
  const Scalar scale = std::max({Scalar(1), abs(a), abs(b)});
  return abs(a - b) <= Scalar(1e-12) * scale;
}

}  // namespace detail

template <typename Scalar>
bool same_spacing(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  return detail::nearly_equal(f.dx(), g.dx());
}

/// Two signals are aligned when they share origin, spacing and length.
template <typename Scalar>
bool aligned(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  return f.size() == g.size() && same_spacing(f, g) && detail::nearly_equal(f.x0(), g.x0());
}

template <typename Scalar>
void require_aligned(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  if (!aligned(f, g)) {
    throw AlignmentError("signals are not aligned (x0, dx and length must match)");
  }
}

/// Scales every sample by c, keeping the grid.
template <typename Scalar>
BasicSignal<Scalar> scaled(const BasicSignal<Scalar>& f, Scalar c) {
  return BasicSignal<Scalar>(f.samples() * c, f.x0(), f.dx());
}

}  // namespace msetcorr
