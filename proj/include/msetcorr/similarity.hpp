#pragma once

// Multiset similarity functionals over sampled signals.
//
// Every functional is a ratio of Riemann sums over the shared grid. The raw
// per-sample sums are gathered once into OverlapSums, and each index is a
// function of those sums, so the sliding correlation engine can reuse the same
// arithmetic after adding the contribution of samples outside a window.

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

#include "msetcorr/errors.hpp"
#include "msetcorr/signal.hpp"

namespace msetcorr {

struct SimilarityConfig {
  /// Weight of same-sign contributions in s_pm.
  double alpha = 0.5;
  /// Integrated denominators below this are treated as zero and the index is 0.
  double eps_denom = 1e-12;
  /// Use the sign product s_f*s_g in the interiority numerator.
  bool signed_interiority = false;
  /// Use ∫(|f|+|g|) instead of ∫(f+g) as the addition-based denominator.
  bool absolute_addition_denominator = false;

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw DomainError("alpha must lie in [0, 1]");
    }
    if (!(eps_denom > 0.0)) {
      throw DomainError("eps_denom must be positive");
    }
  }
};

/// Per-sample sums shared by every functional. None of them carries the dx factor.
template <typename Scalar>
struct OverlapSums {
  Scalar signed_min = 0;         // Σ s_f s_g min(s_f f, s_g g)
  Scalar unsigned_min = 0;       // Σ min(s_f f, s_g g)
  Scalar same_sign_min = 0;      // Σ |s_f + s_g|/2 min(s_f f, s_g g)
  Scalar opposite_sign_min = 0;  // Σ |s_f - s_g|/2 min(s_f f, s_g g)
  Scalar abs_max = 0;            // Σ max(s_f f, s_g g)
  Scalar abs_f = 0;
  Scalar abs_g = 0;
  Scalar sum_f = 0;
  Scalar sum_g = 0;
  Scalar dot = 0;

  OverlapSums& operator+=(const OverlapSums& o) {
    signed_min += o.signed_min;
    unsigned_min += o.unsigned_min;
    same_sign_min += o.same_sign_min;
    opposite_sign_min += o.opposite_sign_min;
    abs_max += o.abs_max;
    abs_f += o.abs_f;
    abs_g += o.abs_g;
    sum_f += o.sum_f;
    sum_g += o.sum_g;
    dot += o.dot;
    return *this;
  }
};

template <typename DerivedF, typename DerivedG>
OverlapSums<typename DerivedF::Scalar> overlap_sums(const Eigen::MatrixBase<DerivedF>& f,
                                                    const Eigen::MatrixBase<DerivedG>& g) {
  using Scalar = typename DerivedF::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedG::Scalar>, "mixed scalar types");
  if (f.size() != g.size()) {
    throw AlignmentError("overlap_sums: operands differ in length");
  }
  const auto a = f.derived().array();
  const auto b = g.derived().array();
  const auto sf = a.sign();
  const auto sg = b.sign();
  const auto low = (sf * a).min(sg * b);

  OverlapSums<Scalar> s;
  s.signed_min = (sf * sg * low).sum();
  s.unsigned_min = low.sum();
  s.same_sign_min = ((sf + sg).abs() * low).sum() / Scalar(2);
  s.opposite_sign_min = ((sf - sg).abs() * low).sum() / Scalar(2);
  s.abs_max = (sf * a).max(sg * b).sum();
  s.abs_f = a.abs().sum();
  s.abs_g = b.abs().sum();
  s.sum_f = a.sum();
  s.sum_g = b.sum();
  s.dot = (a * b).sum();
  return s;
}

/// Indices evaluated from gathered sums. `dx` scales the guards only; it cancels in every ratio.
namespace from_sums {

template <typename Scalar>
Scalar jaccard_real(const OverlapSums<Scalar>& s, Scalar dx, const SimilarityConfig& cfg) {
  if (s.abs_max * dx < Scalar(cfg.eps_denom)) return Scalar(0);
  return s.signed_min / s.abs_max;
}

template <typename Scalar>
Scalar interiority_real(const OverlapSums<Scalar>& s, Scalar dx, const SimilarityConfig& cfg) {
  const Scalar smaller = std::min(s.abs_f, s.abs_g);
  if (smaller * dx < Scalar(cfg.eps_denom)) return Scalar(0);
  const Scalar num = cfg.signed_interiority ? s.signed_min : s.unsigned_min;
  return std::clamp(num / smaller, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar coincidence_real(const OverlapSums<Scalar>& s, Scalar dx, const SimilarityConfig& cfg) {
  return jaccard_real(s, dx, cfg) * interiority_real(s, dx, cfg);
}

template <typename Scalar>
Scalar jaccard_addition(const OverlapSums<Scalar>& s, Scalar dx, const SimilarityConfig& cfg) {
  using std::abs;
  const Scalar den = cfg.absolute_addition_denominator ? s.abs_f + s.abs_g : s.sum_f + s.sum_g;
  if (abs(den * dx) < Scalar(cfg.eps_denom)) return Scalar(0);
  return Scalar(2) * s.signed_min / den;
}

template <typename Scalar>
Scalar coincidence_addition(const OverlapSums<Scalar>& s, Scalar dx, const SimilarityConfig& cfg) {
  return jaccard_addition(s, dx, cfg) * interiority_real(s, dx, cfg);
}

}  // namespace from_sums

// ---------------------------------------------------------------------------
// Discrete multisets

/// Non-negative, finite multiplicities indexed 1..N.
template <typename Scalar>
class BasicMultiset {
 public:
  explicit BasicMultiset(Vector<Scalar> multiplicities) : m_(std::move(multiplicities)) {
    if (!m_.allFinite()) throw DomainError("multiplicities must be finite");
    if ((m_.array() < Scalar(0)).any()) {
      throw DomainError("multiplicities must be non-negative; use jaccard_real for signed data");
    }
  }

  const Vector<Scalar>& multiplicities() const noexcept { return m_; }
  Eigen::Index size() const noexcept { return m_.size(); }

  bool is_set() const {
    return ((m_.array() == Scalar(0)) || (m_.array() == Scalar(1))).all();
  }

 private:
  Vector<Scalar> m_;
};

using Multiset = BasicMultiset<double>;

template <typename Scalar>
Scalar multiset_jaccard(const BasicMultiset<Scalar>& a, const BasicMultiset<Scalar>& b) {
  if (a.size() != b.size()) throw AlignmentError("multisets differ in length");
  const auto x = a.multiplicities().array();
  const auto y = b.multiplicities().array();
  const Scalar uni = x.max(y).sum();
  if (uni == Scalar(0)) return Scalar(0);
  return x.min(y).sum() / uni;
}

/// Classic set Jaccard |A∩B|/|A∪B| for {0,1} multiplicities.
template <typename Scalar>
Scalar set_jaccard(const BasicMultiset<Scalar>& a, const BasicMultiset<Scalar>& b) {
  if (!a.is_set() || !b.is_set()) {
    throw DomainError("set_jaccard requires multiplicities in {0, 1}");
  }
  return multiset_jaccard(a, b);
}

// ---------------------------------------------------------------------------
// Functionals over aligned signals

template <typename Scalar>
OverlapSums<Scalar> overlap_sums(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  require_aligned(f, g);
  return overlap_sums(f.samples(), g.samples());
}

/// f ⊓ g = ∫ s_f s_g min(s_f f, s_g g) dx
template <typename Scalar>
Scalar signed_min_intersection(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  return f.dx() * overlap_sums(f, g).signed_min;
}

/// f ⊔~ g = ∫ max(s_f f, s_g g) dx
template <typename Scalar>
Scalar abs_union_max(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  return f.dx() * overlap_sums(f, g).abs_max;
}

template <typename Scalar>
Scalar s_plus(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  return f.dx() * overlap_sums(f, g).same_sign_min;
}

template <typename Scalar>
Scalar s_minus(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  return f.dx() * overlap_sums(f, g).opposite_sign_min;
}

/// alpha*s_plus - (1-alpha)*s_minus. At alpha = 0.5 this is half of f ⊓ g.
template <typename Scalar>
Scalar s_pm(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g, Scalar alpha) {
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) throw DomainError("alpha must lie in [0, 1]");
  const auto s = overlap_sums(f, g);
  return f.dx() * (alpha * s.same_sign_min - (Scalar(1) - alpha) * s.opposite_sign_min);
}

/// s_pm rescaled by 2 so that alpha = 0.5 reproduces f ⊓ g exactly.
template <typename Scalar>
Scalar s_pm_normalized(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g, Scalar alpha) {
  return Scalar(2) * s_pm(f, g, alpha);
}

template <typename Scalar>
Scalar jaccard_real(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g,
                    const SimilarityConfig& cfg = {}) {
  return from_sums::jaccard_real(overlap_sums(f, g), f.dx(), cfg);
}

template <typename Scalar>
Scalar interiority_real(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g,
                        const SimilarityConfig& cfg = {}) {
  return from_sums::interiority_real(overlap_sums(f, g), f.dx(), cfg);
}

template <typename Scalar>
Scalar coincidence_real(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g,
                        const SimilarityConfig& cfg = {}) {
  return from_sums::coincidence_real(overlap_sums(f, g), f.dx(), cfg);
}

template <typename Scalar>
Scalar jaccard_addition(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g,
                        const SimilarityConfig& cfg = {}) {
  return from_sums::jaccard_addition(overlap_sums(f, g), f.dx(), cfg);
}

template <typename Scalar>
Scalar coincidence_addition(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g,
                            const SimilarityConfig& cfg = {}) {
  return from_sums::coincidence_addition(overlap_sums(f, g), f.dx(), cfg);
}

template <typename Scalar>
Scalar inner_product(const BasicSignal<Scalar>& f, const BasicSignal<Scalar>& g) {
  require_aligned(f, g);
  return f.dx() * f.samples().dot(g.samples());
}

}  // namespace msetcorr
