#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "msetcorr/signal.hpp"
#include "msetcorr/similarity.hpp"

namespace msetcorr {

enum class MethodKind {
  classic,
  jaccard_real,
  interiority,
  coincidence,
  jaccard_addition,
  coincidence_addition,
};

struct Method {
  MethodKind kind = MethodKind::coincidence;
  SimilarityConfig cfg{};
};

enum class Boundary {
  zero_pad,  // object treated as zero outside its grid; one lag per object sample
  valid,     // only lags where the template lies fully inside the object
};

/// Matching profile s(y) sampled at uniformly spaced lags.
struct CorrelationResult {
  Eigen::VectorXd lags;
  Eigen::VectorXd values;
  Method method;
  Boundary boundary = Boundary::zero_pad;
  /// Lag spacing; equals the grid spacing of the correlated signals.
  double dx = 0.0;

  Eigen::Index size() const noexcept { return values.size(); }

  /// The profile as a signal on its lag grid.
  Signal as_signal() const;
};

/// A correlation method optionally preceded by a classic cross-correlation stage.
struct MatchSpec {
  Method method;
  bool combined = false;
};

std::string_view to_string(MethodKind kind);
std::string_view to_string(Boundary boundary);
std::string to_string(const MatchSpec& spec);

/// Accepts the canonical names ("classic", "jaccard", "coincidence", ...), "jaccard_real" as an
/// alias of "jaccard", and a "combined_" prefix on any multiset method.
MatchSpec parse_match_spec(std::string_view name, const SimilarityConfig& cfg = {});
MethodKind parse_method_kind(std::string_view name);
Boundary parse_boundary(std::string_view name);

bool is_multiset(MethodKind kind);

/// Index of the |template|-weighted centroid; geometric centre for an all-zero template.
double template_centroid_index(const Signal& tmpl);

/// Slides `tmpl` across `object` and evaluates the method at every lag.
///
/// s(y) compares object(x) with tmpl(x - y); y is reported at the template centroid so a
/// symmetric template peaks on the matched feature. Each multiset index is integrated over
/// the whole object grid, with the object zero-padded under any part of the template that
/// runs past its ends.
CorrelationResult correlate(const Signal& object, const Signal& tmpl, const Method& method,
                            Boundary boundary = Boundary::zero_pad);

/// Raw sliding inner product, no normalization.
CorrelationResult correlate_classic(const Signal& object, const Signal& tmpl,
                                    Boundary boundary = Boundary::zero_pad);

/// Classic cross-correlation, rescaled to unit peak magnitude, then correlated again with the
/// same template using `inner`.
CorrelationResult correlate_combined(const Signal& object, const Signal& tmpl, const Method& inner,
                                     Boundary boundary = Boundary::zero_pad);

/// Dispatches on `spec.combined`.
CorrelationResult match(const Signal& object, const Signal& tmpl, const MatchSpec& spec,
                        Boundary boundary = Boundary::zero_pad);

/// Divides the profile by its largest magnitude; an all-zero profile is returned unchanged.
CorrelationResult normalized_max_abs(CorrelationResult profile);

}  // namespace msetcorr
