#include "msetcorr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace msetcorr {

namespace {

struct LagGrid {
  Eigen::Index first = 0;  // template start offset of the first lag, in samples
  Eigen::Index count = 0;
  double centroid = 0.0;
};

LagGrid make_lag_grid(const Signal& object, const Signal& tmpl, Boundary boundary) {
  if (!same_spacing(object, tmpl)) {
    throw AlignmentError("object and template must share the grid spacing dx");
  }
  const Eigen::Index n = object.size();
  const Eigen::Index m = tmpl.size();
  LagGrid grid;
  grid.centroid = template_centroid_index(tmpl);
  switch (boundary) {
    case Boundary::zero_pad:
      grid.first = -static_cast<Eigen::Index>(std::lround(grid.centroid));
      grid.count = n;
      break;
    case Boundary::valid:
      if (m > n) {
        throw DomainError("template longer than object under the valid boundary policy");
      }
      grid.first = 0;
      grid.count = n - m + 1;
      break;
  }
  return grid;
}

Eigen::VectorXd lag_abscissae(const Signal& object, const LagGrid& grid) {
  Eigen::VectorXd lags(grid.count);
  for (Eigen::Index i = 0; i < grid.count; ++i) {
    lags[i] = object.x0() + (static_cast<double>(grid.first + i) + grid.centroid) * object.dx();
  }
  return lags;
}

// Object with m zeros on both sides, so every template placement is a contiguous segment.
Eigen::VectorXd zero_padded(const Signal& object, Eigen::Index m) {
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(object.size() + 2 * m);
  padded.segment(m, object.size()) = object.samples();
  return padded;
}

double index_value(MethodKind kind, const OverlapSums<double>& s, double dx,
                   const SimilarityConfig& cfg) {
  switch (kind) {
    case MethodKind::classic:
      return dx * s.dot;
    case MethodKind::jaccard_real:
      return from_sums::jaccard_real(s, dx, cfg);
    case MethodKind::interiority:
      return from_sums::interiority_real(s, dx, cfg);
    case MethodKind::coincidence:
      return from_sums::coincidence_real(s, dx, cfg);
    case MethodKind::jaccard_addition:
      return from_sums::jaccard_addition(s, dx, cfg);
    case MethodKind::coincidence_addition:
      return from_sums::coincidence_addition(s, dx, cfg);
  }
  return 0.0;
}

}  // namespace

Signal CorrelationResult::as_signal() const { return Signal(values, lags[0], dx); }

std::string_view to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::classic:
      return "classic";
    case MethodKind::jaccard_real:
      return "jaccard";
    case MethodKind::interiority:
      return "interiority";
    case MethodKind::coincidence:
      return "coincidence";
    case MethodKind::jaccard_addition:
      return "jaccard_addition";
    case MethodKind::coincidence_addition:
      return "coincidence_addition";
  }
  return "unknown";
}

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::zero_pad ? "zero_pad" : "valid";
}

std::string to_string(const MatchSpec& spec) {
  std::string name(to_string(spec.method.kind));
  return spec.combined ? "combined_" + name : name;
}

bool is_multiset(MethodKind kind) { return kind != MethodKind::classic; }

MethodKind parse_method_kind(std::string_view name) {
  if (name == "classic") return MethodKind::classic;
  if (name == "jaccard" || name == "jaccard_real") return MethodKind::jaccard_real;
  if (name == "interiority") return MethodKind::interiority;
  if (name == "coincidence") return MethodKind::coincidence;
  if (name == "jaccard_addition") return MethodKind::jaccard_addition;
  if (name == "coincidence_addition") return MethodKind::coincidence_addition;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

MatchSpec parse_match_spec(std::string_view name, const SimilarityConfig& cfg) {
  constexpr std::string_view prefix = "combined_";
  MatchSpec spec;
  spec.method.cfg = cfg;
  if (name.substr(0, prefix.size()) == prefix) {
    spec.combined = true;
    name.remove_prefix(prefix.size());
  }
  spec.method.kind = parse_method_kind(name);
  if (spec.combined && !is_multiset(spec.method.kind)) {
    throw DomainError("the combined pipeline needs a multiset method after the classic stage");
  }
  return spec;
}

Boundary parse_boundary(std::string_view name) {
  if (name == "zero_pad" || name == "zero-pad") return Boundary::zero_pad;
  if (name == "valid") return Boundary::valid;
  throw DomainError("unknown boundary policy '" + std::string(name) + "'");
}

double template_centroid_index(const Signal& tmpl) {
  const Eigen::ArrayXd weight = tmpl.samples().array().abs();
  const double mass = weight.sum();
  if (mass <= 0.0) return 0.5 * static_cast<double>(tmpl.size() - 1);
  const Eigen::ArrayXd index = Eigen::ArrayXd::LinSpaced(tmpl.size(), 0.0, double(tmpl.size() - 1));
  return (weight * index).sum() / mass;
}

CorrelationResult correlate(const Signal& object, const Signal& tmpl, const Method& method,
                            Boundary boundary) {
  method.cfg.validate();
  const LagGrid grid = make_lag_grid(object, tmpl, boundary);
  const Eigen::Index m = tmpl.size();
  const double dx = object.dx();
  const Eigen::VectorXd padded = zero_padded(object, m);

  CorrelationResult out;
  out.method = method;
  out.boundary = boundary;
  out.dx = dx;
  out.lags = lag_abscissae(object, grid);
  out.values.resize(grid.count);

  if (method.kind == MethodKind::classic) {
    for (Eigen::Index i = 0; i < grid.count; ++i) {
      out.values[i] = dx * padded.segment(grid.first + i + m, m).dot(tmpl.samples());
    }
    return out;
  }

  const double total_abs = object.samples().cwiseAbs().sum();
  const double total_sum = object.samples().sum();
  for (Eigen::Index i = 0; i < grid.count; ++i) {
    OverlapSums<double> s = overlap_sums(padded.segment(grid.first + i + m, m), tmpl.samples());
    // Object samples outside the template span only enter the union and the object totals.
    const double outside_abs = std::max(0.0, total_abs - s.abs_f);
    s.abs_max += outside_abs;
    s.abs_f = total_abs;
    s.sum_f = total_sum;
    out.values[i] = index_value(method.kind, s, dx, method.cfg);
  }
  return out;
}

CorrelationResult correlate_classic(const Signal& object, const Signal& tmpl, Boundary boundary) {
  return correlate(object, tmpl, Method{MethodKind::classic, {}}, boundary);
}

CorrelationResult correlate_combined(const Signal& object, const Signal& tmpl, const Method& inner,
                                     Boundary boundary) {
  if (!is_multiset(inner.kind)) {
    throw DomainError("the combined pipeline needs a multiset method after the classic stage");
  }
  const CorrelationResult stage1 = normalized_max_abs(correlate_classic(object, tmpl, boundary));
  // Stage-1 lags already sit in object coordinates, so stage 2 inherits them.
  return correlate(Signal(stage1.values, stage1.lags[0], object.dx()), tmpl, inner, boundary);
}

CorrelationResult match(const Signal& object, const Signal& tmpl, const MatchSpec& spec,
                        Boundary boundary) {
  return spec.combined ? correlate_combined(object, tmpl, spec.method, boundary)
                       : correlate(object, tmpl, spec.method, boundary);
}

CorrelationResult normalized_max_abs(CorrelationResult profile) {
  const double peak = profile.values.size() ? profile.values.cwiseAbs().maxCoeff() : 0.0;
  if (peak > 0.0) profile.values /= peak;
  return profile;
}

}  // namespace msetcorr
