#pragma once

// CSV formats. Every file may start with '#' comment lines; the first other line is the
// header. Floats are written with 9 significant digits ("%.9g"), missing values as "NA".
//
//   records.csv     method,level,realization,r_xp,r_xs,r_h,r_wp,r_ws,alpha_overlap,
//                   primary_found,secondary_found
//   aggregates.csv  method,level, then <index>_mean,<index>_std,<index>_n,<index>_excluded
//                   for each of the six indices in records order
//   profile CSV     lag,value
//   signal CSV      x,value (17 significant digits so a written object reads back exactly)
//   pca_<v>.csv     label,pc1,pc2
//   pca_meta_<v>    key,value

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msetcorr/analysis.hpp"
#include "msetcorr/benchmark.hpp"
#include "msetcorr/correlation.hpp"

namespace msetcorr::io {

std::string format_number(double value);
std::string format_number(const std::optional<double>& value);

void write_comment(std::ostream& os, const std::string& text);

void write_records(std::ostream& os, const std::vector<SweepRecord>& records);
void write_aggregates(std::ostream& os, const std::vector<SweepAggregate>& aggregates);
std::vector<SweepRecord> read_records(std::istream& is);

void write_profile(std::ostream& os, const CorrelationResult& profile);

void write_signal(std::ostream& os, const Signal& signal);
/// Two numeric columns (x, value) on a uniform grid.
Signal read_signal(std::istream& is);

void write_projections(std::ostream& os, const std::vector<Projection>& points);
void write_pca_meta(std::ostream& os, const PcaModel& model, const FeatureMatrix& m,
                    const GroupDispersion& dispersion);

}  // namespace msetcorr::io
