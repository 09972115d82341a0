#include "msetcorr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace msetcorr::io {

namespace {

constexpr const char* kMissing = "NA";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_skippable(const std::string& line) {
  const auto b = line.find_first_not_of(" \t\r");
  return b == std::string::npos || line[b] == '#';
}

double parse_double(const std::string& text, std::size_t line, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("malformed " + what + " '" + text + "'", line);
  }
  return value;
}

int parse_int(const std::string& text, std::size_t line, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("malformed " + what + " '" + text + "'", line);
  }
  return value;
}

std::optional<double> parse_optional(const std::string& text, std::size_t line,
                                     const std::string& what) {
  if (text == kMissing || text.empty()) return std::nullopt;
  return parse_double(text, line, what);
}

// Reads the header line and returns the column -> position map.
std::map<std::string, std::size_t> read_header(std::istream& is, std::size_t& line_no) {
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    std::map<std::string, std::size_t> cols;
    const auto names = split(line);
    for (std::size_t i = 0; i < names.size(); ++i) cols.emplace(names[i], i);
    return cols;
  }
  throw SchemaError("file is empty: no header line");
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return kMissing;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string format_number(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string(kMissing);
}

void write_comment(std::ostream& os, const std::string& text) { os << "# " << text << '\n'; }

void write_records(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "method,level,realization";
  for (const auto& name : PerformanceIndices::names()) os << ',' << name;
  os << ",primary_found,secondary_found\n";
  for (const auto& rec : records) {
    os << rec.method << ',' << rec.level << ',' << rec.realization;
    const auto values = rec.indices ? rec.indices->values()
                                    : std::array<std::optional<double>, PerformanceIndices::kCount>{};
    for (const auto& v : values) os << ',' << format_number(v);
    const bool secondary = rec.indices && rec.indices->r_xs.has_value();
    os << ',' << (rec.indices ? 1 : 0) << ',' << (secondary ? 1 : 0) << '\n';
  }
}

void write_aggregates(std::ostream& os, const std::vector<SweepAggregate>& aggregates) {
  os << "method,level";
  for (const auto& name : PerformanceIndices::names()) {
    os << ',' << name << "_mean," << name << "_std," << name << "_n," << name << "_excluded";
  }
  os << '\n';
  for (const auto& agg : aggregates) {
    os << agg.method << ',' << agg.level;
    for (const auto& st : agg.stats) {
      os << ',' << format_number(st.mean) << ',' << format_number(st.n > 0 ? st.stddev : std::nan(""))
         << ',' << st.n << ',' << st.excluded;
    }
    os << '\n';
  }
}

std::vector<SweepRecord> read_records(std::istream& is) {
  std::size_t line_no = 0;
  const auto cols = read_header(is, line_no);
  std::vector<std::string> required = {"method", "level", "realization"};
  required.insert(required.end(), PerformanceIndices::names().begin(),
                  PerformanceIndices::names().end());
  for (const auto& name : required) {
    if (!cols.count(name)) throw SchemaError("records file is missing column '" + name + "'");
  }
  const auto at = [&](const std::vector<std::string>& fields, const std::string& name) {
    const std::size_t i = cols.at(name);
    if (i >= fields.size()) throw ParseError("missing field '" + name + "'", line_no);
    return fields[i];
  };

  std::vector<SweepRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto fields = split(line);
    SweepRecord rec;
    rec.method = at(fields, "method");
    if (rec.method.empty()) throw ParseError("empty method name", line_no);
    rec.level = parse_int(at(fields, "level"), line_no, "level");
    rec.realization = parse_int(at(fields, "realization"), line_no, "realization");
    std::array<std::optional<double>, PerformanceIndices::kCount> v;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto& name = PerformanceIndices::names()[k];
      v[k] = parse_optional(at(fields, name), line_no, name);
    }
    if (v[0] && v[3]) {
      PerformanceIndices idx;
      idx.r_xp = *v[0];
      idx.r_xs = v[1];
      idx.r_h = v[2];
      idx.r_wp = *v[3];
      idx.r_ws = v[4];
      idx.alpha_overlap = v[5];
      rec.indices = idx;
    }
    out.push_back(std::move(rec));
  }
  if (out.empty()) throw SchemaError("records file has a header but no rows");
  return out;
}

void write_profile(std::ostream& os, const CorrelationResult& profile) {
  os << "lag,value\n";
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    os << format_number(profile.lags[i]) << ',' << format_number(profile.values[i]) << '\n';
  }
}

void write_signal(std::ostream& os, const Signal& signal) {
  os << "x,value\n";
  char buf[64];
  for (Eigen::Index i = 0; i < signal.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", signal.x(i), signal[i]);
    os << buf;
  }
}

Signal read_signal(std::istream& is) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto fields = split(line);
    if (fields.size() != 2) throw ParseError("expected two columns (x, value)", line_no);
    if (!header_seen) {
      header_seen = true;
      double probe = 0.0;
      const auto& f = fields[0];
      if (std::from_chars(f.data(), f.data() + f.size(), probe).ec != std::errc()) continue;
    }
    xs.push_back(parse_double(fields[0], line_no, "abscissa"));
    ys.push_back(parse_double(fields[1], line_no, "value"));
  }
  if (xs.size() < 2) throw ParseError("signal needs at least two samples", line_no);
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(dx > 0.0)) throw ParseError("abscissae must increase", line_no);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::abs((xs[i] - xs[i - 1]) - dx) > 1e-6 * dx) {
      throw ParseError("abscissae are not uniformly spaced", i + 1);
    }
  }
  return Signal(Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size())),
                xs.front(), dx);
}

void write_projections(std::ostream& os, const std::vector<Projection>& points) {
  os << "label,pc1,pc2\n";
  for (const auto& p : points) {
    os << p.label << ',' << format_number(p.pc1) << ',' << format_number(p.pc2) << '\n';
  }
}

void write_pca_meta(std::ostream& os, const PcaModel& model, const FeatureMatrix& m,
                    const GroupDispersion& dispersion) {
  os << "key,value\n";
  os << "variance_explained_pc1," << format_number(model.variance_explained[0]) << '\n';
  os << "variance_explained_pc2," << format_number(model.variance_explained[1]) << '\n';
  os << "variance_explained_total," << format_number(model.variance_explained.sum()) << '\n';
  os << "rows_used," << m.values.rows() << '\n';
  os << "rows_dropped," << m.dropped_rows << '\n';
  os << "columns_used," << model.columns.size() << '\n';
  std::string dropped;
  for (const auto& c : model.dropped_columns) dropped += (dropped.empty() ? "" : ";") + c;
  os << "columns_dropped," << dropped << '\n';
  os << "standardized," << (model.standardized ? 1 : 0) << '\n';
  for (Eigen::Index i = 0; i < model.eigenvalues.size(); ++i) {
    os << "eigenvalue_" << i + 1 << ',' << format_number(model.eigenvalues[i]) << '\n';
  }
  for (const auto& [label, value] : dispersion.dispersion) {
    os << "dispersion_" << label << ',' << format_number(value) << '\n';
  }
}

}  // namespace msetcorr::io
