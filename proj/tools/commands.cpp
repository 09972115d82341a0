#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "msetcorr/analysis.hpp"
#include "msetcorr/io.hpp"

namespace msetcorr::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
std::string join(const std::vector<T>& items, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? sep : "") << items[i];
  return os.str();
}

std::string describe_object(const ObjectSpec& o) {
  using io::format_number;
  return "h_p=" + format_number(o.h_p) + " h_s=" + format_number(o.h_s) +
         " sigma_p=" + format_number(o.sigma_p) + " sigma_s=" + format_number(o.sigma_s) +
         " x_p=" + format_number(o.x_p) + " x_s=" + format_number(o.x_s) +
         " x_start=" + format_number(o.grid.x_start) + " x_end=" + format_number(o.grid.x_end) +
         " samples=" + std::to_string(o.grid.n_samples);
}

std::string describe_template(const TemplateSpec& t) {
  return "template=half_sine template_width=" + io::format_number(t.width) +
         " template_amplitude=" + io::format_number(t.amplitude);
}

std::string describe_similarity(const SimilarityConfig& s) {
  return "alpha=" + io::format_number(s.alpha) + " eps_denom=" + io::format_number(s.eps_denom) +
         " signed_interiority=" + std::to_string(s.signed_interiority) +
         " abs_addition_denominator=" + std::to_string(s.absolute_addition_denominator);
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

void close_output(std::ofstream& os, const fs::path& path) {
  os.close();
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<MatchSpec> parse_methods(const std::vector<std::string>& names,
                                     const SimilarityConfig& cfg) {
  std::vector<MatchSpec> out;
  for (const auto& n : names) out.push_back(parse_match_spec(n, cfg));
  return out;
}

}  // namespace

std::string describe(const CorrelateConfig& cfg) {
  std::string object = cfg.object_csv ? "object=file:" + cfg.object_csv->filename().string()
                                      : "object=generated " + describe_object(cfg.object);
  return "msetcorr correlate methods=" + join(cfg.methods) + " " + object + " " +
         describe_template(cfg.tmpl) + " noise_level=" + std::to_string(cfg.noise_level) +
         " noise_multiplier=" + io::format_number(cfg.noise_multiplier) +
         " seed=" + std::to_string(cfg.seed) + " realization=" + std::to_string(cfg.realization) +
         " boundary=" + std::string(to_string(cfg.boundary)) + " " +
         describe_similarity(cfg.similarity) + " normalize=" + std::to_string(cfg.normalize);
}

std::string describe(const BenchConfig& cfg) {
  const SweepConfig& s = cfg.sweep;
  return "msetcorr bench methods=" + join(cfg.methods) + " levels=" + join(s.levels) +
         " realizations=" + std::to_string(s.realizations) + " seed=" + std::to_string(s.base_seed) +
         " noise_multiplier=" + io::format_number(s.noise_multiplier) +
         " boundary=" + std::string(to_string(s.boundary)) + " " + describe_object(s.object) + " " +
         describe_template(s.tmpl) + " " + describe_similarity(cfg.similarity) +
         " clamp_overlap=" + std::to_string(s.index_options.clamp_overlap_positive);
}

std::string describe(const PcaConfig& cfg, int level) {
  return "msetcorr pca records=" + cfg.records.filename().string() + " level=" +
         std::to_string(level) + " methods=" + join(cfg.methods) +
         " standardize=" + std::to_string(cfg.standardize);
}

std::vector<fs::path> cmd_correlate(const CorrelateConfig& cfg, std::ostream& out) {
  const auto specs = parse_methods(cfg.methods, cfg.similarity);
  Signal object = [&] {
    if (!cfg.object_csv) return gen_object(cfg.object);
    std::ifstream is(*cfg.object_csv);
    if (!is) throw std::runtime_error("cannot open '" + cfg.object_csv->string() + "'");
    return io::read_signal(is);
  }();
  object = add_noise(object, NoiseSpec{cfg.noise_level, cfg.seed, cfg.realization,
                                       cfg.noise_multiplier});
  const Signal tmpl = gen_template(cfg.tmpl, object.dx());

  std::vector<fs::path> written;
  if (cfg.write_object) {
    auto os = open_output(*cfg.write_object);
    io::write_signal(os, object);
    close_output(os, *cfg.write_object);
    written.push_back(*cfg.write_object);
  }
  const std::string header = describe(cfg);
  for (const auto& spec : specs) {
    CorrelationResult profile = match(object, tmpl, spec, cfg.boundary);
    if (cfg.normalize) profile = normalized_max_abs(std::move(profile));

    const fs::path path = cfg.out_dir / ("profile_" + to_string(spec) + ".csv");
    auto os = open_output(path);
    io::write_comment(os, header);
    io::write_profile(os, profile);
    close_output(os, path);
    written.push_back(path);

    out << "method=" << to_string(spec);
    try {
      const PeakMeasurement pm = detect_peaks(profile, cfg.object);
      out << " x1=" << io::format_number(pm.x1) << " h1=" << io::format_number(pm.h1)
          << " w1=" << io::format_number(pm.w1);
      if (pm.has_secondary) {
        out << " x2=" << io::format_number(pm.x2) << " h2=" << io::format_number(pm.h2)
            << " w2=" << io::format_number(pm.w2);
      } else {
        out << " x2=NA h2=NA w2=NA";
      }
    } catch (const DomainError&) {
      out << " peaks=none";
    }
    out << " file=" << path.string() << '\n';
  }
  return written;
}

std::vector<fs::path> cmd_bench(const BenchConfig& cfg, std::ostream& out) {
  BenchConfig resolved = cfg;
  resolved.sweep.methods = parse_methods(cfg.methods, cfg.similarity);
  resolved.methods.clear();
  for (const auto& m : resolved.sweep.methods) resolved.methods.push_back(to_string(m));

  fs::create_directories(cfg.out_dir);
  std::vector<fs::path> written;
  const fs::path manifest = cfg.out_dir / "failure_manifest.txt";
  try {
    const SweepResult result = run_sweep(resolved.sweep);
    const std::string header = describe(resolved);
    const fs::path records = cfg.out_dir / "records.csv";
    {
      auto os = open_output(records);
      io::write_comment(os, header);
      io::write_records(os, result.records);
      close_output(os, records);
      written.push_back(records);
    }
    const fs::path aggregates = cfg.out_dir / "aggregates.csv";
    {
      auto os = open_output(aggregates);
      io::write_comment(os, header);
      io::write_aggregates(os, result.aggregates);
      close_output(os, aggregates);
      written.push_back(aggregates);
    }
    int excluded = 0;
    for (const auto& rec : result.records) excluded += rec.indices && rec.indices->complete() ? 0 : 1;
    out << "records=" << result.records.size() << " incomplete=" << excluded << '\n';
  } catch (const std::exception& e) {
    std::ofstream os(manifest);
    os << "error: " << e.what() << '\n';
    for (const auto& p : written) os << "written: " << p.string() << '\n';
    throw;
  }
  if (fs::exists(manifest)) fs::remove(manifest);
  return written;
}

std::vector<fs::path> cmd_pca(const PcaConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream is(cfg.records);
  if (!is) throw std::runtime_error("cannot open '" + cfg.records.string() + "'");
  const auto records = io::read_records(is);

  std::vector<fs::path> written;
  for (const int level : cfg.levels) {
    const FeatureMatrix m = build_feature_matrix(records, level, cfg.methods);
    const PcaModel model = pca_fit(m, cfg.standardize);
    const auto points = project(m, model);
    const GroupDispersion disp = group_dispersion(points);
    for (const auto& w : model.warnings) err << "warning: level " << level << ": " << w << '\n';
    for (const auto& w : disp.warnings) err << "warning: level " << level << ": " << w << '\n';

    const std::string header = describe(cfg, level);
    const fs::path proj_path = cfg.out_dir / ("pca_" + std::to_string(level) + ".csv");
    {
      auto os = open_output(proj_path);
      io::write_comment(os, header);
      io::write_projections(os, points);
      close_output(os, proj_path);
      written.push_back(proj_path);
    }
    const fs::path meta_path = cfg.out_dir / ("pca_meta_" + std::to_string(level) + ".csv");
    {
      auto os = open_output(meta_path);
      io::write_comment(os, header);
      io::write_pca_meta(os, model, m, disp);
      close_output(os, meta_path);
      written.push_back(meta_path);
    }
    out << "level=" << level << " variance_explained=" << io::format_number(model.variance_explained.sum())
        << " rows=" << m.values.rows() << " dropped=" << m.dropped_rows << '\n';
  }
  return written;
}

}  // namespace msetcorr::cli
