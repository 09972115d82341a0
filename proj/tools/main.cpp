// msetcorr: multiset correlation runs, noise-sweep benchmarks and PCA of their results.

#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "msetcorr/errors.hpp"

namespace {

using namespace msetcorr;

void add_object_options(CLI::App& app, ObjectSpec& o) {
  app.add_option("--h-p", o.h_p, "Principal peak height")->capture_default_str();
  app.add_option("--h-s", o.h_s, "Secondary peak height")->capture_default_str();
  app.add_option("--sigma-p", o.sigma_p, "Principal peak standard deviation")->capture_default_str();
  app.add_option("--sigma-s", o.sigma_s, "Secondary peak standard deviation")->capture_default_str();
  app.add_option("--x-p", o.x_p, "Principal peak position")->capture_default_str();
  app.add_option("--x-s", o.x_s, "Secondary peak position")->capture_default_str();
  app.add_option("--x-start", o.grid.x_start, "First grid abscissa")->capture_default_str();
  app.add_option("--x-end", o.grid.x_end, "End of the half-open grid")->capture_default_str();
  app.add_option("--samples", o.grid.n_samples, "Number of grid samples")->capture_default_str();
}

void add_template_options(CLI::App& app, TemplateSpec& t) {
  app.add_option("--template-width", t.width, "Half-sine template width")->capture_default_str();
  app.add_option("--template-amplitude", t.amplitude, "Half-sine template amplitude")
      ->capture_default_str();
}

void add_similarity_options(CLI::App& app, SimilarityConfig& s) {
  app.add_option("--alpha", s.alpha, "s_pm mixing weight")->capture_default_str();
  app.add_option("--eps-denom", s.eps_denom, "Denominator guard")->capture_default_str();
  app.add_flag("--signed-interiority", s.signed_interiority,
               "Carry the sign product in the interiority numerator");
  app.add_flag("--abs-addition-denominator", s.absolute_addition_denominator,
               "Use |f|+|g| in the addition-based denominator");
}

CLI::Option* add_boundary_option(CLI::App& app, std::string& boundary) {
  return app.add_option("--boundary", boundary, "zero_pad or valid")
      ->check(CLI::IsMember({"zero_pad", "valid"}))
      ->capture_default_str();
}

int fail(const std::string& kind, const std::string& message) {
  std::cerr << "msetcorr: error: " << kind << ": " << message << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiset-based correlation and template-matching benchmark"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);

  cli::CorrelateConfig corr;
  std::string corr_boundary = "zero_pad";
  std::string object_csv;
  std::string write_object;
  std::string corr_out = ".";
  auto* correlate = app.add_subcommand("correlate", "Correlate an object with the template");
  correlate->add_option("--methods", corr.methods, "Comma-separated methods")
      ->delimiter(',')
      ->capture_default_str();
  correlate->add_option("--object", object_csv, "Two-column CSV (x,value) instead of the generator");
  correlate->add_option("--write-object", write_object, "Also write the (noisy) object to this CSV");
  correlate->add_option("--noise-level", corr.noise_level, "Noise level v in 0..20")
      ->check(CLI::Range(0, 20))
      ->capture_default_str();
  correlate->add_option("--noise-multiplier", corr.noise_multiplier, "Scale of L_v = m*v/20")
      ->capture_default_str();
  correlate->add_option("--seed", corr.seed, "Base seed")->capture_default_str();
  correlate->add_option("--realization", corr.realization, "Realization index")->capture_default_str();
  correlate->add_flag("--normalize", corr.normalize, "Divide each profile by its peak magnitude");
  correlate->add_option("--out-dir", corr_out, "Output directory")->capture_default_str();
  add_boundary_option(*correlate, corr_boundary);
  add_object_options(*correlate, corr.object);
  add_template_options(*correlate, corr.tmpl);
  add_similarity_options(*correlate, corr.similarity);

  cli::BenchConfig bench;
  std::string bench_boundary = "zero_pad";
  std::string bench_out = ".";
  std::string preset = "full";
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo noise sweep");
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--levels", bench.sweep.levels, "Comma-separated noise levels")
      ->delimiter(',')
      ->check(CLI::Range(0, 20));
  auto* realizations = bench_cmd->add_option("--realizations", bench.sweep.realizations,
                                             "Realizations per level")
                           ->check(CLI::PositiveNumber)
                           ->capture_default_str();
  bench_cmd->add_option("--preset", preset, "full (300 realizations) or desk (50)")
      ->check(CLI::IsMember({"full", "desk"}))
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.sweep.base_seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--threads", bench.sweep.threads, "Worker threads hint (0 = all cores)")
      ->capture_default_str();
  bench_cmd->add_option("--noise-multiplier", bench.sweep.noise_multiplier, "Scale of L_v = m*v/20")
      ->capture_default_str();
  bench_cmd->add_flag("--clamp-overlap", bench.sweep.index_options.clamp_overlap_positive,
                      "Integrate only the positive part between the peaks");
  bench_cmd->add_option("--out-dir", bench_out, "Output directory")->capture_default_str();
  add_boundary_option(*bench_cmd, bench_boundary);
  add_object_options(*bench_cmd, bench.sweep.object);
  add_template_options(*bench_cmd, bench.sweep.tmpl);
  add_similarity_options(*bench_cmd, bench.similarity);

  cli::PcaConfig pca;
  std::string records = "records.csv";
  std::string pca_out = ".";
  bool no_standardize = false;
  auto* pca_cmd = app.add_subcommand("pca", "PCA of per-realization performance indices");
  pca_cmd->add_option("--records", records, "records.csv written by bench")->capture_default_str();
  pca_cmd->add_option("--levels", pca.levels, "Comma-separated noise levels")
      ->delimiter(',')
      ->capture_default_str();
  pca_cmd->add_option("--methods", pca.methods, "Methods to include")
      ->delimiter(',')
      ->capture_default_str();
  pca_cmd->add_flag("--no-standardize", no_standardize, "Only center the columns");
  pca_cmd->add_option("--out-dir", pca_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*correlate) {
      corr.boundary = parse_boundary(corr_boundary);
      if (!object_csv.empty()) corr.object_csv = object_csv;
      if (!write_object.empty()) corr.write_object = write_object;
      corr.out_dir = corr_out;
      cli::cmd_correlate(corr, std::cout);
    } else if (*bench_cmd) {
      bench.sweep.boundary = parse_boundary(bench_boundary);
      if (preset == "desk" && realizations->count() == 0) bench.sweep.realizations = 50;
      bench.out_dir = bench_out;
      cli::cmd_bench(bench, std::cout);
    } else if (*pca_cmd) {
      pca.records = records;
      pca.standardize = !no_standardize;
      pca.out_dir = pca_out;
      cli::cmd_pca(pca, std::cout, std::cerr);
    }
  } catch (const ParseError& e) {
    return fail("parse", e.what());
  } catch (const SchemaError& e) {
    return fail("schema", e.what());
  } catch (const AlignmentError& e) {
    return fail("alignment", e.what());
  } catch (const DomainError& e) {
    return fail("domain", e.what());
  } catch (const AnalysisError& e) {
    return fail("analysis", e.what());
  } catch (const std::exception& e) {
    return fail("runtime", e.what());
  }
  return 0;
}
