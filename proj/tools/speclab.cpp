// speclab: command-line front end. Subcommands either dump one artifact
// (spectra / evolve / maximal) or drive batches of inequality experiments
// (strichartz / smoothing / sweep / report) from a config file or the
// built-in battery below.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speclab/csvio.hpp"
#include "speclab/evolve.hpp"
#include "speclab/maximal.hpp"
#include "speclab/runner.hpp"

namespace {

const char* kDefaultBattery = R"(# built-in experiment battery; ids fill their own defaults
[strichartz_5_1]
[torus_6_1]
[torus_6_2]
[torus_6_3]

[maximal_torus]
id = maximal_5_2
model = torus2

[maximal_sphere]
id = maximal_5_2
model = sphere2

[lemma_5_7]
[sphere_sharp_1_8]

[sharp_zonal]
id = sphere_sharp_1_8
model = sphere_zonal3

[low_freq]
[sphere_sec4]
[smoothing_3_1]
[smoothing_3_2]
[sweep]
)";

struct Common {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool plot = false;
  bool slow = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "experiment config file (INI)");
  sub->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "override every section's seed")
      ->each([&c](const std::string&) { c.seed_set = true; });
  sub->add_flag("--plot", c.plot, "emit an SVG chart per series");
  sub->add_flag("--slow", c.slow, "enable torus3 / zonal-sphere runs");
}

std::vector<speclab::config::ExperimentConfig> load_battery(
    const Common& c, const std::vector<std::string>& allowed) {
  auto cfgs = c.config_path.empty() ? speclab::config::parse_config(kDefaultBattery)
                                    : speclab::config::load_config_file(c.config_path);
  if (!allowed.empty()) {
    std::vector<speclab::config::ExperimentConfig> keep;
    for (const auto& cfg : cfgs) {
      const std::string& id = cfg.id.empty() ? cfg.section : cfg.id;
      for (const auto& a : allowed)
        if (id == a) {
          keep.push_back(cfg);
          break;
        }
    }
    if (keep.empty()) throw speclab::config_error("config has no matching sections");
    cfgs = std::move(keep);
  }
  return cfgs;
}

int run_batch(const Common& c, const std::vector<std::string>& allowed) {
  speclab::runner::RunOptions opt;
  opt.out_dir = c.out_dir;
  opt.plot = c.plot;
  opt.slow = c.slow;
  opt.seed_override = c.seed_set;
  opt.seed = c.seed;
  return speclab::runner::run_experiments(load_battery(c, allowed), opt, std::cout);
}

void emit(const std::string& out_file, const std::string& content) {
  if (out_file.empty())
    std::cout << content;
  else
    speclab::atomic_write_file(out_file, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speclab: spectral dispersive-inequality laboratory"};
  app.require_subcommand(1);

  struct {
    std::string model = "circle";
    double cutoff = 16.0;
    std::string out_file;
  } sp;
  CLI::App* spectra = app.add_subcommand("spectra", "dump a mode table");
  spectra->add_option("--model", sp.model, "circle|torus2|torus3|sphere2|sphere_zonal3")
      ->capture_default_str();
  spectra->add_option("--cutoff", sp.cutoff, "lambda cutoff")->capture_default_str();
  spectra->add_option("--out", sp.out_file, "output file (default stdout)");

  struct {
    std::string model = "circle";
    double cutoff = 8.0;
    double alpha = 0.0;
    std::uint64_t seed = 1;
    double t0 = 0.0, t1 = 1.0;
    int steps = 0;
    int resolution = 0;
    std::string out_file;
  } ev;
  CLI::App* evolve = app.add_subcommand("evolve", "sample one random evolution");
  evolve->add_option("--model", ev.model)->capture_default_str();
  evolve->add_option("--cutoff", ev.cutoff)->capture_default_str();
  evolve->add_option("--alpha", ev.alpha, "Sobolev shaping of the draw")->capture_default_str();
  evolve->add_option("--seed", ev.seed)->capture_default_str();
  evolve->add_option("--t0", ev.t0)->capture_default_str();
  evolve->add_option("--t1", ev.t1)->capture_default_str();
  evolve->add_option("--steps", ev.steps, "time intervals (0 = phase-resolving default)");
  evolve->add_option("--resolution", ev.resolution, "grid override (0 = pair-exact)");
  evolve->add_option("--out", ev.out_file, "output file (default stdout)");

  struct {
    std::string model = "circle";
    double cutoff = 16.0;
    double alpha = 0.0;
    std::uint64_t seed = 1;
    double tol = 1e-3;
    int resolution = 0;
    std::string out_file;
  } mx;
  CLI::App* maximal = app.add_subcommand("maximal", "certified maximal-function profile");
  maximal->add_option("--model", mx.model)->capture_default_str();
  maximal->add_option("--cutoff", mx.cutoff)->capture_default_str();
  maximal->add_option("--alpha", mx.alpha)->capture_default_str();
  maximal->add_option("--seed", mx.seed)->capture_default_str();
  maximal->add_option("--tol", mx.tol, "enclosure width per point")->capture_default_str();
  maximal->add_option("--resolution", mx.resolution, "grid override (0 = pair-exact)");
  maximal->add_option("--out", mx.out_file, "output file (default stdout)");

  Common batch;
  CLI::App* strichartz = app.add_subcommand("strichartz", "scaling experiments vs dyadic h");
  CLI::App* smoothing = app.add_subcommand("smoothing", "hyperbolic local-smoothing checks");
  CLI::App* sweep = app.add_subcommand("sweep", "pointwise-convergence diagnostic sweep");
  CLI::App* report = app.add_subcommand("report", "every configured experiment");
  for (CLI::App* sub : {strichartz, smoothing, sweep, report}) add_common(sub, batch);

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectra->parsed()) {
      auto table = speclab::spectra::enumerate_modes(
          speclab::spectra::ManifoldModel::parse(sp.model), sp.cutoff);
      emit(sp.out_file, speclab::spectra::mode_table_csv(*table));
      return 0;
    }
    if (evolve->parsed()) {
      auto model = speclab::spectra::ManifoldModel::parse(ev.model);
      auto f = speclab::fields::random_field(model, ev.alpha, ev.cutoff, ev.seed);
      auto tgrid = ev.steps > 0 ? speclab::evolve::uniform_time_grid(ev.t0, ev.t1, ev.steps)
                                : speclab::evolve::time_grid_for(f, ev.t0, ev.t1);
      auto sgrid = ev.resolution > 0 ? speclab::spectra::quadrature_grid(model, ev.resolution)
                                     : speclab::spectra::grid_for_table(*f.table);
      auto samples = speclab::evolve::sample_evolution(f, tgrid, sgrid);
      emit(ev.out_file, speclab::evolve::samples_csv(samples, model.qlen()));
      return 0;
    }
    if (maximal->parsed()) {
      auto model = speclab::spectra::ManifoldModel::parse(mx.model);
      auto f = speclab::fields::random_field(model, mx.alpha, mx.cutoff, mx.seed);
      auto sgrid = mx.resolution > 0 ? speclab::spectra::quadrature_grid(model, mx.resolution)
                                     : speclab::spectra::grid_for_table(*f.table);
      auto prof = speclab::maximal::maximal_profile(f, sgrid, mx.tol);
      emit(mx.out_file, speclab::maximal::profile_csv(prof));
      return 0;
    }
    if (strichartz->parsed())
      return run_batch(batch, {"strichartz_5_1", "torus_6_1", "torus_6_2", "torus_6_3",
                               "maximal_5_2", "lemma_5_7", "sphere_sharp_1_8", "low_freq"});
    if (smoothing->parsed()) return run_batch(batch, {"smoothing_3_1", "smoothing_3_2"});
    if (sweep->parsed()) return run_batch(batch, {"sweep"});
    if (report->parsed()) return run_batch(batch, {});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
