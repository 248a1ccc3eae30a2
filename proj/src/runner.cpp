#include "speclab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>

#include "speclab/csvio.hpp"
#include "speclab/evolve.hpp"
#include "speclab/hyperbolic.hpp"
#include "speclab/lp.hpp"
#include "speclab/maximal.hpp"

namespace speclab::runner {
namespace {

using config::ExperimentConfig;
using fields::DataFamily;
using fields::SpectralField;
using probe::CheckKind;
using probe::ExperimentReport;
using probe::FitResult;
using probe::ScalingSeries;
using spectra::ManifoldModel;
using spectra::ModelKind;

std::vector<double> dyadic_h(int k_lo, int k_hi) {
  std::vector<double> h;
  for (int k = k_lo; k <= k_hi; ++k) h.push_back(std::ldexp(1.0, -k));
  return h;
}

double min_h(const ExperimentConfig& cfg) {
  double m = std::numeric_limits<double>::infinity();
  for (double h : cfg.h_list) m = std::min(m, h);
  return m;
}

bool is_slow(const ExperimentConfig& cfg) {
  if (cfg.id == "torus_6_3") return true;
  if (cfg.id == "sphere_sharp_1_8" && cfg.model == "sphere_zonal3") return true;
  return false;
}

DataFamily family_for(const ExperimentConfig& cfg, std::uint64_t seed) {
  const std::string& e = cfg.ensemble;
  if (e.empty() || e == "sobolev") return DataFamily::sobolev(cfg.alpha, seed);
  if (e == "single_mode") return DataFamily::single_mode(cfg.mode_id);
  if (e == "level_beam") return DataFamily::level_beam(cfg.level);
  if (e == "highest_weight") return DataFamily::highest_weight_beam(cfg.level);
  if (e == "wave_packet")
    return DataFamily::wave_packet(cfg.center, cfg.width > 0.0 ? cfg.width : 1.0);
  throw config_error("unknown ensemble '" + e + "'");
}

ExperimentReport make_report(ScalingSeries s, CheckKind kind, double threshold,
                             double tolerance) {
  s.validate();
  FitResult fit;
  bool fittable = s.points.size() >= 3;
  for (const auto& pt : s.points)
    if (!(pt.value > 0.0)) fittable = false;
  if (fittable) fit = probe::fit_exponent(s);
  ExperimentReport r;
  r.series = std::move(s);
  r.fit = fit;
  r.kind = kind;
  r.threshold = threshold;
  r.tolerance = tolerance;
  r.pass = probe::check_passes(r.series, r.fit, kind, threshold, tolerance);
  return r;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string summary_line(const ExperimentReport& r) {
  std::ostringstream o;
  o << (r.pass ? "PASS" : "FAIL") << "  " << r.series.inequality_id << " [" << r.series.model
    << "]";
  double worst = 0.0;
  for (const auto& pt : r.series.points) worst = std::max(worst, pt.value);
  o << " scales=" << r.series.points.size() << " max=" << fmt_g(worst, 6);
  switch (r.kind) {
    case CheckKind::SlopeAtLeast:
      o << " slope=" << fmt_g(r.fit.slope, 6) << " (need >= " << fmt_g(r.threshold, 6)
        << ", r2=" << fmt_g(r.fit.r2, 4) << ")";
      break;
    case CheckKind::SlopeNear:
      o << " slope=" << fmt_g(r.fit.slope, 6) << " (target " << fmt_g(r.threshold, 6) << " +- "
        << fmt_g(r.tolerance, 4) << ", r2=" << fmt_g(r.fit.r2, 4) << ")";
      break;
    case CheckKind::ValueAtMost:
      o << " (bound " << fmt_g(r.threshold, 6) << ")";
      break;
  }
  return o.str();
}

// --- per-id drivers ---------------------------------------------------------

std::vector<ExperimentReport> run_scaling(const ExperimentConfig& cfg, std::uint64_t seed) {
  ManifoldModel model = ManifoldModel::parse(cfg.model);
  auto table = spectra::enumerate_modes(model, cfg.cutoff);
  DataFamily fam = family_for(cfg, seed);
  bool maximal = cfg.id == "maximal_5_2";
  double p = cfg.p;
  ScalingSeries s;
  s.inequality_id = cfg.id;
  s.model = cfg.model;
  s.ensemble = fam.describe();
  s.p_or_q = p;
  for (double h : cfg.h_list) {
    double v = maximal ? probe::maximal_ratio(table, fam, h, p, cfg.trials)
                       : probe::strichartz_ratio(table, fam, h, p, cfg.trials);
    s.points.push_back({h, v, cfg.trials});
  }
  double threshold = -0.05;
  if (cfg.id == "strichartz_5_1") threshold = -1.0 / p - 0.05;
  if (maximal) threshold = model.kind == ModelKind::Sphere2 ? -0.80 : -0.55;
  return {make_report(std::move(s), CheckKind::SlopeAtLeast, threshold, 0.0)};
}

std::vector<ExperimentReport> run_block_ratio(const ExperimentConfig& cfg, std::uint64_t seed) {
  ManifoldModel model = ManifoldModel::parse(cfg.model);
  auto table = spectra::enumerate_modes(model, cfg.cutoff);
  DataFamily fam = family_for(cfg, seed);
  ScalingSeries s;
  s.inequality_id = cfg.id;
  s.model = cfg.model;
  s.ensemble = fam.describe();
  s.p_or_q = cfg.q;
  for (double h : cfg.h_list) {
    double worst = 0.0;
    int used = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      SpectralField f = fam.member(table, trial);
      double fl2 = fields::l2_norm(f);
      if (fields::l2_norm(lp::block_for_h(f, h)) <= 1e-12 * std::max(1.0, fl2)) continue;
      maximal::BlockRatioReport rep = maximal::block_maximal_ratio_check(f, h, cfg.q, cfg.beta);
      worst = std::max(worst, rep.ratio.hi);
      ++used;
    }
    if (used == 0)
      throw config_error("every ensemble member has an empty block at h = " + fmt_g(h, 6));
    s.points.push_back({h, worst, used});
  }
  return {make_report(std::move(s), CheckKind::ValueAtMost, 2.0, 0.0)};
}

std::vector<ExperimentReport> run_sharp(const ExperimentConfig& cfg, std::uint64_t /*seed*/) {
  ManifoldModel model = ManifoldModel::parse(cfg.model);
  bool zonal = model.kind == ModelKind::SphereZonal3;
  if (!zonal && model.kind != ModelKind::Sphere2)
    throw config_error("sphere_sharp_1_8 needs model=sphere2 or sphere_zonal3");
  ScalingSeries s;
  s.inequality_id = cfg.id;
  s.model = cfg.model;
  s.ensemble = zonal ? "level_beam" : "highest_weight";
  s.p_or_q = cfg.p;
  for (double h : cfg.h_list) {
    int k = static_cast<int>(std::lround(1.0 / h));
    // The beam lives at degree k; a table trimmed there keeps the fixed
    // 2k-degree rule admissible for the whole series.
    double lam_k = zonal ? k + 1.0 : k + 0.5;
    auto table = spectra::enumerate_modes(model, std::min(cfg.cutoff, lam_k));
    DataFamily fam = zonal ? DataFamily::level_beam(k) : DataFamily::highest_weight_beam(k);
    SpectralField f = fam.member(table, 0);
    SpectralField block = lp::block_for_h(f, h);
    double l2 = fields::l2_norm(block);
    if (!(l2 > 0.0)) throw config_error("beam of degree " + std::to_string(k) + " not in table");
    // |beam|^p has spectral degree p*k; resolution 2k is pair-exact for the
    // squared modulus, and the zonal rule gets a margin on top.
    spectra::QuadratureGrid sgrid = spectra::quadrature_grid(model, zonal ? 2 * k + 4 : 2 * k);
    evolve::TimeGrid tgrid = evolve::time_grid_for(block, 0.0, 1.0);
    double v = evolve::spacetime_norm(block, cfg.p, tgrid, sgrid) / l2;
    s.points.push_back({h, v, 1});
  }
  double target = zonal ? -0.25 : -0.125;
  return {make_report(std::move(s), CheckKind::SlopeNear, target, 0.05)};
}

std::vector<ExperimentReport> run_lowfreq(const ExperimentConfig& cfg, std::uint64_t seed) {
  ManifoldModel model = ManifoldModel::parse(cfg.model);
  auto table = spectra::enumerate_modes(model, cfg.cutoff);
  DataFamily fam = family_for(cfg, seed);
  double v = probe::low_frequency_bound(table, fam, cfg.q, cfg.c0, cfg.trials);
  ScalingSeries s;
  s.inequality_id = cfg.id;
  s.model = cfg.model;
  s.ensemble = fam.describe();
  s.p_or_q = cfg.q;
  s.points.push_back({1.0, v, cfg.trials});
  return {make_report(std::move(s), CheckKind::ValueAtMost, 3.0, 0.0)};
}

std::vector<ExperimentReport> run_cascade(const ExperimentConfig& cfg, const RunOptions& opt,
                                          std::uint64_t seed, std::ostream& log) {
  if (cfg.model != "sphere2") throw config_error("sphere_sec4 needs model=sphere2");
  auto table = spectra::enumerate_modes(ManifoldModel::sphere2(), cfg.cutoff);
  DataFamily fam = DataFamily::sobolev(cfg.alpha, seed);
  double min_margin = std::numeric_limits<double>::infinity();
  maximal::CascadeReport worst;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    SpectralField f = fam.member(table, trial);
    maximal::CascadeReport rep = maximal::sphere_levelwise_cascade(f, cfg.alpha);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& st : rep.steps) m = std::min(m, st.margin);
    if (m < min_margin) {
      min_margin = m;
      worst = rep;
    }
  }
  log << "  level-sum constant in [" << fmt_g(worst.calpha.lo, 12) << ", "
      << fmt_g(worst.calpha.hi, 12) << "], tightest margin " << fmt_g(min_margin, 6) << "\n";
  if (!opt.out_dir.empty()) {
    std::string path = opt.out_dir + "/" + cfg.section + "_cascade.csv";
    atomic_write_file(path, maximal::cascade_csv(worst));
    log << "  wrote " << path << "\n";
  }
  ScalingSeries s;
  s.inequality_id = cfg.id;
  s.model = cfg.model;
  s.ensemble = fam.describe();
  s.p_or_q = 2.0;
  s.points.push_back({1.0, std::max(0.0, -min_margin), cfg.trials});
  return {make_report(std::move(s), CheckKind::ValueAtMost, 1e-3, 0.0)};
}

std::vector<ExperimentReport> run_smoothing(const ExperimentConfig& cfg) {
  bool second_order = cfg.id == "smoothing_3_2";
  double sv = second_order ? 1.5 : -0.5;
  double R = cfg.ball_radius;
  double width = cfg.width;
  const double r_max = 12.0;
  std::vector<double> ratios, l2_ratios;
  for (double lam0 : cfg.lam0_list) {
    double lam_hi = lam0 + 12.0 * width;
    hyperbolic::RadialSpectrum spec =
        hyperbolic::gaussian_bump_spectrum(lam0, width, lam_hi, r_max);
    hyperbolic::RadialProfile f =
        hyperbolic::helgason_inverse(spec, hyperbolic::radial_profile_grid(r_max, lam_hi));
    double ratio = hyperbolic::smoothing_ratio(f, R, sv, lam_hi);
    ratios.push_back(ratio);
    if (!second_order)
      l2_ratios.push_back(ratio * hyperbolic::sobolev_norm_h3(spec, sv) /
                          hyperbolic::sobolev_norm_h3(spec, 0.0));
  }
  ScalingSeries s;
  s.inequality_id = cfg.id;
  s.model = "h3";
  s.ensemble = "gaussian_bump";
  s.p_or_q = 2.0;
  for (std::size_t i = 0; i < cfg.lam0_list.size(); ++i)
    s.points.push_back({1.0 / cfg.lam0_list[i], ratios[i], 1});
  std::vector<ExperimentReport> out;
  out.push_back(
      make_report(std::move(s), CheckKind::ValueAtMost, 2.0 * median_of(ratios), 0.0));
  if (!second_order) {
    // Same data against the unweighted L2 norm of the bump: the quotient must
    // recover the half-power gain in the carrier frequency.
    ScalingSeries s2;
    s2.inequality_id = cfg.id + "_l2";
    s2.model = "h3";
    s2.ensemble = "gaussian_bump";
    s2.p_or_q = 2.0;
    for (std::size_t i = 0; i < cfg.lam0_list.size(); ++i)
      s2.points.push_back({1.0 / cfg.lam0_list[i], l2_ratios[i], 1});
    out.push_back(make_report(std::move(s2), CheckKind::SlopeNear, 0.5, 0.1));
  }
  return out;
}

std::vector<ExperimentReport> run_sweep(const ExperimentConfig& cfg, const RunOptions& opt,
                                        std::uint64_t seed, std::ostream& log) {
  ManifoldModel model = ManifoldModel::parse(cfg.model);
  auto table = spectra::enumerate_modes(model, cfg.cutoff);
  std::vector<probe::ConvergenceRow> rows =
      probe::convergence_sweep(table, cfg.alpha_list, cfg.t_list, seed);
  if (!opt.out_dir.empty()) {
    std::string path = opt.out_dir + "/" + cfg.section + "_sweep.csv";
    atomic_write_file(path, probe::sweep_csv(rows));
    log << "  wrote " << path << "\n";
  }
  // Diagnostic series: the smoothest level's sup errors over the t ladder.
  double amax = cfg.alpha_list.back();
  ScalingSeries s;
  s.inequality_id = cfg.id;
  s.model = cfg.model;
  s.ensemble = "sobolev";
  s.p_or_q = amax;
  for (const auto& row : rows)
    if (row.alpha == amax) s.points.push_back({row.t, row.sup_hi, 1});
  return {make_report(std::move(s), CheckKind::ValueAtMost,
                      std::numeric_limits<double>::infinity(), 0.0)};
}

}  // namespace

void fill_defaults(config::ExperimentConfig& cfg) {
  if (cfg.id.empty()) cfg.id = cfg.section;
  if (cfg.section.empty()) cfg.section = cfg.id;
  const std::string& id = cfg.id;
  auto def_h = [&](std::vector<double> hs) {
    if (cfg.h_list.empty()) cfg.h_list = std::move(hs);
  };
  if (id == "strichartz_5_1") {
    if (cfg.model.empty()) cfg.model = "circle";
    if (cfg.p <= 0.0) cfg.p = 6.0;
    def_h(dyadic_h(2, 4));
    if (cfg.trials <= 0) cfg.trials = 8;
  } else if (id == "torus_6_1") {
    if (cfg.model.empty()) cfg.model = "torus2";
    if (cfg.p <= 0.0) cfg.p = 4.0;
    def_h(dyadic_h(2, 6));
    if (cfg.trials <= 0) cfg.trials = 50;
  } else if (id == "torus_6_2") {
    if (cfg.model.empty()) cfg.model = "circle";
    if (cfg.p <= 0.0) cfg.p = 6.0;
    def_h(dyadic_h(2, 6));
    if (cfg.trials <= 0) cfg.trials = 50;
  } else if (id == "torus_6_3") {
    if (cfg.model.empty()) cfg.model = "torus3";
    if (cfg.p <= 0.0) cfg.p = 8.0 / 3.0;
    def_h(dyadic_h(1, 3));
    if (cfg.trials <= 0) cfg.trials = 20;
  } else if (id == "maximal_5_2") {
    if (cfg.model.empty()) cfg.model = "torus2";
    if (cfg.p <= 0.0) cfg.p = 4.0;
    def_h(dyadic_h(1, 5));
    if (cfg.trials <= 0) cfg.trials = cfg.model == "sphere2" ? 12 : 20;
  } else if (id == "lemma_5_7") {
    if (cfg.model.empty()) cfg.model = "torus2";
    if (cfg.q <= 0.0) cfg.q = 4.0;
    if (cfg.beta <= 0.0) cfg.beta = 1.0 / cfg.q;
    def_h(dyadic_h(1, 6));
    if (cfg.trials <= 0) cfg.trials = 50;
  } else if (id == "sphere_sec4") {
    if (cfg.model.empty()) cfg.model = "sphere2";
    if (cfg.alpha <= 0.0) cfg.alpha = 0.6;
    if (cfg.cutoff <= 0.0) cfg.cutoff = 64.5;
    if (cfg.trials <= 0) cfg.trials = 20;
  } else if (id == "sphere_sharp_1_8") {
    if (cfg.model.empty()) cfg.model = "sphere2";
    if (cfg.p <= 0.0) cfg.p = 4.0;
    def_h(dyadic_h(2, 5));
    if (cfg.trials <= 0) cfg.trials = 1;
  } else if (id == "low_freq") {
    if (cfg.model.empty()) cfg.model = "circle";
    if (cfg.q <= 0.0) cfg.q = 4.0;
    if (cfg.c0 <= 0.0) cfg.c0 = 1.0;
    if (cfg.cutoff <= 0.0) cfg.cutoff = std::max(8.0, 4.0 * cfg.c0);
    def_h({1.0});
    if (cfg.trials <= 0) cfg.trials = 20;
  } else if (id == "smoothing_3_1" || id == "smoothing_3_2") {
    if (cfg.model.empty()) cfg.model = "h3";
    if (cfg.lam0_list.empty()) cfg.lam0_list = {8.0, 16.0, 32.0, 64.0, 128.0};
    if (cfg.width <= 0.0) cfg.width = 1.0;
    if (cfg.ball_radius <= 0.0) cfg.ball_radius = 2.0;
  } else if (id == "sweep") {
    if (cfg.model.empty()) cfg.model = "circle";
    if (cfg.cutoff <= 0.0) cfg.cutoff = 64.0;
    if (cfg.alpha_list.empty()) cfg.alpha_list = {0.2, 0.6};
    if (cfg.t_list.empty()) cfg.t_list = {0.64, 0.32, 0.16, 0.08, 0.04, 0.02, 0.01};
    if (cfg.trials <= 0) cfg.trials = 1;
  } else {
    throw config_error("unknown inequality id '" + id + "'");
  }
  if (cfg.cutoff <= 0.0 && !cfg.h_list.empty()) {
    // Beams live at degree 1/h; blocks reach lambda = 2/h.
    cfg.cutoff = id == "sphere_sharp_1_8" ? 1.0 / min_h(cfg) + 1.5 : 2.0 / min_h(cfg);
  }
}

std::vector<ExperimentReport> run_experiment(const config::ExperimentConfig& cfg_in,
                                             const RunOptions& opt, std::ostream& log) {
  ExperimentConfig cfg = cfg_in;
  fill_defaults(cfg);
  if (is_slow(cfg) && !opt.slow) {
    log << "skip  " << cfg.section << " [" << cfg.model << "] (pass --slow to run)\n";
    return {};
  }
  log << "run   " << cfg.section << " (" << cfg.id << ", " << cfg.model << ")\n";
  std::uint64_t seed = opt.seed_override ? opt.seed : cfg.seed;
  if (cfg.id == "smoothing_3_1" || cfg.id == "smoothing_3_2") return run_smoothing(cfg);
  if (cfg.id == "sweep") return run_sweep(cfg, opt, seed, log);
  if (cfg.id == "sphere_sec4") return run_cascade(cfg, opt, seed, log);
  if (cfg.id == "lemma_5_7") return run_block_ratio(cfg, seed);
  if (cfg.id == "sphere_sharp_1_8") return run_sharp(cfg, seed);
  if (cfg.id == "low_freq") return run_lowfreq(cfg, seed);
  return run_scaling(cfg, seed);
}

int run_experiments(std::vector<config::ExperimentConfig> cfgs, const RunOptions& opt,
                    std::ostream& log) {
  try {
    std::vector<ExperimentReport> all;
    for (auto& cfg : cfgs) {
      fill_defaults(cfg);
      std::vector<ExperimentReport> reps = run_experiment(cfg, opt, log);
      for (std::size_t i = 0; i < reps.size(); ++i) {
        log << summary_line(reps[i]) << "\n";
        if (opt.plot && !opt.out_dir.empty()) {
          std::string name =
              cfg.section + (reps.size() > 1 ? "_" + std::to_string(i) : "") + ".svg";
          atomic_write_file(opt.out_dir + "/" + name, probe::scaling_svg(reps[i]));
        }
        all.push_back(std::move(reps[i]));
      }
    }
    if (!opt.out_dir.empty()) {
      atomic_write_file(opt.out_dir + "/report.csv", probe::report_csv(all));
      log << "wrote " << opt.out_dir << "/report.csv\n";
    }
    for (const auto& r : all)
      if (!r.pass) return 2;
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace speclab::runner
