#include "speclab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speclab/csvio.hpp"
#include "speclab/evolve.hpp"
#include "speclab/lp.hpp"
#include "speclab/maximal.hpp"
#include "speclab/synth.hpp"

namespace speclab::probe {

using spectra::ModelKind;
using spectra::QuadratureGrid;

namespace {

constexpr double kEps = 2.220446049250313e-16;

bool is_torus(ModelKind k) {
  return k == ModelKind::Circle || k == ModelKind::Torus2 || k == ModelKind::Torus3;
}

// Pair-exact grid, downshifted to a 128-per-axis lattice for large torus
// tables (lattice values stay exact under folding).
QuadratureGrid ratio_grid(const SpectralField& f) {
  QuadratureGrid g = spectra::grid_for_table(*f.table);
  if (is_torus(f.table->model.kind) && g.axis_n > 160)
    g = spectra::quadrature_grid(f.table->model, 128);
  return g;
}

bool block_is_zero(const SpectralField& f, double block_l2) {
  return !(block_l2 > 1e-12 * std::max(1.0, fields::l2_norm(f)));
}

double strichartz_value(const SpectralField& block, double l2, double p) {
  auto kind = block.table->model.kind;
  auto sgrid = ratio_grid(block);
  auto tgrid = evolve::time_grid_for(block, 0.0, 1.0);
  auto prec = (kind == ModelKind::Torus2 || kind == ModelKind::Torus3)
                  ? evolve::SlicePrecision::fast
                  : evolve::SlicePrecision::full;
  return evolve::spacetime_norm(block, p, tgrid, sgrid, prec) / l2;
}

double maximal_value(const SpectralField& block, double l2, double p) {
  auto prof = maximal::maximal_profile(block, ratio_grid(block), 0.005 * l2);
  return maximal::maximal_lp_norm(prof, p).hi / l2;
}

}  // namespace

void ScalingSeries::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].value >= 0.0))
      throw config_error("scaling series: values must be nonnegative");
    if (i > 0 && !(points[i].h < points[i - 1].h))
      throw config_error("scaling series: h must be strictly decreasing");
  }
}

bool check_passes(const ScalingSeries& s, const FitResult& fit, CheckKind kind,
                  double threshold, double tolerance) {
  switch (kind) {
    case CheckKind::SlopeAtLeast:
      return fit.slope >= threshold;
    case CheckKind::SlopeNear:
      return std::abs(fit.slope - threshold) <= tolerance;
    case CheckKind::ValueAtMost:
      for (const auto& pt : s.points)
        if (!(pt.value <= threshold)) return false;
      return true;
  }
  return false;
}

double strichartz_ratio_one(const SpectralField& f, double h, double p) {
  if (!(p >= 2.0)) throw config_error("strichartz ratio: p must be >= 2");
  SpectralField block = lp::block_for_h(f, h);
  double l2 = fields::l2_norm(block);
  if (block_is_zero(f, l2)) throw domain_error("strichartz ratio: block carries no energy");
  return strichartz_value(block, l2, p);
}

double maximal_ratio_one(const SpectralField& f, double h, double p) {
  if (!(p >= 2.0)) throw config_error("maximal ratio: p must be >= 2");
  SpectralField block = lp::block_for_h(f, h);
  double l2 = fields::l2_norm(block);
  if (block_is_zero(f, l2)) throw domain_error("maximal ratio: block carries no energy");
  return maximal_value(block, l2, p);
}

double low_frequency_ratio_one(const SpectralField& f, double q, double c0) {
  if (!(q >= 2.0)) throw config_error("low frequency ratio: q must be >= 2");
  if (!(c0 > 0.0)) throw config_error("low frequency ratio: cutoff must be positive");
  double l2f = fields::l2_norm(f);
  if (l2f == 0.0) return 0.0;
  SpectralField g = f;
  for (std::size_t j = 0; j < g.size(); ++j)
    g.c[j] *= lp::eta(g.table->eig(j) / (c0 * c0));
  auto prof = maximal::maximal_profile(g, ratio_grid(f), 0.005 * l2f);
  return maximal::maximal_lp_norm(prof, q).hi / l2f;
}

double strichartz_ratio(const std::shared_ptr<const ModeTable>& table, const DataFamily& fam,
                        double h, double p, int trials) {
  if (!(p >= 2.0)) throw config_error("strichartz ratio: p must be >= 2");
  double best = -1.0;
  for (int trial = 0; trial < trials; ++trial) {
    SpectralField f = fam.member(table, trial);
    SpectralField block = lp::block_for_h(f, h);
    double l2 = fields::l2_norm(block);
    if (block_is_zero(f, l2)) continue;
    best = std::max(best, strichartz_value(block, l2, p));
  }
  if (best < 0.0)
    throw config_error("strichartz ratio: every ensemble member has an empty block at this scale");
  return best;
}

double maximal_ratio(const std::shared_ptr<const ModeTable>& table, const DataFamily& fam,
                     double h, double p, int trials) {
  if (!(p >= 2.0)) throw config_error("maximal ratio: p must be >= 2");
  double best = -1.0;
  for (int trial = 0; trial < trials; ++trial) {
    SpectralField f = fam.member(table, trial);
    SpectralField block = lp::block_for_h(f, h);
    double l2 = fields::l2_norm(block);
    if (block_is_zero(f, l2)) continue;
    best = std::max(best, maximal_value(block, l2, p));
  }
  if (best < 0.0)
    throw config_error("maximal ratio: every ensemble member has an empty block at this scale");
  return best;
}

double low_frequency_bound(const std::shared_ptr<const ModeTable>& table,
                           const DataFamily& fam, double q, double c0, int trials) {
  double best = 0.0;
  for (int trial = 0; trial < trials; ++trial)
    best = std::max(best, low_frequency_ratio_one(fam.member(table, trial), q, c0));
  return best;
}

FitResult fit_exponent(const ScalingSeries& s) {
  s.validate();
  if (s.points.size() < 3) throw domain_error("fit_exponent: at least 3 scales required");
  std::vector<double> xs, ys;
  for (const auto& pt : s.points) {
    if (!(pt.value > 0.0)) throw domain_error("fit_exponent: values must be positive");
    xs.push_back(std::log(pt.h));
    ys.push_back(std::log(pt.value));
  }
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult r;
  r.slope = sxy / sxx;
  double ssres = 0.0, sstot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = ys[i] - (my + r.slope * (xs[i] - mx));
    ssres += e * e;
    sstot += (ys[i] - my) * (ys[i] - my);
  }
  r.r2 = sstot > 1e-28 ? 1.0 - ssres / sstot : 1.0;
  return r;
}

namespace {

// Coefficient-sum bound on the sup norm, for roundoff envelopes.
double sup_envelope(const SpectralField& f) {
  const auto& model = f.table->model;
  KahanSum s;
  if (is_torus(model.kind)) {
    for (const auto& c : f.c) s.add(std::abs(c));
    return s.value() * std::pow(two_pi, -0.5 * model.dim());
  }
  if (model.kind == ModelKind::Sphere2) {
    for (std::size_t j = 0; j < f.size(); ++j)
      s.add(std::abs(f.c[j]) *
            std::sqrt((2.0 * f.table->modes[j].q[0] + 1.0) / (4.0 * pi)));
    return s.value();
  }
  for (std::size_t j = 0; j < f.size(); ++j)
    s.add(std::abs(f.c[j]) * std::abs(spectra::eval_eigenfunction_real(
                                 model, f.table->modes[j], {0.0, 0.0, 0.0})));
  return s.value();
}

}  // namespace

std::vector<ConvergenceRow> convergence_sweep(const std::shared_ptr<const ModeTable>& table,
                                              const std::vector<double>& alphas,
                                              const std::vector<double>& ts,
                                              std::uint64_t seed) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || ts[i] > 1.0)
      throw config_error("convergence sweep: t values must lie in (0, 1]");
    if (i > 0 && !(ts[i] < ts[i - 1]))
      throw config_error("convergence sweep: t list must be strictly decreasing");
  }
  QuadratureGrid grid = spectra::grid_for_table(*table);
  std::vector<ConvergenceRow> rows;
  for (double alpha : alphas) {
    DataFamily fam = DataFamily::sobolev(alpha, seed);
    SpectralField f = fam.member(table, 0);
    double sob = fields::sobolev_norm(f, alpha);
    std::vector<cplx> f0 = synth::synthesize_grid(f, grid);
    double env = sup_envelope(f);
    for (double t : ts) {
      std::vector<cplx> u = synth::synthesize_grid(evolve::propagate(f, t), grid);
      double sup = 0.0;
      for (std::size_t x = 0; x < u.size(); ++x) sup = std::max(sup, std::abs(u[x] - f0[x]));
      ConvergenceRow row;
      row.alpha = alpha;
      row.t = t;
      row.sup_lo = sup;
      row.sup_hi = sup + 128.0 * kEps * env;
      row.sobolev = sob;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string report_csv(const std::vector<ExperimentReport>& reports) {
  CsvWriter w;
  w.row({"inequality_id", "model", "h", "p_or_q", "trials", "value", "slope", "r2",
         "threshold", "pass"});
  for (const auto& r : reports)
    for (const auto& pt : r.series.points)
      w.row({r.series.inequality_id, r.series.model, fmt_g(pt.h, 17), fmt_g(r.series.p_or_q),
             std::to_string(pt.trials), fmt_g(pt.value, 17), fmt_g(r.fit.slope, 17),
             fmt_g(r.fit.r2, 17), fmt_g(r.threshold), r.pass ? "1" : "0"});
  return w.str();
}

std::string sweep_csv(const std::vector<ConvergenceRow>& rows) {
  CsvWriter w;
  w.row({"alpha", "t", "sup_lo", "sup_hi", "sobolev"});
  for (const auto& r : rows)
    w.row({fmt_g(r.alpha), fmt_g(r.t, 17), fmt_g(r.sup_lo, 17), fmt_g(r.sup_hi, 17),
           fmt_g(r.sobolev, 17)});
  return w.str();
}

std::string scaling_svg(const ExperimentReport& report) {
  const auto& pts = report.series.points;
  const double W = 640, H = 460, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& pt : pts) {
    double x = std::log10(1.0 / pt.h);
    double y = std::log10(std::max(pt.value, 1e-300));
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (!(xmax > xmin)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymax > ymin)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  double ypad = 0.08 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;
  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 460\">\n";
  s += "<rect width=\"640\" height=\"460\" fill=\"white\"/>\n";
  s += "<line x1=\"" + fmt_g(ml) + "\" y1=\"" + fmt_g(H - mb) + "\" x2=\"" + fmt_g(W - mr) +
       "\" y2=\"" + fmt_g(H - mb) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt_g(ml) + "\" y1=\"" + fmt_g(mt) + "\" x2=\"" + fmt_g(ml) +
       "\" y2=\"" + fmt_g(H - mb) + "\" stroke=\"black\"/>\n";
  for (const auto& pt : pts) {
    double x = X(std::log10(1.0 / pt.h));
    s += "<line x1=\"" + fmt_g(x) + "\" y1=\"" + fmt_g(H - mb) + "\" x2=\"" + fmt_g(x) +
         "\" y2=\"" + fmt_g(H - mb + 6) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt_g(x) + "\" y=\"" + fmt_g(H - mb + 20) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + fmt_g(pt.h, 6) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    double y = ymin + (ymax - ymin) * i / 4.0;
    s += "<line x1=\"" + fmt_g(ml - 6) + "\" y1=\"" + fmt_g(Y(y)) + "\" x2=\"" + fmt_g(ml) +
         "\" y2=\"" + fmt_g(Y(y)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt_g(ml - 10) + "\" y=\"" + fmt_g(Y(y) + 4) +
         "\" font-size=\"11\" text-anchor=\"end\">" + fmt_g(std::pow(10.0, y), 4) +
         "</text>\n";
  }
  std::string poly;
  for (const auto& pt : pts)
    poly += fmt_g(X(std::log10(1.0 / pt.h))) + "," +
            fmt_g(Y(std::log10(std::max(pt.value, 1e-300)))) + " ";
  s += "<polyline points=\"" + poly +
       "\" fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"2\"/>\n";
  for (const auto& pt : pts)
    s += "<circle cx=\"" + fmt_g(X(std::log10(1.0 / pt.h))) + "\" cy=\"" +
         fmt_g(Y(std::log10(std::max(pt.value, 1e-300)))) +
         "\" r=\"3\" fill=\"#1f6fb4\"/>\n";
  if (pts.size() >= 2) {
    // fitted line: log10(v) = log10(v0) + slope*(log10(h) - log10(h0)) anchored
    // at the series mean
    double mx = 0.0, my = 0.0;
    for (const auto& pt : pts) {
      mx += std::log10(pt.h);
      my += std::log10(std::max(pt.value, 1e-300));
    }
    mx /= pts.size();
    my /= pts.size();
    double x0 = std::log10(pts.front().h), x1 = std::log10(pts.back().h);
    double ya = my + report.fit.slope * (x0 - mx), yb = my + report.fit.slope * (x1 - mx);
    s += "<line x1=\"" + fmt_g(X(-x0)) + "\" y1=\"" + fmt_g(Y(ya)) + "\" x2=\"" +
         fmt_g(X(-x1)) + "\" y2=\"" + fmt_g(Y(yb)) +
         "\" stroke=\"#c44e52\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
  }
  s += "<text x=\"" + fmt_g(ml) + "\" y=\"24\" font-size=\"13\">" + report.series.inequality_id +
       " " + report.series.model + "  slope=" + fmt_g(report.fit.slope, 6) +
       "  r2=" + fmt_g(report.fit.r2, 6) + "  threshold=" + fmt_g(report.threshold, 6) +
       (report.pass ? "  pass" : "  FAIL") + "</text>\n";
  s += "<text x=\"" + fmt_g((W - mr + ml) / 2) + "\" y=\"" + fmt_g(H - 10) +
       "\" font-size=\"12\" text-anchor=\"middle\">log10(1/h)</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace speclab::probe
