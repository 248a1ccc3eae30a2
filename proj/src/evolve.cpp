#include "speclab/evolve.hpp"

#include <cmath>

#include "speclab/csvio.hpp"
#include "speclab/synth.hpp"

namespace speclab::evolve {

double TimeGrid::spacing() const {
  return size() > 1 ? (b - a) / static_cast<double>(size() - 1) : 0.0;
}

void TimeGrid::validate() const {
  if (!(a >= 0.0 && a < b && b <= 1.0)) throw config_error("time grid: need 0 <= a < b <= 1");
  if (nodes.size() < 2 || nodes.size() != weights.size()) throw config_error("time grid: malformed");
  double wsum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw config_error("time grid: nodes not increasing");
    if (!(weights[i] > 0.0)) throw config_error("time grid: nonpositive weight");
    wsum += weights[i];
  }
  if (std::abs(wsum - (b - a)) > 1e-12) throw config_error("time grid: weights do not sum to b-a");
}

TimeGrid uniform_time_grid(double a, double b, int n_intervals) {
  if (n_intervals < 1) throw config_error("time grid: need at least one interval");
  TimeGrid g;
  g.a = a;
  g.b = b;
  double d = (b - a) / n_intervals;
  g.nodes.resize(n_intervals + 1);
  g.weights.resize(n_intervals + 1);
  for (int i = 0; i <= n_intervals; ++i) {
    g.nodes[i] = a + d * i;
    g.weights[i] = (i == 0 || i == n_intervals) ? d / 2.0 : d;
  }
  g.nodes.back() = b;
  g.validate();
  return g;
}

namespace {

void active_range(const SpectralField& f, double& lo, double& hi, bool& any) {
  lo = hi = 0.0;
  any = false;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f.c[j] == cplx{0.0, 0.0}) continue;
    double e = f.table->eig(j);
    if (!any) {
      lo = hi = e;
      any = true;
    } else {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
}

}  // namespace

double active_half_spread(const SpectralField& f) {
  double lo, hi;
  bool any;
  active_range(f, lo, hi, any);
  return any ? (hi - lo) / 2.0 : 0.0;
}

double active_center(const SpectralField& f) {
  double lo, hi;
  bool any;
  active_range(f, lo, hi, any);
  return (lo + hi) / 2.0;
}

TimeGrid time_grid_for(const SpectralField& f, double a, double b, int min_intervals) {
  f.validate();
  double W = active_half_spread(f);
  double n_needed = 4.0 * W * (b - a);
  int n = std::max(min_intervals, static_cast<int>(std::ceil(n_needed * (1.0 + 1e-12))));
  return uniform_time_grid(a, b, n);
}

SpectralField propagate(const SpectralField& f, double t) {
  f.validate();
  if (!std::isfinite(t)) throw domain_error("propagate: non-finite time");
  SpectralField g = f;
  for (std::size_t j = 0; j < g.size(); ++j)
    g.c[j] *= std::polar(1.0, t * g.table->eig(j));
  return g;
}

namespace {

// |u|^p from |u|^2 for the even powers that dominate the workload.
struct PowP {
  double p;
  int code;  // 2, 4, 6 or 0 for the generic path
  explicit PowP(double p_) : p(p_) {
    code = (p == 2.0) ? 2 : (p == 4.0) ? 4 : (p == 6.0) ? 6 : 0;
  }
  double operator()(double nr) const {
    switch (code) {
      case 2: return nr;
      case 4: return nr * nr;
      case 6: return nr * nr * nr;
      default: return std::pow(nr, 0.5 * p);
    }
  }
};

void check_grids(const SpectralField& f, const TimeGrid& tg, const QuadratureGrid& sg) {
  f.validate();
  tg.validate();
  if (sg.model.kind != f.table->model.kind)
    throw config_error("space grid model does not match the field");
  // Torus lattices may subsample the pair-exact rule: folding m mod N keeps
  // slice values exact there, and the norm is that lattice's quadrature.
  const bool folded_torus_lattice = sg.axis_n > 0;
  if (!folded_torus_lattice && !sg.admissible_for(*f.table))
    throw config_error("space grid below the field's cutoff");
  double W = active_half_spread(f);
  if (W > 0.0 && tg.spacing() * 4.0 * W > 1.0 + 1e-9)
    throw config_error("time spacing too coarse for the field's frequency spread");
}

}  // namespace

double spacetime_norm(const SpectralField& f, double p, const TimeGrid& tgrid,
                      const QuadratureGrid& sgrid, SlicePrecision prec) {
  if (!(p >= 1.0)) throw config_error("spacetime_norm: p must be >= 1");
  check_grids(f, tgrid, sgrid);

  // p = 2 is t-independent by unitarity; report the exact integral.
  if (p == 2.0) return std::sqrt(tgrid.b - tgrid.a) * fields::l2_norm(f);

  PowP pw(p);
  KahanSum total;
  const auto& wx = sgrid.weights;
  synth::stream_slices(f, tgrid.nodes, sgrid, prec == SlicePrecision::fast,
                       [&](std::size_t i, const cplx* u) {
                         double s = 0.0;
                         for (std::size_t x = 0; x < wx.size(); ++x)
                           s += wx[x] * pw(std::norm(u[x]));
                         total.add(tgrid.weights[i] * s);
                       });
  return std::pow(total.value(), 1.0 / p);
}

LocalizedL2 localized_l2(const SpectralField& f, const TimeGrid& tgrid,
                         const std::function<bool(const std::array<double, 3>&)>& region,
                         const QuadratureGrid& sgrid) {
  check_grids(f, tgrid, sgrid);
  std::vector<std::size_t> mask;
  for (std::size_t x = 0; x < sgrid.size(); ++x)
    if (region(sgrid.points[x])) mask.push_back(x);
  if (mask.empty()) return {0.0, true};

  KahanSum total;
  synth::stream_slices(f, tgrid.nodes, sgrid, false, [&](std::size_t i, const cplx* u) {
    double s = 0.0;
    for (auto x : mask) s += sgrid.weights[x] * std::norm(u[x]);
    total.add(tgrid.weights[i] * s);
  });
  return {std::sqrt(total.value()), false};
}

SpaceTimeSamples sample_evolution(const SpectralField& f, const TimeGrid& tgrid,
                                  const QuadratureGrid& sgrid) {
  check_grids(f, tgrid, sgrid);
  SpaceTimeSamples s;
  s.model = f.table->model.name();
  s.t = tgrid.nodes;
  s.x = sgrid.points;
  s.values.resize(tgrid.size() * sgrid.size());
  synth::stream_slices(f, tgrid.nodes, sgrid, false, [&](std::size_t i, const cplx* u) {
    std::copy(u, u + sgrid.size(), s.values.begin() + static_cast<std::ptrdiff_t>(i * sgrid.size()));
  });
  return s;
}

std::string samples_csv(const SpaceTimeSamples& s, int qlen) {
  CsvWriter w;
  w.comment("model=" + s.model);
  std::vector<std::string> head{"t"};
  for (int a = 0; a < qlen; ++a) head.push_back("x" + std::to_string(a + 1));
  head.push_back("re");
  head.push_back("im");
  w.row(head);
  for (std::size_t i = 0; i < s.t.size(); ++i)
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      std::vector<std::string> row{fmt_g(s.t[i])};
      for (int a = 0; a < qlen; ++a) row.push_back(fmt_g(s.x[j][a]));
      const cplx& v = s.values[i * s.x.size() + j];
      row.push_back(fmt_g(v.real(), 17));
      row.push_back(fmt_g(v.imag(), 17));
      w.row(row);
    }
  return w.str();
}

}  // namespace speclab::evolve
