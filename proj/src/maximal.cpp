#include "speclab/maximal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>

#include "speclab/csvio.hpp"
#include "speclab/lp.hpp"
#include "speclab/synth.hpp"

namespace speclab::maximal {

using spectra::ModelKind;

namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr double kEpsF = 1.1920928955078125e-7;
constexpr double kFlopBudget = 2e11;  // per profile sweep

bool is_torus(ModelKind k) {
  return k == ModelKind::Circle || k == ModelKind::Torus2 || k == ModelKind::Torus3;
}

// Modes carrying nonzero coefficients, grouped by exact eigenvalue equality
// (the table is eigenvalue-sorted, so groups are contiguous runs).
struct Groups {
  std::vector<double> eig;
  std::vector<std::vector<std::size_t>> members;
  double omega0 = 0.0;  // L2-mass-weighted center frequency

  std::size_t size() const { return eig.size(); }
};

Groups build_groups(const SpectralField& f) {
  Groups g;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f.c[j] == cplx{0.0, 0.0}) continue;
    double e = f.table->eig(j);
    if (g.eig.empty() || e != g.eig.back()) {
      g.eig.push_back(e);
      g.members.emplace_back();
    }
    g.members.back().push_back(j);
  }
  double ms = 0.0, me = 0.0;
  for (std::size_t gi = 0; gi < g.size(); ++gi) {
    double m2 = 0.0;
    for (auto j : g.members[gi]) m2 += std::norm(f.c[j]);
    double m = std::sqrt(m2);
    ms += m;
    me += m * g.eig[gi];
  }
  g.omega0 = ms > 0.0 ? me / ms : 0.0;
  return g;
}

std::vector<cplx> point_amplitudes(const SpectralField& f, const Groups& g,
                                   const std::array<double, 3>& x) {
  std::vector<cplx> A(g.size(), cplx{0.0, 0.0});
  for (std::size_t gi = 0; gi < g.size(); ++gi)
    for (auto j : g.members[gi])
      A[gi] += f.c[j] * spectra::eval_eigenfunction(f.table->model, f.table->modes[j], x);
  return A;
}

// Max of |sum_g A_g e^{it w'_g}| over t_i = i/n, i = 0..n, by phase
// recurrence with periodic exact resync.
double modulated_node_max(const std::vector<cplx>& A, const std::vector<double>& wp,
                          long long n) {
  const std::size_t G = A.size();
  const double d = 1.0 / static_cast<double>(n);
  std::vector<cplx> cur(G), step(G);
  for (std::size_t g = 0; g < G; ++g) step[g] = std::polar(1.0, d * wp[g]);
  double lo2 = 0.0;
  for (long long i = 0; i <= n; ++i) {
    if (i % 256 == 0) {
      double t = d * static_cast<double>(i);
      for (std::size_t g = 0; g < G; ++g) cur[g] = A[g] * std::polar(1.0, t * wp[g]);
    } else {
      for (std::size_t g = 0; g < G; ++g) cur[g] *= step[g];
    }
    cplx s{0.0, 0.0};
    for (std::size_t g = 0; g < G; ++g) s += cur[g];
    lo2 = std::max(lo2, std::norm(s));
  }
  return std::sqrt(lo2);
}

double pow_p(double nr, double p) {
  if (p == 2.0) return nr;
  if (p == 4.0) return nr * nr;
  if (p == 6.0) return nr * nr * nr;
  return std::pow(nr, 0.5 * p);
}

// Per-point Lipschitz data for torus profiles without per-point amplitudes:
// V(x) = sum_g |A_g(x)|^2 and G2(x) = sum_g w'_g^2 |A_g(x)|^2 are trig
// polynomials in the pair-difference frequencies, so one transform each
// evaluates them across the lattice (exact under folding). Cauchy-Schwarz
// then gives L2(x) <= min(sqrt(Sw4 V), sqrt(Sw2 G2)) and
// L1(x) <= min(sqrt(ncl G2), sqrt(Sw2 V)).
void torus_bound_data(const SpectralField& f, const Groups& g, const QuadratureGrid& grid,
                      std::vector<double>& L1b, std::vector<double>& L2b) {
  const int n = f.table->model.dim();
  const int N = grid.axis_n;
  const std::size_t total = grid.size();
  const double scale = std::pow(two_pi, -1.0 * n);
  std::vector<cplx> DV(total, cplx{0.0, 0.0}), DG(total, cplx{0.0, 0.0});
  for (std::size_t gi = 0; gi < g.size(); ++gi) {
    double w2 = sq(g.eig[gi] - g.omega0);
    for (auto j : g.members[gi])
      for (auto j2 : g.members[gi]) {
        const auto& qa = f.table->modes[j].q;
        const auto& qb = f.table->modes[j2].q;
        std::size_t idx = 0;
        for (int a = 0; a < n; ++a)
          idx = idx * N + static_cast<std::size_t>((((qa[a] - qb[a]) % N) + N) % N);
        cplx v = f.c[j] * std::conj(f.c[j2]) * scale;
        DV[idx] += v;
        DG[idx] += w2 * v;
      }
  }
  double aV = 0.0, aG = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    aV += std::abs(DV[i]);
    aG += std::abs(DG[i]);
  }
  double lg = std::log2(static_cast<double>(std::max<std::size_t>(total, 2)));
  double slackV = 16.0 * lg * kEps * aV;
  double slackG = 16.0 * lg * kEps * aG;

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(synth::fftw_planner_mutex());
    int dims[3] = {N, N, N};
    plan = fftw_plan_dft(n, dims, reinterpret_cast<fftw_complex*>(DV.data()),
                         reinterpret_cast<fftw_complex*>(DV.data()), FFTW_BACKWARD,
                         FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(DG.data()),
                   reinterpret_cast<fftw_complex*>(DG.data()));
  {
    std::lock_guard<std::mutex> lk(synth::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  double Sw2 = 0.0, Sw4 = 0.0;
  for (std::size_t gi = 0; gi < g.size(); ++gi) {
    double w2 = sq(g.eig[gi] - g.omega0);
    Sw2 += w2;
    Sw4 += w2 * w2;
  }
  double ncl = static_cast<double>(g.size());
  L1b.resize(total);
  L2b.resize(total);
  for (std::size_t x = 0; x < total; ++x) {
    double V = std::max(0.0, DV[x].real()) + slackV;
    double G2 = std::max(0.0, DG[x].real()) + slackG;
    L2b[x] = std::min(std::sqrt(Sw4 * V), std::sqrt(Sw2 * G2));
    L1b[x] = std::min(std::sqrt(ncl * G2), std::sqrt(Sw2 * V));
  }
}

// Exact double-precision |u(t, x)| at a torus lattice point via integer
// phase tables; used to pin lo after a single-precision sweep.
struct LatticeEval {
  const SpectralField& f;
  const Groups& g;
  int n, N;
  std::vector<cplx> tab;
  std::vector<int> fm;  // folded quanta, 3 per mode
  double scale;

  LatticeEval(const SpectralField& f_, const Groups& g_, const QuadratureGrid& grid)
      : f(f_), g(g_), n(f_.table->model.dim()), N(grid.axis_n) {
    tab.resize(N);
    for (int r = 0; r < N; ++r) tab[r] = std::polar(1.0, two_pi * r / N);
    fm.assign(3 * f.size(), 0);
    for (std::size_t j = 0; j < f.size(); ++j)
      for (int a = 0; a < n; ++a)
        fm[3 * j + a] = ((f.table->modes[j].q[a] % N) + N) % N;
    scale = std::pow(two_pi, -0.5 * n);
  }

  double modulus_at(std::size_t x, double t) const {
    int i1 = 0, i2 = 0, i3 = 0;
    if (n == 1) {
      i1 = static_cast<int>(x);
    } else if (n == 2) {
      i1 = static_cast<int>(x / N);
      i2 = static_cast<int>(x % N);
    } else {
      i1 = static_cast<int>(x / (static_cast<std::size_t>(N) * N));
      i2 = static_cast<int>((x / N) % N);
      i3 = static_cast<int>(x % N);
    }
    cplx acc{0.0, 0.0};
    for (std::size_t gi = 0; gi < g.size(); ++gi) {
      cplx Ag{0.0, 0.0};
      for (auto j : g.members[gi]) {
        int r = (fm[3 * j] * i1 + fm[3 * j + 1] * i2 + fm[3 * j + 2] * i3) % N;
        Ag += f.c[j] * tab[r];
      }
      acc += Ag * std::polar(1.0, t * g.eig[gi]);
    }
    return std::abs(acc) * scale;
  }
};

double coeff_l1_amp(const SpectralField& f) {
  double s = 0.0;
  for (const auto& z : f.c) s += std::abs(z);
  return s * std::pow(two_pi, -0.5 * f.table->model.dim());
}

}  // namespace

Enclosure certified_sup(const SpectralField& f, const std::array<double, 3>& x, double tol) {
  f.validate();
  if (!(tol > 0.0)) throw domain_error("certified_sup: tolerance must be positive");
  Groups g = build_groups(f);
  if (g.size() == 0) return {0.0, 0.0};
  std::vector<cplx> A = point_amplitudes(f, g, x);
  double S0 = 0.0;
  for (const auto& a : A) S0 += std::abs(a);
  if (S0 == 0.0) return {0.0, 0.0};
  if (g.size() == 1) {
    double a = std::abs(A[0]);
    return {a, a};
  }
  double w0 = 0.0;
  for (std::size_t gi = 0; gi < g.size(); ++gi) w0 += g.eig[gi] * std::abs(A[gi]);
  w0 /= S0;
  std::vector<double> wp(g.size());
  double L1 = 0.0, L2 = 0.0;
  for (std::size_t gi = 0; gi < g.size(); ++gi) {
    wp[gi] = g.eig[gi] - w0;
    L1 += std::abs(wp[gi]) * std::abs(A[gi]);
    L2 += sq(wp[gi]) * std::abs(A[gi]);
  }
  double slack = 2.0 * kEps * (256.0 + static_cast<double>(g.size())) * S0;
  double tol_eff = std::max(tol / 2.0, tol - 2.0 * slack);

  double d = 0.0;
  if (L1 > 0.0) d = 2.0 * tol_eff / L1;
  if (L2 > 0.0) d = std::max(d, std::sqrt(8.0 * tol_eff / L2));
  if (!(d > 0.0)) d = 1.0;
  long long n = std::max<long long>(32, static_cast<long long>(std::ceil(1.0 / d)));
  long long cap = std::max<long long>(64, static_cast<long long>(2e8 / static_cast<double>(g.size())));
  bool capped = n > cap;
  if (capped) n = cap;

  double lo = modulated_node_max(A, wp, n);
  double da = 1.0 / static_cast<double>(n);
  double width = 2.0 * slack;
  double w1 = L1 > 0.0 ? 0.5 * da * L1 : std::numeric_limits<double>::infinity();
  double w2 = L2 > 0.0 ? 0.125 * da * da * L2 : std::numeric_limits<double>::infinity();
  if (std::isfinite(std::min(w1, w2))) width += std::min(w1, w2);
  Enclosure enc{lo, lo + width};
  if (enc.width() > tol)
    throw resource_limit_error("certified_sup: tolerance unreachable within the evaluation cap",
                               enc);
  return enc;
}

MaximalProfile maximal_profile(const SpectralField& f, const QuadratureGrid& sgrid, double tol) {
  f.validate();
  if (!(tol > 0.0)) throw domain_error("maximal_profile: tolerance must be positive");
  const std::size_t n_x = sgrid.size();
  MaximalProfile P;
  P.grid = sgrid;
  P.tol = tol;
  P.lo.assign(n_x, 0.0);
  P.hi.assign(n_x, 0.0);
  Groups g = build_groups(f);
  if (g.size() == 0) return P;

  const auto kind = f.table->model.kind;
  const bool torus = is_torus(kind);

  // Single active eigenvalue: modulus is t-independent, one slice decides.
  if (g.size() == 1) {
    synth::stream_slices(f, {1.0}, sgrid, false, [&](std::size_t, const cplx* u) {
      for (std::size_t x = 0; x < n_x; ++x) P.lo[x] = P.hi[x] = std::abs(u[x]);
    });
    return P;
  }

  std::vector<double> L1b, L2b;
  if (torus) {
    torus_bound_data(f, g, sgrid, L1b, L2b);
  } else {
    synth::LevelAmplitudes la = synth::level_amplitudes(f, sgrid);
    L1b.assign(n_x, 0.0);
    L2b.assign(n_x, 0.0);
    for (int k = 0; k < la.n_levels; ++k) {
      double w = la.eigs[k] - g.omega0;
      const cplx* amp = la.amp.data() + static_cast<std::size_t>(k) * la.n_x;
      for (std::size_t x = 0; x < n_x; ++x) {
        double a = std::abs(amp[x]);
        L1b[x] += std::abs(w) * a;
        L2b[x] += w * w * a;
      }
    }
  }

  const double amp_l1 = coeff_l1_amp(f);
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n_x, 2)));
  const double slack_d = 16.0 * lg * kEps * amp_l1;
  const double slack_f = 16.0 * lg * kEpsF * amp_l1;
  bool single = (kind == ModelKind::Torus2) && (2.0 * slack_f <= tol / 4.0) && n_x >= 4096;
  const double slice_slack = single ? slack_f : slack_d;
  const double te = tol - 2.0 * slice_slack - 2.0 * slack_d;
  if (!(te > 0.0))
    throw resource_limit_error("maximal_profile: tolerance below evaluation roundoff",
                               Enclosure{0.0, std::numeric_limits<double>::infinity()});

  // Spacing: the loosest point dictates the sweep density.
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < n_x; ++x) {
    double dx = 0.0;
    if (L1b[x] > 0.0) dx = 2.0 * te / L1b[x];
    if (L2b[x] > 0.0) dx = std::max(dx, std::sqrt(8.0 * te / L2b[x]));
    if (dx > 0.0) d = std::min(d, dx);
  }
  if (!std::isfinite(d)) d = 1.0;

  double slice_flops;
  if (torus) {
    std::size_t act = 0;
    for (const auto& m : g.members) act += m.size();
    slice_flops = 5.0 * static_cast<double>(n_x) * lg + 8.0 * static_cast<double>(act);
  } else {
    slice_flops = 8.0 * static_cast<double>(n_x) * static_cast<double>(g.size());
  }
  long long cap =
      std::max<long long>(256, static_cast<long long>(kFlopBudget / std::max(slice_flops, 1.0)));
  long long n = std::max<long long>(64, static_cast<long long>(std::ceil(1.0 / d)));
  if (n > cap) n = cap;

  std::vector<double> tnodes(n + 1);
  for (long long i = 0; i <= n; ++i) tnodes[i] = static_cast<double>(i) / static_cast<double>(n);
  std::vector<double> lo2(n_x, 0.0);
  std::vector<int> arg(single ? n_x : 0, 0);
  synth::stream_slices(f, tnodes, sgrid, single, [&](std::size_t i, const cplx* u) {
    if (single) {
      for (std::size_t x = 0; x < n_x; ++x) {
        double nr = std::norm(u[x]);
        if (nr > lo2[x]) {
          lo2[x] = nr;
          arg[x] = static_cast<int>(i);
        }
      }
    } else {
      for (std::size_t x = 0; x < n_x; ++x) lo2[x] = std::max(lo2[x], std::norm(u[x]));
    }
  });

  const double da = 1.0 / static_cast<double>(n);
  double worst = 0.0;
  std::size_t worst_x = 0;
  if (single) {
    LatticeEval ev(f, g, sgrid);
    for (std::size_t x = 0; x < n_x; ++x) {
      double lo_exact = ev.modulus_at(x, tnodes[arg[x]]);
      double cell = std::min(0.5 * da * L1b[x], 0.125 * da * da * L2b[x]);
      P.lo[x] = lo_exact;
      P.hi[x] = std::max(lo_exact, std::sqrt(lo2[x]) + slack_f) + cell + slack_d;
      if (P.hi[x] - P.lo[x] > worst) {
        worst = P.hi[x] - P.lo[x];
        worst_x = x;
      }
    }
  } else {
    for (std::size_t x = 0; x < n_x; ++x) {
      double lom = std::sqrt(lo2[x]);
      double cell = std::min(0.5 * da * L1b[x], 0.125 * da * da * L2b[x]);
      P.lo[x] = lom;
      P.hi[x] = lom + cell + 2.0 * slack_d;
      if (P.hi[x] - P.lo[x] > worst) {
        worst = P.hi[x] - P.lo[x];
        worst_x = x;
      }
    }
  }
  if (worst > tol)
    throw resource_limit_error("maximal_profile: tolerance unreachable within the sweep cap",
                               Enclosure{P.lo[worst_x], P.hi[worst_x]});
  return P;
}

Enclosure maximal_lp_norm(const MaximalProfile& profile, double p) {
  if (!(p >= 1.0)) throw config_error("maximal_lp_norm: p must be >= 1");
  KahanSum slo, shi;
  for (std::size_t x = 0; x < profile.lo.size(); ++x) {
    slo.add(profile.grid.weights[x] * pow_p(sq(profile.lo[x]), p));
    shi.add(profile.grid.weights[x] * pow_p(sq(profile.hi[x]), p));
  }
  return {std::pow(slo.value(), 1.0 / p), std::pow(shi.value(), 1.0 / p)};
}

double sup_control_rhs(const std::vector<cplx>& g, const std::vector<cplx>& dg,
                       const evolve::TimeGrid& tg, double mu, double q) {
  tg.validate();
  if (g.size() != tg.size() || dg.size() != tg.size())
    throw config_error("sup_control_rhs: sample lengths do not match the time grid");
  if (!(mu > 0.0)) throw domain_error("sup_control_rhs: mu must be positive");
  if (!(q >= 1.0)) throw domain_error("sup_control_rhs: q must be >= 1");
  auto lq = [&](const std::vector<cplx>& v) {
    KahanSum s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s.add(tg.weights[i] * std::pow(std::abs(v[i]), q));
    return std::pow(s.value(), 1.0 / q);
  };
  return std::abs(g[0]) + std::pow(mu, 1.0 / q - 1.0) * lq(dg) + std::pow(mu, 1.0 / q) * lq(g);
}

Enclosure level_sum_constant(double alpha) {
  if (!(alpha > 0.5))
    throw domain_error("level_sum_constant: series diverges for alpha <= 1/2");
  KahanSum P;
  long long N = 0;
  for (long long target = 1 << 16;; target *= 2) {
    for (; N < target; ++N)
      P.add(std::pow(1.0 + static_cast<double>(N) * (static_cast<double>(N) + 1.0), -alpha));
    // Tail over k >= N via 1 + k(k+1) = (k+1/2)^2 + 3/4 and the integral test.
    double Nd = static_cast<double>(N);
    double thi = std::pow(Nd - 0.5, 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0);
    double tlo = std::pow(Nd + 0.5, 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0) *
                 std::max(0.0, 1.0 - 3.0 * alpha / (4.0 * sq(Nd + 0.5)));
    double rnd = 4.0 * kEps * P.value();
    double Slo = P.value() + tlo - rnd;
    double Shi = P.value() + thi + rnd;
    if (Shi - Slo <= 1e-10 * Slo) return {std::sqrt(Slo), std::sqrt(Shi)};
    if (target > (1LL << 31))
      throw resource_limit_error("level_sum_constant: tail will not reach 1e-10 at this alpha",
                                 Enclosure{std::sqrt(Slo), std::sqrt(Shi)});
  }
}

CascadeReport sphere_levelwise_cascade(const SpectralField& f, double alpha) {
  f.validate();
  if (f.table->model.kind != ModelKind::Sphere2)
    throw domain_error("sphere_levelwise_cascade: 2-sphere fields only");
  Enclosure C = level_sum_constant(alpha);
  QuadratureGrid grid = spectra::grid_for_table(*f.table);
  double l2 = fields::l2_norm(f);
  double tol = std::max(1e-9, 1e-3 * l2);
  MaximalProfile prof = maximal_profile(f, grid, tol);
  synth::LevelAmplitudes la = synth::level_amplitudes(f, grid);

  std::vector<double> level_sum(grid.size(), 0.0);
  for (int k = 0; k < la.n_levels; ++k) {
    const cplx* amp = la.amp.data() + static_cast<std::size_t>(k) * la.n_x;
    for (std::size_t x = 0; x < grid.size(); ++x) level_sum[x] += std::abs(amp[x]);
  }

  CascadeReport r;
  r.alpha = alpha;
  r.calpha = C;
  r.tstar_l2 = maximal_lp_norm(prof, 2.0);
  r.sobolev = fields::sobolev_norm(f, alpha);
  r.tol = tol;

  std::size_t x1 = 0;
  double m1 = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < grid.size(); ++x) {
    double m = level_sum[x] - prof.hi[x];
    if (m < m1) {
      m1 = m;
      x1 = x;
    }
  }
  r.steps[0] = {"pointwise_level_sum", prof.hi[x1], level_sum[x1], m1};

  KahanSum s2;
  for (std::size_t x = 0; x < grid.size(); ++x) s2.add(grid.weights[x] * sq(level_sum[x]));
  double lhs2 = std::sqrt(s2.value());
  KahanSum rs;
  {
    int K = la.n_levels - 1;
    std::vector<double> lev2(K + 1, 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) lev2[f.table->modes[j].q[0]] += std::norm(f.c[j]);
    for (int k = 0; k <= K; ++k) rs.add(std::sqrt(lev2[k]));
  }
  double rhs2 = rs.value();
  r.steps[1] = {"l2_triangle", lhs2, rhs2, rhs2 - lhs2};

  double rhs3 = C.lo * r.sobolev;
  r.steps[2] = {"level_embedding", rhs2, rhs3, rhs3 - rhs2};
  return r;
}

BlockRatioReport block_maximal_ratio_check(const SpectralField& f, double h, double q,
                                           double beta) {
  if (!(q >= 2.0)) throw config_error("block_maximal_ratio_check: q must be >= 2");
  SpectralField block = lp::block_for_h(f, h);
  double l2 = fields::l2_norm(block);
  BlockRatioReport r;
  r.h = h;
  r.q = q;
  r.beta = beta;
  if (!(l2 > 0.0)) throw domain_error("block_maximal_ratio_check: block carries no energy");
  QuadratureGrid full = spectra::grid_for_table(*f.table);
  double lq = fields::lebesgue_norm(block, q, full);
  r.rhs = std::pow(h, -2.0 / q - beta) * l2 + lq;

  QuadratureGrid pgrid = full;
  if (is_torus(f.table->model.kind) && full.axis_n > 160)
    pgrid = spectra::quadrature_grid(f.table->model, 128);
  MaximalProfile prof = maximal_profile(block, pgrid, 0.005 * l2);
  r.lhs = maximal_lp_norm(prof, q);
  r.ratio = {r.lhs.lo / r.rhs, r.lhs.hi / r.rhs};
  return r;
}

std::string profile_csv(const MaximalProfile& p) {
  CsvWriter w;
  w.comment("tol=" + fmt_g(p.tol, 17));
  w.row({"point", "lo", "hi"});
  const int dims = p.grid.model.dim();
  for (std::size_t x = 0; x < p.grid.size(); ++x) {
    std::string pt;
    for (int a = 0; a < dims; ++a) {
      if (a) pt += ';';
      pt += fmt_g(p.grid.points[x][a]);
    }
    w.row({pt, fmt_g(p.lo[x], 17), fmt_g(p.hi[x], 17)});
  }
  return w.str();
}

std::string cascade_csv(const CascadeReport& r) {
  CsvWriter w;
  w.comment("alpha=" + fmt_g(r.alpha) + " calpha=[" + fmt_g(r.calpha.lo, 17) + "," +
            fmt_g(r.calpha.hi, 17) + "] sobolev=" + fmt_g(r.sobolev, 17));
  w.row({"step", "lhs", "rhs", "margin"});
  for (const auto& s : r.steps) w.row({s.step, fmt_g(s.lhs, 17), fmt_g(s.rhs, 17), fmt_g(s.margin, 17)});
  return w.str();
}

}  // namespace speclab::maximal
