#include "speclab/synth.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <mutex>

namespace speclab::synth {

using spectra::ModelKind;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

namespace {

bool is_torus(ModelKind k) {
  return k == ModelKind::Circle || k == ModelKind::Torus2 || k == ModelKind::Torus3;
}

// Exact torus synthesis: scatter coefficients onto the index lattice
// (m mod N per axis) and run one backward transform. Folding m mod N is the
// identity e^{imx} = e^{i(m mod N)x} at lattice points, so the values are
// exact for any N; collisions simply add.
std::vector<cplx> synthesize_torus_fft(const SpectralField& f, const QuadratureGrid& grid) {
  const int n = f.table->model.dim();
  const int N = grid.axis_n;
  std::size_t total = grid.size();
  fftw_complex* buf = fftw_alloc_complex(total);
  std::memset(buf, 0, sizeof(fftw_complex) * total);
  const double scale = std::pow(two_pi, -0.5 * n);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& q = f.table->modes[j].q;
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) idx = idx * N + static_cast<std::size_t>(((q[a] % N) + N) % N);
    buf[idx][0] += f.c[j].real() * scale;
    buf[idx][1] += f.c[j].imag() * scale;
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(fftw_planner_mutex());
    int dims[3] = {N, N, N};
    plan = fftw_plan_dft(n, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<cplx> out(total);
  for (std::size_t p = 0; p < total; ++p) out[p] = {buf[p][0], buf[p][1]};
  {
    std::lock_guard<std::mutex> lk(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

// Precomputed normalized Legendre values over a sphere grid's theta nodes:
// value(m, k, i) with k >= m, plus cos/sin tables over the phi nodes.
struct SphereBasisTables {
  int K = 0, n_theta = 0, n_phi = 0;
  std::vector<double> leg;           // packed rows: offset(m) + (k - m) * n_theta + i
  std::vector<std::size_t> off;      // per-m offsets
  std::vector<double> cos_t, sin_t;  // [m * n_phi + j]

  double P(int m, int k, int i) const {
    return leg[off[m] + static_cast<std::size_t>(k - m) * n_theta + i];
  }
};

SphereBasisTables sphere_tables(int K, const QuadratureGrid& grid) {
  SphereBasisTables t;
  t.K = K;
  t.n_theta = grid.n_theta;
  t.n_phi = grid.n_phi;
  t.off.assign(K + 1, 0);
  std::size_t total = 0;
  for (int m = 0; m <= K; ++m) {
    t.off[m] = total;
    total += static_cast<std::size_t>(K - m + 1) * grid.n_theta;
  }
  t.leg.assign(total, 0.0);
  std::vector<double> row;
  for (int i = 0; i < grid.n_theta; ++i) {
    double x = std::cos(grid.theta_nodes[i]);
    for (int m = 0; m <= K; ++m) {
      spectra::normalized_legendre_row(K, m, x, row);
      for (int k = m; k <= K; ++k)
        t.leg[t.off[m] + static_cast<std::size_t>(k - m) * grid.n_theta + i] = row[k - m];
    }
  }
  t.cos_t.assign(static_cast<std::size_t>(K + 1) * grid.n_phi, 0.0);
  t.sin_t.assign(t.cos_t.size(), 0.0);
  for (int m = 0; m <= K; ++m)
    for (int j = 0; j < grid.n_phi; ++j) {
      double phi = two_pi * j / grid.n_phi;
      t.cos_t[static_cast<std::size_t>(m) * grid.n_phi + j] = std::cos(m * phi);
      t.sin_t[static_cast<std::size_t>(m) * grid.n_phi + j] = std::sin(m * phi);
    }
  return t;
}

int sphere_max_degree(const SpectralField& f) {
  int K = 0;
  for (const auto& md : f.table->modes) K = std::max(K, md.q[0]);
  return K;
}

}  // namespace

LevelAmplitudes level_amplitudes(const SpectralField& f, const QuadratureGrid& grid) {
  f.validate();
  const auto kind = f.table->model.kind;
  if (kind != ModelKind::Sphere2 && kind != ModelKind::SphereZonal3)
    throw domain_error("level_amplitudes: sphere models only");

  LevelAmplitudes la;
  la.n_x = static_cast<int>(grid.size());

  if (kind == ModelKind::SphereZonal3) {
    if (grid.n_rho <= 0) throw domain_error("level_amplitudes: grid is not a radial rule");
    int K = sphere_max_degree(f);
    la.n_levels = K + 1;
    la.eigs.resize(la.n_levels);
    la.amp.assign(static_cast<std::size_t>(la.n_levels) * la.n_x, cplx{0.0, 0.0});
    for (int k = 0; k <= K; ++k) la.eigs[k] = spectra::sphere_eigenvalue(k, 3);
    for (std::size_t j = 0; j < f.size(); ++j) {
      int k = f.table->modes[j].q[0];
      for (int x = 0; x < la.n_x; ++x)
        la.amp[static_cast<std::size_t>(k) * la.n_x + x] +=
            f.c[j] *
            spectra::eval_eigenfunction_real(f.table->model, f.table->modes[j], grid.points[x]);
    }
    return la;
  }

  if (grid.n_theta <= 0 || grid.n_phi <= 0)
    throw domain_error("level_amplitudes: grid is not a theta x phi product");
  const int K = sphere_max_degree(f);
  la.n_levels = K + 1;
  la.eigs.resize(la.n_levels);
  for (int k = 0; k <= K; ++k) la.eigs[k] = spectra::sphere_eigenvalue(k, 2);
  la.amp.assign(static_cast<std::size_t>(la.n_levels) * la.n_x, cplx{0.0, 0.0});

  SphereBasisTables tab = sphere_tables(K, grid);
  // Coefficients arranged per level: cos-branch [0..k], sin-branch [1..k].
  std::vector<cplx> ccos(static_cast<std::size_t>(K + 1) * (K + 1), cplx{0.0, 0.0});
  std::vector<cplx> csin(ccos.size(), cplx{0.0, 0.0});
  for (std::size_t j = 0; j < f.size(); ++j) {
    int k = f.table->modes[j].q[0], l = f.table->modes[j].q[1];
    if (l >= 0)
      ccos[static_cast<std::size_t>(k) * (K + 1) + l] = f.c[j];
    else
      csin[static_cast<std::size_t>(k) * (K + 1) - l] = f.c[j];
  }
  const double r2 = std::sqrt(2.0);
  std::vector<cplx> theta_cos(K + 1), theta_sin(K + 1);
  for (int k = 0; k <= K; ++k) {
    cplx* out = la.amp.data() + static_cast<std::size_t>(k) * la.n_x;
    for (int i = 0; i < tab.n_theta; ++i) {
      for (int m = 0; m <= k; ++m) {
        double pb = tab.P(m, k, i);
        theta_cos[m] = ccos[static_cast<std::size_t>(k) * (K + 1) + m] * pb;
        theta_sin[m] = csin[static_cast<std::size_t>(k) * (K + 1) + m] * pb;
      }
      for (int j = 0; j < tab.n_phi; ++j) {
        cplx acc = theta_cos[0];
        for (int m = 1; m <= k; ++m) {
          double cs = tab.cos_t[static_cast<std::size_t>(m) * tab.n_phi + j];
          double sn = tab.sin_t[static_cast<std::size_t>(m) * tab.n_phi + j];
          acc += r2 * (theta_cos[m] * cs + theta_sin[m] * sn);
        }
        out[static_cast<std::size_t>(i) * tab.n_phi + j] = acc;
      }
    }
  }
  return la;
}

std::vector<cplx> synthesize_grid(const SpectralField& f, const QuadratureGrid& grid) {
  f.validate();
  if (is_torus(f.table->model.kind)) return synthesize_torus_fft(f, grid);
  LevelAmplitudes la = level_amplitudes(f, grid);
  std::vector<cplx> out(grid.size(), cplx{0.0, 0.0});
  for (int k = 0; k < la.n_levels; ++k) {
    const cplx* amp = la.amp.data() + static_cast<std::size_t>(k) * la.n_x;
    for (int x = 0; x < la.n_x; ++x) out[x] += amp[x];
  }
  return out;
}

namespace {

struct ActiveMode {
  std::size_t scatter = 0;
  cplx coeff{0.0, 0.0};
  double eig = 0.0;
};

std::vector<ActiveMode> active_modes(const SpectralField& f, const QuadratureGrid& sg) {
  const int n = f.table->model.dim();
  const int N = sg.axis_n;
  std::vector<ActiveMode> act;
  act.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f.c[j] == cplx{0.0, 0.0}) continue;
    ActiveMode m;
    const auto& q = f.table->modes[j].q;
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) idx = idx * N + static_cast<std::size_t>(((q[a] % N) + N) % N);
    m.scatter = idx;
    m.coeff = f.c[j];
    m.eig = f.table->eig(j);
    act.push_back(m);
  }
  return act;
}

constexpr int kResync = 256;

// Walks e^{it lambda^2} c_j along the time nodes by per-mode phase steps,
// resynchronizing against exact phases periodically. Steps assume uniform
// node spacing; non-uniform nodes fall back to exact phases every node.
struct PhaseWalker {
  const std::vector<ActiveMode>& act;
  const std::vector<double>& tn;
  bool uniform;
  double d = 0.0;
  std::vector<cplx> cur, step;

  PhaseWalker(const std::vector<ActiveMode>& a, const std::vector<double>& t) : act(a), tn(t) {
    uniform = tn.size() >= 2;
    if (uniform) {
      d = tn[1] - tn[0];
      for (std::size_t i = 1; i + 1 < tn.size(); ++i)
        if (std::abs((tn[i + 1] - tn[i]) - d) > 1e-12 * std::max(1.0, std::abs(d))) {
          uniform = false;
          break;
        }
    }
    cur.resize(act.size());
    step.resize(act.size());
    if (uniform)
      for (std::size_t j = 0; j < act.size(); ++j) step[j] = std::polar(1.0, d * act[j].eig);
  }

  void at(std::size_t i) {
    if (!uniform || i % kResync == 0) {
      double t = tn[i];
      for (std::size_t j = 0; j < act.size(); ++j)
        cur[j] = act[j].coeff * std::polar(1.0, t * act[j].eig);
    } else {
      for (std::size_t j = 0; j < act.size(); ++j) cur[j] *= step[j];
    }
  }
};

using MatC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

void stream_slices(const SpectralField& f, const std::vector<double>& tnodes,
                   const QuadratureGrid& grid, bool single_precision,
                   const std::function<void(std::size_t, const cplx*)>& sink) {
  f.validate();
  if (tnodes.empty()) return;
  const auto kind = f.table->model.kind;

  if (!is_torus(kind)) {
    synth::LevelAmplitudes la = level_amplitudes(f, grid);
    Eigen::Map<const MatC> A(la.amp.data(), la.n_levels, la.n_x);
    constexpr int kChunk = 128;
    MatC P(kChunk, la.n_levels), U(kChunk, la.n_x);
    for (std::size_t i0 = 0; i0 < tnodes.size(); i0 += kChunk) {
      int rows = static_cast<int>(std::min<std::size_t>(kChunk, tnodes.size() - i0));
      for (int r = 0; r < rows; ++r)
        for (int k = 0; k < la.n_levels; ++k)
          P(r, k) = std::polar(1.0, tnodes[i0 + r] * la.eigs[k]);
      U.topRows(rows).noalias() = P.topRows(rows) * A;
      for (int r = 0; r < rows; ++r)
        sink(i0 + r, U.data() + static_cast<std::size_t>(r) * la.n_x);
    }
    return;
  }

  const int n = f.table->model.dim();
  const int N = grid.axis_n;
  if (N <= 0) throw domain_error("stream_slices: grid is not a torus lattice");
  const std::size_t total = grid.size();
  const double scale = std::pow(two_pi, -0.5 * n);
  auto act = active_modes(f, grid);
  PhaseWalker walk(act, tnodes);
  std::vector<cplx> out(total);
  int dims[3] = {N, N, N};

  if (single_precision) {
    fftwf_complex* buf = fftwf_alloc_complex(total);
    fftwf_plan plan;
    {
      std::lock_guard<std::mutex> lk(fftw_planner_mutex());
      plan = fftwf_plan_dft(n, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < tnodes.size(); ++i) {
      walk.at(i);
      std::memset(buf, 0, sizeof(fftwf_complex) * total);
      for (std::size_t j = 0; j < act.size(); ++j) {
        cplx v = walk.cur[j] * scale;
        buf[act[j].scatter][0] += static_cast<float>(v.real());
        buf[act[j].scatter][1] += static_cast<float>(v.imag());
      }
      fftwf_execute(plan);
      for (std::size_t x = 0; x < total; ++x) out[x] = {buf[x][0], buf[x][1]};
      sink(i, out.data());
    }
    {
      std::lock_guard<std::mutex> lk(fftw_planner_mutex());
      fftwf_destroy_plan(plan);
    }
    fftwf_free(buf);
    return;
  }

  fftw_complex* buf = fftw_alloc_complex(total);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(fftw_planner_mutex());
    plan = fftw_plan_dft(n, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < tnodes.size(); ++i) {
    walk.at(i);
    std::memset(buf, 0, sizeof(fftw_complex) * total);
    for (std::size_t j = 0; j < act.size(); ++j) {
      cplx v = walk.cur[j] * scale;
      buf[act[j].scatter][0] += v.real();
      buf[act[j].scatter][1] += v.imag();
    }
    fftw_execute(plan);
    for (std::size_t x = 0; x < total; ++x) out[x] = {buf[x][0], buf[x][1]};
    sink(i, out.data());
  }
  {
    std::lock_guard<std::mutex> lk(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
}

}  // namespace speclab::synth
