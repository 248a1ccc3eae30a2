#include "speclab/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "speclab/csvio.hpp"

namespace speclab::spectra {

int ManifoldModel::dim() const {
  switch (kind) {
    case ModelKind::Circle: return 1;
    case ModelKind::Torus2: return 2;
    case ModelKind::Torus3: return 3;
    case ModelKind::Sphere2: return 2;
    case ModelKind::SphereZonal3: return 3;
  }
  return 0;
}

int ManifoldModel::qlen() const {
  switch (kind) {
    case ModelKind::Circle: return 1;
    case ModelKind::Torus2: return 2;
    case ModelKind::Torus3: return 3;
    case ModelKind::Sphere2: return 2;
    case ModelKind::SphereZonal3: return 1;
  }
  return 0;
}

double ManifoldModel::measure() const {
  switch (kind) {
    case ModelKind::Circle: return two_pi;
    case ModelKind::Torus2: return two_pi * two_pi;
    case ModelKind::Torus3: return two_pi * two_pi * two_pi;
    case ModelKind::Sphere2: return 4.0 * pi;
    case ModelKind::SphereZonal3: return 2.0 * pi * pi;
  }
  return 0.0;
}

std::string ManifoldModel::name() const {
  switch (kind) {
    case ModelKind::Circle: return "circle";
    case ModelKind::Torus2: return "torus2";
    case ModelKind::Torus3: return "torus3";
    case ModelKind::Sphere2: return "sphere2";
    case ModelKind::SphereZonal3: return "sphere_zonal3";
  }
  return "?";
}

ManifoldModel ManifoldModel::torus(int n) {
  if (n == 2) return {ModelKind::Torus2};
  if (n == 3) return {ModelKind::Torus3};
  throw domain_error("torus dimension must be 2 or 3");
}

ManifoldModel ManifoldModel::parse(const std::string& name) {
  if (name == "circle" || name == "torus1") return circle();
  if (name == "torus2") return {ModelKind::Torus2};
  if (name == "torus3") return {ModelKind::Torus3};
  if (name == "sphere2") return sphere2();
  if (name == "sphere_zonal3") return sphere_zonal3();
  throw config_error("unknown model: " + name);
}

int ModeTable::max_quantum() const {
  int m = 0;
  int ql = model.qlen();
  bool sphere = model.kind == ModelKind::Sphere2 || model.kind == ModelKind::SphereZonal3;
  for (const Mode& md : modes) {
    if (sphere) {
      m = std::max(m, md.q[0]);
    } else {
      for (int a = 0; a < ql; ++a) m = std::max(m, std::abs(md.q[a]));
    }
  }
  return m;
}

double sphere_eigenvalue(int k, int n) {
  if (k < 0 || n < 2) throw domain_error("sphere_eigenvalue: k >= 0, n >= 2 required");
  return static_cast<double>(static_cast<std::int64_t>(k) * (k + n - 1));
}

static std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t sphere_multiplicity(int k, int n) {
  if (k < 0 || n < 2) throw domain_error("sphere_multiplicity: k >= 0, n >= 2 required");
  return binom(k + n, n) - binom(k + n - 2, n);
}

namespace {

// Hard table caps; the dense experiments in this project stay below them,
// and anything larger signals a misconfigured run rather than a need.
double hard_cap(ModelKind kind) {
  switch (kind) {
    case ModelKind::Circle: return 16384.0;
    case ModelKind::Torus2: return 129.0;
    case ModelKind::Torus3: return 34.0;
    case ModelKind::Sphere2: return 128.71;   // degree 128
    case ModelKind::SphereZonal3: return 601.0;  // degree 600
  }
  return 0.0;
}

bool mode_less(const Mode& a, const Mode& b) {
  if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
  return a.q < b.q;
}

}  // namespace

std::shared_ptr<const ModeTable> enumerate_modes(ManifoldModel model, double lambda_max) {
  if (!(lambda_max >= 0.0)) throw domain_error("enumerate_modes: cutoff must be >= 0");
  if (lambda_max > hard_cap(model.kind))
    throw resource_limit_error("enumerate_modes: cutoff " + fmt_g(lambda_max) +
                               " above hard cap for " + model.name());
  auto table = std::make_shared<ModeTable>();
  table->model = model;
  table->lambda_max = lambda_max;
  const double cap2 = lambda_max * lambda_max;
  auto& out = table->modes;

  switch (model.kind) {
    case ModelKind::Circle: {
      int M = static_cast<int>(std::floor(lambda_max));
      for (int m = -M; m <= M; ++m)
        out.push_back({0, static_cast<double>(static_cast<std::int64_t>(m) * m), {m, 0, 0}});
      break;
    }
    case ModelKind::Torus2: {
      int M = static_cast<int>(std::floor(lambda_max));
      for (int m1 = -M; m1 <= M; ++m1)
        for (int m2 = -M; m2 <= M; ++m2) {
          std::int64_t e = static_cast<std::int64_t>(m1) * m1 + static_cast<std::int64_t>(m2) * m2;
          if (static_cast<double>(e) <= cap2)
            out.push_back({0, static_cast<double>(e), {m1, m2, 0}});
        }
      break;
    }
    case ModelKind::Torus3: {
      int M = static_cast<int>(std::floor(lambda_max));
      for (int m1 = -M; m1 <= M; ++m1)
        for (int m2 = -M; m2 <= M; ++m2)
          for (int m3 = -M; m3 <= M; ++m3) {
            std::int64_t e = static_cast<std::int64_t>(m1) * m1 +
                             static_cast<std::int64_t>(m2) * m2 +
                             static_cast<std::int64_t>(m3) * m3;
            if (static_cast<double>(e) <= cap2)
              out.push_back({0, static_cast<double>(e), {m1, m2, m3}});
          }
      break;
    }
    case ModelKind::Sphere2: {
      for (int k = 0; sphere_eigenvalue(k, 2) <= cap2; ++k)
        for (int l = -k; l <= k; ++l)
          out.push_back({0, sphere_eigenvalue(k, 2), {k, l, 0}});
      break;
    }
    case ModelKind::SphereZonal3: {
      for (int k = 0; sphere_eigenvalue(k, 3) <= cap2; ++k)
        out.push_back({0, sphere_eigenvalue(k, 3), {k, 0, 0}});
      break;
    }
  }

  std::sort(out.begin(), out.end(), mode_less);
  for (std::size_t j = 0; j < out.size(); ++j) out[j].id = static_cast<int>(j);
  return table;
}

void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw domain_error("gauss_legendre_rule: n >= 1 required");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration per root from the Chebyshev-angle initial guess; the
  // three-term recurrence supplies P_n and its derivative.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing pass after convergence
        if (it > 0) break;
      }
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

void normalized_legendre_row(int K, int m, double x, std::vector<double>& out) {
  if (m < 0 || K < m) throw domain_error("normalized_legendre_row: need 0 <= m <= K");
  out.assign(K - m + 1, 0.0);
  double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  // Seed Pbar_m^m, fully normalized with the (-1)^m phase.
  double pmm = std::sqrt(1.0 / (4.0 * pi));
  for (int i = 1; i <= m; ++i) pmm *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  out[0] = pmm;
  if (K == m) return;
  double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  out[1] = pm1;
  double prev_a = 0.0;
  for (int k = m + 2; k <= K; ++k) {
    double a = std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k - static_cast<double>(m) * m));
    if (k == m + 2) {
      double am1 = std::sqrt((4.0 * (k - 1.0) * (k - 1.0) - 1.0) /
                             ((k - 1.0) * (k - 1.0) - static_cast<double>(m) * m));
      prev_a = am1;
    }
    out[k - m] = a * (x * out[k - m - 1] - out[k - m - 2] / prev_a);
    prev_a = a;
  }
}

namespace {

double zonal_ratio(int k, double rho) {
  // sin((k+1) rho) / sin(rho), continued through the endpoints via the
  // Chebyshev recurrence where sin(rho) is small.
  double s = std::sin(rho);
  if (std::abs(s) > 0.1) return std::sin((k + 1.0) * rho) / s;
  double x = std::cos(rho);
  double u0 = 1.0, u1 = 2.0 * x;
  if (k == 0) return u0;
  for (int j = 2; j <= k; ++j) {
    double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

}  // namespace

double eval_eigenfunction_real(const ManifoldModel& model, const Mode& mode,
                               const std::array<double, 3>& point) {
  for (int a = 0; a < model.dim(); ++a)
    if (!std::isfinite(point[a])) throw domain_error("eval_eigenfunction: non-finite point");
  switch (model.kind) {
    case ModelKind::Sphere2: {
      int k = mode.q[0], l = mode.q[1];
      std::vector<double> row;
      normalized_legendre_row(k, std::abs(l), std::cos(point[0]), row);
      double pb = row[k - std::abs(l)];
      if (l == 0) return pb;
      double sq2 = std::sqrt(2.0);
      if (l > 0) return sq2 * pb * std::cos(l * point[1]);
      return sq2 * pb * std::sin(-l * point[1]);
    }
    case ModelKind::SphereZonal3:
      return zonal_ratio(mode.q[0], point[0]) / std::sqrt(2.0 * pi * pi);
    default:
      throw domain_error("eval_eigenfunction_real: model has complex modes");
  }
}

cplx eval_eigenfunction(const ManifoldModel& model, const Mode& mode,
                        const std::array<double, 3>& point) {
  switch (model.kind) {
    case ModelKind::Circle:
    case ModelKind::Torus2:
    case ModelKind::Torus3: {
      int n = model.dim();
      for (int a = 0; a < n; ++a)
        if (!std::isfinite(point[a])) throw domain_error("eval_eigenfunction: non-finite point");
      double phase = 0.0;
      for (int a = 0; a < n; ++a) phase += mode.q[a] * point[a];
      double norm = std::pow(two_pi, -0.5 * n);
      return {norm * std::cos(phase), norm * std::sin(phase)};
    }
    default:
      return {eval_eigenfunction_real(model, mode, point), 0.0};
  }
}

int QuadratureGrid::admissible_quantum() const {
  switch (model.kind) {
    case ModelKind::Circle:
    case ModelKind::Torus2:
    case ModelKind::Torus3:
      return (axis_n - 1) / 2;
    case ModelKind::Sphere2:
      return std::min(n_theta - 1, (n_phi - 1) / 2);
    case ModelKind::SphereZonal3:
      return n_rho - 1;
  }
  return 0;
}

QuadratureGrid quadrature_grid(ManifoldModel model, int resolution) {
  QuadratureGrid g;
  g.model = model;
  switch (model.kind) {
    case ModelKind::Circle:
    case ModelKind::Torus2:
    case ModelKind::Torus3: {
      if (resolution < 1) throw config_error("torus grid needs >= 1 point per axis");
      int n = model.dim();
      g.axis_n = resolution;
      double h = two_pi / resolution;
      double w = std::pow(h, n);
      std::size_t total = 1;
      for (int a = 0; a < n; ++a) total *= resolution;
      g.points.reserve(total);
      g.weights.assign(total, w);
      std::array<int, 3> idx{0, 0, 0};
      for (std::size_t p = 0; p < total; ++p) {
        std::array<double, 3> pt{0.0, 0.0, 0.0};
        for (int a = 0; a < n; ++a) pt[a] = h * idx[a];
        g.points.push_back(pt);
        for (int a = n - 1; a >= 0; --a) {
          if (++idx[a] < resolution) break;
          idx[a] = 0;
        }
      }
      break;
    }
    case ModelKind::Sphere2: {
      int K = resolution;
      if (K < 0) throw config_error("sphere grid needs degree cutoff >= 0");
      g.n_theta = K + 1;
      g.n_phi = 2 * K + 1;
      std::vector<double> xs, ws;
      gauss_legendre_rule(g.n_theta, xs, ws);
      g.theta_nodes.resize(g.n_theta);
      g.theta_weights.resize(g.n_theta);
      for (int i = 0; i < g.n_theta; ++i) {
        g.theta_nodes[i] = std::acos(xs[g.n_theta - 1 - i]);  // theta ascending
        g.theta_weights[i] = ws[g.n_theta - 1 - i];
      }
      double wphi = two_pi / g.n_phi;
      g.points.reserve(static_cast<std::size_t>(g.n_theta) * g.n_phi);
      g.weights.reserve(g.points.capacity());
      for (int i = 0; i < g.n_theta; ++i)
        for (int j = 0; j < g.n_phi; ++j) {
          g.points.push_back({g.theta_nodes[i], wphi * j, 0.0});
          g.weights.push_back(g.theta_weights[i] * wphi);
        }
      break;
    }
    case ModelKind::SphereZonal3: {
      int N = resolution;
      if (N < 1) throw config_error("zonal grid needs >= 1 node");
      g.n_rho = N;
      double h = pi / (N + 1);
      g.points.reserve(N);
      g.weights.reserve(N);
      // Interior sine-squared rule: exact for products of zonal modes up to
      // degree N-1 and integrates the measure 4 pi sin^2(rho) d rho exactly.
      for (int i = 1; i <= N; ++i) {
        double rho = h * i;
        g.points.push_back({rho, 0.0, 0.0});
        g.weights.push_back(4.0 * pi * h * sq(std::sin(rho)));
      }
      break;
    }
  }
  return g;
}

QuadratureGrid grid_for_table(const ModeTable& table) {
  int q = table.max_quantum();
  switch (table.model.kind) {
    case ModelKind::Circle:
    case ModelKind::Torus2:
    case ModelKind::Torus3:
      return quadrature_grid(table.model, next_fast_size(2 * q + 1));
    case ModelKind::Sphere2:
      return quadrature_grid(table.model, q);
    case ModelKind::SphereZonal3:
      return quadrature_grid(table.model, q + 1);
  }
  throw domain_error("grid_for_table: unsupported model");
}

std::string mode_table_csv(const ModeTable& table) {
  CsvWriter w;
  w.comment("model=" + table.model.name() + " cutoff=" + fmt_g(table.lambda_max));
  w.row({"id", "eigenvalue", "quantum", "level", "multiplicity"});
  // level = rank of the distinct eigenvalue, multiplicity = its table count
  std::size_t j = 0;
  int level = -1;
  while (j < table.size()) {
    std::size_t j2 = j;
    while (j2 < table.size() && table.eig(j2) == table.eig(j)) ++j2;
    ++level;
    for (std::size_t i = j; i < j2; ++i) {
      const Mode& md = table.modes[i];
      std::string qs;
      for (int a = 0; a < table.model.qlen(); ++a) {
        if (a) qs += ";";
        qs += std::to_string(md.q[a]);
      }
      std::int64_t mult = static_cast<std::int64_t>(j2 - j);
      if (table.model.kind == ModelKind::SphereZonal3)
        mult = sphere_multiplicity(md.q[0], 3);
      w.row({std::to_string(md.id), fmt_g(md.eigenvalue, 17), qs, std::to_string(level),
             std::to_string(mult)});
    }
    j = j2;
  }
  return w.str();
}

}  // namespace speclab::spectra
