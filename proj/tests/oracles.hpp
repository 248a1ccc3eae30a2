#pragma once

// Brute-force reference implementations the test suites freeze their
// expectations against. Everything here is deliberately naive: direct sums,
// dense scans, integer loops. Slow is fine; independent is the point.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "speclab/fields.hpp"
#include "speclab/spectra.hpp"

namespace oracles {

using speclab::cplx;

// sup_{0<t<=1} |u(t,x)| by dense scan; n excludes t=0, includes t=1.
inline double dense_sup(const speclab::fields::SpectralField& f,
                        const std::array<double, 3>& x, int n) {
  std::vector<cplx> base;
  std::vector<double> eig;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f.c[j] == cplx{0.0, 0.0}) continue;
    base.push_back(f.c[j] *
                   speclab::spectra::eval_eigenfunction(f.table->model, f.table->modes[j], x));
    eig.push_back(f.table->modes[j].eigenvalue);
  }
  double best = 0.0;
  for (int i = 1; i <= n; ++i) {
    double t = static_cast<double>(i) / n;
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < base.size(); ++j) s += base[j] * std::polar(1.0, t * eig[j]);
    best = std::max(best, std::abs(s));
  }
  return best;
}

// Independent mode counts per model, loops over raw quantum numbers.
inline std::int64_t brute_mode_count(const speclab::spectra::ManifoldModel& model,
                                     double cutoff) {
  using speclab::spectra::ModelKind;
  double c2 = cutoff * cutoff;
  std::int64_t n = 0;
  int M = static_cast<int>(cutoff) + 1;
  switch (model.kind) {
    case ModelKind::Circle:
      for (int m = -M; m <= M; ++m)
        if (static_cast<double>(m) * m <= c2) ++n;
      return n;
    case ModelKind::Torus2:
      for (int a = -M; a <= M; ++a)
        for (int b = -M; b <= M; ++b)
          if (static_cast<double>(a) * a + static_cast<double>(b) * b <= c2) ++n;
      return n;
    case ModelKind::Torus3:
      for (int a = -M; a <= M; ++a)
        for (int b = -M; b <= M; ++b)
          for (int c = -M; c <= M; ++c)
            if (static_cast<double>(a) * a + static_cast<double>(b) * b +
                    static_cast<double>(c) * c <=
                c2)
              ++n;
      return n;
    case ModelKind::Sphere2:
      for (int k = 0;; ++k) {
        if (static_cast<double>(k) * (k + 1) > c2) return n;
        n += 2 * k + 1;
      }
    case ModelKind::SphereZonal3:
      for (int k = 0;; ++k) {
        if (static_cast<double>(k) * (k + 2) > c2) return n;
        ++n;
      }
  }
  return n;
}

// Direct quadrature of f against conj(g) over a grid, naive per-point sums.
inline cplx brute_inner(const speclab::fields::SpectralField& f,
                        const speclab::fields::SpectralField& g,
                        const speclab::spectra::QuadratureGrid& grid) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cplx fv = speclab::fields::synthesize(f, grid.points[i]);
    cplx gv = speclab::fields::synthesize(g, grid.points[i]);
    acc += grid.weights[i] * fv * std::conj(gv);
  }
  return acc;
}

// Count sign changes of a sampled real function on (0, r_hi].
inline int sign_changes(const std::function<double(double)>& fn, double r_lo, double r_hi,
                        int n) {
  int changes = 0;
  double prev = fn(r_lo);
  for (int i = 1; i <= n; ++i) {
    double r = r_lo + (r_hi - r_lo) * i / n;
    double v = fn(r);
    if (v == 0.0) continue;
    if (prev != 0.0 && ((v > 0) != (prev > 0))) ++changes;
    prev = v;
  }
  return changes;
}

}  // namespace oracles
