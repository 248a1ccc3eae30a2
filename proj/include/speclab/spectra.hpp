#pragma once
// Model geometries, their Laplace spectra, eigenfunction evaluation, and
// the quadrature grids that integrate products of admitted eigenfunctions
// exactly.
//
// Conventions fixed across the project:
//   Circle / Torus(n): side length 2pi per axis, modes exp(i<m,x>)/(2pi)^(n/2),
//     eigenvalue |m|^2.
//   Sphere2: unit sphere, real orthonormal harmonics indexed (k, l) with
//     l in [-k, k]; l > 0 are cos-branches, l < 0 sin-branches, built from a
//     fully normalized associated-Legendre recurrence. Eigenvalue k(k+1).
//   SphereZonal3: the zonal (axially symmetric) subspace of the unit 3-sphere,
//     one mode per degree k, eigenvalue k(k+2), carrying the full level
//     multiplicity (k+1)^2 in bookkeeping.
// Points are chart coordinates: x[0] (+ x[1], x[2]) angles in [0, 2pi) per
// torus axis; (theta, phi) colatitude/longitude on Sphere2; the polar
// geodesic angle rho in [0, pi] on SphereZonal3.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "speclab/common.hpp"

namespace speclab::spectra {

enum class ModelKind { Circle, Torus2, Torus3, Sphere2, SphereZonal3 };

struct ManifoldModel {
  ModelKind kind;

  int dim() const;
  // Number of integer quantum numbers identifying a mode.
  int qlen() const;
  double measure() const;
  std::string name() const;

  static ManifoldModel circle() { return {ModelKind::Circle}; }
  static ManifoldModel torus(int n);
  static ManifoldModel sphere2() { return {ModelKind::Sphere2}; }
  static ManifoldModel sphere_zonal3() { return {ModelKind::SphereZonal3}; }
  static ManifoldModel parse(const std::string& name);
};

struct Mode {
  int id = 0;
  double eigenvalue = 0.0;  // lambda^2, integer-valued for these models
  std::array<int, 3> q{0, 0, 0};
};

struct ModeTable {
  ManifoldModel model;
  std::vector<Mode> modes;
  double lambda_max = 0.0;  // requested cutoff

  std::size_t size() const { return modes.size(); }
  double eig(std::size_t j) const { return modes[j].eigenvalue; }
  // Largest |m_i| over all modes (tori) or largest degree (spheres).
  int max_quantum() const;
};

double sphere_eigenvalue(int k, int n);
std::int64_t sphere_multiplicity(int k, int n);

// Complete sorted table of modes with lambda <= lambda_max; ties broken
// lexicographically on quantum numbers so ids are reproducible.
std::shared_ptr<const ModeTable> enumerate_modes(ManifoldModel model, double lambda_max);

double eval_eigenfunction_real(const ManifoldModel& model, const Mode& mode,
                               const std::array<double, 3>& point);
cplx eval_eigenfunction(const ManifoldModel& model, const Mode& mode,
                        const std::array<double, 3>& point);

// Gauss-Legendre rule on [-1, 1], nodes ascending.
void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Fully normalized associated Legendre values Pbar_k^m(x) for k = m..K;
// out[k - m] = Pbar_k^m(x). Normalized so the real harmonics built from
// them are orthonormal on the unit sphere (includes the (-1)^m phase).
void normalized_legendre_row(int K, int m, double x, std::vector<double>& out);

struct QuadratureGrid {
  ManifoldModel model;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  // Torus metadata: points enumerated row-major over axes, axis_n nodes per
  // axis at 2pi j / axis_n.
  int axis_n = 0;
  // Sphere2 metadata: theta-major enumeration, point index i*n_phi + j.
  int n_theta = 0, n_phi = 0;
  std::vector<double> theta_nodes, theta_weights;  // GL in cos(theta)
  // SphereZonal3 metadata: n_rho interior sine-squared nodes.
  int n_rho = 0;

  std::size_t size() const { return points.size(); }
  // Largest torus |m_i| (resp. sphere degree) whose pairwise products the
  // rule integrates exactly.
  int admissible_quantum() const;
  bool admissible_for(const ModeTable& table) const {
    return admissible_quantum() >= table.max_quantum();
  }
};

// resolution: points per axis for circle/tori, degree cutoff for spheres.
QuadratureGrid quadrature_grid(ManifoldModel model, int resolution);

// Smallest grid that is pair-exact for the table (FFT-friendly axis sizes).
QuadratureGrid grid_for_table(const ModeTable& table);

std::string mode_table_csv(const ModeTable& table);

}  // namespace speclab::spectra
