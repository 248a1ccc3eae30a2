#pragma once
// Unitary propagation e^{it lambda^2} on coefficients and space-time p-norms
// over (a,b] x M by trapezoid-in-time quadrature. Space rules are pair-exact
// grids; torus lattices may subsample them (folding keeps slice values exact,
// so the p-norm becomes that lattice's quadrature), and p = 2 always reports
// the exact integral through per-slice unitarity.

#include <functional>
#include <string>

#include "speclab/fields.hpp"

namespace speclab::evolve {

using fields::SpectralField;
using spectra::QuadratureGrid;

struct TimeGrid {
  double a = 0.0, b = 1.0;
  std::vector<double> nodes;    // a..b inclusive, uniform
  std::vector<double> weights;  // composite trapezoid; sums to b-a

  std::size_t size() const { return nodes.size(); }
  double spacing() const;
  void validate() const;
};

TimeGrid uniform_time_grid(double a, double b, int n_intervals);

// Half-spread W and center of the eigenvalues carrying nonzero coefficients.
// |u(t,x)| = |sum_j c_j e^{it(lambda_j^2 - w0)} e_j(x)| oscillates in t at rate
// at most W, so trapezoid spacing 1/(4W) keeps inter-node phase drift <= 1/4.
double active_half_spread(const SpectralField& f);
double active_center(const SpectralField& f);

// Uniform grid on (a,b] with spacing <= 1/(4W), at least min_intervals steps.
TimeGrid time_grid_for(const SpectralField& f, double a, double b, int min_intervals = 32);

SpectralField propagate(const SpectralField& f, double t);

// fast = single-precision spatial slices with double accumulation (tori only;
// ~1e-6 relative slice error), for throughput-bound scaling experiments.
enum class SlicePrecision { full, fast };

double spacetime_norm(const SpectralField& f, double p, const TimeGrid& tgrid,
                      const QuadratureGrid& sgrid, SlicePrecision prec = SlicePrecision::full);

struct LocalizedL2 {
  double value = 0.0;
  bool region_empty = false;
};

LocalizedL2 localized_l2(const SpectralField& f, const TimeGrid& tgrid,
                         const std::function<bool(const std::array<double, 3>&)>& region,
                         const QuadratureGrid& sgrid);

struct SpaceTimeSamples {
  std::string model;
  std::vector<double> t;
  std::vector<std::array<double, 3>> x;
  std::vector<cplx> values;  // t-major: values[i * x.size() + j]
};

SpaceTimeSamples sample_evolution(const SpectralField& f, const TimeGrid& tgrid,
                                  const QuadratureGrid& sgrid);
std::string samples_csv(const SpaceTimeSamples& s, int qlen);

}  // namespace speclab::evolve
