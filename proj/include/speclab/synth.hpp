#pragma once
// Grid synthesis engines. synthesize(f, point) in fields.hpp is the direct
// reference sum; these evaluate whole grids at once through exact
// reassociations of the same sum (FFT on tori, separable level sums on
// spheres) and are the workhorses behind every norm and sweep.

#include <functional>
#include <mutex>
#include <vector>

#include "speclab/fields.hpp"

namespace speclab::synth {

using fields::SpectralField;
using spectra::QuadratureGrid;

// Values of f at every grid point, grid enumeration order.
std::vector<cplx> synthesize_grid(const SpectralField& f, const QuadratureGrid& grid);

// Sphere fields grouped by level: out[x][K] = sum of coefficients times
// eigenfunctions of level index K at grid point x. Column-major by level
// (n_x-stride), levels in table order. Level eigenvalues land in `eigs`.
struct LevelAmplitudes {
  int n_x = 0;
  int n_levels = 0;
  std::vector<double> eigs;     // distinct eigenvalues, ascending
  std::vector<cplx> amp;        // amp[K * n_x + x]
};
LevelAmplitudes level_amplitudes(const SpectralField& f, const QuadratureGrid& grid);

// Streams u(t_i, x) = sum_j c_j e^{i t_i lambda_j^2} e_j(x) over every grid
// point for each time node, invoking sink(i, values) once per node with
// grid-ordered values (scratch owned by the engine, valid during the call).
// Tori run one FFT per node (single precision on request, ~1e-6 relative
// error); spheres run chunked phase-matrix products in double throughout.
void stream_slices(const SpectralField& f, const std::vector<double>& tnodes,
                   const QuadratureGrid& grid, bool single_precision,
                   const std::function<void(std::size_t, const cplx*)>& sink);

// FFTW planner calls are not thread-safe; hold this around plan create/destroy.
std::mutex& fftw_planner_mutex();

}  // namespace speclab::synth
