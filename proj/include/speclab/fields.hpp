#pragma once
// Spectral coefficient vectors over a mode table, their norms, determinstic
// random ensembles, and structured probe families.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "speclab/common.hpp"
#include "speclab/spectra.hpp"

namespace speclab::fields {

using spectra::ManifoldModel;
using spectra::ModeTable;
using spectra::QuadratureGrid;

struct SpectralField {
  std::shared_ptr<const ModeTable> table;
  std::vector<cplx> c;

  std::size_t size() const { return c.size(); }
  void validate() const;  // length match + finiteness
};

SpectralField zero_field(std::shared_ptr<const ModeTable> table);

// (sum_j (1 + lambda_j^2)^alpha |c_j|^2)^(1/2); alpha = 0 is the L2 norm.
double sobolev_norm(const SpectralField& f, double alpha);
double l2_norm(const SpectralField& f);

// Direct mode-sum evaluation at one point.
cplx synthesize(const SpectralField& f, const std::array<double, 3>& point);

// (sum_pts w |f|^p)^(1/p) over a grid that must be pair-exact for the
// field's modes.
double lebesgue_norm(const SpectralField& f, double p, const QuadratureGrid& grid);

// Independent complex Gaussians shaped by (1 + lambda^2)^(-alpha/2), then
// rescaled to unit H^alpha norm. Bit-deterministic in (seed, model, cutoff).
SpectralField random_field(ManifoldModel model, double alpha, double lambda_max,
                           std::uint64_t seed);

enum class FamilyKind { SobolevEnsemble, SingleMode, LevelBeam, HighestWeightBeam, WavePacket };

// A reproducible one-parameter family of probe fields. Ensemble members are
// drawn from streams keyed by (seed, trial) so any subset can be generated
// independently and identically.
struct DataFamily {
  FamilyKind kind = FamilyKind::SobolevEnsemble;
  double alpha = 0.0;          // SobolevEnsemble smoothness
  std::uint64_t seed = 0;      // SobolevEnsemble base seed
  int mode_id = 0;             // SingleMode
  int level = 0;               // LevelBeam / HighestWeightBeam degree
  double center = 0.0;         // WavePacket center frequency (lambda)
  double width = 1.0;          // WavePacket width

  static DataFamily sobolev(double alpha, std::uint64_t seed);
  static DataFamily single_mode(int id);
  static DataFamily level_beam(int k);
  static DataFamily highest_weight_beam(int k);
  static DataFamily wave_packet(double center, double width);

  // trial-th member over the given table; unit-normalized in H^alpha for
  // the ensemble, in L2 otherwise.
  SpectralField member(std::shared_ptr<const ModeTable> table, int trial) const;
  std::string describe() const;
};

std::string field_csv(const SpectralField& f);

}  // namespace speclab::fields
