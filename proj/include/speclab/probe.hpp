#pragma once

// Inequality probes: per-field and ensemble-maximized operator ratios,
// log-log exponent fits with their pass/fail bookkeeping, and the
// pointwise-convergence diagnostic sweep. Ensemble maxima can only
// under-estimate an operator norm, so a passing upper-bound check is
// evidence rather than proof; sharpness runs use the structured beams.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "speclab/common.hpp"
#include "speclab/fields.hpp"

namespace speclab::probe {

using fields::DataFamily;
using fields::SpectralField;
using spectra::ModeTable;

struct ScalingPoint {
  double h = 0.0;
  double value = 0.0;
  int trials = 0;
};

// One inequality scanned over scales; h strictly decreasing, values
// nonnegative.
struct ScalingSeries {
  std::string inequality_id;
  std::string model;
  std::string ensemble;
  double p_or_q = 0.0;
  std::vector<ScalingPoint> points;

  void validate() const;
};

struct FitResult {
  double slope = 0.0;
  double r2 = 1.0;
};

enum class CheckKind { SlopeAtLeast, SlopeNear, ValueAtMost };

struct ExperimentReport {
  ScalingSeries series;
  FitResult fit;
  CheckKind kind = CheckKind::SlopeAtLeast;
  double threshold = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// The pass rule reports are judged by (and re-judged by consistency tests):
// SlopeAtLeast: slope >= threshold; SlopeNear: |slope - threshold| <=
// tolerance; ValueAtMost: every value <= threshold.
bool check_passes(const ScalingSeries& s, const FitResult& fit, CheckKind kind,
                  double threshold, double tolerance);

// Single-field ratios (degree-0 homogeneous in f; the h-block is taken
// internally). A numerically empty block is a domain error here and a skip
// in the ensemble wrappers.
double strichartz_ratio_one(const SpectralField& f, double h, double p);
double maximal_ratio_one(const SpectralField& f, double h, double p);
// Low-pass ratio ||T*(eta(lambda^2/c0^2) f)||_q / ||f||_2.
double low_frequency_ratio_one(const SpectralField& f, double q, double c0);

// Ensemble maxima over trials 0..trials-1; members whose block carries no
// energy are skipped, and an all-zero ensemble is a configuration error.
double strichartz_ratio(const std::shared_ptr<const ModeTable>& table, const DataFamily& fam,
                        double h, double p, int trials);
double maximal_ratio(const std::shared_ptr<const ModeTable>& table, const DataFamily& fam,
                     double h, double p, int trials);
double low_frequency_bound(const std::shared_ptr<const ModeTable>& table,
                           const DataFamily& fam, double q, double c0, int trials);

// Ordinary least squares of log(value) on log(h); needs >= 3 points, all
// values positive. R^2 = 1 by convention when the values are constant.
FitResult fit_exponent(const ScalingSeries& s);

struct ConvergenceRow {
  double alpha = 0.0;
  double t = 0.0;
  double sup_lo = 0.0, sup_hi = 0.0;  // grid sup of |u(t) - f|
  double sobolev = 0.0;               // H^alpha norm of the member
};

// Grid-sup of |u(t,.) - f| for the trial-0 ensemble member at each
// smoothness level, over a t-list decreasing through (0, 1].
std::vector<ConvergenceRow> convergence_sweep(const std::shared_ptr<const ModeTable>& table,
                                              const std::vector<double>& alphas,
                                              const std::vector<double>& ts,
                                              std::uint64_t seed);

std::string report_csv(const std::vector<ExperimentReport>& reports);
std::string sweep_csv(const std::vector<ConvergenceRow>& rows);
// Log-log chart of one series with its fitted line.
std::string scaling_svg(const ExperimentReport& report);

}  // namespace speclab::probe
