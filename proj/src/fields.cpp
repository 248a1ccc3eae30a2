#include "speclab/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "speclab/csvio.hpp"
#include "speclab/rng.hpp"
#include "speclab/synth.hpp"

namespace speclab::fields {

using spectra::ModelKind;

void SpectralField::validate() const {
  if (!table) throw domain_error("field has no mode table");
  if (c.size() != table->size()) throw domain_error("coefficient length does not match mode table");
  for (const auto& z : c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw domain_error("non-finite coefficient");
}

SpectralField zero_field(std::shared_ptr<const ModeTable> table) {
  SpectralField f;
  f.table = std::move(table);
  f.c.assign(f.table->size(), cplx{0.0, 0.0});
  return f;
}

double sobolev_norm(const SpectralField& f, double alpha) {
  f.validate();
  KahanSum s;
  for (std::size_t j = 0; j < f.size(); ++j) {
    double w = (alpha == 0.0) ? 1.0 : std::pow(1.0 + f.table->eig(j), alpha);
    s.add(w * std::norm(f.c[j]));
  }
  return std::sqrt(s.value());
}

double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

cplx synthesize(const SpectralField& f, const std::array<double, 3>& point) {
  f.validate();
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j)
    acc += f.c[j] * spectra::eval_eigenfunction(f.table->model, f.table->modes[j], point);
  return acc;
}

double lebesgue_norm(const SpectralField& f, double p, const QuadratureGrid& grid) {
  f.validate();
  if (p < 1.0) throw config_error("lebesgue_norm: p must be >= 1");
  if (!grid.admissible_for(*f.table)) throw config_error("lebesgue_norm: grid below the field's cutoff");
  std::vector<cplx> u = synth::synthesize_grid(f, grid);
  KahanSum s;
  if (p == 2.0) {
    for (std::size_t i = 0; i < u.size(); ++i) s.add(grid.weights[i] * std::norm(u[i]));
    return std::sqrt(s.value());
  }
  for (std::size_t i = 0; i < u.size(); ++i)
    s.add(grid.weights[i] * std::pow(std::abs(u[i]), p));
  return std::pow(s.value(), 1.0 / p);
}

namespace {

SpectralField random_field_over(std::shared_ptr<const ModeTable> table, double alpha,
                                std::uint64_t seed) {
  SpectralField f = zero_field(std::move(table));
  Rng rng(seed, 0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    cplx g = rng.gaussian_pair();
    f.c[j] = g * std::pow(1.0 + f.table->eig(j), -0.5 * alpha);
  }
  double r = sobolev_norm(f, alpha);
  if (!(r > 0.0)) throw domain_error("degenerate random draw");
  for (auto& z : f.c) z /= r;
  return f;
}

}  // namespace

SpectralField random_field(ManifoldModel model, double alpha, double lambda_max,
                           std::uint64_t seed) {
  if (!(lambda_max > 0.0)) throw config_error("random_field: cutoff must be positive");
  return random_field_over(spectra::enumerate_modes(model, lambda_max), alpha, seed);
}

DataFamily DataFamily::sobolev(double alpha, std::uint64_t seed) {
  DataFamily d;
  d.kind = FamilyKind::SobolevEnsemble;
  d.alpha = alpha;
  d.seed = seed;
  return d;
}

DataFamily DataFamily::single_mode(int id) {
  DataFamily d;
  d.kind = FamilyKind::SingleMode;
  d.mode_id = id;
  return d;
}

DataFamily DataFamily::level_beam(int k) {
  DataFamily d;
  d.kind = FamilyKind::LevelBeam;
  d.level = k;
  return d;
}

DataFamily DataFamily::highest_weight_beam(int k) {
  DataFamily d;
  d.kind = FamilyKind::HighestWeightBeam;
  d.level = k;
  return d;
}

DataFamily DataFamily::wave_packet(double center, double width) {
  DataFamily d;
  d.kind = FamilyKind::WavePacket;
  d.center = center;
  d.width = width;
  return d;
}

SpectralField DataFamily::member(std::shared_ptr<const ModeTable> table, int trial) const {
  switch (kind) {
    case FamilyKind::SobolevEnsemble: {
      std::uint64_t child = mix64(seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t)(trial + 1)));
      return random_field_over(std::move(table), alpha, child);
    }
    case FamilyKind::SingleMode: {
      SpectralField f = zero_field(std::move(table));
      if (mode_id < 0 || static_cast<std::size_t>(mode_id) >= f.size())
        throw config_error("single-mode family: id outside the mode table");
      f.c[mode_id] = cplx{1.0, 0.0};
      return f;
    }
    case FamilyKind::LevelBeam: {
      const auto kd = table->model.kind;
      if (kd != ModelKind::Sphere2 && kd != ModelKind::SphereZonal3)
        throw domain_error("level beams are sphere families");
      int n = table->model.dim();
      double eig = spectra::sphere_eigenvalue(level, n);
      SpectralField f = zero_field(std::move(table));
      std::vector<std::size_t> ids;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (f.table->eig(j) == eig) ids.push_back(j);
      if (ids.empty()) throw config_error("level beam: level above the table cutoff");
      double a = 1.0 / std::sqrt(static_cast<double>(ids.size()));
      for (auto j : ids) f.c[j] = cplx{a, 0.0};
      return f;
    }
    case FamilyKind::HighestWeightBeam: {
      if (table->model.kind != ModelKind::Sphere2)
        throw domain_error("highest-weight beams live on the 2-sphere");
      SpectralField f = zero_field(std::move(table));
      std::size_t ip = f.size(), im = f.size();
      for (std::size_t j = 0; j < f.size(); ++j) {
        if (f.table->modes[j].q[0] != level) continue;
        if (f.table->modes[j].q[1] == level) ip = j;
        if (f.table->modes[j].q[1] == -level) im = j;
      }
      if (ip == f.size()) throw config_error("highest-weight beam: level above the table cutoff");
      if (level == 0) {
        f.c[ip] = cplx{1.0, 0.0};
        return f;
      }
      // (Y_{k,k} + i Y_{k,-k})/sqrt2 is the unit harmonic ~ (sin theta)^k e^{ik phi}.
      double a = 1.0 / std::sqrt(2.0);
      f.c[ip] = cplx{a, 0.0};
      f.c[im] = cplx{0.0, a};
      return f;
    }
    case FamilyKind::WavePacket: {
      SpectralField f = zero_field(std::move(table));
      KahanSum s;
      for (std::size_t j = 0; j < f.size(); ++j) {
        double lam = std::sqrt(f.table->eig(j));
        double a = std::exp(-sq(lam - center) / (2.0 * sq(width)));
        f.c[j] = cplx{a, 0.0};
        s.add(a * a);
      }
      double r = std::sqrt(s.value());
      if (!(r > 0.0)) throw config_error("wave packet: all weights underflowed");
      for (auto& z : f.c) z /= r;
      return f;
    }
  }
  throw domain_error("unknown family kind");
}

std::string DataFamily::describe() const {
  switch (kind) {
    case FamilyKind::SobolevEnsemble:
      return "sobolev_ensemble(alpha=" + fmt_g(alpha) + ",seed=" + std::to_string(seed) + ")";
    case FamilyKind::SingleMode:
      return "single_mode(id=" + std::to_string(mode_id) + ")";
    case FamilyKind::LevelBeam:
      return "level_beam(k=" + std::to_string(level) + ")";
    case FamilyKind::HighestWeightBeam:
      return "highest_weight_beam(k=" + std::to_string(level) + ")";
    case FamilyKind::WavePacket:
      return "wave_packet(center=" + fmt_g(center) + ",width=" + fmt_g(width) + ")";
  }
  return "unknown";
}

std::string field_csv(const SpectralField& f) {
  f.validate();
  CsvWriter w;
  w.comment("model=" + f.table->model.name() + " lambda_max=" + fmt_g(f.table->lambda_max, 17));
  w.row({"mode_id", "re", "im"});
  for (std::size_t j = 0; j < f.size(); ++j)
    w.row({std::to_string(f.table->modes[j].id), fmt_g(f.c[j].real(), 17), fmt_g(f.c[j].imag(), 17)});
  return w.str();
}

}  // namespace speclab::fields
