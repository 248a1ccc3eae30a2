#pragma once

// INI-style experiment configs. [section] headers open one experiment each
// (the section name is the inequality id unless an id key overrides it),
// key=value lines fill the fields, # and ; start comments. Unknown keys and
// malformed values are rejected with their line number. Unset numeric fields
// keep 0 and are filled from per-id defaults by the runner.

#include <cstdint>
#include <string>
#include <vector>

#include "speclab/common.hpp"

namespace speclab::config {

struct ExperimentConfig {
  std::string section;
  std::string id;
  std::string model;     // circle, torus2, torus3, sphere2, sphere_zonal3
  std::string ensemble;  // sobolev, single_mode, level_beam, highest_weight, wave_packet
  double cutoff = 0.0;   // lambda cutoff; 0 = derive from the h list
  std::vector<double> h_list;
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double c0 = 0.0;          // low-pass cutoff
  double ball_radius = 0.0;  // smoothing ball
  double width = 0.0;        // bump / wave packet width
  double center = 0.0;       // wave packet center
  int level = 0;             // beam degree
  int mode_id = 0;           // single-mode index
  int trials = 0;
  int resolution = 0;  // optional grid override for sweep outputs
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::vector<double> t_list;
  std::vector<double> lam0_list;
  std::vector<double> alpha_list;  // sweep smoothness levels
};

std::vector<ExperimentConfig> parse_config(const std::string& text);
std::vector<ExperimentConfig> load_config_file(const std::string& path);

}  // namespace speclab::config
