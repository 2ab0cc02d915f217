#pragma once

#include "chemotax/model.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace chemotax {

struct TimeConfig {
  double dt = 1e-3;
  double t_end = 200;
  double snapshot_every = 1;
};

struct SimulateConfig {
  // NaN selects the coexistence state.
  double u0 = std::numeric_limits<double>::quiet_NaN();
  double v0 = std::numeric_limits<double>::quiet_NaN();
  int mode = 1;
  double amplitude = 1e-4;
  double noise = 0;
  std::vector<int> modes{1, 2, 3};
};

struct StabilityConfig {
  int k_max = 64;
};

struct ContinueConfig {
  int k = 1;
  int n = 129;
  // NaN selects chi_k * (1 -/+ 0.5).
  double chi_min = std::numeric_limits<double>::quiet_NaN();
  double chi_max = std::numeric_limits<double>::quiet_NaN();
  double ds = 1e-3;
  int max_points = 500;
  int direction = 1;
  bool stability = true;
  int profile_every = 0;  // 0 writes no profiles
};

struct ShadowConfig {
  double r = 6;
  double eps = 0.1;
  int mode = 1;
  int n = 129;
  double eps_min = std::numeric_limits<double>::quiet_NaN();
  double eps_max = std::numeric_limits<double>::quiet_NaN();
  double ds = 1e-3;
  int max_points = 200;
  int direction = 1;
};

struct LayerConfig {
  double eps = 1e-4;
  // NaN selects the equal-area plateau v_bar2(lambda*).
  double v_bar2 = std::numeric_limits<double>::quiet_NaN();
  int n = 0;
};

struct LimitConfig {
  double r = 2;
  std::vector<double> D1_list{1e2, 1e3, 1e4};
  int n = 257;
  double dt = 1e-2;
  double t_end = 2000;
  double stop_residual = 1e-7;
};

struct RunConfig {
  ModelParams model;
  int grid_n = 512;
  TimeConfig time;
  SimulateConfig simulate;
  StabilityConfig stability;
  ContinueConfig cont;
  ShadowConfig shadow;
  LayerConfig layer;
  LimitConfig limit;
  std::uint64_t seed = 1;
  std::vector<std::string> warnings;
};

// key = value lines, '#' comments. Unknown keys and malformed values throw.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Every key with its resolved value, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c);

std::string format_double(double x);

}  // namespace chemotax
