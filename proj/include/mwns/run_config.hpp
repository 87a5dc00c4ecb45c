#pragma once

#include <cstdint>
#include <string>

#include "mwns/config.hpp"
#include "mwns/duhamel.hpp"
#include "mwns/filter_bank.hpp"
#include "mwns/solver.hpp"
#include "mwns/space_params.hpp"
#include "mwns/trajectory.hpp"

namespace mwns {

struct VerifySettings {
  int ensemble = 20;        // fields per ensemble
  int orthonormal_pairs = 200;
  int kernel_probes = 24;
  double kernel_gamma = 0.05;
  double fixture_norm = 1e-3;
  std::uint64_t seed = 20240601;
};

// Everything one CLI invocation needs. Every section is optional in the JSON
// document; missing keys keep these defaults.
struct RunConfig {
  AnalysisConfig grid;
  std::string transition = "polynomial";
  int profile_resolution = 256;
  SpaceParams space;
  TimeMesh mesh{-1, 5, 4};
  bool mesh_set = false;  // false: derived from the level window
  double cap = 700.0;
  QuadratureSpec quadrature;
  SolveConfig solver;
  VerifySettings verify;

  TimeMesh time_mesh() const { return mesh_set ? mesh : TimeMesh::for_levels(grid); }
  SolveConfig solve_config() const;
  FilterBank filter_bank() const { return FilterBank(Transition::parse(transition), profile_resolution); }
};

// Schema-checked parse. Unknown keys, wrong types and violated cross-field
// constraints raise ConfigError naming the JSON path, e.g. "grid.j_max".
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);  // IoError if unreadable

}  // namespace mwns
