#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwns/fields.hpp"

namespace mwns {

class Trajectory;

// Little-endian binary formats.
//
// Coefficient container "MWCF": u32 format_version, u32 n, u32 components,
// i32 side_log2, i32 j_min, i32 j_max, u32 grid_points, u8 has_time, f64 time,
// then for each component, level, eps the level lattice as f64 row-major.
// A trajectory file is a sequence of containers in increasing time; a leading
// record at time 0 is the initial state.
//
// Grid dump "MWGD": u32 format_version, u32 n, u32 components, i32 side_log2,
// u32 points, then f64 values, component-major, row-major.
inline constexpr unsigned kFormatVersion = 1;

void write_coefficients(std::ostream& os, const CoeffField& c);
CoeffField read_coefficients(std::istream& is);  // throws IoError

void write_trajectory(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory(std::istream& is);

void write_grid(std::ostream& os, const SampledField& f);
SampledField read_grid(std::istream& is);

// What a file holds, judged from its leading magic.
enum class FileKind { coefficients, grid, unknown };
FileKind sniff(const std::string& path);

void save_coefficients(const std::string& path, const CoeffField& c);
CoeffField load_coefficients(const std::string& path);
void save_trajectory(const std::string& path, const Trajectory& t);
Trajectory load_trajectory(const std::string& path);
void save_grid(const std::string& path, const SampledField& f);
SampledField load_grid(const std::string& path);

}  // namespace mwns
