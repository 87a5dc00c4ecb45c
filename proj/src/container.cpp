#include "mwns/container.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "mwns/errors.hpp"
#include "mwns/trajectory.hpp"

namespace mwns {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::ostream& os, T v) {
  auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(v);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), sizeof(T))) throw IoError("truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

void put_magic(std::ostream& os, const char* m) { os.write(m, 4); }

bool read_magic(std::istream& is, const char* expected) {
  char m[4];
  if (!is.read(m, 4)) return false;
  if (std::memcmp(m, expected, 4) != 0) throw IoError(std::string("bad magic, expected ") + expected);
  return true;
}

void check_version(unsigned v) {
  if (v != kFormatVersion) throw IoError("unsupported format_version " + std::to_string(v));
}

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  return is;
}

// Returns false at a clean end of stream.
bool read_one(std::istream& is, CoeffField& out) {
  if (is.peek() == std::char_traits<char>::eof()) return false;
  read_magic(is, "MWCF");
  check_version(get<std::uint32_t>(is));
  AnalysisConfig cfg;
  cfg.dim = static_cast<int>(get<std::uint32_t>(is));
  const int comps = static_cast<int>(get<std::uint32_t>(is));
  cfg.side_log2 = get<std::int32_t>(is);
  cfg.j_min = get<std::int32_t>(is);
  cfg.j_max = get<std::int32_t>(is);
  cfg.grid_points = static_cast<int>(get<std::uint32_t>(is));
  const bool has_time = get<std::uint8_t>(is) != 0;
  const double t = get<double>(is);
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw IoError(std::string("invalid container header: ") + e.what());
  }
  if (comps < 1 || comps > 3) throw IoError("invalid component count");
  out = CoeffField(cfg, comps, has_time ? std::optional<double>(t) : std::nullopt);
  for (double& v : out.data()) v = get<double>(is);
  return true;
}

}  // namespace

void write_coefficients(std::ostream& os, const CoeffField& c) {
  const auto& cfg = c.config();
  put_magic(os, "MWCF");
  put<std::uint32_t>(os, kFormatVersion);
  put<std::uint32_t>(os, cfg.dim);
  put<std::uint32_t>(os, c.components());
  put<std::int32_t>(os, cfg.side_log2);
  put<std::int32_t>(os, cfg.j_min);
  put<std::int32_t>(os, cfg.j_max);
  put<std::uint32_t>(os, cfg.grid_points);
  put<std::uint8_t>(os, c.time() ? 1 : 0);
  put<double>(os, c.time().value_or(0.0));
  for (double v : c.data()) put<double>(os, v);
}

CoeffField read_coefficients(std::istream& is) {
  CoeffField c;
  if (!read_one(is, c)) throw IoError("empty coefficient file");
  return c;
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
  if (traj.initial()) write_coefficients(os, *traj.initial());
  for (const auto& s : traj.states()) write_coefficients(os, s);
}

Trajectory read_trajectory(std::istream& is) {
  Trajectory traj;
  CoeffField c;
  bool first = true;
  while (read_one(is, c)) {
    if (!c.time()) throw IoError("trajectory record without time stamp");
    if (first && *c.time() == 0.0)
      traj.set_initial(std::move(c));
    else
      traj.push(std::move(c));
    first = false;
  }
  if (traj.empty()) throw IoError("trajectory file has no samples");
  return traj;
}

void write_grid(std::ostream& os, const SampledField& f) {
  put_magic(os, "MWGD");
  put<std::uint32_t>(os, kFormatVersion);
  put<std::uint32_t>(os, f.shape().dim);
  put<std::uint32_t>(os, f.components());
  put<std::int32_t>(os, f.shape().side_log2);
  put<std::uint32_t>(os, f.shape().points);
  for (double v : f.values()) put<double>(os, v);
}

SampledField read_grid(std::istream& is) {
  if (!read_magic(is, "MWGD")) throw IoError("empty grid file");
  check_version(get<std::uint32_t>(is));
  GridShape shape;
  shape.dim = static_cast<int>(get<std::uint32_t>(is));
  const int comps = static_cast<int>(get<std::uint32_t>(is));
  shape.side_log2 = get<std::int32_t>(is);
  shape.points = static_cast<int>(get<std::uint32_t>(is));
  if ((shape.dim != 2 && shape.dim != 3) || comps < 1 || comps > 3 || shape.points < 1 || shape.points > 4096)
    throw IoError("invalid grid header");
  SampledField f(shape, comps);
  for (double& v : f.values()) v = get<double>(is);
  return f;
}

FileKind sniff(const std::string& path) {
  auto is = open_in(path);
  char m[4] = {};
  is.read(m, 4);
  if (std::memcmp(m, "MWCF", 4) == 0) return FileKind::coefficients;
  if (std::memcmp(m, "MWGD", 4) == 0) return FileKind::grid;
  return FileKind::unknown;
}

void save_coefficients(const std::string& path, const CoeffField& c) {
  auto os = open_out(path);
  write_coefficients(os, c);
}

CoeffField load_coefficients(const std::string& path) {
  auto is = open_in(path);
  return read_coefficients(is);
}

void save_trajectory(const std::string& path, const Trajectory& t) {
  auto os = open_out(path);
  write_trajectory(os, t);
}

Trajectory load_trajectory(const std::string& path) {
  auto is = open_in(path);
  return read_trajectory(is);
}

void save_grid(const std::string& path, const SampledField& f) {
  auto os = open_out(path);
  write_grid(os, f);
}

SampledField load_grid(const std::string& path) {
  auto is = open_in(path);
  return read_grid(is);
}

}  // namespace mwns
