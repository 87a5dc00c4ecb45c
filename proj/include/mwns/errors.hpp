#pragma once

#include <stdexcept>
#include <string>

namespace mwns {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration or input schema. `path` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// The sampling grid cannot represent the requested band.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// A level, lattice or time index falls outside the stored window.
class RangeError : public Error {
 public:
  using Error::Error;
};

class GevreyOverflow : public Error {
 public:
  GevreyOverflow(double t, int j_max, double exponent)
      : Error("Gevrey exponent " + std::to_string(exponent) + " exceeds the overflow cap at t=" +
              std::to_string(t) + ", j_max=" + std::to_string(j_max)),
        t_(t),
        j_max_(j_max) {}
  double t() const noexcept { return t_; }
  int j_max() const noexcept { return j_max_; }

 private:
  double t_;
  int j_max_;
};

class NonContraction : public Error {
 public:
  using Error::Error;
};

class MeshCoverageError : public Error {
 public:
  using Error::Error;
};

class DivergenceDrift : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mwns
