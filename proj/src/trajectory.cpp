#include "mwns/trajectory.hpp"

#include <cmath>

#include "mwns/errors.hpp"

namespace mwns {

std::vector<double> TimeMesh::times() const {
  if (per_window < 1) throw ConfigError("time.samples_per_window", "must be positive");
  if (jt_max < jt_min) throw ConfigError("time.jt_max", "jt_max < jt_min");
  std::vector<double> t;
  for (int jt = jt_max; jt >= jt_min; --jt)
    for (int i = 0; i < per_window; ++i) t.push_back(std::ldexp(std::pow(4.0, double(i) / per_window), -2 * jt));
  return t;
}

int time_window(double t) { return static_cast<int>(std::ceil(-std::log2(t) / 2.0)); }

void Trajectory::push(CoeffField state) {
  if (!state.time()) throw ConfigError("", "trajectory states need a time stamp");
  const double t = *state.time();
  if (!(t > 0.0)) throw ConfigError("", "sample times must be positive");
  if (!states_.empty()) {
    if (!(t > time(size() - 1))) throw ConfigError("", "sample times must increase");
    if (!states_.front().compatible(state)) throw ConfigError("", "trajectory states differ in layout");
  }
  states_.push_back(std::move(state));
}

void Trajectory::set_initial(CoeffField state) {
  state.set_time(0.0);
  initial_ = std::move(state);
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  for (std::size_t i = 0; i < size(); ++i) t.push_back(time(i));
  return t;
}

CoeffField Trajectory::at(double t) const {
  if (empty()) throw MeshCoverageError("empty trajectory");
  const double t0 = time(0), t1 = time(size() - 1);
  if (t > t1 * (1 + 1e-14) || (t < t0 && !initial_) || t < 0.0)
    throw MeshCoverageError("time " + std::to_string(t) + " outside the trajectory mesh");
  const CoeffField* a = nullptr;
  const CoeffField* b = nullptr;
  double ta = 0.0, tb = 0.0;
  if (t <= t0) {
    if (t == t0) return states_[0];
    a = &*initial_, b = &states_[0], ta = 0.0, tb = t0;
  } else {
    std::size_t i = 1;
    while (i + 1 < size() && time(i) < t) ++i;
    a = &states_[i - 1], b = &states_[i], ta = time(i - 1), tb = time(i);
  }
  const double theta = std::min(1.0, (t - ta) / (tb - ta));
  CoeffField out = *a;
  out *= 1.0 - theta;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += theta * b->data()[i];
  out.set_time(t);
  return out;
}

}  // namespace mwns
