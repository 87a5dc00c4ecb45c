#pragma once

#include <optional>
#include <vector>

#include "mwns/fields.hpp"

namespace mwns {

// Sample times on dyadic windows [2^{-2 jt}, 2^{2-2 jt}): `per_window` points
// t = 2^{-2 jt} 4^{i/per_window} for jt from jt_max down to jt_min, ascending.
struct TimeMesh {
  int jt_min = -1;
  int jt_max = 7;
  int per_window = 4;
  std::vector<double> times() const;
  // One window below the level window, three above: the finest level is
  // damped by exp(-(8 pi/3)^2 4^{j - jt}) and only reaches its undamped size
  // from jt = j_max + 3 on.
  static TimeMesh for_levels(const AnalysisConfig& cfg, int per_window = 4) {
    return {cfg.j_min - 1, cfg.j_max + 3, per_window};
  }
};

// The window index jt with 2^{-2 jt} <= t < 2^{2-2 jt}.
int time_window(double t);

// States sampled at strictly increasing times, plus an optional state at t = 0
// used for interpolation on [0, t_first].
class Trajectory {
 public:
  Trajectory() = default;

  void push(CoeffField state);  // state carries its time
  void set_initial(CoeffField state);

  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  const CoeffField& operator[](std::size_t i) const { return states_[i]; }
  CoeffField& operator[](std::size_t i) { return states_[i]; }
  double time(std::size_t i) const { return *states_[i].time(); }
  std::vector<double> times() const;
  const std::optional<CoeffField>& initial() const { return initial_; }

  const std::vector<CoeffField>& states() const { return states_; }

  // Linear interpolation; throws MeshCoverageError outside the covered span.
  CoeffField at(double t) const;

 private:
  std::vector<CoeffField> states_;
  std::optional<CoeffField> initial_;
};

// Same samples, every state passed through f(t, state).
template <class F>
Trajectory map_states(const Trajectory& traj, F&& f) {
  Trajectory out;
  if (traj.initial()) {
    CoeffField s = f(0.0, *traj.initial());
    s.set_time(0.0);
    out.set_initial(std::move(s));
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CoeffField s = f(traj.time(i), traj[i]);
    s.set_time(traj.time(i));
    out.push(std::move(s));
  }
  return out;
}

}  // namespace mwns
