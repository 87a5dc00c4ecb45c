#include "mwns/run_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mwns/errors.hpp"

namespace mwns {

namespace {

using nlohmann::json;

class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (doc.is_null()) return;
    if (!doc.is_object()) throw ConfigError(path_, "expected an object");
    obj_ = &doc;
  }
  ~Section() = default;

  void finish(std::initializer_list<const char*> allowed) const {
    if (!obj_) return;
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj_->items())
      if (!ok.count(k)) throw ConfigError(join(k), "unknown key");
  }

  const json* get(const char* key) const {
    if (!obj_) return nullptr;
    auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }

  void integer(const char* key, int& out) const {
    if (auto v = get(key)) {
      if (!v->is_number_integer()) throw ConfigError(join(key), "expected an integer");
      out = v->get<int>();
    }
  }
  void u64(const char* key, std::uint64_t& out) const {
    if (auto v = get(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(join(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  // numbers, or the strings "inf" / "infinity"
  void number(const char* key, double& out, bool allow_inf = false) const {
    if (auto v = get(key)) {
      if (v->is_number()) {
        out = v->get<double>();
      } else if (allow_inf && v->is_string() && (*v == "inf" || *v == "infinity")) {
        out = std::numeric_limits<double>::infinity();
      } else {
        throw ConfigError(join(key), allow_inf ? "expected a number or \"inf\"" : "expected a number");
      }
    }
  }
  void string(const char* key, std::string& out) const {
    if (auto v = get(key)) {
      if (!v->is_string()) throw ConfigError(join(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  bool has(const char* key) const { return get(key) != nullptr; }
  std::string join(const std::string& key) const { return path_ + "." + key; }

 private:
  std::string path_;
  const json* obj_ = nullptr;
};

const json& member(const json& doc, const char* key) {
  static const json null;
  auto it = doc.find(key);
  return it == doc.end() ? null : *it;
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

}  // namespace

SolveConfig RunConfig::solve_config() const {
  SolveConfig s = solver;
  s.params = space;
  s.mesh = time_mesh();
  s.quad = quadrature;
  s.cap = cap;
  return s;
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("$", "expected an object");
  RunConfig rc;
  {
    const std::set<std::string> top{"format_version", "grid", "filter", "space", "semigroup",
                                    "quadrature", "solver", "verify"};
    for (const auto& [k, v] : doc.items())
      if (!top.count(k)) throw ConfigError(k, "unknown section");
    if (doc.contains("format_version")) {
      const auto& v = doc["format_version"];
      require(v.is_number_integer() && v.get<int>() == 1, "format_version", "unsupported format version");
    }
  }

  {
    Section g(member(doc, "grid"), "grid");
    g.integer("n", rc.grid.dim);
    if (g.has("side")) {
      double side = 0;
      g.number("side", side);
      const double l = std::log2(side);
      require(side > 0 && l == std::floor(l), "grid.side", "torus side must be a power of two");
      rc.grid.side_log2 = int(l);
    }
    g.integer("side_log2", rc.grid.side_log2);
    g.integer("grid_points", rc.grid.grid_points);
    g.integer("j_min", rc.grid.j_min);
    g.integer("j_max", rc.grid.j_max);
    g.finish({"n", "side", "side_log2", "grid_points", "j_min", "j_max"});
    require(rc.grid.dim == 2 || rc.grid.dim == 3, "grid.n", "dimension must be 2 or 3");
    try {
      rc.grid.validate();
    } catch (const ResolutionError& e) {
      throw ConfigError("grid.grid_points", e.what());
    }
  }
  {
    Section f(member(doc, "filter"), "filter");
    f.string("transition", rc.transition);
    f.integer("profile_resolution", rc.profile_resolution);
    f.finish({"transition", "profile_resolution"});
    try {
      (void)Transition::parse(rc.transition);
    } catch (const ConfigError& e) {
      throw ConfigError("filter.transition", e.what());
    }
    require(rc.profile_resolution >= 256, "filter.profile_resolution", "must be at least 256");
  }
  {
    Section s(member(doc, "space"), "space");
    rc.space.n = rc.grid.dim;
    s.number("p", rc.space.p);
    s.number("q", rc.space.q, true);
    s.number("r", rc.space.r, true);
    s.number("m", rc.space.m);
    s.number("m_prime", rc.space.m_prime);
    s.number("gamma", rc.space.gamma);
    if (s.has("s")) {
      double v = 0;
      s.number("s", v);
      rc.space.s = v;
    }
    s.finish({"p", "q", "r", "m", "m_prime", "gamma", "s"});
    require(rc.space.p > 1, "space.p", "must exceed 1");
    require(rc.space.q >= 1, "space.q", "must be at least 1");
    require(rc.space.r >= 1, "space.r", "must be at least 1");
    require(rc.space.gamma >= 0, "space.gamma", "must be non-negative");
  }
  {
    Section t(member(doc, "semigroup"), "semigroup");
    if (t.has("jt_min") || t.has("jt_max") || t.has("per_window")) rc.mesh_set = true;
    rc.mesh = TimeMesh::for_levels(rc.grid);
    t.integer("jt_min", rc.mesh.jt_min);
    t.integer("jt_max", rc.mesh.jt_max);
    t.integer("per_window", rc.mesh.per_window);
    t.number("overflow_cap", rc.cap);
    t.finish({"jt_min", "jt_max", "per_window", "overflow_cap"});
    require(rc.mesh.jt_min <= rc.mesh.jt_max, "semigroup.jt_max", "must not be below jt_min");
    require(rc.mesh.per_window >= 4, "semigroup.per_window", "at least 4 samples per window are required");
    require(rc.cap > 0 && rc.cap <= 709, "semigroup.overflow_cap", "must lie in (0, 709]");
  }
  {
    Section q(member(doc, "quadrature"), "quadrature");
    q.integer("sub_intervals", rc.quadrature.sub_intervals);
    q.integer("nodes", rc.quadrature.nodes);
    q.finish({"sub_intervals", "nodes"});
    require(rc.quadrature.sub_intervals >= 2 && rc.quadrature.sub_intervals % 2 == 0, "quadrature.sub_intervals",
            "must be an even number of at least 2");
    require(rc.quadrature.nodes >= 1 && rc.quadrature.nodes <= 64, "quadrature.nodes", "must lie in [1, 64]");
  }
  {
    Section s(member(doc, "solver"), "solver");
    s.number("smallness", rc.solver.smallness);
    s.integer("max_iter", rc.solver.max_iter);
    s.number("contraction_tol", rc.solver.contraction_tol);
    s.number("residual_tol", rc.solver.residual_tol);
    s.number("divergence_tol", rc.solver.divergence_tol);
    s.number("ratio_limit", rc.solver.ratio_limit);
    s.finish({"smallness", "max_iter", "contraction_tol", "residual_tol", "divergence_tol", "ratio_limit"});
    require(rc.solver.smallness > 0, "solver.smallness", "must be positive");
    require(rc.solver.max_iter >= 1, "solver.max_iter", "must be at least 1");
    require(rc.solver.contraction_tol > 0, "solver.contraction_tol", "must be positive");
    require(rc.solver.residual_tol > 0, "solver.residual_tol", "must be positive");
    require(rc.solver.divergence_tol > 0, "solver.divergence_tol", "must be positive");
    require(rc.solver.ratio_limit > 0 && rc.solver.ratio_limit < 1, "solver.ratio_limit", "must lie in (0, 1)");
  }
  {
    Section v(member(doc, "verify"), "verify");
    v.integer("ensemble", rc.verify.ensemble);
    v.integer("orthonormal_pairs", rc.verify.orthonormal_pairs);
    v.integer("kernel_probes", rc.verify.kernel_probes);
    v.number("kernel_gamma", rc.verify.kernel_gamma);
    v.number("fixture_norm", rc.verify.fixture_norm);
    v.u64("seed", rc.verify.seed);
    v.finish({"ensemble", "orthonormal_pairs", "kernel_probes", "kernel_gamma", "fixture_norm", "seed"});
    require(rc.verify.ensemble >= 1, "verify.ensemble", "must be at least 1");
    require(rc.verify.orthonormal_pairs >= 1, "verify.orthonormal_pairs", "must be at least 1");
    require(rc.verify.kernel_probes >= 0, "verify.kernel_probes", "must be non-negative");
    require(rc.verify.fixture_norm > 0, "verify.fixture_norm", "must be positive");
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace mwns
