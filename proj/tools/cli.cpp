#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mwns/container.hpp"
#include "mwns/errors.hpp"
#include "mwns/fixtures.hpp"
#include "mwns/kernel_probe.hpp"
#include "mwns/lorentz.hpp"
#include "mwns/report.hpp"
#include "mwns/run_config.hpp"
#include "mwns/semigroup.hpp"
#include "mwns/solver.hpp"
#include "mwns/verify.hpp"

namespace mwns::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string format = "json";
};

struct Context {
  Common opts;
  RunConfig rc;
  std::ostream& out;

  std::string path(const std::string& name) const { return (std::filesystem::path(opts.out) / name).string(); }
  void emit(const json& j, const std::string& name = "report.json") const {
    write_text(path(name), j.dump(2) + "\n");
    out << path(name) << "\n";
  }
  void emit_csv(const std::string& csv, const std::string& name = "report.csv") const {
    write_text(path(name), csv);
    out << path(name) << "\n";
  }
  void need_json(const char* cmd) const {
    if (opts.format != "json") throw ConfigError("--format", std::string("csv output is not available for ") + cmd);
  }
};

// Coefficients from a coefficient container or a grid dump; the grid is
// analyzed with the configured transform.
CoeffField load_field(const Context& ctx, const WaveletTransform& tr, const std::string& file) {
  switch (sniff(file)) {
    case FileKind::coefficients: {
      CoeffField c = load_coefficients(file);
      if (!(c.config() == ctx.rc.grid))
        throw ConfigError("grid", "coefficient file " + file + " was written for a different grid");
      return c;
    }
    case FileKind::grid: {
      const SampledField f = load_grid(file);
      if (!(f.shape() == ctx.rc.grid.grid()))
        throw ConfigError("grid", "grid dump " + file + " does not match the configured grid");
      return tr.analyze(f);
    }
    default:
      throw IoError("unrecognized field file " + file);
  }
}

json level_summary(const CoeffField& c) {
  const auto& cfg = c.config();
  json levels = json::array();
  for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
    double l2 = 0.0, mx = 0.0;
    for (int comp = 0; comp < c.components(); ++comp)
      for (int e = 1; e <= cfg.eps_count(); ++e)
        for (double v : c.block(comp, j, e)) l2 += v * v, mx = std::max(mx, std::abs(v));
    levels.push_back({{"j", j}, {"l2", std::sqrt(l2)}, {"max_abs", mx}});
  }
  return levels;
}

int cmd_analyze(const Context& ctx, const std::string& input) {
  ctx.need_json("analyze");
  const WaveletTransform tr(ctx.rc.filter_bank(), ctx.rc.grid);
  const CoeffField c = load_field(ctx, tr, input);
  save_coefficients(ctx.path("coefficients.mwcf"), c);
  json j = report_header("analyze");
  j["coefficients"] = ctx.path("coefficients.mwcf");
  j["levels"] = level_summary(c);
  j["max_abs"] = c.max_abs();
  j["f_norm"] = f_norm(c, ctx.rc.space).value;
  j["besov_norm"] = besov_lorentz_norm(c, ctx.rc.space);
  j["params"] = params_json(ctx.rc.space);
  ctx.emit(j);
  return ok;
}

int cmd_norm(const Context& ctx, const std::string& input) {
  ctx.need_json("norm");
  if (sniff(input) == FileKind::coefficients && load_coefficients(input).time()) {
    const Trajectory traj = load_trajectory(input);
    if (traj.size() > 1 || (traj.size() == 1 && traj.initial())) {
      const WorkspaceNorm ws = workspace_norm(traj, ctx.rc.space);
      const CoeffField& first = traj.initial() ? *traj.initial() : traj[0];
      ctx.emit(norm_json(f_norm(first, ctx.rc.space), &ws, ctx.rc.space));
      return ok;
    }
  }
  const WaveletTransform tr(ctx.rc.filter_bank(), ctx.rc.grid);
  const CoeffField c = load_field(ctx, tr, input);
  ctx.emit(norm_json(f_norm(c, ctx.rc.space), nullptr, ctx.rc.space));
  return ok;
}

int cmd_heatflow(const Context& ctx, const std::string& input) {
  const WaveletTransform tr(ctx.rc.filter_bank(), ctx.rc.grid);
  const CoeffField c = load_field(ctx, tr, input);
  const TimeMesh mesh = ctx.rc.time_mesh();
  const double gamma = ctx.rc.space.gamma;
  const Trajectory traj = heat_trajectory(tr, c, mesh.times(), gamma, ctx.rc.cap);
  save_trajectory(ctx.path("heatflow.mwtr"), traj);
  const WorkspaceNorm ws = workspace_norm(traj, ctx.rc.space);
  if (ctx.opts.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "format_version,t,window,j,max_abs\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const auto& s = traj[i];
      for (auto& lv : level_summary(s))
        os << kReportFormatVersion << ',' << traj.time(i) << ',' << time_window(traj.time(i)) << ','
           << lv["j"].get<int>() << ',' << lv["max_abs"].get<double>() << '\n';
    }
    ctx.emit_csv(os.str());
    return ok;
  }
  json j = norm_json(f_norm(c, ctx.rc.space), &ws, ctx.rc.space);
  j["kind"] = "heatflow";
  j["trajectory"] = ctx.path("heatflow.mwtr");
  j["samples"] = traj.size();
  const double fn = f_norm(c, ctx.rc.space).value;
  j["embedding_ratio"] = fn > 0 ? json(ws.total / fn) : json(nullptr);
  ctx.emit(j);
  return ok;
}

int cmd_solve(const Context& ctx, const std::string& input) {
  ctx.need_json("solve");
  const WaveletTransform tr(ctx.rc.filter_bank(), ctx.rc.grid);
  const CoeffField u0 = load_field(ctx, tr, input);
  SolveConfig sc = ctx.rc.solve_config();
  if (const auto v = validate_params(sc.params, sc.params.gamma > 0 ? Theorem::gevrey : Theorem::well_posedness);
      !v.empty()) {
    std::string all;
    for (const auto& s : v) all += (all.empty() ? "" : "; ") + s;
    throw ConfigError("space", "parameters not admissible: " + all);
  }
  try {
    const SolveResult r = picard_solve(tr, u0, sc);
    save_trajectory(ctx.path("trajectory.mwtr"), r.trajectory);
    json j = solve_json(r.report, sc.params);
    j["trajectory"] = ctx.path("trajectory.mwtr");
    j["converged"] = r.report.residual <= sc.residual_tol;
    ctx.emit(j);
    return r.report.residual <= sc.residual_tol ? ok : failure;
  } catch (const NonContraction& e) {
    json j = report_header("solve");
    j["error"] = "non_contraction";
    j["message"] = e.what();
    j["params"] = params_json(sc.params);
    ctx.emit(j);
    throw;
  }
}

int cmd_verify(const Context& ctx, const std::string& suite) {
  const SuiteReport r = run_suite(suite, ctx.rc);
  if (ctx.opts.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "format_version,suite,check,pass,measured,limit\n";
    for (const auto& c : r.checks)
      os << kReportFormatVersion << ',' << suite << ",\"" << c.name << "\"," << (c.pass ? 1 : 0) << ','
         << c.measured << ',' << c.limit << '\n';
    ctx.emit_csv(os.str());
  } else {
    ctx.emit(suite_json(r));
  }
  for (const auto& c : r.checks)
    if (!c.pass) ctx.out << "FAIL " << c.name << " measured " << c.measured << " limit " << c.limit << "\n";
  return r.passed() ? ok : failure;
}

int cmd_kernel_probe(const Context& ctx) {
  const ProbeSummary s = run_kernel_probes(ctx.rc);
  if (ctx.opts.format == "csv")
    ctx.emit_csv(kernel_csv(s), "kernel_probes.csv");
  else
    ctx.emit(kernel_json(s));
  return ok;
}

int cmd_make_fixture(const Context& ctx, const std::string& kind, double target) {
  ctx.need_json("make-fixture");
  const auto& cfg = ctx.rc.grid;
  const std::uint64_t seed = ctx.rc.verify.seed;
  CoeffField c;
  if (kind == "zero") {
    c = CoeffField(cfg, 1);
  } else if (kind == "zero-vector") {
    c = CoeffField(cfg, cfg.dim);
  } else if (kind == "wavelet") {
    c = single_wavelet(cfg, {1, cfg.j_min + cfg.level_count() / 2, {0, 0, 0}});
  } else if (kind == "random") {
    c = random_field(cfg, 1, seed);
  } else if (kind == "flow" || kind == "random-flow") {
    const WaveletTransform tr(ctx.rc.filter_bank(), cfg);
    c = divergence_free(tr, kind == "flow" ? two_wavelet_potential(cfg) : random_potential(cfg, seed));
  } else {
    throw ConfigError("kind", "unknown fixture '" + kind + "' (zero, zero-vector, wavelet, random, flow, random-flow)");
  }
  if (target > 0) c = normalized(c, ctx.rc.space, target);
  save_coefficients(ctx.path("fixture.mwcf"), c);
  ctx.out << ctx.path("fixture.mwcf") << "\n";
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meyer-wavelet function-space norms and mild Navier-Stokes solutions", "mwns"};
  app.require_subcommand(1);
  Common opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "seed for every randomized ensemble");
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option("--format", opts.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  };
  std::string input, suite, kind;
  double target = 0.0;
  auto* analyze = app.add_subcommand("analyze", "wavelet coefficients of a field file");
  auto* norm = app.add_subcommand("norm", "f-norm of a field, work-space norm of a trajectory");
  auto* heat = app.add_subcommand("heatflow", "heat (or Gevrey-heat) trajectory of a field");
  auto* solve = app.add_subcommand("solve", "Picard iteration for the mild solution");
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  auto* kernel = app.add_subcommand("kernel-probe", "kernel coefficient bound probes");
  auto* fixture = app.add_subcommand("make-fixture", "write a test field");
  for (auto* s : {analyze, norm, heat, solve}) {
    s->add_option("input", input, "field file")->required();
    add_common(s);
  }
  verify->add_option("suite", suite, "meyer, lorentz, maximal, semigroup, kernel or solver")->required();
  add_common(verify);
  add_common(kernel);
  fixture->add_option("kind", kind, "zero, zero-vector, wavelet, random, flow, random-flow")->required();
  fixture->add_option("--norm", target, "rescale to this f-norm");
  add_common(fixture);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "mwns: " << e.what() << "\n";
    return usage;
  }

  try {
    RunConfig rc = opts.config.empty() ? parse_run_config("{}") : load_run_config(opts.config);
    if (opts.seed) rc.verify.seed = *opts.seed;
    const Context ctx{opts, rc, out};
    if (*analyze) return cmd_analyze(ctx, input);
    if (*norm) return cmd_norm(ctx, input);
    if (*heat) return cmd_heatflow(ctx, input);
    if (*solve) return cmd_solve(ctx, input);
    if (*verify) return cmd_verify(ctx, suite);
    if (*kernel) return cmd_kernel_probe(ctx);
    if (*fixture) return cmd_make_fixture(ctx, kind, target);
  } catch (const ConfigError& e) {
    err << "mwns: configuration error: " << e.what() << "\n";
    return usage;
  } catch (const ResolutionError& e) {
    err << "mwns: resolution error: " << e.what() << "\n";
    return usage;
  } catch (const NonContraction& e) {
    err << "mwns: non-contraction: " << e.what() << "\n";
    return non_contraction;
  } catch (const std::exception& e) {
    err << "mwns: " << e.what() << "\n";
    return failure;
  }
  return usage;
}

}  // namespace mwns::cli
