#include "mwns/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwns/errors.hpp"

namespace mwns {

using nlohmann::json;

namespace {

// JSON has no infinity
json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

json report_header(const std::string& kind) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return {{"format_version", kReportFormatVersion}, {"kind", kind}, {"timestamp", buf}};
}

json params_json(const SpaceParams& p) {
  return {{"n", p.n},         {"s", p.smoothness()}, {"p", number(p.p)},         {"q", number(p.q)},
          {"r", number(p.r)}, {"m", p.m},            {"m_prime", p.m_prime}, {"gamma", p.gamma}};
}

json suite_json(const SuiteReport& r) {
  json j = report_header("verify");
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"measured", number(c.measured)},
                      {"limit", number(c.limit)}, {"detail", c.detail}});
  j["checks"] = checks;
  return j;
}

json solve_json(const SolveReport& r, const SpaceParams& p) {
  json j = report_header("solve");
  j["iterations"] = r.iterations;
  json d = json::array(), dp = json::array();
  for (double v : r.difference_norms) d.push_back(number(v));
  for (double v : r.difference_norms_plain) dp.push_back(number(v));
  j["difference_norms"] = d;
  j["difference_norms_plain"] = dp;
  j["contraction_ratio"] = number(r.contraction_ratio);
  j["residual"] = number(r.residual);
  j["workspace_norm"] = number(r.workspace_norm);
  j["gevrey_norm"] = number(r.gevrey_norm);
  j["divergence_max"] = number(r.divergence_max);
  j["initial_f_norm"] = number(r.initial_f_norm);
  j["params"] = params_json(p);
  return j;
}

json norm_json(const LorentzValue& f, const WorkspaceNorm* ws, const SpaceParams& p) {
  json j = report_header("norm");
  j["norm"] = number(f.value);
  j["truncation_range"] = {f.u_lo, f.u_hi};
  if (ws) {
    j["A_high"] = number(ws->a_high);
    j["A_low"] = number(ws->a_low);
    j["workspace_norm"] = number(ws->total);
    j["windows"] = ws->windows;
  }
  j["params"] = params_json(p);
  return j;
}

json kernel_json(const ProbeSummary& s) {
  json j = report_header("kernel-probe");
  j["fitted_c"] = number(s.fitted_c);
  j["c_tilde"] = number(s.c_tilde);
  j["distance_slope"] = number(s.distance_slope);
  j["max_ratio_b1"] = number(s.max_ratio_b1);
  j["max_ratio_b2"] = number(s.max_ratio_b2);
  j["sweep"] = {{"distance", s.sweep_distance}, {"envelope", s.sweep_envelope}};
  j["probe_count"] = s.probes.size();
  return j;
}

std::string kernel_csv(const ProbeSummary& s) {
  std::ostringstream os;
  os.precision(17);
  os << "format_version,case,regime,j,j',j'',|k-dist|,|k'-dist|,t,s,gamma,N,measured,bound,ratio\n";
  for (const auto& p : s.probes)
    os << kReportFormatVersion << ',' << p.case_tag << ',' << (p.regime == KernelRegime::b1 ? "B1" : "B2") << ','
       << p.out.j << ',' << p.first.j << ',' << p.second.j << ',' << p.outer_dist << ',' << p.inner_dist << ','
       << p.t << ',' << p.s << ',' << p.gamma << ',' << p.N << ',' << p.measured << ',' << p.bound << ','
       << p.ratio << '\n';
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

}  // namespace mwns
