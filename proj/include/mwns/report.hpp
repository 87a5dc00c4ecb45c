#pragma once

#include <string>

#include <json.hpp>

#include "mwns/kernel_probe.hpp"
#include "mwns/lorentz.hpp"
#include "mwns/solver.hpp"
#include "mwns/verify.hpp"

namespace mwns {

inline constexpr int kReportFormatVersion = 1;

// Every report carries format_version and a timestamp; nothing else in it
// depends on the wall clock.
nlohmann::json report_header(const std::string& kind);

nlohmann::json params_json(const SpaceParams& p);
nlohmann::json suite_json(const SuiteReport& r);
nlohmann::json solve_json(const SolveReport& r, const SpaceParams& p);
nlohmann::json norm_json(const LorentzValue& f, const WorkspaceNorm* ws, const SpaceParams& p);
nlohmann::json kernel_json(const ProbeSummary& s);

// One row per probe, columns
// format_version,case,regime,j,j',j'',|k-dist|,|k'-dist|,t,s,gamma,N,measured,bound,ratio
std::string kernel_csv(const ProbeSummary& s);

// Writes `text` to path, creating parent directories. IoError on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace mwns
