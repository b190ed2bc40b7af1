#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ep2/analysis.hpp"
#include "ep2/continuum.hpp"
#include "ep2/errors.hpp"
#include "ep2/model.hpp"
#include "ep2/solvers.hpp"

namespace ep2 {

/// Malformed or inconsistent job configuration (exit code 1).
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct SweepAxis {
  std::string name;  // a, b, c, D0 or DN
  std::vector<double> values;
};

struct JobConfig {
  std::optional<Parameters> params;
  std::optional<ContinuousParameters> continuous;
  std::optional<BoundarySpec> boundary;
  std::vector<int> ns;
  std::string method = "auto";
  SolverConfig solver;
  ScanSpec scan;
  std::vector<SweepAxis> sweep;
  std::string out_path;
  std::string format;       // json | csv; empty means the command default
  std::string solution_csv;  // optional extra CSV of the solution
};

JobConfig parse_config(const nlohmann::json& j);
JobConfig load_config(const std::string& path);

/// The discrete problem of a job (continuous jobs need exactly one N).
Parameters job_parameters(const JobConfig& job);
BoundarySpec job_boundary(const JobConfig& job);

nlohmann::json to_json(const ConditionReport& r);
/// {"method","residual_inf","iterations","solution","bounds","conditions"}
nlohmann::json report_json(const SolveReport& rep, const std::vector<ConditionReport>& conditions);
/// Numbers printed with 17 significant digits.
std::string dump_json(const nlohmann::json& j);
/// "x,u" header then N+1 rows.
std::string solution_csv(const GridFunction& u);
std::string format_double(double v);

enum class Command { solve, conditions, enumerate, sweep, continuum };
Command command_from_string(const std::string& s);

struct CommandOptions {
  std::string config_path;
  std::string out_path;
  std::string format;
  int workers = 0;  // 0: hardware concurrency
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

/// Exit codes: 0 success, 1 configuration or validation error, 2 solver
/// failure. Output goes to options.out_path (or the config's output.path),
/// falling back to `out`; diagnostics go to `err`.
int run_command(Command cmd, const CommandOptions& opt, std::ostream& out, std::ostream& err);

/// Randomized consistency check of the energy gradient against the residual
/// rows and finite differences. Returns the worst relative mismatch.
double gradient_self_check(const Parameters& p, const BoundarySpec& bc, std::uint64_t seed, int samples = 20);

}  // namespace ep2
