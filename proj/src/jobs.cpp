#include "ep2/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "ep2/errors.hpp"

namespace ep2 {

using nlohmann::json;

namespace {

const std::vector<std::string> kTopKeys = {"a",      "b",     "c",      "N",     "A",     "B",    "C",
                                           "y0",     "y1",    "Ns",     "dirichlet", "robin", "method",
                                           "solver", "output", "scan", "sweep"};

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return j.get<int>();
}

RobinFunction parse_robin_function(const json& j, const std::string& key) {
  if (!j.is_object()) throw ConfigError("'" + key + "' must be an object with 'terms'");
  std::vector<RobinTerm> terms;
  if (j.contains("terms")) {
    if (!j["terms"].is_array()) throw ConfigError("'" + key + ".terms' must be a list");
    for (const auto& t : j["terms"]) {
      RobinTerm term;
      if (t.is_array() && t.size() == 2) {
        term.coeff = number(t[0], key + ".terms");
        term.exponent = integer(t[1], key + ".terms");
      } else if (t.is_object()) {
        term.coeff = number(t.at("coeff"), key + ".coeff");
        term.exponent = integer(t.at("exponent"), key + ".exponent");
      } else {
        throw ConfigError("'" + key + ".terms' entries are [coeff, exponent] or {coeff, exponent}");
      }
      if (term.exponent < -3 || term.exponent > 3) {
        throw ConfigError("Robin exponents must lie in {-3, ..., 3}");
      }
      terms.push_back(term);
    }
  }
  const auto mono = monotonicity_from_string(j.value("monotonicity", std::string("none")));
  RobinFunction f(std::move(terms), mono);
  if (!f.monotonicity_consistent()) {
    throw ConfigError("'" + key + "' contradicts its declared monotonicity");
  }
  return f;
}

void parse_solver(const json& j, SolverConfig& s) {
  for (const auto& [k, v] : j.items()) {
    if (k == "tol_residual") s.tol_residual = number(v, k);
    else if (k == "max_iter") s.max_iter = integer(v, k);
    else if (k == "newton_backtrack_factor") s.newton_backtrack_factor = number(v, k);
    else if (k == "homotopy_initial_step") s.homotopy_initial_step = number(v, k);
    else if (k == "homotopy_min_step") s.homotopy_min_step = number(v, k);
    else if (k == "positivity_fraction") s.positivity_fraction = number(v, k);
    else if (k == "robin_radii") {
      s.robin_radii.clear();
      for (const auto& r : v) s.robin_radii.push_back(number(r, k));
    } else if (k == "robin_anchors") {
      if (!v.is_array() || v.size() != 2) throw ConfigError("'robin_anchors' must be [r0, rN]");
      s.robin_anchors = std::pair{number(v[0], k), number(v[1], k)};
    } else {
      throw ConfigError("unknown solver key '" + k + "'");
    }
  }
}

std::vector<double> axis_values(const json& j) {
  std::vector<double> vals;
  if (j.contains("values")) {
    for (const auto& v : j["values"]) vals.push_back(number(v, "values"));
  } else {
    const double lo = number(j.at("min"), "min");
    const double hi = number(j.at("max"), "max");
    const int n = integer(j.at("points"), "points");
    if (n < 1) throw ConfigError("sweep axis needs points >= 1");
    for (int i = 0; i < n; ++i) vals.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }
  if (vals.empty()) throw ConfigError("empty sweep axis");
  return vals;
}

}  // namespace

JobConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(kTopKeys.begin(), kTopKeys.end(), k) == kTopKeys.end()) {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
  JobConfig job;
  const bool discrete = j.contains("a") || j.contains("b") || j.contains("c");
  const bool continuous = j.contains("A") || j.contains("B") || j.contains("C");
  if (discrete == continuous) {
    throw ConfigError("exactly one of the discrete (a, b, c) or continuous (A, B, C) forms is required");
  }
  if (j.contains("Ns")) {
    for (const auto& v : j["Ns"]) job.ns.push_back(integer(v, "Ns"));
  }
  if (j.contains("N")) job.ns.insert(job.ns.begin(), integer(j["N"], "N"));
  if (job.ns.empty()) throw ConfigError("'N' is required");
  for (int n : job.ns) {
    if (n < 2) throw ConfigError("N must be >= 2");
  }

  if (discrete) {
    Parameters p;
    p.a = number(j.value("a", json(0.0)), "a");
    p.b = number(j.value("b", json(0.0)), "b");
    if (!j.contains("c")) throw ConfigError("'c' is required");
    p.c = number(j["c"], "c");
    p.n = job.ns.front();
    if (p.c == 0.0) throw ConfigError("c must be nonzero");
    if (j.contains("y0") || j.contains("y1")) throw ConfigError("y0/y1 belong to the continuous form");
    job.params = p;
  } else {
    ContinuousParameters cp;
    cp.A = number(j.value("A", json(0.0)), "A");
    cp.B = number(j.value("B", json(0.0)), "B");
    cp.C = number(j.value("C", json(0.0)), "C");
    cp.y0 = number(j.value("y0", json(0.0)), "y0");
    cp.y1 = number(j.value("y1", json(0.0)), "y1");
    if (cp.C == 0.0) throw ConfigError("C must be nonzero");
    if (cp.y0 < 0.0 || cp.y1 < 0.0) throw ConfigError("boundary data y0, y1 must be >= 0");
    if (j.contains("dirichlet") || j.contains("robin")) {
      throw ConfigError("continuous jobs take their boundary data from y0, y1");
    }
    job.continuous = cp;
  }

  if (j.contains("dirichlet") && j.contains("robin")) throw ConfigError("give either 'dirichlet' or 'robin'");
  if (j.contains("dirichlet")) {
    const auto& d = j["dirichlet"];
    if (!d.is_array() || d.size() != 2) throw ConfigError("'dirichlet' must be [D0, DN]");
    job.boundary = BoundarySpec::dirichlet(number(d[0], "dirichlet"), number(d[1], "dirichlet"));
  } else if (j.contains("robin")) {
    const auto& r = j["robin"];
    if (!r.is_object() || !r.contains("f0") || !r.contains("fN")) {
      throw ConfigError("'robin' must hold 'f0' and 'fN'");
    }
    job.boundary = BoundarySpec::robin(parse_robin_function(r["f0"], "robin.f0"),
                                       parse_robin_function(r["fN"], "robin.fN"));
  } else if (discrete) {
    throw ConfigError("boundary data ('dirichlet' or 'robin') is required");
  } else {
    job.boundary = BoundarySpec::dirichlet(job.continuous->y0, job.continuous->y1);
  }

  if (j.contains("method")) {
    job.method = j["method"].get<std::string>();
    if (job.method != "auto") method_from_string(job.method);
  }
  if (j.contains("solver")) parse_solver(j["solver"], job.solver);
  job.solver.validate();
  if (j.contains("scan")) {
    const auto& s = j["scan"];
    job.scan.t_min = number(s.value("t_min", json(job.scan.t_min)), "t_min");
    job.scan.t_max = number(s.value("t_max", json(job.scan.t_max)), "t_max");
    job.scan.resolution = number(s.value("resolution", json(job.scan.resolution)), "resolution");
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    job.out_path = o.value("path", std::string());
    job.format = o.value("format", std::string());
    job.solution_csv = o.value("solution_csv", std::string());
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (!s.contains("axes") || !s["axes"].is_array()) throw ConfigError("'sweep.axes' must be a list");
    for (const auto& ax : s["axes"]) {
      SweepAxis axis{ax.at("name").get<std::string>(), axis_values(ax)};
      static const std::vector<std::string> names = {"a", "b", "c", "D0", "DN"};
      if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
        throw ConfigError("sweep axis must be one of a, b, c, D0, DN");
      }
      job.sweep.push_back(std::move(axis));
    }
  }
  return job;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

Parameters job_parameters(const JobConfig& job) {
  if (job.params) return *job.params;
  if (job.ns.size() != 1) throw ConfigError("this command needs a single N");
  return discretize(*job.continuous, job.ns.front()).first;
}

BoundarySpec job_boundary(const JobConfig& job) { return *job.boundary; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ConditionReport& r) {
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  return {{"condition_id", to_string(r.id)},
          {"holds", r.holds},
          {"strict", r.strict},
          {"margin", r.margin},
          {"details", details}};
}

json report_json(const SolveReport& rep, const std::vector<ConditionReport>& conditions) {
  json j;
  j["method"] = to_string(rep.method);
  j["residual_inf"] = rep.residual_inf;
  j["iterations"] = rep.iterations;
  j["solution"] = rep.solution.vector();
  if (rep.bounds_used) {
    j["bounds"] = {{"alpha", rep.bounds_used->lower.vector()}, {"beta", rep.bounds_used->upper.vector()}};
  } else {
    j["bounds"] = nullptr;
  }
  j["conditions"] = json::array();
  for (const auto& c : conditions) j["conditions"].push_back(to_json(c));
  return j;
}

namespace {

void dump_to(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_double(v) : "null");
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(k).dump() << ": ";
        dump_to(os, v, indent + 2);
      }
      os << "\n" << close << "}";
      break;
    }
    case json::value_t::array: {
      const bool nested = std::any_of(j.begin(), j.end(), [](const json& v) { return v.is_object(); });
      if (!nested || j.empty()) {
        os << "[";
        bool first = true;
        for (const auto& v : j) {
          if (!first) os << ", ";
          first = false;
          dump_to(os, v, indent + 2);
        }
        os << "]";
        break;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump_to(os, v, indent + 2);
      }
      os << "\n" << close << "]";
      break;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j) {
  std::ostringstream os;
  dump_to(os, j, 0);
  os << "\n";
  return os.str();
}

std::string solution_csv(const GridFunction& u) {
  std::string s = "x,u\n";
  for (int x = 0; x <= u.n(); ++x) s += std::to_string(x) + "," + format_double(u[x]) + "\n";
  return s;
}

Command command_from_string(const std::string& s) {
  if (s == "solve") return Command::solve;
  if (s == "conditions") return Command::conditions;
  if (s == "enumerate") return Command::enumerate;
  if (s == "sweep") return Command::sweep;
  if (s == "continuum") return Command::continuum;
  throw ConfigError("unknown command '" + s + "'");
}

double gradient_self_check(const Parameters& p, const BoundarySpec& bc, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    auto u = GridFunction::constant(p.n, 1.0);
    for (int x = 0; x <= p.n; ++x) u[x] = dist(rng);
    if (bc.is_dirichlet()) {
      u[0] = bc.dirichlet_data().d0;
      u[p.n] = bc.dirichlet_data().dn;
    }
    const auto g = functional_gradient(p, bc, u);
    const auto r = residual(p, bc, u);
    const int offset = bc.is_dirichlet() ? 1 : 0;
    const double scale = identity_scale(p, u);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const int x = static_cast<int>(i) + offset;
      const double expected = (bc.is_robin() && x == p.n) ? r[x] : -r[x];
      worst = std::max(worst, std::abs(g[i] - expected) / scale);

      const double h = 1e-6 * std::max(1.0, u[x]);
      auto up = u, dn = u;
      up[x] += h;
      dn[x] -= h;
      const double fd = (functional_value(p, bc, up) - functional_value(p, bc, dn)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - g[i]) / (1.0 + std::abs(g[i])));
    }
  }
  return worst;
}

namespace {

void emit(const std::string& text, const CommandOptions& opt, const JobConfig* job, std::ostream& out) {
  const std::string path = !opt.out_path.empty() ? opt.out_path : (job ? job->out_path : std::string());
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

std::string resolve_format(const CommandOptions& opt, const JobConfig& job, const std::string& fallback) {
  std::string f = !opt.format.empty() ? opt.format : (!job.format.empty() ? job.format : fallback);
  if (f != "json" && f != "csv") throw ConfigError("format must be json or csv");
  return f;
}

SolveReport run_solve(const JobConfig& job, const Parameters& p, const BoundarySpec& bc) {
  if (job.method == "auto") return solve_auto(p, bc, job.solver);
  return solve_with(method_from_string(job.method), p, bc, job.solver);
}

std::vector<ConditionReport> safe_conditions(const Parameters& p, const BoundarySpec& bc, std::ostream& err) {
  try {
    return applicable_conditions(p, bc);
  } catch (const DomainError& e) {
    err << "conditions: " << e.what() << "\n";
    return {};
  }
}

int cmd_solve(JobConfig& job, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  const auto p = job_parameters(job);
  const auto bc = job_boundary(job);
  const auto format = resolve_format(opt, job, "json");
  SolveReport rep;
  try {
    rep = run_solve(job, p, bc);
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const auto conditions = safe_conditions(p, bc, err);
  if (rep.c_reached) err << "c_max reached: " << format_double(*rep.c_reached) << "\n";
  if (!rep.success) err << "solver failure (" << to_string(rep.method) << "): " << rep.message << "\n";

  emit(format == "json" ? dump_json(report_json(rep, conditions)) : solution_csv(rep.solution), opt, &job, out);
  if (!job.solution_csv.empty()) {
    std::ofstream f(job.solution_csv);
    if (!f) throw ConfigError("cannot write '" + job.solution_csv + "'");
    f << solution_csv(rep.solution);
  }

  int code = rep.success ? 0 : 2;
  if (opt.seed && rep.success) {
    const double worst = gradient_self_check(p, bc, *opt.seed);
    err << "self-check (seed " << *opt.seed << "): worst scaled mismatch " << format_double(worst) << "\n";
    if (!(worst <= 1e-6)) code = 2;
  }
  return code;
}

int cmd_conditions(JobConfig& job, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  const auto p = job_parameters(job);
  const auto bc = job_boundary(job);
  const auto format = resolve_format(opt, job, "json");
  std::vector<ConditionReport> reports = applicable_conditions(p, bc);
  if (reports.empty()) err << "no checker applies to this regime\n";
  if (format == "json") {
    json j = {{"conditions", json::array()}};
    for (const auto& r : reports) j["conditions"].push_back(to_json(r));
    emit(dump_json(j), opt, &job, out);
  } else {
    std::string s = "condition_id,holds,margin,details\n";
    for (const auto& r : reports) {
      std::string d;
      for (const auto& [k, v] : r.details) d += (d.empty() ? "" : ";") + k + "=" + format_double(v);
      s += to_string(r.id) + "," + (r.holds ? "true" : "false") + "," + format_double(r.margin) + "," + d + "\n";
    }
    emit(s, opt, &job, out);
  }
  return 0;
}

int cmd_enumerate(JobConfig& job, const CommandOptions& opt, std::ostream& out, std::ostream&) {
  const auto p = job_parameters(job);
  const auto bc = job_boundary(job);
  if (!bc.is_dirichlet()) throw ConfigError("enumerate needs Dirichlet data");
  const auto res = enumerate_solutions(p, bc, job.scan);
  json j;
  j["count"] = res.solutions.size();
  j["solutions"] = json::array();
  for (const auto& s : res.solutions) {
    j["solutions"].push_back({{"solution", s.solution.vector()},
                              {"shooting_parameter", s.shooting_parameter},
                              {"residual_inf", s.residual_inf}});
  }
  j["scan"] = {{"t_min", res.scan.t_min},
               {"t_max", res.scan.t_max},
               {"resolution", res.scan.resolution},
               {"grid_points", res.grid_points},
               {"brackets_found", res.brackets_found}};
  emit(dump_json(j), opt, &job, out);
  return 0;
}

struct SweepRow {
  Parameters p;
  double d0 = 0.0, dn = 0.0;
  bool success = false;
  double residual = std::numeric_limits<double>::quiet_NaN();
  double umin = std::numeric_limits<double>::quiet_NaN();
  double umax = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  std::string message;
};

int cmd_sweep(JobConfig& job, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  if (job.sweep.empty() || job.sweep.size() > 2) throw ConfigError("sweep needs one or two axes");
  std::size_t total = 1;
  for (const auto& ax : job.sweep) total *= ax.values.size();
  if (total > 10000) throw ConfigError("sweep grid exceeds 10^4 points");
  const auto base_p = job_parameters(job);
  const auto base_bc = job_boundary(job);
  for (const auto& ax : job.sweep) {
    if ((ax.name == "D0" || ax.name == "DN") && !base_bc.is_dirichlet()) {
      throw ConfigError("sweeping D0/DN needs Dirichlet data");
    }
  }

  std::vector<SweepRow> rows(total);
  auto evaluate = [&](std::size_t idx) {
    SweepRow& row = rows[idx];
    row.p = base_p;
    double d0 = base_bc.is_dirichlet() ? base_bc.dirichlet_data().d0 : 0.0;
    double dn = base_bc.is_dirichlet() ? base_bc.dirichlet_data().dn : 0.0;
    std::size_t rest = idx;
    for (auto it = job.sweep.rbegin(); it != job.sweep.rend(); ++it) {
      const double v = it->values[rest % it->values.size()];
      rest /= it->values.size();
      if (it->name == "a") row.p.a = v;
      else if (it->name == "b") row.p.b = v;
      else if (it->name == "c") row.p.c = v;
      else if (it->name == "D0") d0 = v;
      else dn = v;
    }
    row.d0 = d0;
    row.dn = dn;
    try {
      if (row.p.c == 0.0) throw HypothesisError("c must be nonzero");
      const auto bc = base_bc.is_dirichlet() ? BoundarySpec::dirichlet(d0, dn) : base_bc;
      const auto rep = run_solve(job, row.p, bc);
      row.success = rep.success;
      row.residual = rep.residual_inf;
      if (!rep.solution.empty()) {
        row.umin = rep.solution.min();
        row.umax = rep.solution.max();
      }
      row.iterations = rep.iterations;
      row.message = rep.message;
    } catch (const std::exception& e) {
      row.message = e.what();
    }
  };

  int workers = opt.workers > 0 ? opt.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) evaluate(i);
      });
    }
  }

  std::string s = "a,b,c,D0,DN,success,residual_inf,u_min,u_max,iterations\n";
  for (const auto& r : rows) {
    s += format_double(r.p.a) + "," + format_double(r.p.b) + "," + format_double(r.p.c) + "," +
         format_double(r.d0) + "," + format_double(r.dn) + "," + (r.success ? "1" : "0") + "," +
         format_double(r.residual) + "," + format_double(r.umin) + "," + format_double(r.umax) + "," +
         std::to_string(r.iterations) + "\n";
    if (!r.success) err << "b=" << format_double(r.p.b) << " c=" << format_double(r.p.c) << ": " << r.message << "\n";
  }
  emit(s, opt, &job, out);
  return 0;
}

int cmd_continuum(JobConfig& job, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  if (!job.continuous) throw ConfigError("continuum needs the continuous form (A, B, C, y0, y1)");
  const auto& cp = *job.continuous;
  const auto format = resolve_format(opt, job, "csv");
  const auto study = convergence_study(cp, job.ns, job.solver);
  const bool uniq = cp.A > 0.0 && cp.C < 0.0;
  const bool beta = cp.A < 0.0 && cp.C < 0.0 && cp.B > 0.0;

  auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  if (format == "csv") {
    std::string s = "N,sup_diff,ratio,scaled_uniqueness_margin\n";
    for (const auto& r : study.rows) {
      s += std::to_string(r.n) + "," + cell(r.sup_diff) + "," + cell(r.ratio) + "," +
           (uniq ? format_double(scaled_uniqueness_margin(cp, r.n)) : std::string()) + "\n";
    }
    emit(s, opt, &job, out);
  } else {
    json j;
    j["rows"] = json::array();
    for (const auto& r : study.rows) {
      json row = {{"N", r.n}, {"sup_diff", nullptr}, {"ratio", nullptr}};
      if (r.sup_diff) row["sup_diff"] = *r.sup_diff;
      if (r.ratio) row["ratio"] = *r.ratio;
      if (uniq) row["scaled_uniqueness_margin"] = scaled_uniqueness_margin(cp, r.n);
      j["rows"].push_back(row);
    }
    if (uniq) j["limiting_uniqueness_margin"] = limiting_uniqueness_margin(cp);
    if (beta) j["beta_cond_failure_n"] = beta_cond_failure_n(cp);
    emit(dump_json(j), opt, &job, out);
  }
  if (uniq) err << "limiting uniqueness margin: " << format_double(limiting_uniqueness_margin(cp)) << "\n";
  if (beta) err << "beta-cond fails for N >= " << beta_cond_failure_n(cp) << "\n";
  if (!study.ok()) {
    err << "error: " << study.message << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run_command(Command cmd, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    auto job = load_config(opt.config_path);
    if (opt.tol) {
      job.solver.tol_residual = *opt.tol;
      job.solver.validate();
    }
    switch (cmd) {
      case Command::solve: return cmd_solve(job, opt, out, err);
      case Command::conditions: return cmd_conditions(job, opt, out, err);
      case Command::enumerate: return cmd_enumerate(job, opt, out, err);
      case Command::sweep: return cmd_sweep(job, opt, out, err);
      case Command::continuum: return cmd_continuum(job, opt, out, err);
    }
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid config: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace ep2
