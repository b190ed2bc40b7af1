#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ep2/jobs.hpp"

using namespace ep2;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string write_config(const json& j) {
  static int counter = 0;
  const auto path = std::filesystem::temp_directory_path() /
                    ("ep2_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

Run run(Command cmd, const json& cfg, std::string format = "", int workers = 0) {
  CommandOptions opt;
  opt.config_path = write_config(cfg);
  opt.format = std::move(format);
  opt.workers = workers;
  std::ostringstream out, err;
  const int code = run_command(cmd, opt, out, err);
  std::filesystem::remove(opt.config_path);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("solve reports") {
  const json cfg = {{"a", 1}, {"b", 0}, {"c", -1}, {"N", 2}, {"dirichlet", {1, 1}}};
  const auto csv = run(Command::solve, cfg, "csv");
  CHECK(csv.code == 0);
  CHECK(lines(csv.out) == std::vector<std::string>{"x,u", "0,1", "1,1", "2,1"});

  const auto js = run(Command::solve, cfg, "json");
  REQUIRE(js.code == 0);
  const auto j = json::parse(js.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  CHECK(keys == std::vector<std::string>{"bounds", "conditions", "iterations", "method", "residual_inf", "solution"});

  CHECK(run(Command::solve, {{"a", 1}, {"b", 0}, {"c", 0}, {"N", 2}, {"dirichlet", {1, 1}}}).code == 1);
  CHECK(run(Command::solve, {{"a", 1}, {"b", 0}, {"c", -1}, {"N", 2}}).code == 1);
  CHECK(run(Command::solve, {{"a", 1}, {"c", -1}, {"N", 2}, {"dirichlet", {1, 1}}, {"bogus", 1}}).code == 1);
  CHECK(run(Command::solve, {{"a", -1}, {"b", 0}, {"c", 1}, {"N", 4}, {"dirichlet", {0, 0}}, {"method", "homotopy"}})
            .code == 0);
  CommandOptions missing;
  missing.config_path = "/nonexistent/ep2.json";
  std::ostringstream o, e;
  CHECK(run_command(Command::solve, missing, o, e) == 1);
}

TEST_CASE("JSON round trip") {
  const json cfg = {{"a", 1.3}, {"b", -0.7}, {"c", -2.1}, {"N", 12}, {"dirichlet", {0.4, 1.7}}};
  const auto r = run(Command::solve, cfg, "json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const auto values = j["solution"].get<std::vector<double>>();
  REQUIRE(values.size() == 13);
  auto u = GridFunction::constant(12, 0.0);
  for (int x = 0; x <= 12; ++x) u[x] = values[x];
  const double again = residual_inf(Parameters{1.3, -0.7, -2.1, 12}, BoundarySpec::dirichlet(0.4, 1.7), u);
  CHECK(std::abs(again - j["residual_inf"].get<double>()) <= 1e-12);

  const auto csv = run(Command::solve, cfg, "csv");
  const auto rows = lines(csv.out);
  REQUIRE(rows.size() == 14);
  for (int x = 0; x <= 12; ++x) CHECK(rows[x + 1].substr(0, rows[x + 1].find(',')) == std::to_string(x));

  CHECK(dump_json(json{{"v", 0.1}}).find("0.10000000000000001") != std::string::npos);
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("conditions and enumerate") {
  const auto c = run(Command::conditions, {{"a", 1}, {"b", 0}, {"c", -4}, {"N", 4}, {"dirichlet", {1, 1}}}, "json");
  REQUIRE(c.code == 0);
  const auto j = json::parse(c.out)["conditions"];
  REQUIRE(j.is_array());
  CHECK(j[0]["condition_id"] == "uniq_dirichlet");
  CHECK(j[0]["margin"].get<double>() == doctest::Approx(3.1953).epsilon(1e-4));

  const auto e = run(Command::enumerate, {{"a", 1}, {"b", 0}, {"c", -1}, {"N", 4}, {"dirichlet", {1, 1}}});
  REQUIRE(e.code == 0);
  const auto ej = json::parse(e.out);
  CHECK(ej["count"].get<int>() == static_cast<int>(ej["solutions"].size()));
  CHECK(ej["count"].get<int>() >= 1);
  CHECK(run(Command::enumerate, {{"a", 1}, {"b", 0}, {"c", -1}, {"N", 9}, {"dirichlet", {1, 1}}}).code == 1);
}

TEST_CASE("sweep") {
  json base = {{"a", -1}, {"b", 3}, {"c", -1}, {"N", 4}, {"dirichlet", {0.5, 0.5}}};
  json single = base;
  single["sweep"] = {{"axes", {{{"name", "b"}, {"values", {3.0}}}}}};
  const auto sw = run(Command::sweep, single);
  REQUIRE(sw.code == 0);
  const auto rows = lines(sw.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "a,b,c,D0,DN,success,residual_inf,u_min,u_max,iterations");

  const auto solved = json::parse(run(Command::solve, base, "json").out);
  std::vector<std::string> cells;
  std::istringstream in(rows[1]);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  REQUIRE(cells.size() == 10);
  CHECK(cells[5] == "1");
  CHECK(std::stod(cells[6]) == solved["residual_inf"].get<double>());
  CHECK(std::stoi(cells[9]) == solved["iterations"].get<int>());

  json grid = base;
  grid["sweep"] = {{"axes", {{{"name", "b"}, {"min", 0.5}, {"max", 3.0}, {"points", 11}},
                             {{"name", "c"}, {"min", -2.0}, {"max", -0.2}, {"points", 7}}}}};
  const auto one = run(Command::sweep, grid, "", 1);
  const auto many = run(Command::sweep, grid, "", 8);
  CHECK(one.code == 0);
  CHECK(one.out == many.out);
  CHECK(lines(one.out).size() == 78);

  json huge = base;
  huge["sweep"] = {{"axes", {{{"name", "b"}, {"min", 0.0}, {"max", 1.0}, {"points", 200}},
                             {{"name", "c"}, {"min", -2.0}, {"max", -1.0}, {"points", 200}}}}};
  CHECK(run(Command::sweep, huge).code == 1);
}

TEST_CASE("continuum") {
  const auto flat = run(Command::continuum, {{"A", 1}, {"B", 0}, {"C", -1}, {"y0", 1}, {"y1", 1}, {"Ns", {4, 8, 16}}},
                        "csv");
  REQUIRE(flat.code == 0);
  const auto rows = lines(flat.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "N,sup_diff,ratio,scaled_uniqueness_margin");
  const auto r = run(Command::continuum, {{"A", -1}, {"B", 2}, {"C", -1}, {"y0", 0.5}, {"y1", 0.5}, {"Ns", {4, 8}}});
  CHECK(r.code == 2);
}

TEST_CASE("gradient self check") {
  CHECK(gradient_self_check(Parameters{1, 0.5, -1, 6}, BoundarySpec::dirichlet(1, 2), 7) <= 1e-6);
  CHECK(gradient_self_check(Parameters{1, 0.5, -1, 6},
                            BoundarySpec::robin(RobinFunction::affine(1, -1), RobinFunction::affine(-1, 1)), 7) <= 1e-6);
}
