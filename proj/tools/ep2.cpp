#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "ep2/jobs.hpp"

namespace {

void configure_logging() {
  const char* env = std::getenv("EP2_LOG_LEVEL");
  const std::string level = env ? env : "error";
  if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else if (level == "info") spdlog::set_level(spdlog::level::info);
  else spdlog::set_level(spdlog::level::err);
  if (level != "error" && level != "info" && level != "debug") {
    spdlog::error("EP2_LOG_LEVEL must be error, info or debug (got '{}')", level);
  }
  spdlog::set_pattern("[%l] %v");
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Positive solutions of the discrete Ermakov-Painleve II boundary value problem"};
  app.require_subcommand(1);

  ep2::CommandOptions opt;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  for (const char* name : {"solve", "conditions", "enumerate", "sweep", "continuum"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON job file")->required();
    sub->add_option("--out", opt.out_path, "output file (default: stdout)");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", opt.workers, "sweep worker threads")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "run the randomized gradient self-check with this seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  opt.tol = tol;
  opt.seed = seed;

  const auto* sub = app.get_subcommands().front();
  spdlog::info("{} --config {}", sub->get_name(), opt.config_path);
  const int code = ep2::run_command(ep2::command_from_string(sub->get_name()), opt, std::cout, std::cerr);
  spdlog::debug("exit code {}", code);
  return code;
}
