// sasaki-verify: run identity suites on a catalogue model and print a report.
//
// Exit codes: 0 all non-skipped checks pass, 1 a check failed or could not be
// evaluated, 2 usage error (bad flag, unknown model or suite).

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sasaki/sasaki.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

void parse_tolerances(const std::vector<std::string>& items, sasaki::SamplePlan& plan) {
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CLI::ValidationError("--tol", "expected <suite>=<value>, got '" + item + "'");
    }
    const std::string suite = item.substr(0, eq);
    if (!sasaki::is_suite(suite) && suite != "convention") {
      throw CLI::ValidationError("--tol", "unknown suite '" + suite + "'");
    }
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double tol = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || !(tol > 0.0)) {
      throw CLI::ValidationError("--tol", "tolerance must be a positive number, got '" + value + "'");
    }
    plan.tolerances[suite] = tol;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Sasakian and *-Ricci identities", "sasaki-verify"};

  sasaki::SuiteRequest req;
  sasaki::SamplePlan plan;
  std::vector<std::string> suites{"all"};
  std::vector<std::string> tolerances;
  std::string format = "json";

  app.set_config("--config", "", "Key-value file with defaults for any flag (flags take precedence)");
  app.add_option("--model", req.model, "r2n1, sphere, or <base>-deformed:a=<value>")->capture_default_str();
  app.add_option("--n", req.n, "Dimension parameter, dim = 2n+1")->check(CLI::Range(1, 3))->capture_default_str();
  app.add_option("--suite", suites, "Comma-separated suites, or 'all'")->delimiter(',')->capture_default_str();
  app.add_option("--points", plan.point_count, "Sample points per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--vectors-per-point", plan.vectors_per_point, "Random vector tuples per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", plan.seed, "Seed of the SplitMix64 sampler")->capture_default_str();
  app.add_option("--tol", tolerances, "Tolerance override <suite>=<value>, repeatable")->take_all();
  app.add_option("--fd-h1", plan.fd.h_first, "Finite-difference step, first derivatives")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--fd-h2", plan.fd.h_second, "Finite-difference step, second derivatives")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--fd-h3", plan.fd.h_third, "Finite-difference step, third derivatives")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--fd-metric", req.fd_metric, "Differentiate every field by finite differences");
  app.add_option("--deform-a", req.deform_a, "Parameter a of the deformation suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "markdown"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    parse_tolerances(tolerances, plan);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kExitUsage;
  }

  req.suites = split_list(suites);
  if (req.suites.size() == 1 && req.suites.front() == "all") req.suites = sasaki::suite_names();

  std::vector<sasaki::ResidualReport> reports;
  try {
    reports = sasaki::run_suites(req, plan);
  } catch (const sasaki::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.code() == sasaki::ErrorCode::unknown_name || e.code() == sasaki::ErrorCode::invalid_argument;
    return usage ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }

  const auto fmt = format == "json" ? sasaki::ReportFormat::json : sasaki::ReportFormat::markdown;
  std::cout << sasaki::emit_report(reports, fmt, {req.model, req.n, plan.seed});
  return sasaki::all_pass(reports) ? 0 : kExitFail;
}
