// gnm-awpp: run the postselected non-membership protocol on an instance file
// and print its exact probabilities and counting certificate.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "gnmawpp/errors.h"
#include "gnmawpp/pipeline.h"

int main(int argc, char **argv) {
  using namespace gnmawpp;

  CLI::App app{"Exact simulator and certificate checker for postselected group non-membership"};
  RunRequest request;
  std::string epsilon_text;
  std::optional<unsigned> steps;
  std::optional<std::uint64_t> seed;

  const std::map<std::string, RunMode> modes{
      {"analytic", RunMode::kAnalytic}, {"brute", RunMode::kBrute}, {"both", RunMode::kBoth}};
  const std::map<std::string, ReportFormat> formats{{"text", ReportFormat::kText},
                                                    {"structured", ReportFormat::kStructured}};
  const std::map<std::string, ValidationMode> validations{{"trust", ValidationMode::kTrust},
                                                          {"check", ValidationMode::kCheck}};

  app.add_option("--instance", request.instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  app.add_option("--mode", request.mode, "analytic | brute | both")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--epsilon", epsilon_text, "Uniformity target, e.g. 1/64 or 2^-6 (default 2^-(n+3))");
  app.add_option("--steps", steps, "Fixed walk length instead of the shortest one meeting epsilon");
  app.add_option("--brute-cap", request.brute_cap, "Largest S (random bits per copy) brute force will enumerate")
      ->check(CLI::Range(0u, kMaxEnumerationCap));
  app.add_option("--format", request.format, "text | structured")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--validate", request.validation, "trust | check")
      ->transform(CLI::CheckedTransformer(validations, CLI::ignore_case));
  app.add_option("--seed", seed, "Run the Monte-Carlo sampler cross-check with this seed");
  app.add_option("--trials", request.monte_carlo_trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--step-ceiling", request.step_ceiling, "Give up the step search after this many steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return static_cast<int>(ExitStatus::kUsageError);
  }

  try {
    if (!epsilon_text.empty()) request.epsilon = parse_rational(epsilon_text);
    request.steps = steps;
    request.seed = seed;
    RunReport report = run_pipeline(request);
    std::cout << emit_report(report, request.format);
    return static_cast<int>(report.status);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::kUsageError);
  }
}
