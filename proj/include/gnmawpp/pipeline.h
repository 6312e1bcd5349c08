#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "gnmawpp/analytics.h"
#include "gnmawpp/certificate.h"
#include "gnmawpp/group.h"
#include "gnmawpp/statevector.h"
#include "gnmawpp/walk.h"

namespace gnmawpp {

// ---------------------------------------------------------------------------
// Instance files
//
//   # comment
//   group      = symmetric(3)        (or: group = symmetric + params = 3)
//   generators = [(123)]
//   target     = (12)
//   order      = 3
//   epsilon    = 1/64                optional, default 2^-(n+3)
//   steps      = 4                   optional, default: shortest walk
//
// Lists are bracketed and comma separated at bracket depth zero.

/// "p/q", "p", or "2^-k".
mpq_class parse_rational(std::string_view text);

ProblemInstance parse_instance_text(std::string_view text, std::string_view source = "<instance>");
ProblemInstance parse_instance(const std::string &path);

// ---------------------------------------------------------------------------
// Pipeline

enum class RunMode { kAnalytic, kBrute, kBoth };
enum class ReportFormat { kText, kStructured };

std::string_view run_mode_name(RunMode mode);

struct RunRequest {
  std::string instance_path;
  /// Used instead of instance_path when set.
  std::optional<ProblemInstance> instance;
  RunMode mode = RunMode::kAnalytic;
  std::optional<mpq_class> epsilon;
  std::optional<unsigned> steps;
  unsigned brute_cap = kDefaultEnumerationCap;
  ReportFormat format = ReportFormat::kText;
  ValidationMode validation = ValidationMode::kTrust;
  /// Runs the Monte-Carlo sampler cross-check when set.
  std::optional<std::uint64_t> seed;
  std::uint64_t monte_carlo_trials = 4096;
  unsigned step_ceiling = kDefaultStepCeiling;
};

/// Process exit codes.
enum class ExitStatus : int {
  kDecided = 0,
  kUsageError = 2,
  kInvalidCertificate = 3,
  kContradictsGroundTruth = 4,
  kCrossCheckMismatch = 5,
};

struct InstanceEcho {
  std::string group;
  std::vector<std::string> generators;
  std::string target;
  std::uint64_t claimed_order = 0;
  unsigned n = 0;
  mpq_class epsilon;
  bool epsilon_is_default = true;

  bool operator==(const InstanceEcho &) const = default;
};

struct GammaSummary {
  unsigned steps = 0;
  unsigned bits_per_step = 0;
  unsigned long total_bits = 0;
  bool steps_searched = true;
  std::uint64_t subgroup_order = 0;  // from the closure
  mpq_class max_deviation;
  bool deviation_below_epsilon = false;
  std::vector<std::pair<std::string, mpz_class>> counts;

  bool operator==(const GammaSummary &) const = default;
};

struct GroundTruth {
  std::uint64_t true_order = 0;
  bool order_matches = false;
  bool target_is_member = false;
  bool decision_consistent = false;

  bool operator==(const GroundTruth &) const = default;
};

struct MonteCarloSummary {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  /// Largest |observed - expected| / binomial standard deviation over H.
  double max_standard_score = 0;
  bool within_five_sigma = false;

  bool operator==(const MonteCarloSummary &) const = default;
};

struct Timings {
  double sampler_ms = 0;
  double analytic_ms = 0;
  double brute_ms = 0;
};

struct RunReport {
  RunMode mode = RunMode::kAnalytic;
  InstanceEcho instance;
  GammaSummary gamma;
  std::optional<ProbabilityReport> analytic;
  std::optional<ProbabilityReport> brute;
  std::optional<ComparisonResult> comparison;
  Certificate certificate;
  std::optional<GroundTruth> ground_truth;
  std::optional<MonteCarloSummary> monte_carlo;
  std::vector<std::string> warnings;
  ExitStatus status = ExitStatus::kDecided;
  /// Wall-clock only; not part of the structured document.
  Timings timings;

  /// Equality on every exact field (timings excluded).
  friend bool operator==(const RunReport &a, const RunReport &b);
};

RunReport run_pipeline(const RunRequest &request);

/// Text: human-readable tables. Structured: JSON, schema in docs/report-schema.md.
std::string emit_report(const RunReport &report, ReportFormat format);

/// Inverse of emit_report(_, kStructured).
RunReport parse_report(std::string_view structured);

}  // namespace gnmawpp
