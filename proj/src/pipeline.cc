#include <chrono>
#include <cmath>
#include <limits>

#include "gnmawpp/errors.h"
#include "gnmawpp/pipeline.h"

namespace gnmawpp {

std::string_view run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::kAnalytic:
      return "analytic";
    case RunMode::kBrute:
      return "brute";
    case RunMode::kBoth:
      return "both";
  }
  return "analytic";
}

bool operator==(const RunReport &a, const RunReport &b) {
  return a.mode == b.mode && a.instance == b.instance && a.gamma == b.gamma && a.analytic == b.analytic &&
         a.brute == b.brute && a.comparison == b.comparison &&
         a.certificate == b.certificate && a.ground_truth == b.ground_truth && a.monte_carlo == b.monte_carlo &&
         a.warnings == b.warnings && a.status == b.status;
}

namespace {

using Clock = std::chrono::steady_clock;

// Score for an impossible observation (zero-variance miss or endpoint off H).
constexpr double kUnboundedScore = std::numeric_limits<double>::max();

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

MonteCarloSummary monte_carlo_check(const WalkConfig &config, const GroupOracle &oracle, const GammaTable &gamma,
                                    std::uint64_t seed, std::uint64_t trials) {
  auto freq = sample_monte_carlo(config, oracle, seed, trials);
  MonteCarloSummary mc;
  mc.seed = seed;
  mc.trials = trials;
  mc.within_five_sigma = true;
  for (const auto &[g, count] : gamma.counts) {
    const double p = mpq_class(count, gamma.N).get_d();
    const double expected = p * static_cast<double>(trials);
    const double sd = std::sqrt(static_cast<double>(trials) * p * (1 - p));
    auto it = freq.find(g);
    const double observed = it == freq.end() ? 0.0 : static_cast<double>(it->second);
    double score = 0;
    if (sd > 0) {
      score = std::abs(observed - expected) / sd;
    } else if (observed != expected) {
      score = kUnboundedScore;
    }
    mc.max_standard_score = std::max(mc.max_standard_score, score);
  }
  for (const auto &[g, count] : freq) {
    if (!gamma.counts.contains(g)) mc.max_standard_score = kUnboundedScore;  // endpoint outside H
  }
  mc.within_five_sigma = mc.max_standard_score <= 5.0;
  return mc;
}

}  // namespace

RunReport run_pipeline(const RunRequest &request) {
  ProblemInstance inst = request.instance ? *request.instance : parse_instance(request.instance_path);
  if (request.epsilon) inst.epsilon = *request.epsilon;
  if (request.steps) inst.steps = *request.steps;

  const ValidationResult validation = validate_instance(inst, request.validation);
  const GroupOracle &oracle = *inst.oracle;
  const mpq_class epsilon = inst.effective_epsilon();

  RunReport report;
  report.mode = request.mode;
  report.instance.group = oracle.name();
  for (auto g : inst.generators) report.instance.generators.push_back(oracle.format_element(g));
  report.instance.target = oracle.format_element(inst.target);
  report.instance.claimed_order = inst.claimed_order;
  report.instance.n = oracle.width();
  report.instance.epsilon = epsilon;
  report.instance.epsilon_is_default = !inst.epsilon.has_value();

  // Sampler.
  auto start = Clock::now();
  WalkConfig config;
  GammaTable gamma;
  if (inst.steps) {
    config = build_option_table(oracle, inst.generators);
    config.steps = *inst.steps;
    gamma = gamma_exact(oracle, inst.generators, *inst.steps);
  } else {
    auto choice = choose_steps(oracle, inst.generators, epsilon, request.step_ceiling);
    config = std::move(choice.config);
    gamma = std::move(choice.gamma);
  }
  report.timings.sampler_ms = ms_since(start);
  report.gamma.steps = config.steps;
  report.gamma.bits_per_step = config.bits_per_step;
  report.gamma.total_bits = config.total_bits();
  report.gamma.steps_searched = !inst.steps.has_value();
  report.gamma.subgroup_order = gamma.subgroup_order;
  report.gamma.max_deviation = gamma.max_deviation;
  report.gamma.deviation_below_epsilon = gamma.max_deviation < epsilon;
  for (const auto &[g, c] : gamma.counts) report.gamma.counts.emplace_back(oracle.format_element(g), c);

  if (request.mode != RunMode::kBrute) {
    start = Clock::now();
    report.analytic = outcome_report(gamma, inst.target, oracle);
    report.timings.analytic_ms = ms_since(start);
  }
  if (request.mode != RunMode::kAnalytic) {
    start = Clock::now();
    report.brute = simulate_full(inst, config, request.brute_cap);
    report.timings.brute_ms = ms_since(start);
  }
  if (report.analytic && report.brute) report.comparison = compare_reports(*report.analytic, *report.brute);

  const ProbabilityReport &primary = report.analytic ? *report.analytic : *report.brute;
  const GapNumerator gap = extract_gap_numerator(primary.p_o1_joint);
  report.certificate = build_certificate(gap.g_w, gap.q, primary.s_bits, primary.t_bits, inst.claimed_order,
                                         oracle.width(), epsilon);
  const Certificate &cert = report.certificate;

  if (validation.mode == ValidationMode::kCheck) {
    GroundTruth truth;
    truth.true_order = *validation.true_order;
    truth.order_matches = *validation.order_matches;
    truth.target_is_member = *validation.target_is_member;
    truth.decision_consistent = (cert.decision == Decision::kNonMember && !truth.target_is_member) ||
                                (cert.decision == Decision::kMember && truth.target_is_member);
    report.ground_truth = truth;
  }
  if (request.seed) {
    report.monte_carlo = monte_carlo_check(config, oracle, gamma, *request.seed, request.monte_carlo_trials);
  }

  // Soundness warnings, most basic assumption first.
  auto &w = report.warnings;
  if (!cert.guard.passes) {
    w.push_back("epsilon too large: threshold guard " + rational_string(cert.guard.value) +
                " does not exceed 2/3, so the certificate cannot separate the two cases");
  }
  if (!report.gamma.deviation_below_epsilon) {
    w.push_back("sampler uniformity not established: max deviation " + rational_string(gamma.max_deviation) +
                " is not below epsilon " + rational_string(epsilon));
  }
  if (!cert.f_integral) {
    w.push_back("F = " + rational_string(cert.F) + " is not an integer for this epsilon; kept as an exact rational");
  }
  if (report.ground_truth && !report.ground_truth->order_matches) {
    w.push_back("claimed subgroup order " + std::to_string(inst.claimed_order) + " differs from the true order " +
                std::to_string(report.ground_truth->true_order));
  }
  if (cert.decision == Decision::kInvalid && cert.guard.passes) {
    w.push_back("ratio " + rational_string(cert.ratio) +
                " lies outside [0, 1/3] and [2/3, 1]: the claimed subgroup order or the epsilon-uniformity "
                "assumption is violated");
  }
  if (report.ground_truth && cert.decision != Decision::kInvalid && !report.ground_truth->decision_consistent) {
    w.push_back(std::string("decision ") + std::string(decision_name(cert.decision)) +
                " contradicts ground truth: target is " +
                (report.ground_truth->target_is_member ? "in" : "not in") + " the subgroup");
  }
  if (report.comparison && !report.comparison->all_equal) {
    w.push_back("brute-force and analytic probabilities disagree");
  }
  if (report.monte_carlo && !report.monte_carlo->within_five_sigma) {
    w.push_back("Monte-Carlo frequencies deviate from exact walk probabilities by more than 5 sigma");
  }

  if (report.comparison && !report.comparison->all_equal) {
    report.status = ExitStatus::kCrossCheckMismatch;
  } else if (cert.decision == Decision::kInvalid) {
    report.status = ExitStatus::kInvalidCertificate;
  } else if (report.ground_truth && !report.ground_truth->decision_consistent) {
    report.status = ExitStatus::kContradictsGroundTruth;
  } else {
    report.status = ExitStatus::kDecided;
  }
  return report;
}

}  // namespace gnmawpp
