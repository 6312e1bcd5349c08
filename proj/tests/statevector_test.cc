#include <gtest/gtest.h>

#include <filesystem>

#include "gnmawpp/errors.h"
#include "gnmawpp/pipeline.h"
#include "gnmawpp/statevector.h"

using namespace gnmawpp;

namespace {

mpq_class Q(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

WalkConfig walk(const ProblemInstance &inst, unsigned steps) {
  auto cfg = build_option_table(*inst.oracle, inst.generators);
  cfg.steps = steps;
  return cfg;
}

ProblemInstance z4(unsigned target) {
  auto g = make_group("cyclic(4)");
  return ProblemInstance{g, {g->code(2)}, g->code(target), 2, std::nullopt, std::nullopt};
}

std::vector<std::string> fixture_paths() {
  std::vector<std::string> out;
  for (const auto &e : std::filesystem::directory_iterator("fixtures")) {
    if (e.path().extension() == ".inst" && e.path().stem() != "bad_order0") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(EnumerateBranches, Z4Example) {
  auto inst = z4(1);
  auto branches = enumerate_branches(walk(inst, 1), *inst.oracle);
  ASSERT_EQ(branches.size(), 4u);
  // Patterns 00 -> +2, 01 -> -2, 10 and 11 -> identity.
  std::vector<std::uint64_t> eta;
  for (const auto &b : branches) {
    eta.push_back(b.eta.bits);
    EXPECT_EQ(b.garbage, b.z);
  }
  EXPECT_EQ(eta, (std::vector<std::uint64_t>{2, 2, 0, 0}));

  auto none = enumerate_branches(walk(inst, 0), *inst.oracle);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0].eta, inst.oracle->identity());
}

TEST(EnumerateBranches, CountsMatchGammaAndCapIsEnforced) {
  auto s3 = make_group("symmetric(3)");
  std::vector<ElementCode> gens{s3->parse_element("(12)"), s3->parse_element("(123)")};
  auto cfg = build_option_table(*s3, gens);
  cfg.steps = 3;
  auto gamma = gamma_exact(*s3, gens, 3);
  std::map<ElementCode, mpz_class> counts;
  for (const auto &b : enumerate_branches(cfg, *s3)) {
    EXPECT_EQ(b.eta, cfg.endpoint(*s3, b.z));
    counts[b.eta] += 1;
  }
  for (const auto &[g, c] : gamma.counts) EXPECT_EQ(counts[g], c);

  cfg.steps = 5;  // S = 15
  EXPECT_THROW(enumerate_branches(cfg, *s3), ResourceLimitError);
  EXPECT_THROW(enumerate_branches(cfg, *s3, 40), std::invalid_argument);
}

TEST(SimulateFull, Examples) {
  auto yes = simulate_full_detailed(z4(1), walk(z4(1), 1));
  EXPECT_EQ(yes.report.p_post.to_rational(), Q(1, 4));
  EXPECT_EQ(yes.report.p_o1_joint.to_rational(), Q(3, 16));
  EXPECT_EQ(yes.report.p_o1_given, Q(3, 4));
  EXPECT_EQ(yes.pre_postselection_norm, Dyadic::one());

  auto id = simulate_full(z4(0), walk(z4(0), 1));
  EXPECT_TRUE(id.p_o1_joint.is_zero());

  auto g = make_group("cyclic(3)");
  ProblemInstance z3{g, {g->code(1)}, g->code(2), 3, std::nullopt, std::nullopt};
  auto r = simulate_full(z3, walk(z3, 1));
  EXPECT_EQ(r.p_post.to_rational(), Q(9, 64));
  EXPECT_EQ(r.p_o0_given, Q(121, 144));
  EXPECT_EQ(r.plus_norm, 22);
  EXPECT_EQ(r.minus_norm, 2);
  EXPECT_EQ(r.sum_gamma_sq, 6);
}

TEST(SimulateFull, PostselectedStateCarriesAncillaSplit) {
  auto res = simulate_full_detailed(z4(1), walk(z4(1), 1));
  EXPECT_EQ(res.postselected.squared_norm(), res.report.p_post);
  EXPECT_EQ(res.postselected.squared_norm_with_ancilla(0) + res.postselected.squared_norm_with_ancilla(1),
            res.report.p_post);
  for (const auto &[label, a] : res.postselected.amplitudes()) {
    EXPECT_EQ(label.ancilla == 0, label.first_qubit == 0 && label.second_qubit == 0);
    EXPECT_EQ(label.first_garbage, 0u);
  }
}

TEST(SimulateFull, GarbageOverlapIdentity) {
  auto s3 = make_group("symmetric(3)");
  ProblemInstance inst{s3, {s3->parse_element("(123)")}, s3->parse_element("(12)"), 3, std::nullopt,
                       std::nullopt};
  for (unsigned steps = 1; steps <= 4; ++steps) {
    auto cfg = walk(inst, steps);
    auto res = simulate_full_detailed(inst, cfg);
    auto gamma = gamma_exact(*s3, inst.generators, steps);
    EXPECT_EQ(res.pre_postselection_norm, Dyadic::one());
    for (const auto &[g, c] : gamma.counts) {
      if (c == 0) continue;
      mpq_class want(c, pow2(res.report.t_bits));
      want.canonicalize();
      EXPECT_EQ(res.garbage_overlap.at(g), want);
    }
  }
}

TEST(CompareReports, EqualAndMismatched) {
  auto inst = z4(1);
  auto cfg = walk(inst, 1);
  auto gamma = gamma_exact(*inst.oracle, inst.generators, 1);
  auto brute = simulate_full(inst, cfg);
  auto analytic = outcome_report(gamma, inst.target, *inst.oracle);
  auto same = compare_reports(analytic, brute);
  EXPECT_TRUE(same.all_equal);
  EXPECT_TRUE(same.mismatches.empty());

  // Garbage width off by one: the postselection probability is off by 4.
  auto shifted = outcome_report(gamma, inst.target, *inst.oracle, cfg.total_bits() + 1);
  auto diff = compare_reports(shifted, brute);
  EXPECT_FALSE(diff.all_equal);
  bool saw_post = false;
  for (const auto &m : diff.mismatches) {
    if (m.field == "p_post") {
      saw_post = true;
      EXPECT_EQ(m.ratio, Q(1, 4));
    }
  }
  EXPECT_TRUE(saw_post);

  // A corrupted table is caught on sum_gamma_sq.
  auto counts = gamma.counts;
  counts[inst.oracle->code(0)] -= 1;
  counts[inst.oracle->code(2)] += 1;
  auto fuzzed = outcome_report(make_gamma_table(counts, gamma.total_bits), inst.target, *inst.oracle);
  auto bad = compare_reports(fuzzed, brute);
  EXPECT_FALSE(bad.all_equal);
  EXPECT_TRUE(std::any_of(bad.mismatches.begin(), bad.mismatches.end(),
                          [](const FieldMismatch &m) { return m.field == "sum_gamma_sq"; }));
}

// Brute force equals the closed forms on every fixture and every walk with S <= 10.
TEST(StatevectorProperties, BruteEqualsAnalyticOnFixtures) {
  for (const auto &path : fixture_paths()) {
    auto inst = parse_instance(path);
    auto cfg = build_option_table(*inst.oracle, inst.generators);
    for (unsigned steps = 0; steps * cfg.bits_per_step <= 10; ++steps) {
      SCOPED_TRACE(path + " steps " + std::to_string(steps));
      cfg.steps = steps;
      auto brute = simulate_full_detailed(inst, cfg, 10);
      auto analytic = outcome_report(gamma_exact(*inst.oracle, inst.generators, steps), inst.target, *inst.oracle);
      auto cmp = compare_reports(analytic, brute.report);
      EXPECT_TRUE(cmp.all_equal);
      for (const auto &m : cmp.mismatches) ADD_FAILURE() << m.field << ": " << m.analytic << " vs " << m.brute;
      EXPECT_EQ(brute.pre_postselection_norm, Dyadic::one());
    }
  }
}
