#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <set>

#include "gnmawpp/dyadic.h"
#include "gnmawpp/errors.h"
#include "gnmawpp/walk.h"

using namespace gnmawpp;

namespace {

mpq_class Q(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

// Independent oracle: rebuild the pattern table from the stated rule and run
// every one of the 2^S bit strings through the oracle's public multiply.
std::map<ElementCode, mpz_class> enumerate_walks(const GroupOracle &g, const std::vector<ElementCode> &gens,
                                                 unsigned steps) {
  std::size_t k = gens.size();
  unsigned c = 0;
  while ((std::size_t{1} << c) < 2 * k + 2) ++c;
  std::vector<ElementCode> table;
  for (auto x : gens) table.push_back(x);
  for (auto x : gens) table.push_back(g.invert(x));
  while (table.size() < (std::size_t{1} << c)) table.push_back(g.identity());
  std::map<ElementCode, mpz_class> counts;
  const std::uint64_t total = std::uint64_t{1} << (c * steps);
  for (std::uint64_t z = 0; z < total; ++z) {
    ElementCode at = g.identity();
    for (unsigned i = 0; i < steps; ++i) at = g.multiply(at, table[(z >> (i * c)) & ((1u << c) - 1)]);
    counts[at] += 1;
  }
  return counts;
}

std::map<ElementCode, mpz_class> nonzero(const GammaTable &t) {
  std::map<ElementCode, mpz_class> out;
  for (const auto &[g, c] : t.counts) {
    if (c != 0) out.emplace(g, c);
  }
  return out;
}

// Longest shortest path from the identity in the Cayley graph.
unsigned cayley_eccentricity(const GroupOracle &g, const std::vector<ElementCode> &gens) {
  std::map<ElementCode, unsigned> depth{{g.identity(), 0}};
  std::deque<ElementCode> q{g.identity()};
  unsigned worst = 0;
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (auto s : gens) {
      for (auto y : {g.multiply(x, s), g.multiply(x, g.invert(s))}) {
        if (depth.emplace(y, depth[x] + 1).second) {
          worst = std::max(worst, depth[y]);
          q.push_back(y);
        }
      }
    }
  }
  return worst;
}

struct Case {
  std::string group;
  std::vector<std::string> gens;
};

const std::vector<Case> kSmallCases = {
    {"cyclic(4)", {"2"}},
    {"cyclic(3)", {"1"}},
    {"cyclic(8)", {"1"}},
    {"cyclic(6)", {"2", "3"}},
    {"symmetric(3)", {"(123)"}},
    {"symmetric(3)", {"(12)", "(123)"}},
    {"dihedral(4)", {"r1"}},
    {"dihedral(4)", {"r1", "s"}},
    {"product(cyclic(2), cyclic(2))", {"[1, 1]"}},
    {"product(cyclic(2), cyclic(2))", {"[1, 0]", "[0, 1]", "[1, 1]"}},
};

std::vector<ElementCode> parse_all(const GroupOracle &g, const std::vector<std::string> &texts) {
  std::vector<ElementCode> out;
  for (const auto &t : texts) out.push_back(g.parse_element(t));
  return out;
}

}  // namespace

TEST(OptionTable, PaddingRule) {
  CyclicGroup z5(5);
  std::vector<ElementCode> one{z5.code(1)};
  auto t1 = build_option_table(z5, one);
  EXPECT_EQ(t1.bits_per_step, 2u);
  ASSERT_EQ(t1.option_table.size(), 4u);
  EXPECT_EQ(t1.option_table[0].kind, WalkAction::Kind::kGenerator);
  EXPECT_EQ(t1.option_table[0].element, z5.code(1));
  EXPECT_EQ(t1.option_table[1].kind, WalkAction::Kind::kInverse);
  EXPECT_EQ(t1.option_table[1].element, z5.code(4));
  EXPECT_EQ(t1.option_table[2].kind, WalkAction::Kind::kIdentity);
  EXPECT_EQ(t1.option_table[3].kind, WalkAction::Kind::kIdentity);
  EXPECT_EQ(t1.steps, 0u);

  std::vector<ElementCode> two{z5.code(1), z5.code(2)};
  auto t2 = build_option_table(z5, two);
  EXPECT_EQ(t2.bits_per_step, 3u);
  EXPECT_EQ(std::count_if(t2.option_table.begin(), t2.option_table.end(),
                          [](const WalkAction &a) { return a.kind == WalkAction::Kind::kIdentity; }),
            4);
}

TEST(OptionTable, PaddingCounts) {
  CyclicGroup z7(7);
  auto identities = [](const WalkConfig &c) {
    return std::count_if(c.option_table.begin(), c.option_table.end(),
                         [](const WalkAction &a) { return a.kind == WalkAction::Kind::kIdentity; });
  };
  std::vector<ElementCode> k2{z7.code(1), z7.code(2)};
  std::vector<ElementCode> k3{z7.code(1), z7.code(2), z7.code(3)};
  auto c2 = build_option_table(z7, k2);
  auto c3 = build_option_table(z7, k3);
  EXPECT_EQ(c2.option_table.size(), 8u);
  EXPECT_EQ(c3.bits_per_step, 3u);
  EXPECT_EQ(c3.option_table.size(), 8u);
  EXPECT_EQ(identities(c3), 2);
  EXPECT_EQ(identities(c2), 4);
  EXPECT_EQ(c3.option_table[7].kind, WalkAction::Kind::kIdentity);
}

TEST(GammaExact, WorkedExamples) {
  CyclicGroup z4(4);
  std::vector<ElementCode> g2{z4.code(2)};
  auto t = gamma_exact(z4, g2, 1);
  EXPECT_EQ(t.N, 4);
  EXPECT_EQ(t.count(z4.code(0)), 2);
  EXPECT_EQ(t.count(z4.code(2)), 2);
  EXPECT_EQ(t.max_deviation, 0);
  EXPECT_EQ(nonzero(t), enumerate_walks(z4, g2, 1));

  CyclicGroup z3(3);
  std::vector<ElementCode> g1{z3.code(1)};
  auto u = gamma_exact(z3, g1, 1);
  EXPECT_EQ(u.N, 4);
  EXPECT_EQ(u.count(z3.code(0)), 2);
  EXPECT_EQ(u.count(z3.code(1)), 1);
  EXPECT_EQ(u.count(z3.code(2)), 1);
  EXPECT_EQ(u.max_deviation, Q(1, 6));
  EXPECT_EQ(nonzero(u), enumerate_walks(z3, g1, 1));

  auto v = gamma_exact(z3, g1, 2);
  EXPECT_EQ(v.count(z3.code(0)), 6);
  EXPECT_EQ(v.count(z3.code(1)), 5);
  EXPECT_EQ(v.count(z3.code(2)), 5);
  EXPECT_EQ(v.max_deviation, Q(1, 24));

  auto e = gamma_exact(z3, g1, 0);
  EXPECT_EQ(e.N, 1);
  EXPECT_EQ(nonzero(e), (std::map<ElementCode, mpz_class>{{z3.identity(), 1}}));
}

TEST(GammaExact, ZeroCountsAreKeptOverH) {
  CyclicGroup z8(8);
  std::vector<ElementCode> g{z8.code(1)};
  auto t = gamma_exact(z8, g, 1);
  EXPECT_EQ(t.counts.size(), 8u);
  EXPECT_EQ(t.count(z8.code(4)), 0);
  EXPECT_EQ(t.deviations.at(z8.code(4)), Q(-1, 8));
}

TEST(GammaExact, ClosureCap) {
  SymmetricGroup s4(4);
  std::vector<ElementCode> g{s4.parse_element("(12)"), s4.parse_element("(1234)")};
  EXPECT_THROW(gamma_exact(s4, g, 2, 5), ResourceLimitError);
}

// Exactness, conservation, support and zero-sum deviations on every small case.
TEST(GammaProperties, MatchesEnumerationAndInvariants) {
  for (const auto &c : kSmallCases) {
    auto g = make_group(c.group);
    auto gens = parse_all(*g, c.gens);
    auto h = closure(*g, gens);
    std::set<ElementCode> hs(h.begin(), h.end());
    const unsigned diameter = cayley_eccentricity(*g, gens);
    for (unsigned steps = 0; steps <= 3; ++steps) {
      SCOPED_TRACE(c.group + " steps " + std::to_string(steps));
      auto t = gamma_exact(*g, gens, steps);
      EXPECT_EQ(nonzero(t), enumerate_walks(*g, gens, steps));
      mpz_class total = 0;
      mpq_class dev_sum = 0;
      for (const auto &[e, n] : t.counts) {
        total += n;
        EXPECT_TRUE(hs.contains(e));
        if (steps >= diameter) EXPECT_GT(n, 0);
      }
      for (const auto &[e, d] : t.deviations) dev_sum += d;
      EXPECT_EQ(total, pow2(t.total_bits));
      EXPECT_EQ(total, t.N);
      EXPECT_EQ(dev_sum, 0);
      EXPECT_EQ(t.subgroup_order, h.size());
    }
  }
}

TEST(ChooseSteps, Examples) {
  CyclicGroup z4(4);
  std::vector<ElementCode> g2{z4.code(2)};
  auto a = choose_steps(z4, g2, Q(1, 32));
  EXPECT_EQ(a.config.steps, 1u);
  EXPECT_EQ(a.gamma.max_deviation, 0);

  CyclicGroup z3(3);
  std::vector<ElementCode> g1{z3.code(1)};
  EXPECT_EQ(choose_steps(z3, g1, Q(1, 5)).config.steps, 1u);
  auto c = choose_steps(z3, g1, Q(1, 8));
  EXPECT_GE(c.config.steps, 2u);
  EXPECT_EQ(c.config.steps, 2u);
  EXPECT_EQ(c.gamma.max_deviation, Q(1, 24));
}

TEST(ChooseSteps, StrictAndMinimal) {
  for (const auto &c : kSmallCases) {
    auto g = make_group(c.group);
    auto gens = parse_all(*g, c.gens);
    for (long den : {5L, 16L, 64L, 1000L}) {
      SCOPED_TRACE(c.group + " eps 1/" + std::to_string(den));
      auto eps = Q(1, den);
      auto choice = choose_steps(*g, gens, eps);
      EXPECT_LT(choice.gamma.max_deviation, eps);
      EXPECT_EQ(choice.gamma.total_bits, choice.config.total_bits());
      if (choice.config.steps > 0) {
        EXPECT_GE(gamma_exact(*g, gens, choice.config.steps - 1).max_deviation, eps);
      }
    }
  }
}

TEST(ChooseSteps, ExactBoundaryIsNotEnough) {
  // eps equal to the achieved deviation must be rejected (strict inequality).
  CyclicGroup z3(3);
  std::vector<ElementCode> g1{z3.code(1)};
  EXPECT_EQ(choose_steps(z3, g1, Q(1, 6)).config.steps, 2u);
}

TEST(ChooseSteps, CeilingAndBadEpsilon) {
  CyclicGroup z3(3);
  std::vector<ElementCode> g1{z3.code(1)};
  EXPECT_THROW(choose_steps(z3, g1, Q(1, 8), 1), NonConvergenceError);
  EXPECT_THROW(choose_steps(z3, g1, mpq_class(0)), std::invalid_argument);
}

TEST(MonteCarlo, AgreesWithExactProbabilities) {
  CyclicGroup z4(4);
  std::vector<ElementCode> g2{z4.code(2)};
  auto cfg = build_option_table(z4, g2);
  cfg.steps = 1;
  const std::uint64_t trials = 4096;
  auto freq = sample_monte_carlo(cfg, z4, 12345, trials);
  const double sd = std::sqrt(trials * 0.5 * 0.5);
  EXPECT_LE(std::abs(static_cast<double>(freq[z4.code(0)]) - trials / 2.0), 5 * sd);
  EXPECT_EQ(freq[z4.code(0)] + freq[z4.code(2)], trials);

  auto one = sample_monte_carlo(cfg, z4, 1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one.begin()->first == z4.code(0) || one.begin()->first == z4.code(2));

  EXPECT_EQ(sample_monte_carlo(cfg, z4, 99, 500), sample_monte_carlo(cfg, z4, 99, 500));
  EXPECT_THROW(sample_monte_carlo(cfg, z4, 1, 0), std::invalid_argument);
}

TEST(MonteCarlo, FiveSigmaOnLargerWalks) {
  for (const auto &c : kSmallCases) {
    auto g = make_group(c.group);
    auto gens = parse_all(*g, c.gens);
    auto cfg = build_option_table(*g, gens);
    cfg.steps = 3;
    auto t = gamma_exact(*g, gens, 3);
    const std::uint64_t trials = 4096;
    auto freq = sample_monte_carlo(cfg, *g, 2026, trials);
    for (const auto &[e, n] : t.counts) {
      double p = mpq_class(n, t.N).get_d();
      double sd = std::sqrt(trials * p * (1 - p));
      double obs = freq.contains(e) ? static_cast<double>(freq[e]) : 0.0;
      EXPECT_LE(std::abs(obs - p * trials), 5 * sd + 1e-9) << c.group;
    }
  }
}
