#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "gnmawpp/group.h"

namespace gnmawpp {

/// What one c-bit pattern does to the walker.
struct WalkAction {
  enum class Kind { kGenerator, kInverse, kIdentity };
  Kind kind = Kind::kIdentity;
  std::size_t generator = 0;  // meaningful for kGenerator / kInverse
  ElementCode element;        // the element right-multiplied onto the walker

  bool operator==(const WalkAction &) const = default;
};

/// Lazy random walk on the Cayley graph of <g_1..g_k>. Each step reads
/// bits_per_step random bits and right-multiplies by option_table[pattern].
/// Step i reads bits [i*c, (i+1)*c) of z, least significant first.
struct WalkConfig {
  unsigned steps = 0;
  unsigned bits_per_step = 0;
  std::vector<WalkAction> option_table;

  /// S = steps * c, the number of random bits per run.
  unsigned long total_bits() const { return static_cast<unsigned long>(steps) * bits_per_step; }
  /// Walk endpoint for the random-bit string z (S bits, S <= 64).
  ElementCode endpoint(const GroupOracle &oracle, std::uint64_t z) const;
};

/// c = ceil(log2(2k + 2)); patterns 0..k-1 apply g_i, k..2k-1 apply g_i^-1,
/// everything from 2k on is the identity. steps is left at 0.
WalkConfig build_option_table(const GroupOracle &oracle, std::span<const ElementCode> generators);

/// Exact branch counts of the walk over the subgroup H.
struct GammaTable {
  /// gamma_g for every g in H (zero counts included).
  std::map<ElementCode, mpz_class> counts;
  unsigned long total_bits = 0;
  mpz_class N = 1;
  std::uint64_t subgroup_order = 1;
  /// gamma_g / N - 1/|H|
  std::map<ElementCode, mpq_class> deviations;
  mpq_class max_deviation;

  const mpz_class &count(ElementCode g) const;
  mpz_class sum_of_squares() const;
};

/// Builds deviations and max_deviation from raw counts over H.
GammaTable make_gamma_table(std::map<ElementCode, mpz_class> counts, unsigned long total_bits);

/// Dynamic-programming branch counts after config.steps steps from the identity.
GammaTable gamma_exact(const GroupOracle &oracle, std::span<const ElementCode> generators, unsigned steps,
                       std::size_t closure_cap = kDefaultClosureCap);

inline constexpr unsigned kDefaultStepCeiling = 20000;

struct StepChoice {
  WalkConfig config;
  GammaTable gamma;
};

/// Shortest walk whose table satisfies max_g |gamma_g/N - 1/|H|| < epsilon.
/// Steps are tried in increasing order; the lazy walk's transition matrix
/// is doubly stochastic, so the maximum deviation never increases with length
/// and the first success is the minimum. Throws NonConvergenceError at `ceiling`.
StepChoice choose_steps(const GroupOracle &oracle, std::span<const ElementCode> generators,
                        const mpq_class &epsilon, unsigned ceiling = kDefaultStepCeiling,
                        std::size_t closure_cap = kDefaultClosureCap);

/// Frequencies of seeded pseudo-random walk endpoints.
std::map<ElementCode, std::uint64_t> sample_monte_carlo(const WalkConfig &config, const GroupOracle &oracle,
                                                        std::uint64_t seed, std::uint64_t trials);

}  // namespace gnmawpp
