#pragma once

#include <optional>

#include <gmpxx.h>

#include "gnmawpp/dyadic.h"
#include "gnmawpp/group.h"
#include "gnmawpp/walk.h"

namespace gnmawpp {

/// Every probability of the postselected two-copy protocol, exact.
struct ProbabilityReport {
  mpz_class sum_gamma_sq;  // sum_g gamma_g^2
  mpz_class plus_norm;     // <h+|h+>
  mpz_class minus_norm;    // <h-|h->
  Dyadic p_post;           // P(p=1)
  Dyadic p_o0_joint;       // P(o=0, p=1)
  Dyadic p_o1_joint;       // P(o=1, p=1)
  mpq_class p_o0_given;    // P(o=0 | p=1)
  mpq_class p_o1_given;    // P(o=1 | p=1)
  unsigned long t_bits = 0;  // garbage width per copy
  unsigned long s_bits = 0;  // random bits per copy

  bool operator==(const ProbabilityReport &) const = default;
};

struct HNorms {
  mpz_class plus;
  mpz_class minus;
};

/// <h+|h+> = 2 sum gamma_g^2 + 2 sum gamma_g gamma_{g h^-1} and <h-|h-> with the
/// cross term subtracted; gamma is zero off H, so the cross term vanishes
/// when h is not in H.
HNorms h_norms(const GammaTable &gamma, ElementCode h, const GroupOracle &oracle);

/// (sum gamma_g^2)^2 / (N^2 2^(2t)). t defaults to S (garbage = the random bits).
Dyadic postselection_probability(const GammaTable &gamma, std::optional<unsigned long> t_bits = std::nullopt);

ProbabilityReport outcome_report(const GammaTable &gamma, ElementCode h, const GroupOracle &oracle,
                                 std::optional<unsigned long> t_bits = std::nullopt);

struct BoundCheck {
  mpq_class lhs;  // P(o=1 | p=1)
  mpq_class rhs;  // 2 eps_hat^2 |H|^2
  bool holds = false;
};

/// P(o=1|p=1) <= 2 eps_hat^2 |H|^2 for a target inside H. Throws
/// BoundViolationError when it fails, which would mean a bug upstream.
BoundCheck membership_bound_check(const ProbabilityReport &report, const mpq_class &epsilon_hat,
                                  std::uint64_t order);

}  // namespace gnmawpp
