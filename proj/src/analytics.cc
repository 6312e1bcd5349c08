#include "gnmawpp/analytics.h"

#include "gnmawpp/errors.h"

namespace gnmawpp {

HNorms h_norms(const GammaTable &gamma, ElementCode h, const GroupOracle &oracle) {
  if (gamma.counts.empty()) throw std::invalid_argument("empty gamma table");
  const ElementCode h_inv = oracle.invert(h);
  mpz_class squares = 0, cross = 0;
  for (const auto &[g, c] : gamma.counts) {
    squares += c * c;
    cross += c * gamma.count(oracle.multiply(g, h_inv));
  }
  return HNorms{2 * squares + 2 * cross, 2 * squares - 2 * cross};
}

Dyadic postselection_probability(const GammaTable &gamma, std::optional<unsigned long> t_bits) {
  const unsigned long t = t_bits.value_or(gamma.total_bits);
  const mpz_class s = gamma.sum_of_squares();
  return Dyadic(s * s, 2 * gamma.total_bits + 2 * t);
}

ProbabilityReport outcome_report(const GammaTable &gamma, ElementCode h, const GroupOracle &oracle,
                                 std::optional<unsigned long> t_bits) {
  ProbabilityReport r;
  r.t_bits = t_bits.value_or(gamma.total_bits);
  r.s_bits = gamma.total_bits;
  r.sum_gamma_sq = gamma.sum_of_squares();
  auto norms = h_norms(gamma, h, oracle);
  r.plus_norm = norms.plus;
  r.minus_norm = norms.minus;
  r.p_post = postselection_probability(gamma, r.t_bits);
  // P(o=0, p=1) = <h+|h+>^2 / (16 N^2 2^(2t)); the ancilla-1 branch gets the rest.
  r.p_o0_joint = Dyadic(r.plus_norm * r.plus_norm, 2 * r.s_bits + 2 * r.t_bits + 4);
  r.p_o1_joint = r.p_post - r.p_o0_joint;
  mpq_class ratio(r.plus_norm, 4 * r.sum_gamma_sq);
  ratio.canonicalize();
  r.p_o0_given = ratio * ratio;
  r.p_o1_given = 1 - r.p_o0_given;
  return r;
}

BoundCheck membership_bound_check(const ProbabilityReport &report, const mpq_class &epsilon_hat,
                                  std::uint64_t order) {
  BoundCheck b;
  b.lhs = report.p_o1_given;
  b.rhs = 2 * epsilon_hat * epsilon_hat * mpq_class(order) * mpq_class(order);
  b.holds = b.lhs <= b.rhs;
  if (!b.holds) {
    throw BoundViolationError("P(o=1|p=1) = " + rational_string(b.lhs) + " exceeds 2 eps^2 |H|^2 = " +
                              rational_string(b.rhs));
  }
  return b;
}

}  // namespace gnmawpp
