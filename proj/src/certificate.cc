#include "gnmawpp/certificate.h"

#include <algorithm>
#include <stdexcept>

#include "gnmawpp/errors.h"

namespace gnmawpp {

GapNumerator extract_gap_numerator(const Dyadic &p_joint) {
  if (p_joint > Dyadic::one()) throw std::domain_error("joint probability above 1");
  GapNumerator out;
  out.q = std::max(p_joint.exponent(), kMinGapExponent);
  out.g_w = p_joint.numerator();
  mpz_mul_2exp(out.g_w.get_mpz_t(), out.g_w.get_mpz_t(), out.q - p_joint.exponent());
  return out;
}

namespace {

// (1 + 2^(2n) eps^2)^2
mpq_class inflation(unsigned n, const mpq_class &epsilon) {
  mpq_class x = 1 + mpq_class(pow2(2 * n)) * epsilon * epsilon;
  return x * x;
}

}  // namespace

GuardResult threshold_guard(unsigned n, const mpq_class &epsilon) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  GuardResult g;
  g.value = mpq_class(3, 4) / inflation(n, epsilon);
  g.passes = g.value > mpq_class(2, 3);
  return g;
}

std::string_view decision_name(Decision d) {
  switch (d) {
    case Decision::kNonMember:
      return "NonMember";
    case Decision::kMember:
      return "Member";
    case Decision::kInvalid:
      return "Invalid";
  }
  return "Invalid";
}

Decision parse_decision(std::string_view name) {
  if (name == "NonMember") return Decision::kNonMember;
  if (name == "Member") return Decision::kMember;
  if (name == "Invalid") return Decision::kInvalid;
  throw ParseError("unknown decision '" + std::string(name) + "'");
}

Certificate build_certificate(const mpz_class &g_w, unsigned long q, unsigned long s_bits, unsigned long t_bits,
                              std::uint64_t claimed_order, unsigned n, const mpq_class &epsilon) {
  if (claimed_order < 1) throw std::invalid_argument("claimed order must be >= 1");
  if (g_w < 0) throw std::invalid_argument("gap numerator must be non-negative");
  Certificate c;
  c.g_w = g_w;
  c.q = q;
  c.s_bits = s_bits;
  c.t_bits = t_bits;
  c.claimed_order = claimed_order;
  c.n = n;
  c.epsilon = epsilon;

  const mpz_class order_sq = mpz_class(claimed_order) * mpz_class(claimed_order);
  unsigned long f_exponent = q;
  c.G = g_w * order_sq;
  if (t_bits >= s_bits) {
    mpz_mul_2exp(c.G.get_mpz_t(), c.G.get_mpz_t(), 2 * (t_bits - s_bits));
  } else {
    f_exponent += 2 * (s_bits - t_bits);
  }
  c.F = mpq_class(pow2(f_exponent)) * inflation(n, epsilon);
  c.F.canonicalize();
  c.f_integral = c.F.get_den() == 1;
  c.ratio = mpq_class(c.G) / c.F;
  c.guard = threshold_guard(n, epsilon);

  if (!c.guard.passes) {
    c.decision = Decision::kInvalid;
  } else if (c.ratio >= mpq_class(2, 3) && c.ratio <= 1) {
    c.decision = Decision::kNonMember;
  } else if (c.ratio >= 0 && c.ratio <= mpq_class(1, 3)) {
    c.decision = Decision::kMember;
  } else {
    c.decision = Decision::kInvalid;
  }
  return c;
}

}  // namespace gnmawpp
