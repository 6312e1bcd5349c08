#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "gnmawpp/dyadic.h"

namespace gnmawpp {

/// Minimum denominator exponent for the gap numerator; with the default
/// epsilon this makes F an integer.
inline constexpr unsigned long kMinGapExponent = 12;

struct GapNumerator {
  mpz_class g_w;
  unsigned long q = kMinGapExponent;
};

/// g_w / 2^q == p_joint with q = max(canonical exponent, 12).
GapNumerator extract_gap_numerator(const Dyadic &p_joint);

struct GuardResult {
  mpq_class value;  // 3 / (4 (1 + 2^(2n) eps^2)^2)
  bool passes = false;  // value > 2/3

  bool operator==(const GuardResult &) const = default;
};

/// Accepts epsilon = 0 (the idealized sampler, value 3/4).
GuardResult threshold_guard(unsigned n, const mpq_class &epsilon);

enum class Decision { kNonMember, kMember, kInvalid };

std::string_view decision_name(Decision d);
Decision parse_decision(std::string_view name);

struct Certificate {
  mpz_class g_w;
  unsigned long q = kMinGapExponent;
  mpz_class G;
  /// Exact; an integer whenever f_integral is set.
  mpq_class F;
  bool f_integral = true;
  mpq_class ratio;
  mpq_class epsilon;
  unsigned n = 0;
  unsigned long s_bits = 0;
  unsigned long t_bits = 0;
  std::uint64_t claimed_order = 0;
  GuardResult guard;
  Decision decision = Decision::kInvalid;

  bool operator==(const Certificate &) const = default;
};

/// G = g_w 2^(2t-2s) |H|^2 and F = 2^q (1 + 2^(2n) eps^2)^2; when t < s the
/// power of two moves into F. Decision: ratio in [2/3, 1] -> NonMember,
/// [0, 1/3] -> Member, anything else or a failed guard -> Invalid.
Certificate build_certificate(const mpz_class &g_w, unsigned long q, unsigned long s_bits, unsigned long t_bits,
                              std::uint64_t claimed_order, unsigned n, const mpq_class &epsilon);

}  // namespace gnmawpp
