#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gnmawpp/analytics.h"
#include "gnmawpp/dyadic.h"
#include "gnmawpp/group.h"
#include "gnmawpp/walk.h"

namespace gnmawpp {

/// One run of the walk: random bits z, endpoint eta_z, leftover phi_z (= z).
struct Branch {
  std::uint64_t z = 0;
  ElementCode eta;
  std::uint64_t garbage = 0;
};

inline constexpr unsigned kDefaultEnumerationCap = 12;
/// Amplitude accumulators are 64-bit; 4 * 2^(2S) must fit.
inline constexpr unsigned kMaxEnumerationCap = 28;

/// All 2^S branches in increasing z. Throws ResourceLimitError when S > cap.
std::vector<Branch> enumerate_branches(const WalkConfig &config, const GroupOracle &oracle,
                                       unsigned cap = kDefaultEnumerationCap);

/// Computational basis label of the two-copy register file:
/// |first>|first_qubit> |second>|second_qubit> |ancilla> |garbage pair>.
/// The two coupled qubits double as the flag pair that controls the ancilla.
struct BasisLabel {
  std::uint64_t first = 0;
  std::uint8_t first_qubit = 0;
  std::uint64_t second = 0;
  std::uint8_t second_qubit = 0;
  std::uint8_t ancilla = 0;
  std::uint64_t first_garbage = 0;
  std::uint64_t second_garbage = 0;

  auto operator<=>(const BasisLabel &) const = default;
};

/// Sparse state with amplitudes a / sqrt(2)^m, one shared half-exponent m.
class SparseAmplitudeState {
 public:
  explicit SparseAmplitudeState(unsigned long half_exponent) : half_exponent_(half_exponent) {}

  void add(const BasisLabel &label, const mpz_class &amplitude);

  unsigned long half_exponent() const { return half_exponent_; }
  const std::map<BasisLabel, mpz_class> &amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }

  /// sum a^2 / 2^m, optionally restricted to labels with the given ancilla.
  Dyadic squared_norm() const;
  Dyadic squared_norm_with_ancilla(std::uint8_t ancilla) const;

 private:
  unsigned long half_exponent_;
  std::map<BasisLabel, mpz_class> amplitudes_;
};

struct BruteForceResult {
  ProbabilityReport report;
  /// Squared norm of the two-copy state just before garbage postselection.
  Dyadic pre_postselection_norm;
  /// Garbage-projected two-copy state (garbage labels zeroed).
  SparseAmplitudeState postselected{0};
  /// |<+^t|garbage(g)>|^2 for every endpoint g.
  std::map<ElementCode, mpq_class> garbage_overlap;
};

/// Builds the protocol's states literally: every pair of branches (z, z'),
/// controlled multiplication by the target, Hadamard on each coupled qubit,
/// ancilla flip on flags |00>, garbage postselection onto |+>^(2t).
BruteForceResult simulate_full_detailed(const ProblemInstance &instance, const WalkConfig &config,
                                        unsigned cap = kDefaultEnumerationCap);

ProbabilityReport simulate_full(const ProblemInstance &instance, const WalkConfig &config,
                                unsigned cap = kDefaultEnumerationCap);

struct FieldMismatch {
  std::string field;
  std::string analytic;
  std::string brute;
  /// analytic / brute; zero when brute is zero.
  mpq_class ratio;

  bool operator==(const FieldMismatch &) const = default;
};

struct ComparisonResult {
  bool all_equal = true;
  std::vector<FieldMismatch> mismatches;

  bool operator==(const ComparisonResult &) const = default;
};

ComparisonResult compare_reports(const ProbabilityReport &analytic, const ProbabilityReport &brute);

}  // namespace gnmawpp
