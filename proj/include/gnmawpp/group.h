#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gnmawpp {

/// Fixed-width bit string naming a group element. Only meaningful together
/// with the oracle that issued it; the oracle rejects codes of the wrong width.
struct ElementCode {
  std::uint64_t bits = 0;
  unsigned width = 0;

  auto operator<=>(const ElementCode &) const = default;
};

/// Black-box group: elements are n-bit codes, and the only way to combine
/// them is through multiply / invert / identity.
///
/// Concrete groups number their elements 0..order()-1 and the code of an
/// element is that index written in width() = max(1, ceil(log2 order())) bits.
/// Codes at or above order() are invalid.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual std::string name() const = 0;
  virtual std::uint64_t order() const = 0;

  unsigned width() const;
  bool is_valid(ElementCode code) const;

  ElementCode multiply(ElementCode a, ElementCode b) const;
  ElementCode invert(ElementCode a) const;
  ElementCode identity() const;

  /// Parses a literal in the group's natural notation (integers for cyclic
  /// and dihedral groups, cycle notation for symmetric groups, [a, b] for
  /// direct products).
  ElementCode parse_element(std::string_view text) const;
  std::string format_element(ElementCode code) const;

  /// Code for element index `index`; throws InvalidCodeError when out of range.
  ElementCode code(std::uint64_t index) const;

  // Index-level operations. Callers guarantee indices are < order().
  virtual std::uint64_t multiply_index(std::uint64_t a, std::uint64_t b) const = 0;
  virtual std::uint64_t invert_index(std::uint64_t a) const = 0;
  virtual std::uint64_t identity_index() const = 0;
  virtual std::uint64_t parse_index(std::string_view text) const = 0;
  virtual std::string format_index(std::uint64_t index) const = 0;

 private:
  void require_valid(ElementCode code, std::string_view what) const;
};

/// Z_m, elements 0..m-1 under addition.
class CyclicGroup final : public GroupOracle {
 public:
  explicit CyclicGroup(std::uint64_t modulus);

  std::string name() const override;
  std::uint64_t order() const override { return modulus_; }
  std::uint64_t multiply_index(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t invert_index(std::uint64_t a) const override;
  std::uint64_t identity_index() const override { return 0; }
  std::uint64_t parse_index(std::string_view text) const override;
  std::string format_index(std::uint64_t index) const override;

 private:
  std::uint64_t modulus_;
};

/// D_m, the symmetry group of the m-gon, order 2m. Element s^f r^i has index
/// f*m + i. Literals are either that index or "r<i>" / "s" / "sr<i>".
class DihedralGroup final : public GroupOracle {
 public:
  explicit DihedralGroup(std::uint64_t m);

  std::string name() const override;
  std::uint64_t order() const override { return 2 * m_; }
  std::uint64_t multiply_index(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t invert_index(std::uint64_t a) const override;
  std::uint64_t identity_index() const override { return 0; }
  std::uint64_t parse_index(std::string_view text) const override;
  std::string format_index(std::uint64_t index) const override;

 private:
  std::uint64_t m_;
};

/// S_k on points 1..k. Elements are indexed by the lexicographic rank of the
/// image list, so the identity has index 0. The product a*b is composition
/// with b applied first: (a*b)(x) = a(b(x)).
class SymmetricGroup final : public GroupOracle {
 public:
  static constexpr unsigned kMaxDegree = 12;

  explicit SymmetricGroup(unsigned degree);

  std::string name() const override;
  std::uint64_t order() const override { return order_; }
  std::uint64_t multiply_index(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t invert_index(std::uint64_t a) const override;
  std::uint64_t identity_index() const override { return 0; }
  std::uint64_t parse_index(std::string_view text) const override;
  std::string format_index(std::uint64_t index) const override;

  unsigned degree() const { return degree_; }
  std::vector<unsigned> unrank(std::uint64_t index) const;
  std::uint64_t rank(std::span<const unsigned> images) const;

 private:
  unsigned degree_;
  std::uint64_t order_;
};

/// A x B with index a * |B| + b.
class DirectProduct final : public GroupOracle {
 public:
  DirectProduct(std::shared_ptr<const GroupOracle> left,
                std::shared_ptr<const GroupOracle> right);

  std::string name() const override;
  std::uint64_t order() const override;
  std::uint64_t multiply_index(std::uint64_t a, std::uint64_t b) const override;
  std::uint64_t invert_index(std::uint64_t a) const override;
  std::uint64_t identity_index() const override;
  std::uint64_t parse_index(std::string_view text) const override;
  std::string format_index(std::uint64_t index) const override;

 private:
  std::shared_ptr<const GroupOracle> left_;
  std::shared_ptr<const GroupOracle> right_;
};

/// Builds an oracle from a description such as "cyclic(4)", "dihedral(4)",
/// "symmetric(3)" or "product(cyclic(2), cyclic(2))".
std::shared_ptr<const GroupOracle> make_group(std::string_view description);

inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 20;

/// The subgroup generated by `generators`, sorted by code. Always contains
/// the identity. Throws ResourceLimitError past `cap` elements.
std::vector<ElementCode> closure(const GroupOracle &oracle,
                                 std::span<const ElementCode> generators,
                                 std::size_t cap = kDefaultClosureCap);

/// Modified group non-membership input: is `target` outside the subgroup
/// generated by `generators`, given that subgroup's order?
struct ProblemInstance {
  std::shared_ptr<const GroupOracle> oracle;
  std::vector<ElementCode> generators;
  ElementCode target;
  std::uint64_t claimed_order = 0;
  /// Unset means the default 2^-(n+3).
  std::optional<mpq_class> epsilon;
  /// Walk length override; unset means search for the shortest walk.
  std::optional<unsigned> steps;

  mpq_class effective_epsilon() const;
};

/// 2^-(n+3).
mpq_class default_epsilon(unsigned n);

enum class ValidationMode { kTrust, kCheck };

struct ValidationResult {
  ValidationMode mode = ValidationMode::kTrust;
  std::optional<std::uint64_t> true_order;
  std::optional<bool> order_matches;
  std::optional<bool> target_is_member;
};

/// Checks codes, k >= 1 and 1 <= claimed_order <= 2^n (throwing on failure).
/// In check mode also computes the closure and reports ground truth.
ValidationResult validate_instance(const ProblemInstance &instance, ValidationMode mode);

}  // namespace gnmawpp
