#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

namespace gnmawpp {

/// Non-negative dyadic rational numerator / 2^exponent, always canonical:
/// the numerator is odd, or zero with exponent 0.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(mpz_class numerator, unsigned long exponent);

  static Dyadic one() { return Dyadic(1, 0); }
  /// Throws std::domain_error unless the value is a non-negative dyadic.
  static Dyadic from_rational(const mpq_class &value);

  const mpz_class &numerator() const { return numerator_; }
  unsigned long exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }

  mpq_class to_rational() const;
  double to_double() const;
  /// "num/2^k", or "num" when k = 0.
  std::string to_string() const;

  friend Dyadic operator+(const Dyadic &a, const Dyadic &b);
  /// Throws std::domain_error when b > a.
  friend Dyadic operator-(const Dyadic &a, const Dyadic &b);
  friend Dyadic operator*(const Dyadic &a, const Dyadic &b);

  friend bool operator==(const Dyadic &a, const Dyadic &b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b);

 private:
  void canonicalize();

  mpz_class numerator_ = 0;
  unsigned long exponent_ = 0;
};

/// Exact rational rendered as "p/q" (or "p" when q = 1).
std::string rational_string(const mpq_class &value);

/// 2^k as an integer.
mpz_class pow2(unsigned long k);

}  // namespace gnmawpp
