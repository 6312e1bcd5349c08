#include "gnmawpp/dyadic.h"

#include <algorithm>
#include <stdexcept>

namespace gnmawpp {

mpz_class pow2(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

Dyadic::Dyadic(mpz_class numerator, unsigned long exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  if (numerator_ < 0) throw std::domain_error("dyadic numerator must be non-negative");
  canonicalize();
}

void Dyadic::canonicalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  unsigned long twos = mpz_scan1(numerator_.get_mpz_t(), 0);
  unsigned long shift = std::min(twos, exponent_);
  if (shift > 0) {
    mpz_fdiv_q_2exp(numerator_.get_mpz_t(), numerator_.get_mpz_t(), shift);
    exponent_ -= shift;
  }
}

Dyadic Dyadic::from_rational(const mpq_class &value) {
  if (value < 0) throw std::domain_error("negative value is not a probability dyadic");
  const mpz_class &den = value.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) {
    throw std::domain_error("denominator of " + rational_string(value) + " is not a power of two");
  }
  return Dyadic(value.get_num(), mpz_scan1(den.get_mpz_t(), 0));
}

mpq_class Dyadic::to_rational() const {
  mpq_class q(numerator_, pow2(exponent_));
  q.canonicalize();
  return q;
}

double Dyadic::to_double() const { return mpq_class(numerator_, pow2(exponent_)).get_d(); }

std::string Dyadic::to_string() const {
  if (exponent_ == 0) return numerator_.get_str();
  return numerator_.get_str() + "/2^" + std::to_string(exponent_);
}

namespace {

// Both numerators scaled to the larger exponent.
std::pair<mpz_class, mpz_class> align(const Dyadic &a, const Dyadic &b, unsigned long &exponent) {
  exponent = std::max(a.exponent(), b.exponent());
  mpz_class x = a.numerator(), y = b.numerator();
  mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), exponent - a.exponent());
  mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), exponent - b.exponent());
  return {x, y};
}

}  // namespace

Dyadic operator+(const Dyadic &a, const Dyadic &b) {
  unsigned long e = 0;
  auto [x, y] = align(a, b, e);
  return Dyadic(x + y, e);
}

Dyadic operator-(const Dyadic &a, const Dyadic &b) {
  unsigned long e = 0;
  auto [x, y] = align(a, b, e);
  if (y > x) throw std::domain_error("dyadic subtraction would go negative");
  return Dyadic(x - y, e);
}

Dyadic operator*(const Dyadic &a, const Dyadic &b) {
  return Dyadic(a.numerator() * b.numerator(), a.exponent() + b.exponent());
}

std::strong_ordering operator<=>(const Dyadic &a, const Dyadic &b) {
  unsigned long e = 0;
  auto [x, y] = align(a, b, e);
  int c = cmp(x, y);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string rational_string(const mpq_class &value) {
  mpq_class v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace gnmawpp
