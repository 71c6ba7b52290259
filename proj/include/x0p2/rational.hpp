#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace x0p2 {

// Arbitrary-precision rational, always canonical (lowest terms, positive
// denominator). Thin value wrapper over mpq_class: it keeps gmpxx expression
// templates out of deduced contexts (Eigen wants a plain scalar type) and
// guarantees canonical form on every construction path, so == is structural
// equality and str() is a canonical text form.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // Exact integer value; throws unless den == 1 and the value fits in long.
  long to_long() const {
    if (!is_integer()) throw std::domain_error("Rational: not an integer");
    if (!v_.get_num().fits_slong_p())
      throw std::domain_error("Rational: integer out of long range");
    return v_.get_num().get_si();
  }

  // "num/den", with "/den" dropped for integers — the exact-value text form
  // used across JSON, CSV and DOT output.
  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
  }

 private:
  explicit Rational(const mpq_class& q) : v_(q) {}
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace x0p2

namespace Eigen {

template <>
struct NumTraits<x0p2::Rational> : GenericNumTraits<x0p2::Rational> {
  typedef x0p2::Rational Real;
  typedef x0p2::Rational NonInteger;
  typedef x0p2::Rational Nested;
  static inline Real epsilon() { return x0p2::Rational(0); }
  static inline Real dummy_precision() { return x0p2::Rational(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60,
  };
};

}  // namespace Eigen
