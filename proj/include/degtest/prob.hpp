#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace degtest {

/** An exact probability: a reduced big rational confined to [0, 1]. */
class ExactProb {
 public:
  ExactProb() : value_(0) {}

  explicit ExactProb(mpq_class v) : value_(std::move(v)) {
    value_.canonicalize();
    if (value_ < 0 || value_ > 1) {
      throw std::domain_error("probability outside [0, 1]: " + value_.get_str());
    }
  }

  static ExactProb from_ratio(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("probability with zero denominator");
    return ExactProb(mpq_class(num, den));
  }

  static ExactProb zero() { return ExactProb(); }
  static ExactProb one() { return ExactProb(mpq_class(1)); }

  const mpq_class& value() const { return value_; }

  /** "p/q" with the reduced numerator and denominator (zero prints as "0/1"). */
  std::string rational_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  /** Fixed-point decimal with `digits` fractional digits, rounded half to even. */
  std::string decimal(int digits) const;

  double to_double() const { return value_.get_d(); }

  bool operator==(const ExactProb& o) const { return value_ == o.value_; }
  bool operator!=(const ExactProb& o) const { return value_ != o.value_; }
  bool operator<(const ExactProb& o) const { return value_ < o.value_; }
  bool operator<=(const ExactProb& o) const { return value_ <= o.value_; }
  bool operator>(const ExactProb& o) const { return value_ > o.value_; }
  bool operator>=(const ExactProb& o) const { return value_ >= o.value_; }

 private:
  mpq_class value_;
};

/** Product of probabilities (stays in [0, 1]). */
inline ExactProb operator*(const ExactProb& a, const ExactProb& b) {
  return ExactProb(mpq_class(a.value() * b.value()));
}

/** 1 - p. */
inline ExactProb one_minus(const ExactProb& p) {
  return ExactProb(mpq_class(1 - p.value()));
}

/** Round-half-even rendering of an arbitrary nonnegative rational. */
std::string decimal_string(const mpq_class& v, int digits);

}  // namespace degtest
