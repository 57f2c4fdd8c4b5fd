#include "degtest/prob.hpp"

namespace degtest {

std::string decimal_string(const mpq_class& v, int digits) {
  if (digits < 0) throw std::domain_error("negative digit count");
  if (v < 0) throw std::domain_error("decimal_string expects a nonnegative value");

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));

  // v * 10^digits = q + r/den with 0 <= r < den
  mpz_class num = v.get_num() * scale;
  const mpz_class& den = v.get_den();
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

  // round half to even on the remainder
  mpz_class twice = 2 * r;
  int cmp = mpz_cmp(twice.get_mpz_t(), den.get_mpz_t());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  mpz_class ipart = q / scale;
  mpz_class fpart = q % scale;
  std::string out = ipart.get_str();
  if (digits > 0) {
    std::string frac = fpart.get_str();
    out += "." + std::string(static_cast<size_t>(digits) - frac.size(), '0') + frac;
  }
  return out;
}

std::string ExactProb::decimal(int digits) const { return decimal_string(value_, digits); }

}  // namespace degtest
