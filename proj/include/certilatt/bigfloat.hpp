#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <string>
#include <utility>

namespace certilatt {

// Owning handle on an mpfr_t. The precision is fixed at construction and
// travels with copies.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
  }

  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }

  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~BigFloat() { mpfr_clear(value_); }

  static BigFloat from(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_z(r.value_, z.get_mpz_t(), rnd);
    return r;
  }

  static BigFloat from(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_q(r.value_, q.get_mpq_t(), rnd);
    return r;
  }

  static BigFloat from(double x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_set_d(r.value_, x, rnd);
    return r;
  }

  static BigFloat infinity(mpfr_prec_t prec, int sign) {
    BigFloat r(prec);
    mpfr_set_inf(r.value_, sign);
    return r;
  }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }
  int sign() const { return mpfr_sgn(value_); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  // Exact value; the caller guarantees the number is finite.
  mpq_class to_rational() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return q;
  }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  std::string str(int digits = 0) const;

  friend int cmp(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.value_, b.value_);
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) {
    return mpfr_less_p(a.value_, b.value_) != 0;
  }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) {
    return mpfr_lessequal_p(a.value_, b.value_) != 0;
  }
  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }

 private:
  mpfr_t value_;
};

}  // namespace certilatt
