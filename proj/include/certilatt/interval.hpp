#pragma once

// Certified scalar arithmetic: closed intervals with MPFR endpoints rounded
// outward, integer-center representations of reals, and three-valued
// comparisons.

#include <certilatt/bigfloat.hpp>

#include <gmpxx.h>

#include <iosfwd>
#include <span>
#include <string>

namespace certilatt {

enum class Tri { False, True, Unknown };

Tri tri_and(Tri a, Tri b);
Tri tri_not(Tri a);
const char* to_string(Tri t);

// [lo, hi] with both bounds at the same precision. Bounds may be infinite.
class FPInterval {
 public:
  explicit FPInterval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}
  FPInterval(BigFloat lo, BigFloat hi);

  // Tightest prec-bit enclosures of exact values.
  static FPInterval enclose(const mpz_class& x, mpfr_prec_t prec);
  static FPInterval enclose(const mpq_class& x, mpfr_prec_t prec);
  static FPInterval enclose(const mpq_class& lo, const mpq_class& hi,
                            mpfr_prec_t prec);
  // Whole real line.
  static FPInterval entire(mpfr_prec_t prec);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t prec() const { return lo_.prec(); }

  bool is_point() const { return lo_ == hi_; }
  bool is_bounded() const { return lo_.is_finite() && hi_.is_finite(); }
  bool contains(const mpq_class& x) const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  // [lo, hi] of this lies inside [other.lo, other.hi].
  bool subset_of(const FPInterval& other) const;

  // Exact width hi - lo as a rational; bounded intervals only.
  mpq_class width() const;
  mpq_class midpoint() const;

  // Outward re-rounding to another precision.
  FPInterval with_prec(mpfr_prec_t prec) const;

  std::string str(int digits = 12) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

std::ostream& operator<<(std::ostream& os, const FPInterval& x);

// Operands must share a precision; std::invalid_argument otherwise.
FPInterval iv_add(const FPInterval& a, const FPInterval& b);
FPInterval iv_sub(const FPInterval& a, const FPInterval& b);
FPInterval iv_mul(const FPInterval& a, const FPInterval& b);
// Throws DomainError when 0 lies in a.
FPInterval iv_inv(const FPInterval& a);
FPInterval iv_div(const FPInterval& a, const FPInterval& b);
FPInterval iv_neg(const FPInterval& a);
FPInterval iv_abs(const FPInterval& a);
FPInterval iv_max(std::span<const FPInterval> xs);
// Multiplication by 2^e is exact.
FPInterval iv_ldexp(const FPInterval& a, long e);

inline FPInterval operator+(const FPInterval& a, const FPInterval& b) { return iv_add(a, b); }
inline FPInterval operator-(const FPInterval& a, const FPInterval& b) { return iv_sub(a, b); }
inline FPInterval operator*(const FPInterval& a, const FPInterval& b) { return iv_mul(a, b); }
inline FPInterval operator/(const FPInterval& a, const FPInterval& b) { return iv_div(a, b); }
inline FPInterval operator-(const FPInterval& a) { return iv_neg(a); }

// Certified a <= t: True iff a.hi <= t.lo, False iff a.lo > t.hi.
Tri iv_leq(const FPInterval& a, const FPInterval& t);
// Certified a < t: True iff a.hi < t.lo, False iff a.lo >= t.hi.
Tri iv_lt(const FPInterval& a, const FPInterval& t);

// Integer X with |X - x| <= eta for every x in a; X is the midpoint rounded
// half away from zero. Throws PrecisionError when no such integer exists.
mpz_class eta_closest_integer(const FPInterval& a, const mpq_class& eta);

// Nearest integer to a rational, ties away from zero.
mpz_class round_half_away(const mpq_class& q);

// 2^accuracy * x lies in [center - 1, center + 1].
struct IntegralRep {
  mpz_class center;
  unsigned accuracy = 0;
};

// 2^accuracy * x lies in [center - radius, center + radius].
struct FixedPointRep {
  mpz_class center;
  mpq_class radius;
  unsigned accuracy = 0;

  static FixedPointRep from(const IntegralRep& r) { return {r.center, 1, r.accuracy}; }
  bool contains_scaled(const mpq_class& x) const;
};

// Rescales to a finer accuracy; the radius grows by the same factor.
FixedPointRep integral_refine(const IntegralRep& r, unsigned new_accuracy);

// Operands must share accuracy; std::invalid_argument otherwise.
FixedPointRep fixedpoint_add(const FixedPointRep& a, const FixedPointRep& b);
FixedPointRep fixedpoint_intmul(const FixedPointRep& r, const mpz_class& k);

FPInterval convert_to_fp_interval(const mpz_class& v, mpfr_prec_t prec);
// Encloses [center - radius, center + radius]; the accuracy scaling is not
// undone.
FPInterval convert_to_fp_interval(const FixedPointRep& v, mpfr_prec_t prec);
FPInterval convert_to_fp_interval(const mpz_class& center,
                                  const mpz_class& radius, mpfr_prec_t prec);

}  // namespace certilatt
