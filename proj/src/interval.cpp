#include <certilatt/interval.hpp>

#include <certilatt/errors.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace certilatt {

std::string BigFloat::str(int digits) const {
  if (is_nan()) return "nan";
  if (!is_finite()) return sign() > 0 ? "inf" : "-inf";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits > 0 ? digits : 17, get());
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

Tri tri_not(Tri a) {
  switch (a) {
    case Tri::True: return Tri::False;
    case Tri::False: return Tri::True;
    default: return Tri::Unknown;
  }
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::True: return "True";
    case Tri::False: return "False";
    default: return "Unknown";
  }
}

namespace {

void require_same_prec(const FPInterval& a, const FPInterval& b) {
  if (a.prec() != b.prec()) {
    throw std::invalid_argument("interval operands have different precisions (" +
                                std::to_string(a.prec()) + " vs " +
                                std::to_string(b.prec()) + ")");
  }
}

// NaN bounds come from inf - inf or 0 * inf; widening them keeps containment.
FPInterval sanitize(BigFloat lo, BigFloat hi) {
  if (lo.is_nan()) mpfr_set_inf(lo.get(), -1);
  if (hi.is_nan()) mpfr_set_inf(hi.get(), 1);
  return FPInterval(std::move(lo), std::move(hi));
}

}  // namespace

FPInterval::FPInterval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.prec() != hi_.prec()) {
    throw std::invalid_argument("interval bounds have different precisions");
  }
  if (lo_.is_nan() || hi_.is_nan() || hi_ < lo_) {
    throw std::invalid_argument("interval bounds out of order");
  }
}

FPInterval FPInterval::enclose(const mpz_class& x, mpfr_prec_t prec) {
  return FPInterval(BigFloat::from(x, prec, MPFR_RNDD), BigFloat::from(x, prec, MPFR_RNDU));
}

FPInterval FPInterval::enclose(const mpq_class& x, mpfr_prec_t prec) {
  return FPInterval(BigFloat::from(x, prec, MPFR_RNDD), BigFloat::from(x, prec, MPFR_RNDU));
}

FPInterval FPInterval::enclose(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
  return FPInterval(BigFloat::from(lo, prec, MPFR_RNDD), BigFloat::from(hi, prec, MPFR_RNDU));
}

FPInterval FPInterval::entire(mpfr_prec_t prec) {
  return FPInterval(BigFloat::infinity(prec, -1), BigFloat::infinity(prec, 1));
}

bool FPInterval::contains(const mpq_class& x) const {
  // mpfr_cmp_q handles infinite bounds.
  return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
}

bool FPInterval::subset_of(const FPInterval& other) const {
  return other.lo_ <= lo_ && hi_ <= other.hi_;
}

mpq_class FPInterval::width() const {
  if (!is_bounded()) throw std::domain_error("width of an unbounded interval");
  return hi_.to_rational() - lo_.to_rational();
}

mpq_class FPInterval::midpoint() const {
  if (!is_bounded()) throw std::domain_error("midpoint of an unbounded interval");
  return (hi_.to_rational() + lo_.to_rational()) / 2;
}

FPInterval FPInterval::with_prec(mpfr_prec_t prec) const {
  BigFloat lo(prec), hi(prec);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return FPInterval(std::move(lo), std::move(hi));
}

std::string FPInterval::str(int digits) const {
  return "[" + lo_.str(digits) + ", " + hi_.str(digits) + "]";
}

std::ostream& operator<<(std::ostream& os, const FPInterval& x) { return os << x.str(); }

FPInterval iv_add(const FPInterval& a, const FPInterval& b) {
  require_same_prec(a, b);
  BigFloat lo(a.prec()), hi(a.prec());
  mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return sanitize(std::move(lo), std::move(hi));
}

FPInterval iv_sub(const FPInterval& a, const FPInterval& b) {
  require_same_prec(a, b);
  BigFloat lo(a.prec()), hi(a.prec());
  mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return sanitize(std::move(lo), std::move(hi));
}

FPInterval iv_mul(const FPInterval& a, const FPInterval& b) {
  require_same_prec(a, b);
  const mpfr_prec_t p = a.prec();
  const BigFloat* xs[2] = {&a.lo(), &a.hi()};
  const BigFloat* ys[2] = {&b.lo(), &b.hi()};
  BigFloat lo = BigFloat::infinity(p, 1);
  BigFloat hi = BigFloat::infinity(p, -1);
  BigFloat t(p);
  for (const BigFloat* x : xs) {
    for (const BigFloat* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (t.is_nan()) mpfr_set_inf(t.get(), -1);
      if (t < lo) lo = t;
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (t.is_nan()) mpfr_set_inf(t.get(), 1);
      if (hi < t) hi = t;
    }
  }
  return FPInterval(std::move(lo), std::move(hi));
}

FPInterval iv_inv(const FPInterval& a) {
  if (a.contains_zero()) {
    throw DomainError("inverse of an interval containing zero: " + a.str());
  }
  // 1/x is decreasing on each side of 0, so the bounds swap.
  BigFloat lo(a.prec()), hi(a.prec());
  mpfr_ui_div(lo.get(), 1, a.hi().get(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 1, a.lo().get(), MPFR_RNDU);
  return FPInterval(std::move(lo), std::move(hi));
}

FPInterval iv_div(const FPInterval& a, const FPInterval& b) { return iv_mul(a, iv_inv(b)); }

FPInterval iv_neg(const FPInterval& a) {
  BigFloat lo(a.prec()), hi(a.prec());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDN);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDN);
  return FPInterval(std::move(lo), std::move(hi));
}

FPInterval iv_abs(const FPInterval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return iv_neg(a);
  BigFloat hi(a.prec());
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDN);
  if (hi < a.hi()) hi = a.hi();
  return FPInterval(BigFloat(a.prec()), std::move(hi));
}

FPInterval iv_max(std::span<const FPInterval> xs) {
  if (xs.empty()) throw std::invalid_argument("iv_max of an empty list");
  BigFloat lo = xs.front().lo();
  BigFloat hi = xs.front().hi();
  for (const FPInterval& x : xs.subspan(1)) {
    if (x.prec() != lo.prec()) throw std::invalid_argument("iv_max: mixed precisions");
    if (lo < x.lo()) lo = x.lo();
    if (hi < x.hi()) hi = x.hi();
  }
  return FPInterval(std::move(lo), std::move(hi));
}

FPInterval iv_ldexp(const FPInterval& a, long e) {
  BigFloat lo(a.prec()), hi(a.prec());
  mpfr_mul_2si(lo.get(), a.lo().get(), e, MPFR_RNDD);
  mpfr_mul_2si(hi.get(), a.hi().get(), e, MPFR_RNDU);
  return FPInterval(std::move(lo), std::move(hi));
}

Tri iv_leq(const FPInterval& a, const FPInterval& t) {
  if (a.hi() <= t.lo()) return Tri::True;
  if (t.hi() < a.lo()) return Tri::False;
  return Tri::Unknown;
}

Tri iv_lt(const FPInterval& a, const FPInterval& t) {
  if (a.hi() < t.lo()) return Tri::True;
  if (t.hi() <= a.lo()) return Tri::False;
  return Tri::Unknown;
}

mpz_class round_half_away(const mpq_class& q) {
  // floor(|q| + 1/2) with the sign restored.
  mpq_class shifted = abs(q) + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return sgn(q) < 0 ? mpz_class(-r) : r;
}

mpz_class eta_closest_integer(const FPInterval& a, const mpq_class& eta) {
  if (!a.is_bounded()) {
    throw PrecisionError("eta-closest integer of an unbounded interval");
  }
  const mpq_class lo = a.lo().to_rational();
  const mpq_class hi = a.hi().to_rational();
  mpz_class x = round_half_away((lo + hi) / 2);
  if (hi - x > eta || x - lo > eta) {
    throw PrecisionError("no integer within eta of every point of " + a.str());
  }
  return x;
}

bool FixedPointRep::contains_scaled(const mpq_class& x) const {
  mpq_class scaled = x;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), accuracy);
  return abs(scaled - mpq_class(center)) <= radius;
}

FixedPointRep integral_refine(const IntegralRep& r, unsigned new_accuracy) {
  if (new_accuracy < r.accuracy) {
    throw std::invalid_argument("integral_refine cannot lower the accuracy");
  }
  const unsigned shift = new_accuracy - r.accuracy;
  FixedPointRep out;
  out.center = r.center << shift;
  out.radius = mpq_class(mpz_class(1) << shift);
  out.accuracy = new_accuracy;
  return out;
}

FixedPointRep fixedpoint_add(const FixedPointRep& a, const FixedPointRep& b) {
  if (a.accuracy != b.accuracy) {
    throw std::invalid_argument("fixed-point operands have different accuracies");
  }
  return {a.center + b.center, a.radius + b.radius, a.accuracy};
}

FixedPointRep fixedpoint_intmul(const FixedPointRep& r, const mpz_class& k) {
  return {r.center * k, r.radius * mpq_class(abs(k)), r.accuracy};
}

FPInterval convert_to_fp_interval(const mpz_class& v, mpfr_prec_t prec) {
  return FPInterval::enclose(v, prec);
}

FPInterval convert_to_fp_interval(const FixedPointRep& v, mpfr_prec_t prec) {
  const mpq_class c(v.center);
  return FPInterval::enclose(c - v.radius, c + v.radius, prec);
}

FPInterval convert_to_fp_interval(const mpz_class& center, const mpz_class& radius,
                                  mpfr_prec_t prec) {
  return FPInterval(BigFloat::from(mpz_class(center - radius), prec, MPFR_RNDD),
                    BigFloat::from(mpz_class(center + radius), prec, MPFR_RNDU));
}

}  // namespace certilatt
