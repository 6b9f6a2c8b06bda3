#include <certilatt/errors.hpp>
#include <certilatt/interval.hpp>

#include <doctest.h>

#include <vector>

#include "support.hpp"

using namespace certilatt;
using certilatt::testing::Rng;

namespace {

FPInterval iv(double lo, double hi, mpfr_prec_t prec = 53) {
  return FPInterval(BigFloat::from(lo, prec, MPFR_RNDD), BigFloat::from(hi, prec, MPFR_RNDU));
}

bool same(const FPInterval& a, double lo, double hi) {
  return a.lo().to_double() == lo && a.hi().to_double() == hi;
}

// An interval around q, sometimes widened so that the operands are not points.
FPInterval around(Rng& rng, const mpq_class& q, mpfr_prec_t prec) {
  if (rng.uniform(0, 2) == 0) return FPInterval::enclose(q, prec);
  const mpq_class spread(rng.uniform(0, 100), rng.uniform(1, 1000));
  return FPInterval::enclose(q - spread, q + spread, prec);
}

}  // namespace

TEST_CASE("addition and subtraction on exact dyadics") {
  CHECK(same(iv(1, 2) + iv(3, 4), 4, 6));
  CHECK(same(iv(4, 6) - iv(1, 2), 2, 5));
  const FPInterval x = iv(-0.75, 1.5);
  CHECK(same(iv(0, 0) + x, -0.75, 1.5));
  const FPInterval d = x - x;
  CHECK(d.contains(0));
  CHECK(d.width() <= 2 * x.width());
}

TEST_CASE("one third plus one sixth at 8 bits contains one half") {
  const FPInterval a = FPInterval::enclose(mpq_class(1, 3), 8);
  const FPInterval b = FPInterval::enclose(mpq_class(1, 6), 8);
  CHECK_FALSE(a.is_point());
  const FPInterval s = a + b;
  CHECK(s.contains(mpq_class(1, 2)));
  CHECK(s.prec() == 8);
}

TEST_CASE("multiplication uses the four corners") {
  CHECK(same(iv(-1, 2) * iv(3, 4), -4, 8));
  CHECK(same(iv(2, 3) * iv(-5, -4), -15, -8));
  CHECK(same(iv(-2, 3) * iv(-5, 4), -15, 12));
}

TEST_CASE("inverse and division") {
  CHECK(same(iv_inv(iv(2, 4)), 0.25, 0.5));
  CHECK(same(iv_inv(iv(-4, -2)), -0.5, -0.25));
  CHECK_THROWS_AS(iv_inv(iv(-1, 1)), DomainError);
  CHECK_THROWS_AS(iv_inv(iv(0, 1)), DomainError);
  CHECK(same(iv(1, 2) / iv(2, 4), 0.25, 1));
}

TEST_CASE("abs and max") {
  CHECK(same(iv_abs(iv(-3, -1)), 1, 3));
  CHECK(same(iv_abs(iv(-1, 2)), 0, 2));
  CHECK(same(iv_abs(iv(1, 2)), 1, 2));
  const std::vector<FPInterval> xs{iv(1, 2), iv(0, 3)};
  CHECK(same(iv_max(xs), 1, 3));
}

TEST_CASE("mixed precision is rejected") {
  CHECK_THROWS_AS(iv(1, 2, 24) + iv(1, 2, 53), std::invalid_argument);
  CHECK_THROWS_AS(iv(1, 2, 24) * iv(1, 2, 53), std::invalid_argument);
}

TEST_CASE("certified comparisons") {
  const FPInterval eta = FPInterval::enclose(mpq_class(51, 100), 53);
  CHECK(iv_leq(iv(0.1, 0.2), eta) == Tri::True);
  CHECK(iv_leq(iv(0.6, 0.7), eta) == Tri::False);
  CHECK(iv_leq(iv(0.50, 0.52), eta) == Tri::Unknown);
  CHECK(iv_lt(iv(1, 2), iv(2, 3)) == Tri::Unknown);
  CHECK(iv_leq(iv(1, 2), iv(2, 3)) == Tri::True);
  CHECK(iv_lt(iv(2, 3), iv(1, 2)) == Tri::False);
}

TEST_CASE("three-valued conjunction") {
  CHECK(tri_and(Tri::False, Tri::Unknown) == Tri::False);
  CHECK(tri_and(Tri::Unknown, Tri::False) == Tri::False);
  CHECK(tri_and(Tri::True, Tri::True) == Tri::True);
  CHECK(tri_and(Tri::True, Tri::Unknown) == Tri::Unknown);
  CHECK(tri_not(Tri::Unknown) == Tri::Unknown);
}

TEST_CASE("eta-closest integer") {
  const mpq_class eta(51, 100);
  auto q = [](long num, long den) { return mpq_class(num, den); };
  // Bounds rounded inward so every point lies within [1.49, 1.51].
  const FPInterval tie(BigFloat::from(q(149, 100), 53, MPFR_RNDU), BigFloat::from(q(151, 100), 53, MPFR_RNDD));
  CHECK(eta_closest_integer(tie, eta) == 2);
  // The outward enclosure reaches below 1.49, so 2 is no longer within eta of all of it.
  CHECK_THROWS_AS(eta_closest_integer(FPInterval::enclose(q(149, 100), q(151, 100), 53), eta), PrecisionError);
  CHECK(eta_closest_integer(FPInterval::enclose(q(31, 10), q(32, 10), 53), eta) == 3);
  CHECK(eta_closest_integer(FPInterval::enclose(q(-32, 10), q(-31, 10), 53), eta) == -3);
  CHECK_THROWS_AS(eta_closest_integer(FPInterval::enclose(q(0, 1), q(12, 10), 53), eta), PrecisionError);
  CHECK_THROWS_AS(eta_closest_integer(FPInterval::entire(53), eta), PrecisionError);
  CHECK(round_half_away(q(5, 2)) == 3);
  CHECK(round_half_away(q(-5, 2)) == -3);
  CHECK(round_half_away(q(-7, 3)) == -2);
}

TEST_CASE("eta-closest integer contract on sampled points") {
  Rng rng(11);
  const mpq_class eta(51, 100);
  int returned = 0;
  for (int t = 0; t < 2000; ++t) {
    const mpq_class a = rng.rational(5000, 997);
    const mpq_class w(rng.uniform(0, 120), 100);
    const FPInterval x = FPInterval::enclose(a, a + w, 24);
    mpz_class X;
    try {
      X = eta_closest_integer(x, eta);
    } catch (const PrecisionError&) {
      // Then no integer at all is valid: the width exceeds 2 eta or the
      // rounded midpoint already fails, and it is the best candidate.
      const mpq_class lo = x.lo().to_rational();
      const mpq_class hi = x.hi().to_rational();
      for (mpz_class c = round_half_away(lo) - 2; c <= round_half_away(hi) + 2; ++c) {
        CHECK_FALSE((hi - c <= eta && c - lo <= eta));
      }
      continue;
    }
    ++returned;
    const mpq_class lo = x.lo().to_rational();
    const mpq_class hi = x.hi().to_rational();
    for (int s = 0; s <= 10; ++s) {
      const mpq_class pt = lo + (hi - lo) * mpq_class(s, 10);
      CHECK(abs(pt - X) <= eta);
    }
  }
  CHECK(returned > 500);
}

TEST_CASE("integral and fixed-point representations") {
  const FixedPointRep same_acc = integral_refine({5, 3}, 3);
  CHECK(same_acc.center == 5);
  CHECK(same_acc.radius == 1);
  const FixedPointRep r = integral_refine({5, 3}, 5);
  CHECK(r.center == 20);
  CHECK(r.radius == 4);
  CHECK(r.accuracy == 5);
  CHECK_THROWS_AS(integral_refine({5, 3}, 2), std::invalid_argument);

  const FixedPointRep s = fixedpoint_add({4, 1, 0}, {6, 1, 0});
  CHECK(s.center == 10);
  CHECK(s.radius == 2);
  const FixedPointRep z = fixedpoint_intmul({4, 1, 0}, 0);
  CHECK(z.center == 0);
  CHECK(z.radius == 0);
  const FixedPointRep m = fixedpoint_intmul({3, 2, 0}, -5);
  CHECK(m.center == -15);
  CHECK(m.radius == 10);
  CHECK_THROWS_AS(fixedpoint_add({1, 1, 2}, {1, 1, 3}), std::invalid_argument);
}

TEST_CASE("refinement keeps the membership guarantee") {
  Rng rng(5);
  for (int t = 0; t < 10000; ++t) {
    const mpq_class x = rng.rational(1 << 20, 1 << 12);
    const unsigned n = static_cast<unsigned>(rng.uniform(0, 20));
    const unsigned n2 = n + static_cast<unsigned>(rng.uniform(0, 20));
    mpq_class scaled = x;
    mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), n);
    const IntegralRep rep{round_half_away(scaled), n};
    REQUIRE(FixedPointRep::from(rep).contains_scaled(x));
    CHECK(integral_refine(rep, n2).contains_scaled(x));
  }
}

TEST_CASE("conversion to floating-point intervals") {
  CHECK(convert_to_fp_interval(mpz_class(7), 53).is_point());
  const mpz_class big = (mpz_class(1) << 60) + 1;
  const FPInterval b = convert_to_fp_interval(big, 10);
  CHECK_FALSE(b.is_point());
  CHECK(b.contains(mpq_class(big)));
  const FPInterval f = convert_to_fp_interval(FixedPointRep{20, 9, 2}, 53);
  CHECK(f.lo().to_double() <= 11);
  CHECK(f.hi().to_double() >= 29);
  const FPInterval g = convert_to_fp_interval(mpz_class(20), mpz_class(9), 53);
  CHECK(same(g, 11, 29));
}

TEST_CASE("containment of random operations") {
  Rng rng(2024);
  for (mpfr_prec_t prec : {8, 24, 53, 113}) {
    for (int t = 0; t < 3000; ++t) {
      const mpq_class a = rng.rational(1L << 40, 1L << 30);
      mpq_class b = rng.rational(1L << 40, 1L << 30);
      if (b == 0) b = 1;
      const FPInterval x = around(rng, a, prec);
      const FPInterval y = around(rng, b, prec);
      CHECK((x + y).contains(a + b));
      CHECK((x - y).contains(a - b));
      CHECK((x * y).contains(a * b));
      CHECK(iv_abs(x).contains(abs(a)));
      if (!y.contains_zero()) {
        CHECK(iv_inv(y).contains(1 / b));
        CHECK((x / y).contains(a / b));
      }
    }
  }
}

TEST_CASE("higher precision gives nested results") {
  Rng rng(9);
  for (int t = 0; t < 2000; ++t) {
    const mpq_class a = rng.rational(1 << 20, 1 << 10);
    const mpq_class b = rng.rational(1 << 20, 1 << 10);
    const FPInterval lo = FPInterval::enclose(a, 24) * FPInterval::enclose(b, 24);
    const FPInterval hi = FPInterval::enclose(a, 113) * FPInterval::enclose(b, 113);
    CHECK(hi.subset_of(lo.with_prec(113)));
  }
}

TEST_CASE("comparison trichotomy matches overlap") {
  Rng rng(3);
  for (int t = 0; t < 2000; ++t) {
    const mpq_class a = rng.rational(100, 7);
    const mpq_class b = rng.rational(100, 7);
    const FPInterval x = FPInterval::enclose(a, a + mpq_class(rng.uniform(0, 20), 7), 53);
    const FPInterval thr = FPInterval::enclose(b, 53);
    const Tri r = iv_leq(x, thr);
    const bool overlap = !(x.hi() <= thr.lo()) && !(thr.hi() < x.lo());
    CHECK((r == Tri::Unknown) == overlap);
  }
}
