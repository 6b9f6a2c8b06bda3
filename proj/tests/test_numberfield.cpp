#include <certilatt/errors.hpp>
#include <certilatt/numberfield.hpp>
#include <certilatt/reference.hpp>

#include <doctest.h>

using namespace certilatt;

namespace {

Polynomial poly(std::vector<long> c) { return Polynomial(std::vector<mpz_class>(c.begin(), c.end())); }

FieldElement el(std::vector<long> c, long denom = 1) {
  return FieldElement::make(std::vector<mpz_class>(c.begin(), c.end()), denom);
}

std::shared_ptr<NumberField> field(std::vector<long> c) { return std::make_shared<NumberField>(poly(c)); }

bool within_one(const IntMatrix& centers, const IntMatrix& scaled) {
  for (std::size_t i = 0; i < centers.rows(); ++i)
    for (std::size_t j = 0; j < centers.cols(); ++j)
      if (abs(centers(i, j) - scaled(i, j)) > 1) return false;
  return true;
}

IntMatrix scaled(std::vector<std::vector<long>> rows, unsigned n) {
  IntMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = mpz_class(rows[i][j]) << n;
  return m;
}

}  // namespace

TEST_CASE("polynomials") {
  const Polynomial p = poly({1, 0, 1, 0, 0});
  CHECK(p.degree() == 2);
  CHECK(p.is_monic());
  CHECK(p.is_squarefree());
  CHECK(poly({1, 2, 1}).is_squarefree() == false);
  CHECK(p.derivative().coeffs() == std::vector<mpz_class>{0, 2});
  CHECK_THROWS_AS(NumberField(poly({1, 0, 2})), ParseError);
  CHECK_THROWS_AS(NumberField(poly({1, 2, 1})), ParseError);
  CHECK_THROWS_AS(NumberField(poly({5})), ParseError);
}

TEST_CASE("field elements normalize") {
  const FieldElement a = el({2, 4}, -6);
  CHECK(a.denom == 3);
  CHECK(a.coords == std::vector<mpz_class>{-1, -2});
  CHECK(FieldElement::from_rationals({mpq_class(1, 2), mpq_class(1, 3)}) == el({3, 2}, 6));
}

TEST_CASE("field multiplication") {
  const NumberField k(poly({1, 0, 1}));
  CHECK(field_mul(k.generator(), k.generator(), k) == el({-1, 0}));
  const FieldElement a = el({3, -7}, 2);
  CHECK(field_mul(a, k.one(), k) == a);
  CHECK(field_mul(el({2, 1}), el({2, -1}), k) == el({5, 0}));
  const NumberField c(poly({-2, 0, 0, 1}));
  const FieldElement x = c.generator();
  CHECK(field_mul(field_mul(x, x, c), x, c) == el({2, 0, 0}));
}

TEST_CASE("signature") {
  CHECK(NumberField(poly({1, 0, 1})).r1() == 0);
  CHECK(NumberField(poly({1, 0, 1})).r2() == 1);
  CHECK(NumberField(poly({-2, 0, 1})).r1() == 2);
  const NumberField c(poly({-2, 0, 0, 1}));
  CHECK(c.r1() == 1);
  CHECK(c.r2() == 1);
  const NumberField q(poly({1, 0, 0, 0, 1}));
  CHECK(q.r1() == 0);
  CHECK(q.r2() == 2);
}

TEST_CASE("certified roots") {
  NumberField gi(poly({1, 0, 1}));
  const auto boxes = gi.roots_to_accuracy(10);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].contains(0, 1));
  CHECK(boxes[0].re.width() <= mpq_class(1, 1024));
  CHECK(boxes[0].im.width() <= mpq_class(1, 1024));

  NumberField r2(poly({-2, 0, 1}));
  const auto b20 = r2.roots_to_accuracy(20);
  REQUIRE(b20.size() == 2);
  CHECK(b20[1].re.subset_of(FPInterval::enclose(mpq_class(1414213, 1000000), mpq_class(1414214, 1000000), 64)));
  CHECK(b20[0].re.hi().to_rational() < 0);
  CHECK(b20[1].re.width() <= mpq_class(1, 1 << 20));
  for (const auto& b : b20) {
    // sqrt 2 squared lies within the squared box.
    const FPInterval sq = iv_mul(b.re, b.re);
    CHECK(sq.contains(2));
  }

  const auto b10 = r2.roots_to_accuracy(10);
  const auto b30 = r2.roots_to_accuracy(30);
  for (std::size_t i = 0; i < 2; ++i) CHECK(b30[i].with_prec(b10[i].prec()).subset_of(b10[i]));
}

TEST_CASE("roots of a mixed-signature field are nested and disjoint") {
  NumberField k(poly({-2, 0, 0, 1}));
  const auto b8 = k.roots_to_accuracy(8);
  const auto b40 = k.roots_to_accuracy(40);
  REQUIRE(b40.size() == 2);
  CHECK(b40[0].im.contains(0));
  CHECK(b40[1].im.lo().sign() > 0);
  CHECK(iv_mul(iv_mul(b40[0].re, b40[0].re), b40[0].re).contains(2));
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(b40[i].re.width() <= mpq_class(1, mpz_class(1) << 40));
    CHECK(b40[i].subset_of(b8[i]));
  }
}

TEST_CASE("complex interval arithmetic") {
  const mpfr_prec_t p = 64;
  const ComplexInterval i(FPInterval::enclose(mpq_class(0), p), FPInterval::enclose(mpq_class(1), p));
  const ComplexInterval two(FPInterval::enclose(mpq_class(2), p), FPInterval::enclose(mpq_class(0), p));
  CHECK((i * i).contains(-1, 0));
  CHECK((two + i).contains(2, 1));
  CHECK((two - i).contains(2, -1));
  CHECK((two / (two + i)).contains(mpq_class(4, 5), mpq_class(-2, 5)));
  const ComplexInterval zero(FPInterval::enclose(mpq_class(-1, 8), mpq_class(1, 8), p),
                             FPInterval::enclose(mpq_class(0), p));
  CHECK_THROWS_AS(two / zero, DomainError);
}

TEST_CASE("embeddings") {
  NumberField k(poly({1, 0, 1}));
  const auto roots = k.roots_to_accuracy(60);
  const auto e = embed(el({2, 1}), roots, 80);
  REQUIRE(e.size() == 1);
  CHECK(e[0].contains(2, 1));
}

TEST_CASE("Archimedean Gram oracle") {
  auto gi = field({1, 0, 1});
  auto o = archimedean_gram_oracle(gi, {gi->one(), gi->generator()});
  for (unsigned n : {0u, 4u, 8u, 16u, 64u}) CHECK(within_one(o->query(n).centers, scaled({{2, 0}, {0, 2}}, n)));
  const IntMatrix c0 = o->query(0).centers;
  const IntMatrix c4 = o->query(4).centers;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(abs(c4(i, j) - 16 * c0(i, j)) <= 17);

  auto r2 = field({-2, 0, 1});
  auto o2 = archimedean_gram_oracle(r2, {r2->one(), r2->generator()});
  for (unsigned n : {0u, 8u, 30u}) CHECK(within_one(o2->query(n).centers, scaled({{2, 0}, {0, 4}}, n)));

  // Q(cbrt 2): <1,1> = 3 since 1 has absolute value 1 in all three embeddings.
  auto c = field({-2, 0, 0, 1});
  auto o3 = archimedean_gram_oracle(c, {c->one(), c->generator(), field_mul(c->generator(), c->generator(), *c)});
  const GramApprox a = o3->query(20);
  const GramApprox b = o3->query(45);
  CHECK(a.centers.is_symmetric());
  CHECK(oracle_answers_consistent(a, b));
  CHECK(abs(a.centers(0, 0) - (mpz_class(3) << 20)) <= 1);
}

TEST_CASE("ideal coordinate matrices") {
  const NumberField k(poly({1, 0, 1}));
  const std::vector<FieldElement> basis{k.one(), k.generator()};
  const IntMatrix L = ideal_to_coordinate_matrix(k, basis, TwoElement{el({2, 1}), el({5, 0})});
  CHECK(L == IntMatrix::from_rows({{2, 1}, {-1, 2}, {5, 0}, {0, 5}}));
  CHECK(ideal_to_coordinate_matrix(k, basis, ZBasis{basis}) == IntMatrix::identity(2));
  CHECK_THROWS_AS(ideal_to_coordinate_matrix(k, basis, ZBasis{{el({1, 0}, 2), el({0, 1})}}),
                  NotIntegralCoordinates);
  // Coordinates in a non-power basis (1, (1+i)).
  const std::vector<FieldElement> other{k.one(), el({1, 1})};
  CHECK(ideal_to_coordinate_matrix(k, other, ZBasis{basis}) == IntMatrix::from_rows({{1, 0}, {-1, 1}}));
}

TEST_CASE("combining coordinates") {
  const NumberField k(poly({1, 0, 1}));
  const auto out = combine(IntMatrix::from_rows({{2, 1}, {-1, 2}}), {k.one(), k.generator()});
  REQUIRE(out.size() == 2);
  CHECK(out[0] == el({2, 1}));
  CHECK(out[1] == el({-1, 2}));
}

TEST_CASE("ideal reduction") {
  const AdaptiveParams params;
  SUBCASE("(2+i) in Q(i)") {
    auto k = field({1, 0, 1});
    const IdealReduction r = reduce_ideal(k, {k->one(), k->generator()}, TwoElement{el({2, 1}), el({5, 0})}, params);
    REQUIRE(r.outcome.ok());
    REQUIRE(r.gram.has_value());
    CHECK(r.outcome.basis.rows() == 2);
    const unsigned n = r.gram->accuracy;
    CHECK(abs(r.gram->centers(0, 0) - (mpz_class(10) << n)) <= 1);
    CHECK(abs(r.gram->centers(1, 1) - (mpz_class(10) << n)) <= 1);
    CHECK(abs(determinant(r.outcome.basis)) == 5);
    // The Gram matrix describes the output rows themselves.
    CHECK(verify_reduced(*r.gram, IntMatrix::identity(2), params.delta, params.eta).verdict == Verdict::Reduced);
  }
  SUBCASE("unit ideal in Q(i)") {
    auto k = field({1, 0, 1});
    const IdealReduction r = reduce_ideal(k, {k->one(), k->generator()}, TwoElement{k->one(), k->one()}, params);
    REQUIRE(r.outcome.ok());
    CHECK(r.outcome.basis.rows() == 2);
    CHECK(abs(determinant(r.outcome.basis)) == 1);
    const unsigned n = r.gram->accuracy;
    const mpz_class det = r.gram->centers(0, 0) * r.gram->centers(1, 1) - r.gram->centers(0, 1) * r.gram->centers(1, 0);
    const mpz_class expected = mpz_class(4) << (2 * n);
    CHECK(abs(det - expected) <= (mpz_class(8) << n) + 8);
  }
  SUBCASE("(sqrt 2) in Q(sqrt 2)") {
    auto k = field({-2, 0, 1});
    const IdealReduction r = reduce_ideal(k, {k->one(), k->generator()}, TwoElement{k->generator(), k->generator()}, params);
    REQUIRE(r.outcome.ok());
    const unsigned n = r.gram->accuracy;
    CHECK(abs(r.gram->centers(0, 0) - (mpz_class(4) << n)) <= 1);
    CHECK(abs(determinant(r.outcome.basis)) == 2);
  }
}
