#include <certilatt/errors.hpp>
#include <certilatt/gso.hpp>
#include <certilatt/reference.hpp>

#include <doctest.h>

#include "support.hpp"

using namespace certilatt;
using certilatt::testing::Rng;

namespace {

IntMatrix M(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<mpz_class>> z;
  for (auto& r : rows) z.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(z);
}

const mpq_class kDelta(99, 100);
const mpq_class kEta(51, 100);

GramExact identity(std::size_t d) { return GramExact::from(IntMatrix::identity(d)); }

}  // namespace

TEST_CASE("rational GSO") {
  const RationalGSO g = RationalGSO::compute(identity(2), M({{1, 1}, {3, 2}}));
  CHECK(g.r[0] == 2);
  CHECK(g.mu(1, 0) == mpq_class(5, 2));
  CHECK(g.r[1] == mpq_class(1, 2));
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = rng.index(1, 6);
    const GramExact gram = testing::random_pd_gram(rng, d);
    const IntMatrix L = testing::random_basis(rng, d, 8);
    const RationalGSO gso = RationalGSO::compute(gram, L);
    mpq_class prod = 1;
    for (const mpq_class& r : gso.r) prod *= r;
    CHECK(prod == mpq_class(determinant(graml_exact(gram, L))));
  }
  // A dependent row gives a zero GSO vector.
  const RationalGSO dep = RationalGSO::compute(identity(2), M({{1, 2}, {2, 4}, {0, 1}}));
  CHECK(dep.r[1] == 0);
  CHECK(dep.r[2] == mpq_class(1, 5));
}

TEST_CASE("exact LLL examples") {
  CHECK(exact_lll(identity(2), IntMatrix::identity(2), kDelta) == IntMatrix::identity(2));
  const IntMatrix out = exact_lll(identity(2), M({{4, 1}, {1, 1}}), kDelta);
  CHECK(same_row_lattice(out, M({{1, 1}, {2, -1}})));
  CHECK(graml_exact(identity(2), out)(0, 0) == 2);
  CHECK(verify_reduced(identity(2), out, kDelta, mpq_class(1, 2)).verdict == Verdict::Reduced);
  CHECK_THROWS_AS(exact_lll(GramExact::from(M({{1, 0}, {0, -1}})), IntMatrix::identity(2), kDelta),
                  NotPositiveDefinite);
}

TEST_CASE("exact LLL on random bases") {
  Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = rng.index(1, 6);
    const GramExact g = (t % 2) ? identity(d) : testing::random_pd_gram(rng, d);
    const IntMatrix L = testing::random_basis(rng, d, 16);
    const IntMatrix out = exact_lll(g, L, kDelta);
    CHECK(verify_reduced(g, out, kDelta, mpq_class(501, 1000)).verdict == Verdict::Reduced);
    CHECK(determinant(graml_exact(g, out)) == determinant(graml_exact(g, L)));
    CHECK(related_by_unimodular(L, out));
  }
}

TEST_CASE("verifier examples") {
  CHECK(verify_reduced(identity(3), IntMatrix::identity(3), kDelta, kEta).verdict == Verdict::Reduced);
  const VerifyResult mu10 = verify_reduced(identity(2), M({{1, 0}, {10, 1}}), kDelta, kEta);
  CHECK(mu10.verdict == Verdict::NotReduced);
  REQUIRE(mu10.witness.has_value());
  CHECK(mu10.witness->kind == Witness::Kind::SizeReduction);
  CHECK(mu10.witness->i == 0);
  CHECK(mu10.witness->j == 1);
  const VerifyResult lov = verify_reduced(identity(2), M({{3, 0}, {0, 1}}), kDelta, kEta);
  CHECK(lov.verdict == Verdict::NotReduced);
  REQUIRE(lov.witness.has_value());
  CHECK(lov.witness->kind == Witness::Kind::Lovasz);
  const VerifyResult deg = verify_reduced(identity(2), M({{1, 0}, {2, 0}}), kDelta, kEta);
  CHECK(deg.verdict == Verdict::NotReduced);
  REQUIRE(deg.witness.has_value());
  CHECK(deg.witness->kind == Witness::Kind::Degenerate);
}

TEST_CASE("approximate verifier") {
  const GramApprox g10 = GramApprox::from(M({{1024, 0}, {0, 1024}}), 10);
  CHECK(verify_reduced(g10, IntMatrix::identity(2), kDelta, kEta).verdict == Verdict::Reduced);
  CHECK(verify_reduced(g10, M({{1, 0}, {10, 1}}), kDelta, kEta).verdict == Verdict::NotReduced);
  // At accuracy 2, |mu| of [[4,1],[1,4]] ranges over an interval straddling eta.
  const GramApprox straddle = GramApprox::from(M({{4, 1}, {1, 4}}), 2);
  CHECK(verify_reduced(straddle, IntMatrix::identity(2), kDelta, kEta).verdict == Verdict::Undecidable);
}

TEST_CASE("potentials") {
  CHECK(potential(identity(2), IntMatrix::identity(2)) == 1);
  CHECK(potential(GramExact::from(M({{1}})), M({{2}})) == 4);
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = rng.index(1, 5);
    const GramExact g = testing::random_pd_gram(rng, d);
    const IntMatrix L = testing::random_basis(rng, d, 6);
    CHECK(potential(g, L) == generalized_potential(g, L));
  }
  // Zero GSO vector at 1-based position 2: d_1 = 1, d_2 = 1, d_3 = 1/5 * 1, times 4^2.
  const RationalGSO dep = RationalGSO::compute(identity(2), M({{1, 0}, {2, 0}, {0, 1}}));
  CHECK(dep.r[1] == 0);
  CHECK(generalized_potential(dep) == mpq_class(16));
}

TEST_CASE("norm bound") {
  const IntMatrix red = M({{1, 1}, {2, -1}});
  const std::vector<bool> ok = check_norm_bound(identity(2), red, kDelta, kEta);
  REQUIRE(ok.size() == 2);
  CHECK(ok[0]);
  CHECK(ok[1]);
  // A long first vector violates the k = 1 bound.
  const std::vector<bool> bad = check_norm_bound(identity(2), M({{10, 1}, {1, 0}}), kDelta, kEta);
  CHECK_FALSE(bad[0]);
  CHECK(bad[1]);
}

TEST_CASE("Hermite normal form and lattice equality") {
  CHECK(hermite_normal_form(M({{2, 0}, {0, 3}, {2, 3}})) == M({{2, 0}, {0, 3}}));
  CHECK(hermite_normal_form(M({{4}, {6}})) == M({{2}}));
  CHECK(same_row_lattice(M({{1, 1}, {2, -1}}), M({{1, 1}, {0, 3}})));
  CHECK_FALSE(same_row_lattice(M({{1, 0}, {0, 2}}), M({{1, 0}, {0, 1}})));
  CHECK(determinant(M({{1, 2}, {3, 4}})) == -2);
  CHECK(rank(M({{1, 2}, {2, 4}, {0, 0}})) == 1);
  CHECK(related_by_unimodular(M({{1, 0}, {0, 1}}), M({{1, 1}, {0, 1}})));
  CHECK_FALSE(related_by_unimodular(M({{1, 0}, {0, 1}}), M({{2, 0}, {0, 1}})));
  Rng rng(44);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = rng.index(1, 5);
    const IntMatrix L = testing::random_basis(rng, d, 8);
    const IntMatrix S = testing::scramble(rng, L, 3 * d, 3);
    CHECK(same_row_lattice(L, S));
    CHECK(related_by_unimodular(L, S));
  }
}

TEST_CASE("llbar and exact LLL agree") {
  Rng rng(45);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = rng.index(1, 6);
    const GramExact g = testing::random_pd_gram(rng, d);
    const IntMatrix L = testing::random_basis(rng, d, 12);
    const ReductionOutcome r = llbar(g, L, ReductionParams{kDelta, kEta, 80});
    REQUIRE(r.ok());
    const IntMatrix e = exact_lll(g, L, kDelta);
    CHECK(verify_reduced(g, r.basis, kDelta, kEta).verdict == Verdict::Reduced);
    CHECK(verify_reduced(g, e, kDelta, kEta).verdict == Verdict::Reduced);
    CHECK(hermite_normal_form(r.basis) == hermite_normal_form(e));
  }
}

TEST_CASE("approximate verifier agrees with the exact one at high accuracy") {
  Rng rng(46);
  int reduced = 0, not_reduced = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = rng.index(2, 7);
    const GramExact g = testing::random_pd_gram(rng, d);
    IntMatrix L = testing::random_basis(rng, d, 12);
    if (t % 2) L = exact_lll(g, L, kDelta);
    IntMatrix centers = g.entries;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) centers(i, j) <<= 80;
    const GramApprox ga = GramApprox::from(centers, 80);
    const Verdict exact = verify_reduced(g, L, kDelta, kEta).verdict;
    CHECK(verify_reduced(ga, L, kDelta, kEta).verdict == exact);
    (exact == Verdict::Reduced ? reduced : not_reduced)++;
  }
  CHECK(reduced > 0);
  CHECK(not_reduced > 0);
}
