#pragma once

// Exact rational ground truth: Gram-Schmidt data, textbook LLL, the
// reduction verifier, potentials and lattice equality via Hermite forms.

#include <certilatt/lattice.hpp>
#include <certilatt/matrix.hpp>

#include <optional>
#include <string>
#include <vector>

namespace certilatt {

// mu(i,j) for j < i and squared GSO norms r[i]. Zero GSO vectors are allowed;
// their column of mu is 0.
struct RationalGSO {
  RatMatrix mu;
  std::vector<mpq_class> r;

  static RationalGSO compute(const RatMatrix& gram);
  static RationalGSO compute(const GramExact& g, const IntMatrix& L);
};

// Textbook LLL with eta = 1/2 rounding (ties away from zero). L must be a
// basis; throws NotPositiveDefinite when a squared GSO norm is <= 0.
IntMatrix exact_lll(const GramExact& g, IntMatrix L, const mpq_class& delta);

enum class Verdict { Reduced, NotReduced, Undecidable };

const char* to_string(Verdict v);

struct Witness {
  enum class Kind { SizeReduction, Lovasz, Degenerate };
  Kind kind;
  std::size_t i;  // 0-based; i < j except for Degenerate, where i == j
  std::size_t j;
  std::string detail;
};

const char* to_string(Witness::Kind k);

struct VerifyResult {
  Verdict verdict = Verdict::Reduced;
  std::optional<Witness> witness;
};

// Exact decision procedure; never Undecidable.
VerifyResult verify_reduced(const GramExact& g, const IntMatrix& L, const mpq_class& delta,
                            const mpq_class& eta);
// Interval check over every Gram matrix in the representation. `precision`
// 0 picks a generous default.
VerifyResult verify_reduced(const GramApprox& g, const IntMatrix& L, const mpq_class& delta,
                            const mpq_class& eta, mpfr_prec_t precision = 0);

// prod_i prod_{j<=i} r_j (squared flag covolumes).
mpq_class potential(const GramExact& g, const IntMatrix& L);
mpq_class potential(const RationalGSO& gso);
// prod_{i<=p} d_i * prod_{r_i = 0} 4^i (1-based i), d_i the product of the
// first i nonzero r_j.
mpq_class generalized_potential(const GramExact& g, const IntMatrix& L);
mpq_class generalized_potential(const RationalGSO& gso);

// Entry k-1 tells whether V_k^(2d) (delta - eta^2)^(d(d-k)k) <= V^(2k), where V_k
// is the squared volume of the first k rows and V that of all d rows.
std::vector<bool> check_norm_bound(const GramExact& g, const IntMatrix& L, const mpq_class& delta,
                                   const mpq_class& eta);

// Row-style Hermite normal form with zero rows dropped.
IntMatrix hermite_normal_form(IntMatrix a);
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b);

mpz_class determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

// L' = U L with U integral and det U = +-1. Both square and non-singular.
bool related_by_unimodular(const IntMatrix& L, const IntMatrix& L_prime);

}  // namespace certilatt
