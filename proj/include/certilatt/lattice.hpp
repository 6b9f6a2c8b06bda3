#pragma once

// Lattice representations: an exact or approximate Gram matrix of an
// ambient basis, plus integer coordinates of the generating vectors.

#include <certilatt/interval.hpp>
#include <certilatt/matrix.hpp>

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <variant>

namespace certilatt {

// Exact integral Gram matrix. Positive-definiteness is not assumed.
struct GramExact {
  IntMatrix entries;

  // Throws ParseError unless `m` is square and symmetric.
  static GramExact from(IntMatrix m);
  std::size_t dim() const { return entries.rows(); }
};

// Integral representation at accuracy n: |centers(i,j) - 2^n G(i,j)| <= 1.
struct GramApprox {
  IntMatrix centers;
  unsigned accuracy = 0;

  static GramApprox from(IntMatrix centers, unsigned accuracy);
  std::size_t dim() const { return centers.rows(); }
};

// Supplies the Gram matrix at any requested accuracy. Answers for
// increasing accuracies must describe the same real matrix.
class GramOracle {
 public:
  virtual ~GramOracle() = default;
  virtual std::size_t dim() const = 0;
  virtual GramApprox query(unsigned accuracy) = 0;
};

// Exact rational Gram matrix rounded to the nearest integer at each accuracy.
class RationalGramOracle : public GramOracle {
 public:
  explicit RationalGramOracle(RatMatrix gram);
  std::size_t dim() const override { return gram_.rows(); }
  GramApprox query(unsigned accuracy) override;
  const RatMatrix& exact() const { return gram_; }

 private:
  RatMatrix gram_;
};

// A single stored approximation; only its own accuracy can be served.
class FixedGramOracle : public GramOracle {
 public:
  explicit FixedGramOracle(GramApprox gram) : gram_(std::move(gram)) {}
  std::size_t dim() const override { return gram_.dim(); }
  GramApprox query(unsigned accuracy) override;

 private:
  GramApprox gram_;
};

// Debug decorator: cross-checks every answer against the previous one via
// |G_n' - 2^(n'-n) G_n| <= 2^(n'-n) + 1 and throws OracleError on a mismatch.
class CheckedGramOracle : public GramOracle {
 public:
  explicit CheckedGramOracle(std::shared_ptr<GramOracle> inner) : inner_(std::move(inner)) {}
  std::size_t dim() const override { return inner_->dim(); }
  GramApprox query(unsigned accuracy) override;

 private:
  std::shared_ptr<GramOracle> inner_;
  std::optional<GramApprox> last_;
};

bool oracle_answers_consistent(const GramApprox& coarse, const GramApprox& fine);

using GramSource = std::variant<GramExact, GramApprox, std::shared_ptr<GramOracle>>;

struct LatticeInput {
  GramSource gram;
  IntMatrix vectors;  // p x D, rows are coordinates in the ambient basis

  std::size_t ambient_dim() const;
  // Throws ParseError on dimension mismatches or an empty family.
  void validate() const;
};

mpz_class one_norm(std::span<const mpz_class> v);

// GramL(i,j) = L_i^T G L_j, exact.
IntMatrix graml_exact(const GramExact& g, const IntMatrix& L);

struct CenterRadius {
  mpz_class center;
  mpz_class radius;
};

// Center L_i^T G_n L_j and radius ||L_i||_1 ||L_j||_1; the interval contains
// 2^n <l_i, l_j>.
Matrix<CenterRadius> graml_approx(const GramApprox& g, const IntMatrix& L);

// Test support for small symmetric matrices.
struct RationalBounds {
  mpq_class lower;
  mpq_class upper;
};

// Number of eigenvalues strictly below x, from the signs of the leading
// principal minors of S - xI. Empty when some minor vanishes at x.
std::optional<std::size_t> count_eigenvalues_below(const RatMatrix& s, const mpq_class& x);

// Enclosure of the smallest eigenvalue with upper - lower <= width.
RationalBounds smallest_eigenvalue(const RatMatrix& s, const mpq_class& width);

// Enclosure of the smallest eigenvalue of any S' = 2^n S + Delta with
// symmetric Delta entries in [-2, 2]: [2^n lambda - 2d, 2^n lambda + 2d].
RationalBounds eigen_shift_bounds(const RatMatrix& s, unsigned accuracy,
                                  const mpq_class& width = mpq_class(1, 1 << 20));

}  // namespace certilatt
