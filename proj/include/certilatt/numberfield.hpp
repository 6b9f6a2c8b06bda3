#pragma once

// Number fields Q[X]/(P), certified root boxes of P, the Gram oracle of the
// Archimedean form and reduction of ideal lattices.

#include <certilatt/adaptive.hpp>
#include <certilatt/interval.hpp>
#include <certilatt/lattice.hpp>

#include <memory>
#include <variant>
#include <vector>

namespace certilatt {

// Integer coefficients, constant term first.
class Polynomial {
 public:
  explicit Polynomial(std::vector<mpz_class> coeffs);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_monic() const { return coeffs_.back() == 1; }
  // gcd(P, P') is constant.
  bool is_squarefree() const;
  Polynomial derivative() const;

 private:
  std::vector<mpz_class> coeffs_;
};

// (coords[0] + coords[1] a + ... ) / denom in the power basis of a root a.
struct FieldElement {
  std::vector<mpz_class> coords;
  mpz_class denom{1};

  // Normalizes to denom >= 1 and gcd(coords, denom) = 1.
  static FieldElement make(std::vector<mpz_class> coords, mpz_class denom = 1);
  static FieldElement from_rationals(const std::vector<mpq_class>& coords);
  std::vector<mpq_class> rationals() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// Rectangle re x im.
struct ComplexInterval {
  FPInterval re;
  FPInterval im;

  explicit ComplexInterval(mpfr_prec_t prec) : re(prec), im(prec) {}
  ComplexInterval(FPInterval r, FPInterval i) : re(std::move(r)), im(std::move(i)) {}
  mpfr_prec_t prec() const { return re.prec(); }
  ComplexInterval with_prec(mpfr_prec_t prec) const { return {re.with_prec(prec), im.with_prec(prec)}; }
  bool contains(const mpq_class& x, const mpq_class& y) const { return re.contains(x) && im.contains(y); }
  bool subset_of(const ComplexInterval& o) const { return re.subset_of(o.re) && im.subset_of(o.im); }
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
// Throws DomainError when b may vanish.
ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);

class NumberField {
 public:
  // Throws ParseError unless P is monic, squarefree and of degree >= 1.
  // Irreducibility is not checked.
  explicit NumberField(Polynomial p);

  const Polynomial& poly() const { return poly_; }
  std::size_t degree() const { return poly_.degree(); }
  std::size_t r1() const { return r1_; }
  std::size_t r2() const { return r2_; }

  FieldElement one() const;
  FieldElement generator() const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;

  // r1 real roots (im = [0, 0]) in increasing order, then r2 roots in the
  // upper half plane. Each box holds exactly one root and has sides of
  // width <= 2^-n; boxes for larger n are nested in earlier ones.
  std::vector<ComplexInterval> roots_to_accuracy(unsigned n);

 private:
  void refine(unsigned n);

  Polynomial poly_;
  std::size_t r1_ = 0;
  std::size_t r2_ = 0;
  mpfr_prec_t approx_prec_ = 0;
  std::vector<std::pair<BigFloat, BigFloat>> approx_;  // r1 reals then r2 upper roots
  std::vector<ComplexInterval> boxes_;
  unsigned certified_ = 0;
};

FieldElement field_mul(const FieldElement& a, const FieldElement& b, const NumberField& k);

// sigma(w) at each root box: r1 real values then r2 complex values.
std::vector<ComplexInterval> embed(const FieldElement& w, const std::vector<ComplexInterval>& roots,
                                   mpfr_prec_t prec);

// Gram oracle of <a, b> = sum over all embeddings of sigma(a) conj(sigma(b)).
std::shared_ptr<GramOracle> archimedean_gram_oracle(std::shared_ptr<NumberField> k,
                                                    std::vector<FieldElement> basis);

struct TwoElement {
  FieldElement alpha;
  FieldElement beta;
};

struct ZBasis {
  std::vector<FieldElement> elements;
};

using IdealSpec = std::variant<TwoElement, ZBasis>;

// Integer coordinates of the ideal generators in `basis`: 2d rows
// (alpha w_j, then beta w_j) or one row per Z-basis element. Throws
// NotIntegralCoordinates.
IntMatrix ideal_to_coordinate_matrix(const NumberField& k, const std::vector<FieldElement>& basis,
                                     const IdealSpec& spec);

struct IdealReduction {
  ReductionOutcome outcome;
  // Integral representation of the Gram matrix of the output rows at the
  // terminal accuracy; empty unless the reduction succeeded.
  std::optional<GramApprox> gram;
};

IdealReduction reduce_ideal(std::shared_ptr<NumberField> k, const std::vector<FieldElement>& basis,
                            const IdealSpec& spec, const AdaptiveParams& params);

// Elements sum_j L(i, j) basis[j].
std::vector<FieldElement> combine(const IntMatrix& L, const std::vector<FieldElement>& basis);

}  // namespace certilatt
