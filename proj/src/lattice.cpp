#include <certilatt/lattice.hpp>

#include <certilatt/errors.hpp>

#include <string>

namespace certilatt {

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMatrix c(a.rows(), b.cols(), mpz_class(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = mpq_class(a(i, j));
  return r;
}

bool is_zero_row(const IntMatrix& m, std::size_t i) {
  for (const mpz_class& x : m.row(i))
    if (x != 0) return false;
  return true;
}

mpz_class max_abs(const IntMatrix& m) {
  mpz_class best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const mpz_class& x : m.row(i))
      if (abs(x) > best) best = abs(x);
  return best;
}

GramExact GramExact::from(IntMatrix m) {
  if (!m.is_square() || m.rows() == 0) throw ParseError("Gram matrix must be square and non-empty");
  if (!m.is_symmetric()) throw ParseError("Gram matrix is not symmetric");
  return GramExact{std::move(m)};
}

GramApprox GramApprox::from(IntMatrix centers, unsigned accuracy) {
  if (!centers.is_square() || centers.rows() == 0)
    throw ParseError("Gram matrix must be square and non-empty");
  if (!centers.is_symmetric()) throw ParseError("Gram matrix is not symmetric");
  return GramApprox{std::move(centers), accuracy};
}

RationalGramOracle::RationalGramOracle(RatMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_square() || gram_.rows() == 0 || !gram_.is_symmetric())
    throw ParseError("rational Gram matrix must be square and symmetric");
}

GramApprox RationalGramOracle::query(unsigned accuracy) {
  IntMatrix centers(gram_.rows(), gram_.cols());
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < gram_.cols(); ++j) {
      mpq_class scaled = gram_(i, j);
      mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), accuracy);
      centers(i, j) = round_half_away(scaled);
    }
  return GramApprox{std::move(centers), accuracy};
}

GramApprox FixedGramOracle::query(unsigned accuracy) {
  if (accuracy != gram_.accuracy) {
    throw OracleError("fixed Gram matrix is only available at accuracy " +
                      std::to_string(gram_.accuracy) + " (requested " +
                      std::to_string(accuracy) + ")");
  }
  return gram_;
}

bool oracle_answers_consistent(const GramApprox& coarse, const GramApprox& fine) {
  if (coarse.dim() != fine.dim() || fine.accuracy < coarse.accuracy) return false;
  const unsigned shift = fine.accuracy - coarse.accuracy;
  const mpz_class bound = (mpz_class(1) << shift) + 1;
  for (std::size_t i = 0; i < coarse.dim(); ++i)
    for (std::size_t j = 0; j < coarse.dim(); ++j) {
      mpz_class diff = fine.centers(i, j) - (coarse.centers(i, j) << shift);
      if (abs(diff) > bound) return false;
    }
  return true;
}

GramApprox CheckedGramOracle::query(unsigned accuracy) {
  GramApprox g = inner_->query(accuracy);
  if (g.accuracy != accuracy || g.dim() != inner_->dim() || !g.centers.is_symmetric())
    throw OracleError("oracle returned a malformed Gram matrix");
  if (last_) {
    const bool ok = last_->accuracy <= accuracy ? oracle_answers_consistent(*last_, g)
                                                : oracle_answers_consistent(g, *last_);
    if (!ok) {
      throw OracleError("oracle answers at accuracies " + std::to_string(last_->accuracy) +
                        " and " + std::to_string(accuracy) + " are inconsistent");
    }
  }
  last_ = g;
  return g;
}

std::size_t LatticeInput::ambient_dim() const {
  return std::visit(
      [](const auto& g) -> std::size_t {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, std::shared_ptr<GramOracle>>) {
          return g->dim();
        } else {
          return g.dim();
        }
      },
      gram);
}

void LatticeInput::validate() const {
  if (vectors.rows() == 0) throw ParseError("lattice has no vectors");
  if (vectors.cols() != ambient_dim()) {
    throw ParseError("vector length " + std::to_string(vectors.cols()) +
                     " does not match the Gram dimension " + std::to_string(ambient_dim()));
  }
}

mpz_class one_norm(std::span<const mpz_class> v) {
  mpz_class s = 0;
  for (const mpz_class& x : v) s += abs(x);
  return s;
}

namespace {

// rows(L) * G, computed once and reused for every pair.
IntMatrix left_product(const IntMatrix& g, const IntMatrix& L) {
  if (L.cols() != g.rows()) throw std::invalid_argument("vector length does not match Gram dimension");
  return mat_mul(L, g);
}

mpz_class dot(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

IntMatrix graml_exact(const GramExact& g, const IntMatrix& L) {
  const IntMatrix lg = left_product(g.entries, L);
  IntMatrix out(L.rows(), L.rows());
  for (std::size_t i = 0; i < L.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      out(i, j) = dot(lg.row(i), L.row(j));
      out(j, i) = out(i, j);
    }
  return out;
}

Matrix<CenterRadius> graml_approx(const GramApprox& g, const IntMatrix& L) {
  const IntMatrix lg = left_product(g.centers, L);
  std::vector<mpz_class> norms(L.rows());
  for (std::size_t i = 0; i < L.rows(); ++i) norms[i] = one_norm(L.row(i));
  Matrix<CenterRadius> out(L.rows(), L.rows());
  for (std::size_t i = 0; i < L.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      out(i, j) = CenterRadius{dot(lg.row(i), L.row(j)), norms[i] * norms[j]};
      out(j, i) = out(i, j);
    }
  return out;
}

std::optional<std::size_t> count_eigenvalues_below(const RatMatrix& s, const mpq_class& x) {
  // Symmetric Gaussian elimination on S - xI; the pivots are ratios of
  // consecutive leading minors, so their signs give the inertia.
  const std::size_t n = s.rows();
  RatMatrix a = s;
  for (std::size_t i = 0; i < n; ++i) a(i, i) -= x;
  std::size_t negatives = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) return std::nullopt;
    if (sgn(a(k, k)) < 0) ++negatives;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const mpq_class f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return negatives;
}

RationalBounds smallest_eigenvalue(const RatMatrix& s, const mpq_class& width) {
  if (!s.is_square() || s.rows() == 0 || !s.is_symmetric())
    throw std::invalid_argument("smallest_eigenvalue needs a non-empty symmetric matrix");
  // Gershgorin radius bounds the spectrum.
  mpq_class bound = 0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    mpq_class r = 0;
    for (std::size_t j = 0; j < s.cols(); ++j) r += abs(s(i, j));
    if (r > bound) bound = r;
  }
  mpq_class lo = -bound - 1;
  mpq_class hi = bound + 1;
  while (hi - lo > width) {
    mpq_class mid = (lo + hi) / 2;
    auto count = count_eigenvalues_below(s, mid);
    // A vanishing minor only means mid is special; nudge it and retry.
    mpq_class nudge = (hi - lo) / 1024;
    while (!count) {
      mid += nudge;
      nudge /= 2;
      count = count_eigenvalues_below(s, mid);
    }
    if (*count >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

RationalBounds eigen_shift_bounds(const RatMatrix& s, unsigned accuracy, const mpq_class& width) {
  RationalBounds lam = smallest_eigenvalue(s, width);
  mpq_class scale(mpz_class(1) << accuracy);
  const mpq_class slack(2 * static_cast<long>(s.rows()));
  return {scale * lam.lower - slack, scale * lam.upper + slack};
}

}  // namespace certilatt
