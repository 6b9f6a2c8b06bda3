#pragma once

#include <certilatt/lattice.hpp>
#include <certilatt/matrix.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <random>

namespace certilatt::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed), big_(gmp_randinit_mt) { big_.seed(seed); }

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  // Uniform in [-2^bits, 2^bits].
  mpz_class signed_bits(unsigned bits) {
    mpz_class x = big_.get_z_bits(bits + 1);
    return x - (mpz_class(1) << bits);
  }
  mpq_class rational(long num_bound, long den_bound) {
    mpq_class q(uniform(-num_bound, num_bound), uniform(1, den_bound));
    q.canonicalize();
    return q;
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  gmp_randclass big_;
};

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, unsigned bits) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.signed_bits(bits);
  return m;
}

// A^T A + I with small random A: positive definite and integral.
inline GramExact random_pd_gram(Rng& rng, std::size_t d, long entry = 3) {
  IntMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = rng.uniform(-entry, entry);
  IntMatrix g = mat_mul(a.transpose(), a);
  for (std::size_t i = 0; i < d; ++i) g(i, i) += 1;
  return GramExact::from(std::move(g));
}

// Full-rank d x d matrix with entries of up to `bits` bits.
inline IntMatrix random_basis(Rng& rng, std::size_t d, unsigned bits) {
  while (true) {
    IntMatrix m = random_matrix(rng, d, d, bits);
    mpz_class det = 0;
    // A cheap rank test: Gaussian elimination over Q.
    RatMatrix q = to_rational(m);
    bool singular = false;
    for (std::size_t c = 0; c < d && !singular; ++c) {
      std::size_t p = c;
      while (p < d && q(p, c) == 0) ++p;
      if (p == d) {
        singular = true;
        break;
      }
      for (std::size_t j = 0; j < d; ++j) std::swap(q(p, j), q(c, j));
      for (std::size_t i = c + 1; i < d; ++i) {
        const mpq_class f = q(i, c) / q(c, c);
        for (std::size_t j = c; j < d; ++j) q(i, j) -= f * q(c, j);
      }
    }
    if (!singular) return m;
  }
}

// Product of random elementary row operations applied to L.
inline IntMatrix scramble(Rng& rng, IntMatrix L, std::size_t steps, long coeff = 3) {
  const std::size_t p = L.rows();
  if (p < 2) return L;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.index(0, p - 1);
    std::size_t j = rng.index(0, p - 2);
    if (j >= i) ++j;
    const long x = rng.uniform(-coeff, coeff);
    for (std::size_t c = 0; c < L.cols(); ++c) L(i, c) += x * L(j, c);
  }
  return L;
}

// p = rows(B) + extra generators: B followed by integer combinations of B,
// then shuffled by unimodular row operations.
inline IntMatrix generating_family(Rng& rng, const IntMatrix& basis, std::size_t extra) {
  IntMatrix out = basis;
  for (std::size_t e = 0; e < extra; ++e) {
    std::vector<mpz_class> row(basis.cols(), mpz_class(0));
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      const long x = rng.uniform(-4, 4);
      for (std::size_t c = 0; c < basis.cols(); ++c) row[c] += x * basis(i, c);
    }
    out.append_row(row);
  }
  return scramble(rng, out, 4 * out.rows(), 2);
}

}  // namespace certilatt::testing
