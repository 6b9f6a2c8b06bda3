#include <certilatt/reference.hpp>

#include <certilatt/errors.hpp>
#include <certilatt/interval.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace certilatt {

RationalGSO RationalGSO::compute(const RatMatrix& gram) {
  const std::size_t p = gram.rows();
  RationalGSO out{RatMatrix(p, p, mpq_class(0)), std::vector<mpq_class>(p)};
  RatMatrix rr(p, p, mpq_class(0));  // <b_i, b*_j>
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      mpq_class v = gram(i, j);
      for (std::size_t l = 0; l < j; ++l) v -= out.mu(j, l) * rr(i, l);
      rr(i, j) = v;
      if (j < i) out.mu(i, j) = out.r[j] == 0 ? mpq_class(0) : v / out.r[j];
    }
    out.r[i] = rr(i, i);
    out.mu(i, i) = 1;
  }
  return out;
}

RationalGSO RationalGSO::compute(const GramExact& g, const IntMatrix& L) {
  return compute(to_rational(graml_exact(g, L)));
}

IntMatrix exact_lll(const GramExact& g, IntMatrix L, const mpq_class& delta) {
  const std::size_t d = L.rows();
  if (d == 0) return L;
  RationalGSO gso = RationalGSO::compute(g, L);
  for (std::size_t i = 0; i < d; ++i)
    if (gso.r[i] <= 0) throw NotPositiveDefinite("squared GSO norm " + std::to_string(i) + " is not positive");

  std::size_t k = 1;
  while (k < d) {
    for (std::size_t j = k; j-- > 0;) {
      if (abs(gso.mu(k, j)) * 2 <= 1) continue;
      const mpz_class x = round_half_away(gso.mu(k, j));
      for (std::size_t c = 0; c < L.cols(); ++c) L(k, c) -= x * L(j, c);
      for (std::size_t l = 0; l < j; ++l) gso.mu(k, l) -= x * gso.mu(j, l);
      gso.mu(k, j) -= x;
    }
    const mpq_class m = gso.mu(k, k - 1);
    if (delta * gso.r[k - 1] > gso.r[k] + m * m * gso.r[k - 1]) {
      L.rotate_row_down(k - 1, k);
      gso = RationalGSO::compute(g, L);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  return L;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Reduced: return "reduced";
    case Verdict::NotReduced: return "not reduced";
    case Verdict::Undecidable: return "undecidable";
  }
  return "?";
}

const char* to_string(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::SizeReduction: return "size-reduction";
    case Witness::Kind::Lovasz: return "lovasz";
    case Witness::Kind::Degenerate: return "degenerate";
  }
  return "?";
}

VerifyResult verify_reduced(const GramExact& g, const IntMatrix& L, const mpq_class& delta,
                            const mpq_class& eta) {
  const RationalGSO gso = RationalGSO::compute(g, L);
  auto fail = [](Witness::Kind kind, std::size_t i, std::size_t j, std::string detail) {
    return VerifyResult{Verdict::NotReduced, Witness{kind, i, j, std::move(detail)}};
  };
  for (std::size_t j = 0; j < L.rows(); ++j) {
    if (gso.r[j] <= 0) return fail(Witness::Kind::Degenerate, j, j, "squared GSO norm " + gso.r[j].get_str());
    for (std::size_t i = 0; i < j; ++i) {
      if (abs(gso.mu(j, i)) > eta) return fail(Witness::Kind::SizeReduction, i, j, "mu = " + gso.mu(j, i).get_str());
    }
    if (j >= 1) {
      const mpq_class& m = gso.mu(j, j - 1);
      if (delta * gso.r[j - 1] > gso.r[j] + m * m * gso.r[j - 1]) {
        return fail(Witness::Kind::Lovasz, j - 1, j, "Lovasz condition fails");
      }
    }
  }
  return {};
}

VerifyResult verify_reduced(const GramApprox& g, const IntMatrix& L, const mpq_class& delta,
                            const mpq_class& eta, mpfr_prec_t precision) {
  const std::size_t p = L.rows();
  const Matrix<CenterRadius> gl = graml_approx(g, L);
  if (precision == 0) {
    std::size_t bits = 0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) bits = std::max(bits, mpz_sizeinbase(gl(i, j).center.get_mpz_t(), 2));
    precision = static_cast<mpfr_prec_t>(4 * bits + 64 * (p + 1));
  }
  const mpfr_prec_t prec = precision;
  Matrix<FPInterval> r(p, p, FPInterval(prec));
  Matrix<FPInterval> m(p, p, FPInterval(prec));
  const FPInterval eta_iv = FPInterval::enclose(eta, prec);
  const FPInterval delta_iv = FPInterval::enclose(delta, prec);

  bool unknown = false;
  std::optional<Witness> first_unknown;
  auto note = [&](Tri t, Witness::Kind kind, std::size_t i, std::size_t j, const std::string& what)
      -> std::optional<VerifyResult> {
    if (t == Tri::False) return VerifyResult{Verdict::NotReduced, Witness{kind, i, j, what}};
    if (t == Tri::Unknown && !unknown) {
      unknown = true;
      first_unknown = Witness{kind, i, j, what + " is undecided"};
    }
    return std::nullopt;
  };

  for (std::size_t k = 0; k < p; ++k) {
    // s = r(k,k) + mu(k,k-1)^2 r(k-1,k-1), evaluated before the last
    // subtraction to avoid the dependency blow-up.
    FPInterval s(prec);
    for (std::size_t j = 0; j <= k; ++j) {
      FPInterval v = convert_to_fp_interval(gl(k, j).center, gl(k, j).radius, prec);
      for (std::size_t i = 0; i < j; ++i) {
        if (j == k && i + 1 == k) s = v;
        v = v - m(j, i) * r(k, i);
      }
      r(k, j) = v;
      if (j < k) m(k, j) = r(k, j) / r(j, j);
    }
    const FPInterval& rkk = r(k, k);
    if (rkk.hi().sign() <= 0) {
      return VerifyResult{Verdict::NotReduced, Witness{Witness::Kind::Degenerate, k, k, "squared GSO norm " + rkk.str()}};
    }
    if (rkk.contains_zero()) {
      unknown = true;
      if (!first_unknown) first_unknown = Witness{Witness::Kind::Degenerate, k, k, "squared GSO norm " + rkk.str()};
      return VerifyResult{Verdict::Undecidable, first_unknown};
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (auto v = note(iv_leq(iv_abs(m(k, j)), eta_iv), Witness::Kind::SizeReduction, j, k,
                        "mu = " + m(k, j).str()))
        return *v;
    }
    if (k >= 1) {
      if (auto v = note(iv_leq(delta_iv * r(k - 1, k - 1), s), Witness::Kind::Lovasz, k - 1, k,
                        "Lovasz condition"))
        return *v;
    }
  }
  if (unknown) return VerifyResult{Verdict::Undecidable, first_unknown};
  return {};
}

mpq_class potential(const RationalGSO& gso) {
  mpq_class prefix = 1;
  mpq_class out = 1;
  for (const mpq_class& r : gso.r) {
    prefix *= r;
    out *= prefix;
  }
  return out;
}

mpq_class potential(const GramExact& g, const IntMatrix& L) { return potential(RationalGSO::compute(g, L)); }

mpq_class generalized_potential(const RationalGSO& gso) {
  std::vector<mpq_class> nonzero;
  mpq_class out = 1;
  for (std::size_t i = 0; i < gso.r.size(); ++i) {
    if (gso.r[i] != 0) {
      nonzero.push_back(gso.r[i]);
    } else {
      out *= mpq_class(mpz_class(1) << (2 * (i + 1)));
    }
  }
  mpq_class prefix = 1;
  for (std::size_t i = 0; i < gso.r.size(); ++i) {
    if (i < nonzero.size()) prefix *= nonzero[i];
    out *= prefix;
  }
  return out;
}

mpq_class generalized_potential(const GramExact& g, const IntMatrix& L) {
  return generalized_potential(RationalGSO::compute(g, L));
}

namespace {

mpq_class qpow(const mpq_class& b, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), e);
  return mpq_class(num, den);
}

}  // namespace

std::vector<bool> check_norm_bound(const GramExact& g, const IntMatrix& L, const mpq_class& delta,
                                   const mpq_class& eta) {
  const RationalGSO gso = RationalGSO::compute(g, L);
  const std::size_t d = L.rows();
  const mpq_class c = delta - eta * eta;
  mpq_class vol = 1;
  for (const mpq_class& r : gso.r) vol *= r;
  std::vector<bool> out;
  mpq_class vk = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    vk *= gso.r[k - 1];
    const unsigned long e = static_cast<unsigned long>(d * (d - k) * k);
    out.push_back(qpow(vk, 2 * d) * qpow(c, e) <= qpow(vol, 2 * k));
  }
  return out;
}

IntMatrix hermite_normal_form(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    // Euclid on column c among rows pivot_row..end.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = pivot_row; i < rows; ++i) {
        if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
      }
      if (best == rows) break;
      if (best != pivot_row) {
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(best, j), a(pivot_row, j));
      }
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(pivot_row, c).get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) a(i, j) -= q * a(pivot_row, j);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(pivot_row, c) == 0) continue;
    if (a(pivot_row, c) < 0)
      for (std::size_t j = c; j < cols; ++j) a(pivot_row, j) = -a(pivot_row, j);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(pivot_row, c).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= q * a(pivot_row, j);
    }
    ++pivot_row;
  }
  while (a.rows() > pivot_row) a.erase_row(a.rows() - 1);
  return a;
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return hermite_normal_form(a) == hermite_normal_form(b);
}

mpz_class determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return hermite_normal_form(a).rows(); }

bool related_by_unimodular(const IntMatrix& L, const IntMatrix& L_prime) {
  if (!L.is_square() || L.rows() != L_prime.rows() || L.cols() != L_prime.cols()) return false;
  const std::size_t n = L.rows();
  // Solve U L = L' as L^T U^T = L'^T by Gauss-Jordan on [L^T | L'^T].
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      aug(i, j) = L(j, i);
      aug(i, n + j) = L_prime(j, i);
    }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && aug(piv, c) == 0) ++piv;
    if (piv == n) return false;
    if (piv != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(piv, j), aug(c, j));
    const mpq_class inv = 1 / aug(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug(i, c) == 0) continue;
      const mpq_class f = aug(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(c, j);
    }
  }
  IntMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& v = aug(j, n + i);  // U(i, j) = (U^T)(j, i)
      if (v.get_den() != 1) return false;
      u(i, j) = v.get_num();
    }
  return abs(determinant(u)) == 1;
}

}  // namespace certilatt
