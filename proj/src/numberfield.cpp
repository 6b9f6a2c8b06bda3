#include <certilatt/numberfield.hpp>

#include <certilatt/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace certilatt {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mod(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

QPoly poly_gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) throw ParseError("polynomial has no coefficients");
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) return Polynomial({0});
  std::vector<mpz_class> d(degree());
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(d));
}

bool Polynomial::is_squarefree() const {
  if (degree() == 0) return true;
  QPoly p(coeffs_.begin(), coeffs_.end());
  const Polynomial d = derivative();
  QPoly dp(d.coeffs().begin(), d.coeffs().end());
  return poly_gcd(p, dp).size() == 1;
}

FieldElement FieldElement::make(std::vector<mpz_class> coords, mpz_class denom) {
  if (denom == 0) throw std::invalid_argument("field element with zero denominator");
  if (denom < 0) {
    denom = -denom;
    for (mpz_class& c : coords) c = -c;
  }
  mpz_class g = denom;
  for (const mpz_class& c : coords) g = gcd(g, c);
  if (g > 1) {
    for (mpz_class& c : coords) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(denom.get_mpz_t(), denom.get_mpz_t(), g.get_mpz_t());
  }
  return FieldElement{std::move(coords), std::move(denom)};
}

FieldElement FieldElement::from_rationals(const std::vector<mpq_class>& coords) {
  mpz_class den = 1;
  for (const mpq_class& q : coords) den = lcm(den, q.get_den());
  std::vector<mpz_class> out;
  out.reserve(coords.size());
  for (const mpq_class& q : coords) {
    mpq_class scaled = q * den;
    out.push_back(scaled.get_num());
  }
  return make(std::move(out), den);
}

std::vector<mpq_class> FieldElement::rationals() const {
  std::vector<mpq_class> out;
  out.reserve(coords.size());
  for (const mpz_class& c : coords) {
    mpq_class q(c, denom);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

namespace {

FPInterval iv_sqr(const FPInterval& a) {
  FPInterval m = iv_abs(a);
  return m * m;
}

}  // namespace

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  const FPInterval norm = iv_sqr(b.re) + iv_sqr(b.im);
  const ComplexInterval num = a * ComplexInterval(b.re, -b.im);
  return {num.re / norm, num.im / norm};
}

namespace {

// Plain complex numbers at a fixed precision, rounded to nearest. Only the
// root approximation uses them; nothing here is certified.
struct Cx {
  BigFloat re;
  BigFloat im;
  explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
};

Cx cx_add(const Cx& a, const Cx& b) {
  Cx r(a.re.prec());
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

Cx cx_sub(const Cx& a, const Cx& b) {
  Cx r(a.re.prec());
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

Cx cx_mul(const Cx& a, const Cx& b) {
  const mpfr_prec_t p = a.re.prec();
  Cx r(p);
  BigFloat t(p);
  mpfr_mul(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(r.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
  return r;
}

BigFloat cx_abs(const Cx& a) {
  BigFloat r(a.re.prec());
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  return r;
}

// Empty when b is zero.
std::optional<Cx> cx_div(const Cx& a, const Cx& b) {
  const mpfr_prec_t p = a.re.prec();
  BigFloat n(p), t(p);
  mpfr_sqr(n.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
  if (n.is_zero()) return std::nullopt;
  Cx conj(p);
  mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
  Cx r = cx_mul(a, conj);
  mpfr_div(r.re.get(), r.re.get(), n.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), r.im.get(), n.get(), MPFR_RNDN);
  return r;
}

Cx cx_from(double re, double im, mpfr_prec_t p) {
  Cx r(p);
  mpfr_set_d(r.re.get(), re, MPFR_RNDN);
  mpfr_set_d(r.im.get(), im, MPFR_RNDN);
  return r;
}

Cx cx_with_prec(const Cx& a, mpfr_prec_t p) {
  Cx r(p);
  mpfr_set(r.re.get(), a.re.get(), MPFR_RNDN);
  mpfr_set(r.im.get(), a.im.get(), MPFR_RNDN);
  return r;
}

// P(z) and P'(z) by Horner.
std::pair<Cx, Cx> horner(const Polynomial& p, const Cx& z) {
  const mpfr_prec_t prec = z.re.prec();
  Cx v(prec), dv(prec);
  for (std::size_t i = p.degree() + 1; i-- > 0;) {
    dv = cx_add(cx_mul(dv, z), v);
    v = cx_mul(v, z);
    mpfr_add_z(v.re.get(), v.re.get(), p[i].get_mpz_t(), MPFR_RNDN);
  }
  return {std::move(v), std::move(dv)};
}

// Simultaneous Aberth iteration; returns once the corrections are below
// the working precision or the iteration budget runs out.
void aberth(const Polynomial& p, std::vector<Cx>& z, unsigned max_iter) {
  const std::size_t d = z.size();
  const mpfr_prec_t prec = z.front().re.prec();
  for (unsigned iter = 0; iter < max_iter; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < d; ++i) {
      auto [v, dv] = horner(p, z[i]);
      if (v.re.is_zero() && v.im.is_zero()) continue;
      auto n = cx_div(v, dv);
      if (!n) {
        // Stationary point: nudge and carry on.
        mpfr_add_d(z[i].re.get(), z[i].re.get(), 1e-3, MPFR_RNDN);
        converged = false;
        continue;
      }
      Cx s(prec);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        auto inv = cx_div(cx_from(1, 0, prec), cx_sub(z[i], z[j]));
        if (inv) s = cx_add(s, *inv);
      }
      Cx denom = cx_sub(cx_from(1, 0, prec), cx_mul(*n, s));
      auto corr = cx_div(*n, denom);
      if (!corr) corr = n;
      z[i] = cx_sub(z[i], *corr);
      // |corr| <= 2^(4-prec) (1 + |z|)
      BigFloat bound = cx_abs(z[i]);
      mpfr_add_ui(bound.get(), bound.get(), 1, MPFR_RNDN);
      mpfr_mul_2si(bound.get(), bound.get(), 4 - static_cast<long>(prec), MPFR_RNDN);
      if (bound < cx_abs(*corr)) converged = false;
    }
    if (converged) return;
  }
}

std::vector<Cx> initial_guesses(const Polynomial& p, mpfr_prec_t prec) {
  const std::size_t d = p.degree();
  double bound = 0;
  for (std::size_t i = 0; i < d; ++i) bound = std::max(bound, std::fabs(mpz_get_d(p[i].get_mpz_t())));
  const double radius = std::min(1.0 + bound, 1e300);
  std::vector<Cx> z;
  for (std::size_t k = 0; k < d; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + 0.7;
    const double r = radius * (0.5 + 0.5 * static_cast<double>(k + 1) / static_cast<double>(d));
    z.push_back(cx_from(r * std::cos(angle), r * std::sin(angle), prec));
  }
  return z;
}

FPInterval point(const BigFloat& x, mpfr_prec_t prec) {
  return FPInterval(BigFloat::from(x.to_rational(), prec, MPFR_RNDD), BigFloat::from(x.to_rational(), prec, MPFR_RNDU));
}

FPInterval hull_of(const FPInterval& x, const BigFloat& r) {
  BigFloat lo(x.prec()), hi(x.prec());
  mpfr_sub(lo.get(), x.lo().get(), r.get(), MPFR_RNDD);
  mpfr_add(hi.get(), x.hi().get(), r.get(), MPFR_RNDU);
  return FPInterval(std::move(lo), std::move(hi));
}

bool disjoint(const FPInterval& a, const FPInterval& b) { return b.hi() < a.lo() || a.hi() < b.lo(); }

bool disjoint(const ComplexInterval& a, const ComplexInterval& b) {
  return disjoint(a.re, b.re) || disjoint(a.im, b.im);
}

// Intersection of two intervals known to share a point.
FPInterval intersect(const FPInterval& a, const FPInterval& b) {
  const mpfr_prec_t p = std::max(a.prec(), b.prec());
  const FPInterval x = a.with_prec(p);
  const FPInterval y = b.with_prec(p);
  BigFloat lo = x.lo() < y.lo() ? y.lo() : x.lo();
  BigFloat hi = x.hi() < y.hi() ? x.hi() : y.hi();
  return FPInterval(std::move(lo), std::move(hi));
}

ComplexInterval conj(const ComplexInterval& z) { return {z.re, -z.im}; }

std::size_t coefficient_bits(const Polynomial& p) {
  std::size_t bits = 1;
  for (const mpz_class& c : p.coeffs()) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return bits;
}

}  // namespace

NumberField::NumberField(Polynomial p) : poly_(std::move(p)) {
  if (poly_.degree() < 1) throw ParseError("field polynomial must have degree at least 1");
  if (!poly_.is_monic()) throw ParseError("field polynomial must be monic");
  if (!poly_.is_squarefree()) throw ParseError("field polynomial is not squarefree");
  refine(0);
}

FieldElement NumberField::one() const {
  std::vector<mpz_class> c(degree(), mpz_class(0));
  c[0] = 1;
  return FieldElement::make(std::move(c));
}

FieldElement NumberField::generator() const {
  std::vector<mpz_class> c(degree(), mpz_class(0));
  if (degree() == 1) {
    c[0] = -poly_[0];
  } else {
    c[1] = 1;
  }
  return FieldElement::make(std::move(c));
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const {
  const std::size_t d = degree();
  if (a.coords.size() != d || b.coords.size() != d) throw std::invalid_argument("field element of wrong length");
  std::vector<mpz_class> prod(2 * d - 1, mpz_class(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coords[i] * b.coords[j];
  }
  for (std::size_t k = prod.size(); k-- > d;) {
    const mpz_class c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= c * poly_[i];
    prod[k] = 0;
  }
  prod.resize(d);
  return FieldElement::make(std::move(prod), a.denom * b.denom);
}

FieldElement field_mul(const FieldElement& a, const FieldElement& b, const NumberField& k) { return k.mul(a, b); }

void NumberField::refine(unsigned n) {
  if (!boxes_.empty() && certified_ >= n) return;
  const std::size_t d = degree();
  const mpfr_prec_t floor_prec = static_cast<mpfr_prec_t>(n + 32 + 2 * coefficient_bits(poly_) + 4 * d);
  mpfr_prec_t prec = std::max(approx_prec_, floor_prec);

  std::vector<Cx> z;
  if (approx_.empty()) {
    z = initial_guesses(poly_, prec);
  } else {
    for (const auto& [re, im] : approx_) {
      Cx c(prec);
      mpfr_set(c.re.get(), re.get(), MPFR_RNDN);
      mpfr_set(c.im.get(), im.get(), MPFR_RNDN);
      z.push_back(c);
      if (!im.is_zero()) {
        mpfr_neg(c.im.get(), c.im.get(), MPFR_RNDN);
        z.push_back(std::move(c));
      }
    }
  }

  for (unsigned attempt = 0; attempt < 64; ++attempt, prec *= 2) {
    for (Cx& c : z) c = cx_with_prec(c, prec);
    aberth(poly_, z, approx_.empty() && attempt == 0 ? 4000 : 200);

    // Snap near-real approximations onto the axis and pair the rest exactly.
    std::vector<Cx> reals, uppers;
    std::size_t lowers = 0;
    for (const Cx& c : z) {
      BigFloat tol = cx_abs(c);
      mpfr_add_ui(tol.get(), tol.get(), 1, MPFR_RNDN);
      mpfr_mul_2si(tol.get(), tol.get(), -static_cast<long>(prec / 2), MPFR_RNDN);
      BigFloat aim(prec);
      mpfr_abs(aim.get(), c.im.get(), MPFR_RNDN);
      if (aim <= tol) {
        Cx r = c;
        mpfr_set_zero(r.im.get(), 1);
        reals.push_back(std::move(r));
      } else if (c.im.sign() > 0) {
        uppers.push_back(c);
      } else {
        ++lowers;
      }
    }
    if (lowers != uppers.size()) continue;
    std::sort(reals.begin(), reals.end(), [](const Cx& a, const Cx& b) { return a.re < b.re; });
    std::sort(uppers.begin(), uppers.end(), [](const Cx& a, const Cx& b) {
      return cmp(a.re, b.re) != 0 ? a.re < b.re : a.im < b.im;
    });
    std::vector<Cx> all = reals;
    for (const Cx& c : uppers) all.push_back(c);
    for (const Cx& c : uppers) {
      Cx lo = c;
      mpfr_neg(lo.im.get(), lo.im.get(), MPFR_RNDN);
      all.push_back(std::move(lo));
    }
    z = all;

    // Weierstrass corrections W_i = P(z_i) / prod_{j != i} (z_i - z_j). The
    // z_i are the eigenvalues of diag(z) - W 1^T, so Gershgorin disks about
    // z_i - W_i with radius (d - 1)|W_i| that are pairwise disjoint each
    // hold exactly one root.
    const mpfr_prec_t cp = prec + 16;
    std::vector<ComplexInterval> pts;
    for (const Cx& c : all) pts.emplace_back(point(c.re, cp), point(c.im, cp));
    const std::size_t count = reals.size() + uppers.size();
    std::vector<ComplexInterval> boxes;
    bool ok = true;
    for (std::size_t i = 0; i < count && ok; ++i) {
      ComplexInterval v(FPInterval::enclose(mpz_class(0), cp), FPInterval::enclose(mpz_class(0), cp));
      for (std::size_t k = d + 1; k-- > 0;) {
        v = v * pts[i];
        v.re = v.re + FPInterval::enclose(poly_[k], cp);
      }
      ComplexInterval den(FPInterval::enclose(mpz_class(1), cp), FPInterval::enclose(mpz_class(0), cp));
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) den = den * (pts[i] - pts[j]);
      ComplexInterval w(cp);
      try {
        w = v / den;
      } catch (const DomainError&) {
        ok = false;
        break;
      }
      const ComplexInterval center = pts[i] - w;
      BigFloat rad(cp), a(cp), b(cp);
      mpfr_set(a.get(), iv_abs(w.re).hi().get(), MPFR_RNDU);
      mpfr_set(b.get(), iv_abs(w.im).hi().get(), MPFR_RNDU);
      mpfr_hypot(rad.get(), a.get(), b.get(), MPFR_RNDU);
      mpfr_mul_ui(rad.get(), rad.get(), static_cast<unsigned long>(d - 1), MPFR_RNDU);
      if (!rad.is_finite()) {
        ok = false;
        break;
      }
      ComplexInterval box(hull_of(center.re, rad), hull_of(center.im, rad));
      if (i >= reals.size() && box.im.lo().sign() <= 0) ok = false;
      boxes.push_back(std::move(box));
    }
    if (!ok) continue;
    std::vector<ComplexInterval> full = boxes;
    for (std::size_t i = reals.size(); i < count; ++i) full.push_back(conj(boxes[i]));
    for (std::size_t i = 0; i < full.size() && ok; ++i)
      for (std::size_t j = i + 1; j < full.size() && ok; ++j)
        if (!disjoint(full[i], full[j])) ok = false;
    if (!ok) continue;

    // Real roots: the disk is symmetric about the axis and holds one root,
    // which therefore equals its conjugate.
    for (std::size_t i = 0; i < reals.size(); ++i) boxes[i].im = FPInterval::enclose(mpz_class(0), cp);

    if (!boxes_.empty()) {
      if (reals.size() != r1_) continue;
      std::vector<ComplexInterval> nested;
      for (std::size_t i = 0; i < count && ok; ++i) {
        std::size_t match = count;
        for (std::size_t j = 0; j < count; ++j) {
          if ((i < r1_) != (j < r1_)) continue;
          if (!disjoint(boxes[i], boxes_[j])) {
            if (match != count) ok = false;
            match = j;
          }
        }
        if (match == count) ok = false;
        if (!ok) break;
        nested.emplace_back(intersect(boxes[i].re, boxes_[match].re), intersect(boxes[i].im, boxes_[match].im));
      }
      if (!ok) continue;
      boxes = std::move(nested);
    }

    mpq_class limit(1);
    mpq_div_2exp(limit.get_mpq_t(), limit.get_mpq_t(), n);
    bool narrow = true;
    for (const ComplexInterval& b : boxes)
      if (b.re.width() > limit || b.im.width() > limit) narrow = false;

    r1_ = reals.size();
    r2_ = uppers.size();
    boxes_ = std::move(boxes);
    approx_.clear();
    for (std::size_t i = 0; i < count; ++i) approx_.emplace_back(all[i].re, all[i].im);
    approx_prec_ = prec;
    if (narrow) {
      certified_ = n;
      return;
    }
  }
  throw PrecisionError("root isolation of " + std::to_string(d) + "-degree polynomial did not converge");
}

std::vector<ComplexInterval> NumberField::roots_to_accuracy(unsigned n) {
  refine(n);
  return boxes_;
}

std::vector<ComplexInterval> embed(const FieldElement& w, const std::vector<ComplexInterval>& roots,
                                   mpfr_prec_t prec) {
  std::vector<ComplexInterval> out;
  out.reserve(roots.size());
  const FPInterval zero = FPInterval::enclose(mpz_class(0), prec);
  const FPInterval den = FPInterval::enclose(w.denom, prec);
  for (const ComplexInterval& root : roots) {
    const ComplexInterval z = root.with_prec(prec);
    ComplexInterval v(zero, zero);
    for (std::size_t k = w.coords.size(); k-- > 0;) {
      v = v * z;
      v.re = v.re + FPInterval::enclose(w.coords[k], prec);
    }
    out.emplace_back(v.re / den, v.im / den);
  }
  return out;
}

namespace {

class ArchimedeanOracle : public GramOracle {
 public:
  ArchimedeanOracle(std::shared_ptr<NumberField> k, std::vector<FieldElement> basis)
      : k_(std::move(k)), basis_(std::move(basis)) {
    for (const FieldElement& w : basis_)
      if (w.coords.size() != k_->degree()) throw std::invalid_argument("basis element of wrong length");
    for (const FieldElement& w : basis_) {
      for (const mpz_class& c : w.coords) bits_ = std::max(bits_, mpz_sizeinbase(c.get_mpz_t(), 2));
    }
  }

  std::size_t dim() const override { return basis_.size(); }

  GramApprox query(unsigned n) override {
    const std::size_t p = basis_.size();
    const std::size_t r1 = k_->r1();
    unsigned m = n + 16;
    while (true) {
      const std::vector<ComplexInterval> roots = k_->roots_to_accuracy(m);
      const mpfr_prec_t prec = static_cast<mpfr_prec_t>(m + n + 64 + 2 * bits_ + 8 * k_->degree());
      std::vector<std::vector<ComplexInterval>> emb;
      for (const FieldElement& w : basis_) emb.push_back(embed(w, roots, prec));
      IntMatrix centers(p, p);
      bool ok = true;
      for (std::size_t i = 0; i < p && ok; ++i)
        for (std::size_t j = 0; j <= i && ok; ++j) {
          FPInterval real_part = FPInterval::enclose(mpz_class(0), prec);
          FPInterval pair_part = FPInterval::enclose(mpz_class(0), prec);
          for (std::size_t r = 0; r < roots.size(); ++r) {
            const ComplexInterval& a = emb[i][r];
            const ComplexInterval& b = emb[j][r];
            if (r < r1) {
              real_part = real_part + a.re * b.re;
            } else {
              pair_part = pair_part + a.re * b.re + a.im * b.im;
            }
          }
          const FPInterval scaled = iv_ldexp(real_part + iv_ldexp(pair_part, 1), static_cast<long>(n));
          if (!scaled.is_bounded() || scaled.width() >= 1) {
            ok = false;
            break;
          }
          centers(i, j) = round_half_away(scaled.midpoint());
          centers(j, i) = centers(i, j);
        }
      if (ok) return GramApprox{std::move(centers), n};
      m += m / 2 + 8;
    }
  }

 private:
  std::shared_ptr<NumberField> k_;
  std::vector<FieldElement> basis_;
  std::size_t bits_ = 1;
};

}  // namespace

std::shared_ptr<GramOracle> archimedean_gram_oracle(std::shared_ptr<NumberField> k,
                                                    std::vector<FieldElement> basis) {
  return std::make_shared<ArchimedeanOracle>(std::move(k), std::move(basis));
}

IntMatrix ideal_to_coordinate_matrix(const NumberField& k, const std::vector<FieldElement>& basis,
                                     const IdealSpec& spec) {
  const std::size_t d = k.degree();
  if (basis.size() != d) throw ParseError("field basis must have " + std::to_string(d) + " elements");
  // Inverse of the basis matrix (rows are basis coordinates).
  RatMatrix aug(d, 2 * d, mpq_class(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (basis[i].coords.size() != d) throw ParseError("basis element of wrong length");
    const std::vector<mpq_class> q = basis[i].rationals();
    for (std::size_t j = 0; j < d; ++j) aug(i, j) = q[j];
    aug(i, d + i) = 1;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && aug(piv, c) == 0) ++piv;
    if (piv == d) throw ParseError("field basis is linearly dependent");
    if (piv != c)
      for (std::size_t j = 0; j < 2 * d; ++j) std::swap(aug(piv, j), aug(c, j));
    const mpq_class inv = 1 / aug(c, c);
    for (std::size_t j = 0; j < 2 * d; ++j) aug(c, j) *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || aug(i, c) == 0) continue;
      const mpq_class f = aug(i, c);
      for (std::size_t j = 0; j < 2 * d; ++j) aug(i, j) -= f * aug(c, j);
    }
  }

  std::vector<FieldElement> gens;
  if (const auto* two = std::get_if<TwoElement>(&spec)) {
    for (const FieldElement& x : {two->alpha, two->beta})
      for (const FieldElement& w : basis) gens.push_back(k.mul(x, w));
  } else {
    gens = std::get<ZBasis>(spec).elements;
  }
  if (gens.empty()) throw ParseError("ideal has no generators");

  IntMatrix out(gens.size(), d);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].coords.size() != d) throw ParseError("ideal generator of wrong length");
    const std::vector<mpq_class> v = gens[g].rationals();
    for (std::size_t j = 0; j < d; ++j) {
      mpq_class c = 0;
      for (std::size_t i = 0; i < d; ++i) c += v[i] * aug(i, d + j);
      if (c.get_den() != 1) {
        throw NotIntegralCoordinates("ideal generator " + std::to_string(g) + " has coordinate " + c.get_str() +
                                     " in the field basis");
      }
      out(g, j) = c.get_num();
    }
  }
  return out;
}

std::vector<FieldElement> combine(const IntMatrix& L, const std::vector<FieldElement>& basis) {
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < L.rows(); ++i) {
    std::vector<mpq_class> acc(basis.front().coords.size(), mpq_class(0));
    for (std::size_t j = 0; j < L.cols(); ++j) {
      if (L(i, j) == 0) continue;
      const std::vector<mpq_class> q = basis[j].rationals();
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += L(i, j) * q[c];
    }
    out.push_back(FieldElement::from_rationals(acc));
  }
  return out;
}

IdealReduction reduce_ideal(std::shared_ptr<NumberField> k, const std::vector<FieldElement>& basis,
                            const IdealSpec& spec, const AdaptiveParams& params) {
  const IntMatrix L = ideal_to_coordinate_matrix(*k, basis, spec);
  IdealReduction out;
  out.outcome = adaptive_lll(archimedean_gram_oracle(k, basis), L, params);
  if (out.outcome.ok() && out.outcome.stats.final_accuracy) {
    auto oracle = archimedean_gram_oracle(k, combine(out.outcome.basis, basis));
    out.gram = oracle->query(*out.outcome.stats.final_accuracy);
  }
  return out;
}

}  // namespace certilatt
