#include <certilatt/gso.hpp>

#include <certilatt/errors.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace certilatt {

bool ReductionParams::admissible(const mpq_class& delta, const mpq_class& eta) {
  return delta > mpq_class(1, 4) && delta < 1 && eta > mpq_class(1, 2) && eta * eta < delta;
}

void ReductionParams::validate() const {
  if (!admissible(delta, eta)) {
    throw std::invalid_argument("inadmissible parameters: need 1/4 < delta < 1 and 1/2 < eta < sqrt(delta)");
  }
  if (precision < 2) throw std::invalid_argument("precision must be at least 2 bits");
}

const char* to_string(ReductionStatus s) {
  switch (s) {
    case ReductionStatus::Ok: return "OK";
    case ReductionStatus::ErrorPrecision: return "ErrorPrecision";
    case ReductionStatus::ErrorAccuracy: return "ErrorAccuracy";
    case ReductionStatus::ErrorNonPosDefinite: return "ErrorNonPosDefinite";
    case ReductionStatus::OracleError: return "OracleError";
  }
  return "?";
}

GramL GramL::exact(const GramExact& g, const IntMatrix& L) {
  GramL out;
  out.exact_ = true;
  out.centers_ = graml_exact(g, L);
  out.norms_.assign(L.rows(), mpz_class(0));
  return out;
}

GramL GramL::approx(const GramApprox& g, const IntMatrix& L) {
  GramL out;
  out.exact_ = false;
  const Matrix<CenterRadius> pairs = graml_approx(g, L);
  out.centers_ = IntMatrix(L.rows(), L.rows());
  for (std::size_t i = 0; i < L.rows(); ++i)
    for (std::size_t j = 0; j < L.rows(); ++j) out.centers_(i, j) = pairs(i, j).center;
  out.norms_.resize(L.rows());
  for (std::size_t i = 0; i < L.rows(); ++i) out.norms_[i] = one_norm(L.row(i));
  return out;
}

mpz_class GramL::radius(std::size_t i, std::size_t j) const {
  if (exact_) return 0;
  return norms_[i] * norms_[j];
}

FPInterval GramL::interval(std::size_t i, std::size_t j, mpfr_prec_t prec) const {
  if (exact_) return convert_to_fp_interval(centers_(i, j), prec);
  return convert_to_fp_interval(centers_(i, j), radius(i, j), prec);
}

void GramL::translate(std::size_t k, std::size_t i, const mpz_class& x) {
  const std::size_t p = size();
  // Diagonal first: it needs the old G(k,i).
  centers_(k, k) += -2 * x * centers_(k, i) + x * x * centers_(i, i);
  for (std::size_t j = 0; j < p; ++j) {
    if (j == k) continue;
    centers_(k, j) -= x * centers_(i, j);
    centers_(j, k) = centers_(k, j);
  }
}

void GramL::rotate(std::size_t to, std::size_t from) {
  if (to == from) return;
  centers_.rotate_row_down(to, from);
  // Columns: transpose, rotate rows, transpose back.
  IntMatrix t = centers_.transpose();
  t.rotate_row_down(to, from);
  centers_ = t.transpose();
  std::rotate(norms_.begin() + static_cast<std::ptrdiff_t>(to),
              norms_.begin() + static_cast<std::ptrdiff_t>(from),
              norms_.begin() + static_cast<std::ptrdiff_t>(from + 1));
}

void GramL::remove(std::size_t i) {
  centers_.erase_row(i);
  IntMatrix t = centers_.transpose();
  t.erase_row(i);
  centers_ = t.transpose();
  norms_.erase(norms_.begin() + static_cast<std::ptrdiff_t>(i));
}

GsoState::GsoState(GramL g, mpfr_prec_t precision)
    : r(g.size(), g.size(), FPInterval(precision)),
      m(g.size(), g.size(), FPInterval(precision)),
      s(g.size(), FPInterval(precision)),
      graml(std::move(g)),
      prec(precision) {}

void GsoState::rotate(std::size_t to, std::size_t from) { graml.rotate(to, from); }

// Rows past the removed index are recomputed before they are read again, so
// only the Gram matrix has to shrink.
void GsoState::remove(std::size_t i) { graml.remove(i); }

namespace {

std::size_t bit_length(const IntMatrix& m) {
  std::size_t bits = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const mpz_class& x : m.row(i)) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  return bits;
}

// Rounding for a translation. Narrow intervals get a certified eta-closest
// integer; wide ones fall back to the rounded midpoint, which is still an
// exact unimodular step.
mpz_class translation_coefficient(const FPInterval& mu, const mpq_class& eta) {
  if (!mu.is_bounded()) throw PrecisionError("unbounded GSO coefficient " + mu.str());
  try {
    return eta_closest_integer(mu, eta);
  } catch (const PrecisionError&) {
    return round_half_away(mu.midpoint());
  }
}

}  // namespace

LazyResult lazy_size_reduce(GsoState& state, IntMatrix& L, std::size_t k, const mpq_class& eta) {
  const mpfr_prec_t prec = state.prec;
  const FPInterval eta_iv = FPInterval::enclose(eta, prec);
  LazyResult result;
  // Each productive pass removes roughly prec bits from the coefficients.
  const std::size_t budget = 64 + 4 * bit_length(state.graml.centers());

  while (true) {
    ++result.passes;
    for (std::size_t j = 0; j < k; ++j) {
      FPInterval rkj = state.graml.interval(k, j, prec);
      for (std::size_t i = 0; i < j; ++i) rkj = rkj - state.m(j, i) * state.r(k, i);
      state.m(k, j) = rkj / state.r(j, j);
      state.r(k, j) = std::move(rkj);
    }
    state.s[0] = state.graml.interval(k, k, prec);
    for (std::size_t j = 1; j <= k; ++j) {
      state.s[j] = state.s[j - 1] - state.m(k, j - 1) * state.r(k, j - 1);
    }
    state.r(k, k) = state.s[k];
    if (k == 0) return result;

    std::vector<FPInterval> mags;
    mags.reserve(k);
    for (std::size_t j = 0; j < k; ++j) mags.push_back(iv_abs(state.m(k, j)));
    const Tri ret = iv_leq(iv_max(mags), eta_iv);
    if (ret != Tri::False) {
      result.size_reduced = ret;
      return result;
    }

    bool moved = false;
    for (std::size_t i = k; i-- > 0;) {
      const mpz_class x = translation_coefficient(state.m(k, i), eta);
      if (x == 0) continue;
      moved = true;
      const FPInterval xi = FPInterval::enclose(x, prec);
      for (std::size_t j = 0; j < i; ++j) state.m(k, j) = state.m(k, j) - xi * state.m(i, j);
      for (std::size_t c = 0; c < L.cols(); ++c) L(k, c) -= x * L(i, c);
      state.graml.translate(k, i, x);
    }
    if (!state.graml.is_exact()) state.graml.set_norm(k, one_norm(L.row(k)));
    if (!moved) throw PrecisionError("size reduction made no progress");
    if (result.passes > budget) {
      throw PrecisionError("size reduction did not converge");
    }
  }
}

Tri lovasz_test(const GsoState& state, std::size_t k, std::size_t k_prime, const mpq_class& delta,
                const mpq_class& eta) {
  assert(k >= 1);
  const mpfr_prec_t prec = state.prec;
  const Tri mu_ok = iv_leq(iv_abs(state.m(k_prime, k - 1)), FPInterval::enclose(eta, prec));
  const FPInterval lhs = FPInterval::enclose(delta, prec) * state.r(k - 1, k - 1);
  const Tri swap = iv_lt(state.s[k - 1], lhs);
  return tri_and(mu_ok, swap);
}

void swap_bookkeeping(GsoState& state, IntMatrix& L, std::size_t k, std::size_t k_prime) {
  if (k == k_prime) return;
  assert(k < k_prime);
  for (std::size_t i = 0; i < k; ++i) {
    state.m(k, i) = state.m(k_prime, i);
    state.r(k, i) = state.r(k_prime, i);
  }
  state.r(k, k) = state.s[k];
  L.rotate_row_down(k, k_prime);
  state.rotate(k, k_prime);
}

namespace {

struct Failure {
  ReductionStatus status;
  std::size_t index;
  std::string message;
};

// Sign checks on a freshly assigned R_{k,k} of a nonzero vector.
std::optional<Failure> check_diagonal(const GsoState& state, std::size_t k) {
  const FPInterval& rkk = state.r(k, k);
  if (rkk.contains_zero()) {
    // An exact Gram cannot lack accuracy: only the precision is short.
    const ReductionStatus st =
        state.graml.is_exact() ? ReductionStatus::ErrorPrecision : ReductionStatus::ErrorAccuracy;
    return Failure{st, k, "squared GSO norm of a nonzero vector is not separated from 0: " + rkk.str()};
  }
  if (rkk.hi().sign() < 0) {
    return Failure{ReductionStatus::ErrorNonPosDefinite, k,
                   "negative squared GSO norm " + rkk.str()};
  }
  return std::nullopt;
}

}  // namespace

ReductionOutcome llbar(const FixedGram& gram, IntMatrix L, const ReductionParams& params,
                       const TraceHook& hook) {
  params.validate();
  ReductionOutcome out;
  out.stats.final_precision = params.precision;
  if (const auto* ga = std::get_if<GramApprox>(&gram)) out.stats.final_accuracy = ga->accuracy;
  const std::size_t dim = std::visit([](const auto& g) { return g.dim(); }, gram);
  if (L.cols() != dim) throw std::invalid_argument("vector length does not match Gram dimension");

  auto finish = [&](ReductionStatus st, std::optional<std::size_t> index, std::string msg) {
    out.status = st;
    out.failure_index = index;
    out.message = std::move(msg);
    out.basis = std::move(L);
    return std::move(out);
  };

  for (std::size_t i = L.rows(); i-- > 0;) {
    if (is_zero_row(L, i)) {
      L.erase_row(i);
      ++out.stats.removed;
    }
  }
  if (L.rows() == 0) return finish(ReductionStatus::Ok, std::nullopt, {});

  GramL g = std::holds_alternative<GramExact>(gram) ? GramL::exact(std::get<GramExact>(gram), L)
                                                    : GramL::approx(std::get<GramApprox>(gram), L);
  GsoState state(std::move(g), params.precision);
  state.r(0, 0) = state.graml.interval(0, 0, params.precision);
  if (auto f = check_diagonal(state, 0)) return finish(f->status, f->index, f->message);

  const FPInterval eta_iv = FPInterval::enclose(params.eta, params.precision);
  auto emit = [&](RoundEvent ev, std::size_t k, std::size_t kp) {
    if (hook) hook(RoundTrace{ev, out.stats.rounds, k, kp, L, state});
  };

  std::size_t k = 1;
  while (k < L.rows()) {
    ++out.stats.rounds;
    LazyResult lazy;
    try {
      lazy = lazy_size_reduce(state, L, k, params.eta);
    } catch (const PrecisionError& e) {
      return finish(ReductionStatus::ErrorPrecision, k, e.what());
    } catch (const DomainError& e) {
      return finish(state.graml.is_exact() ? ReductionStatus::ErrorPrecision : ReductionStatus::ErrorAccuracy,
                    k, e.what());
    }
    const std::size_t kp = k;
    emit(RoundEvent::SizeReduced, k, kp);

    if (is_zero_row(L, kp)) {
      L.erase_row(kp);
      state.remove(kp);
      ++out.stats.removed;
      emit(RoundEvent::Removal, kp, kp);
      continue;
    }
    for (const FPInterval* v : {&state.s[0], &state.s[kp]}) {
      if (v->hi().sign() < 0) {
        return finish(ReductionStatus::ErrorNonPosDefinite, kp, "negative squared norm " + v->str());
      }
    }

    while (k >= 1) {
      const Tri ret = lovasz_test(state, k, kp, params.delta, params.eta);
      if (ret == Tri::True) {
        --k;
      } else if (ret == Tri::False) {
        break;
      } else {
        return finish(ReductionStatus::ErrorPrecision, kp,
                      "Lovasz condition undecided against the previous vector");
      }
    }

    // The moved row keeps its coefficients against rows 0..k-1; they must be
    // certified even when the Lovasz loop ended on a certain non-swap.
    if (k >= 1 && lazy.size_reduced != Tri::True) {
      std::vector<FPInterval> mags;
      for (std::size_t j = 0; j < k; ++j) mags.push_back(iv_abs(state.m(kp, j)));
      if (iv_leq(iv_max(mags), eta_iv) != Tri::True) {
        return finish(ReductionStatus::ErrorPrecision, kp,
                      "size reduction not certified");
      }
    }

    if (k != kp) {
      swap_bookkeeping(state, L, k, kp);
      ++out.stats.swaps;
    } else {
      state.r(k, k) = state.s[k];
    }
    if (auto f = check_diagonal(state, k)) return finish(f->status, f->index, f->message);
    emit(k != kp ? RoundEvent::Insertion : RoundEvent::NoSwap, k, kp);
    k = std::max<std::size_t>(k + 1, 1);
  }
  return finish(ReductionStatus::Ok, std::nullopt, {});
}

}  // namespace certilatt
