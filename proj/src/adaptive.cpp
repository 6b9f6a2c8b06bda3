#include <certilatt/adaptive.hpp>

#include <certilatt/errors.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace certilatt {

void AdaptiveParams::validate() const {
  if (!ReductionParams::admissible(delta, eta)) {
    throw std::invalid_argument("inadmissible parameters: need 1/4 < delta < 1 and 1/2 < eta < sqrt(delta)");
  }
  if (ell0 < 4) throw std::invalid_argument("initial precision must be at least 4 bits");
  if (n0 < 1) throw std::invalid_argument("initial accuracy must be at least 1");
  if (growth <= 1) throw std::invalid_argument("growth factor must exceed 1");
}

mpfr_prec_t precision_ceiling(std::size_t d, const mpq_class& delta, const mpq_class& eta) {
  if (d == 0) throw std::invalid_argument("precision_ceiling: d must be positive");
  if (!ReductionParams::admissible(delta, eta)) throw std::invalid_argument("precision_ceiling: inadmissible parameters");
  const mpq_class eps = eta - mpq_class(1, 2);
  const mpq_class rho = ((1 + eta) * (1 + eta) + eps) / (delta - eta * eta);
  constexpr mpfr_prec_t kBits = 256;
  auto log2q = [](const mpq_class& q) {
    BigFloat x = BigFloat::from(q, kBits, MPFR_RNDN);
    mpfr_log2(x.get(), x.get(), MPFR_RNDN);
    return x;
  };
  BigFloat t = BigFloat::from(mpq_class(static_cast<unsigned long>(d)), kBits, MPFR_RNDN);
  mpfr_log2(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), 2, MPFR_RNDN);
  mpfr_add_ui(t.get(), t.get(), 10, MPFR_RNDN);
  mpfr_sub(t.get(), t.get(), log2q(eps).get(), MPFR_RNDN);
  BigFloat slope = log2q(rho);
  BigFloat e = BigFloat::from(eps, kBits, MPFR_RNDN);
  mpfr_add(slope.get(), slope.get(), e.get(), MPFR_RNDN);
  mpfr_mul_ui(slope.get(), slope.get(), static_cast<unsigned long>(d), MPFR_RNDN);
  mpfr_add(t.get(), t.get(), slope.get(), MPFR_RNDN);
  mpfr_ceil(t.get(), t.get());
  return static_cast<mpfr_prec_t>(mpfr_get_si(t.get(), MPFR_RNDN));
}

unsigned max_escalations_from_env(unsigned fallback) {
  const char* raw = std::getenv("CERTILATT_MAX_ESCALATIONS");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0') return fallback;
  return static_cast<unsigned>(v);
}

namespace {

template <typename Int>
Int grow(Int x, const mpq_class& g) {
  mpz_class up;
  mpq_class scaled = g * mpq_class(static_cast<long>(x));
  mpz_cdiv_q(up.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return static_cast<Int>(up.get_si());
}

}  // namespace

ReductionOutcome adaptive_lll(const AdaptiveSource& source, IntMatrix L, const AdaptiveParams& params,
                              const TraceHook& hook) {
  params.validate();
  const bool exact = std::holds_alternative<GramExact>(source);
  const std::size_t dim = exact ? std::get<GramExact>(source).dim() : std::get<1>(source)->dim();
  const mpfr_prec_t T = precision_ceiling(std::max<std::size_t>(1, std::min(L.rows(), dim)), params.delta,
                                          params.eta);

  ReductionOutcome total;
  unsigned n = params.n0;
  auto cap = [&](mpfr_prec_t ell) {
    ell = std::min(ell, T);
    if (!exact) ell = std::min<mpfr_prec_t>(ell, static_cast<mpfr_prec_t>(n));
    return std::max<mpfr_prec_t>(ell, 2);
  };
  mpfr_prec_t ell = cap(params.ell0);

  auto fail = [&](ReductionStatus st, std::string msg) {
    total.status = st;
    total.message = std::move(msg);
    total.basis = std::move(L);
    return std::move(total);
  };

  std::optional<GramApprox> approx;
  auto query = [&]() -> bool {
    try {
      approx = std::get<1>(source)->query(n);
      return true;
    } catch (const OracleError& e) {
      total.message = e.what();
      return false;
    }
  };
  if (!exact && !query()) return fail(ReductionStatus::OracleError, total.message);

  unsigned restarts = 0;
  while (true) {
    ReductionParams rp{params.delta, params.eta, ell};
    const auto start = std::chrono::steady_clock::now();
    ReductionOutcome run = exact ? llbar(std::get<GramExact>(source), std::move(L), rp, hook)
                                 : llbar(*approx, std::move(L), rp, hook);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    total.attempts.push_back({exact ? std::nullopt : std::optional<unsigned>(n), ell, run.status,
                              run.stats.rounds, seconds});
    total.stats.rounds += run.stats.rounds;
    total.stats.swaps += run.stats.swaps;
    total.stats.removed += run.stats.removed;
    total.stats.final_precision = ell;
    total.stats.final_accuracy = exact ? std::nullopt : std::optional<unsigned>(n);
    total.failure_index = run.failure_index;
    L = std::move(run.basis);

    ReductionStatus st = run.status;
    if (st == ReductionStatus::Ok || st == ReductionStatus::ErrorNonPosDefinite) {
      total.status = st;
      total.message = std::move(run.message);
      total.basis = std::move(L);
      return total;
    }
    if (++restarts > params.max_escalations) {
      return fail(ReductionStatus::OracleError,
                  "escalation limit of " + std::to_string(params.max_escalations) + " reached at accuracy " +
                      std::to_string(n) + ", precision " + std::to_string(ell) + ": " + run.message);
    }
    if (st == ReductionStatus::ErrorPrecision) {
      const mpfr_prec_t next = cap(grow(ell, params.growth));
      if (next != ell) {
        ell = next;
        continue;
      }
      st = ReductionStatus::ErrorAccuracy;
    }
    // st == ErrorAccuracy from here on.
    if (exact) {
      return fail(ReductionStatus::ErrorPrecision,
                  "precision ceiling " + std::to_string(T) + " reached: " + run.message);
    }
    n = grow(n, params.growth);
    ell = cap(params.ell0);
    if (!query()) return fail(ReductionStatus::OracleError, total.message);
  }
}

}  // namespace certilatt
