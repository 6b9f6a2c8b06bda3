#pragma once

// Adaptive precision and accuracy around llbar: restart with a larger
// working precision on ErrorPrecision, with a finer Gram approximation on
// ErrorAccuracy.

#include <certilatt/gso.hpp>
#include <certilatt/lattice.hpp>

#include <memory>
#include <variant>

namespace certilatt {

struct AdaptiveParams {
  mpq_class delta{99, 100};
  mpq_class eta{51, 100};
  mpfr_prec_t ell0 = 24;
  unsigned n0 = 32;
  mpq_class growth{3, 2};
  unsigned max_escalations = 64;

  // Throws std::invalid_argument.
  void validate() const;
};

// T(d, delta, eta) = ceil(10 + 2 log2 d - log2(eta - 1/2) + (eta - 1/2 + log2 rho) d),
// rho = ((1 + eta)^2 + eta - 1/2) / (delta - eta^2).
mpfr_prec_t precision_ceiling(std::size_t d, const mpq_class& delta, const mpq_class& eta);

using AdaptiveSource = std::variant<GramExact, std::shared_ptr<GramOracle>>;

// Never throws for oracle failures: they come back as OracleError outcomes.
ReductionOutcome adaptive_lll(const AdaptiveSource& source, IntMatrix L, const AdaptiveParams& params,
                              const TraceHook& hook = {});

// Value of CERTILATT_MAX_ESCALATIONS, or `fallback` when unset or invalid.
unsigned max_escalations_from_env(unsigned fallback);

}  // namespace certilatt
