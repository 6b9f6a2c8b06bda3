#pragma once

// Certified L2-style reduction: interval Gram-Schmidt data, lazy
// size-reduction and the LL-bar main loop over exact or approximate Gram
// matrices.

#include <certilatt/interval.hpp>
#include <certilatt/lattice.hpp>
#include <certilatt/matrix.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace certilatt {

struct ReductionParams {
  mpq_class delta{99, 100};
  mpq_class eta{51, 100};
  mpfr_prec_t precision = 53;

  // 1/4 < delta < 1 and 1/2 < eta < sqrt(delta).
  static bool admissible(const mpq_class& delta, const mpq_class& eta);
  // Throws std::invalid_argument on inadmissible parameters.
  void validate() const;
};

enum class ReductionStatus { Ok, ErrorPrecision, ErrorAccuracy, ErrorNonPosDefinite, OracleError };

const char* to_string(ReductionStatus s);

struct ReductionStats {
  std::uint64_t rounds = 0;
  std::uint64_t swaps = 0;
  std::uint64_t removed = 0;
  mpfr_prec_t final_precision = 0;
  std::optional<unsigned> final_accuracy;  // empty for exact Gram inputs
};

// One llbar run inside the adaptive loop.
struct AttemptRecord {
  std::optional<unsigned> accuracy;
  mpfr_prec_t precision = 0;
  ReductionStatus status = ReductionStatus::Ok;
  std::uint64_t rounds = 0;
  double seconds = 0;
};

struct ReductionOutcome {
  ReductionStatus status = ReductionStatus::Ok;
  // The reduced basis on success; otherwise the current (partially reduced)
  // generating family, which still spans the input lattice.
  IntMatrix basis;
  ReductionStats stats;
  // 0-based row of the offending vector on failure.
  std::optional<std::size_t> failure_index;
  std::string message;
  std::vector<AttemptRecord> attempts;

  bool ok() const { return status == ReductionStatus::Ok; }
};

// Internal Gram matrix of the current generating family. Centers are exact
// integers at all times. In approximate mode each entry also carries the
// radius ||L_i||_1 ||L_j||_1, rebuilt from the cached one-norms.
class GramL {
 public:
  static GramL exact(const GramExact& g, const IntMatrix& L);
  static GramL approx(const GramApprox& g, const IntMatrix& L);

  bool is_exact() const { return exact_; }
  std::size_t size() const { return centers_.rows(); }
  const IntMatrix& centers() const { return centers_; }
  const mpz_class& center(std::size_t i, std::size_t j) const { return centers_(i, j); }
  mpz_class radius(std::size_t i, std::size_t j) const;
  CenterRadius pair(std::size_t i, std::size_t j) const { return {center(i, j), radius(i, j)}; }
  FPInterval interval(std::size_t i, std::size_t j, mpfr_prec_t prec) const;

  // b_k <- b_k - x b_i.
  void translate(std::size_t k, std::size_t i, const mpz_class& x);
  // Row/column `from` moves to position `to` (to <= from).
  void rotate(std::size_t to, std::size_t from);
  void remove(std::size_t i);
  void set_norm(std::size_t i, mpz_class norm) { norms_[i] = std::move(norm); }

 private:
  bool exact_ = true;
  IntMatrix centers_;
  std::vector<mpz_class> norms_;
};

struct GsoState {
  Matrix<FPInterval> r;
  Matrix<FPInterval> m;
  std::vector<FPInterval> s;
  GramL graml;
  mpfr_prec_t prec;

  GsoState(GramL g, mpfr_prec_t precision);
  std::size_t size() const { return graml.size(); }
  void rotate(std::size_t to, std::size_t from);
  void remove(std::size_t i);
};

struct LazyResult {
  // Certified outcome of max_{j<k} |M_{k,j}| <= eta: True or Unknown.
  Tri size_reduced = Tri::True;
  unsigned passes = 0;
};

// Size-reduces row k (0-based) against rows 0..k-1. Throws PrecisionError
// when the translations stop making progress.
LazyResult lazy_size_reduce(GsoState& state, IntMatrix& L, std::size_t k, const mpq_class& eta);

// (|M_{k',k-1}| <= eta) and (delta R_{k-1,k-1} > s_{k-1}), three-valued;
// k is 0-based here, so the tested index is k-1 >= 0.
Tri lovasz_test(const GsoState& state, std::size_t k, std::size_t k_prime, const mpq_class& delta,
                const mpq_class& eta);

// Moves row k' to position k in L and every piece of state, then copies the
// GSO row of the moved vector as in the insertion step.
void swap_bookkeeping(GsoState& state, IntMatrix& L, std::size_t k, std::size_t k_prime);

enum class RoundEvent { SizeReduced, NoSwap, Insertion, Removal };

struct RoundTrace {
  RoundEvent event;
  std::uint64_t round;
  std::size_t k;        // final position (Insertion) or processed index
  std::size_t k_prime;  // processed index
  const IntMatrix& basis;
  const GsoState& state;
};

using TraceHook = std::function<void(const RoundTrace&)>;

using FixedGram = std::variant<GramExact, GramApprox>;

ReductionOutcome llbar(const FixedGram& gram, IntMatrix L, const ReductionParams& params,
                       const TraceHook& hook = {});

}  // namespace certilatt
