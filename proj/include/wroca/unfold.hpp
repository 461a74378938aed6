#pragma once

#include <cstdint>
#include <optional>

#include <gmpxx.h>

#include "wroca/core.hpp"
#include "wroca/dwa.hpp"

namespace wroca {

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

/// The M-unfolding of a DWROCA as an on-demand view: state (q, n) for
/// n <= M, row 0 driven by the zero-test map, rows above by the positive
/// map, transitions that would leave [0, M] dropped.
///
/// `bound` nullopt means M is too large to ever be reached (beyond 2^64).
class UnfoldingView final : public WeightedView {
 public:
  UnfoldingView(const Dwroca& a, std::optional<std::uint64_t> bound);
  /// Unfolding entered at an arbitrary configuration instead of the initial one.
  UnfoldingView(const Dwroca& a, const Configuration& start, std::optional<std::uint64_t> bound);

  const FieldSpec& field() const override { return a_.field(); }
  std::size_t alphabet_size() const override { return a_.alphabet().size(); }
  StateKey initial_state() const override { return initial_; }
  const FieldElement& initial_weight() const override { return start_weight_; }
  std::optional<Edge> next(StateKey state, SymbolId symbol) const override;
  const FieldElement& final_weight(StateKey state) const override;
  std::uint64_t row(StateKey state) const override { return state / a_.size(); }

  StateKey key(StateId q, std::uint64_t row) const { return row * a_.size() + q; }
  StateId control_state(StateKey state) const { return static_cast<StateId>(state % a_.size()); }

 private:
  const Dwroca& a_;
  std::optional<std::uint64_t> bound_;
  StateKey initial_;
  FieldElement start_weight_;
};

/// Converts a big bound into the view representation.
std::optional<std::uint64_t> to_view_bound(const mpz_class& m);

/// Materialised M-unfolding with |Q|(M+1) states named "q#n", state index
/// n*|Q| + q. Throws BoundTooLarge when that exceeds `state_cap`.
Dwa unfold(const Dwroca& a, const mpz_class& m, std::uint64_t state_cap = kDefaultStateCap);

/// Coefficients of the two base polynomials P1(K) = c1 K^6, P2(K) = c2 K^4.
struct BoundCoefficients {
  mpz_class initial_space = 14;
  mpz_class belt_thickness = 6;
};

struct BoundReport {
  mpz_class k;
  mpz_class p1;
  mpz_class p2;
  mpz_class p3;
  mpz_class p0;
};

/// K = size1 + size2, P3 = P1 + 2((K^2 P2)^2 + 1), P0 = 2 (K P3)^2.
/// Throws InvalidArgument on a zero size.
BoundReport compute_bounds(std::uint64_t size1, std::uint64_t size2, const BoundCoefficients& coeffs = {});
BoundReport compute_bounds_for_k(const mpz_class& k, const BoundCoefficients& coeffs = {});

}  // namespace wroca
