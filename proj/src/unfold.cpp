#include "wroca/unfold.hpp"

#include <limits>

#include "wroca/error.hpp"

namespace wroca {

UnfoldingView::UnfoldingView(const Dwroca& a, std::optional<std::uint64_t> bound)
    : UnfoldingView(a, initial_configuration(a), bound) {}

UnfoldingView::UnfoldingView(const Dwroca& a, const Configuration& start, std::optional<std::uint64_t> bound)
    : a_(a), bound_(bound), initial_(key(start.state, start.counter)), start_weight_(start.weight) {
  if (bound_ && start.counter > *bound_) {
    throw Error(ErrorCode::InvalidArgument, "start counter exceeds the unfolding bound");
  }
}

std::optional<WeightedView::Edge> UnfoldingView::next(StateKey state, SymbolId symbol) const {
  StateId q = control_state(state);
  std::uint64_t n = row(state);
  const CounterTransition* t = n == 0 ? a_.zero_transition(q, symbol) : a_.positive_transition(q, symbol);
  if (t == nullptr || (n == 0 && t->effect < 0)) return std::nullopt;
  std::uint64_t m = n + t->effect;
  if (bound_ && m > *bound_) return std::nullopt;
  return Edge{key(t->target, m), &t->weight};
}

const FieldElement& UnfoldingView::final_weight(StateKey state) const {
  return a_.final_weight(control_state(state));
}

std::optional<std::uint64_t> to_view_bound(const mpz_class& m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative unfolding bound");
  // Rows past 2^62 are unreachable by any explorable word.
  if (m >= mpz_class(std::uint64_t{1} << 62)) return std::nullopt;
  return m.get_ui();
}

Dwa unfold(const Dwroca& a, const mpz_class& m, std::uint64_t state_cap) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative unfolding bound");
  mpz_class required = mpz_class(a.size()) * (m + 1);
  if (required > mpz_class(state_cap)) {
    throw Error(ErrorCode::BoundTooLarge, "unfolding needs " + required.get_str() + " states, cap is " +
                                              std::to_string(state_cap));
  }
  const std::uint64_t rows = m.get_ui() + 1;
  const std::size_t q_count = a.size();
  std::vector<std::string> names;
  names.reserve(q_count * rows);
  for (std::uint64_t n = 0; n < rows; ++n) {
    for (StateId q = 0; q < q_count; ++q) names.push_back(a.state_name(q) + "#" + std::to_string(n));
  }
  Dwa out(a.field(), std::move(names), a.alphabet());
  UnfoldingView view(a, m.get_ui());
  for (std::uint64_t n = 0; n < rows; ++n) {
    for (StateId q = 0; q < q_count; ++q) {
      auto from = static_cast<StateId>(view.key(q, n));
      out.set_final(from, a.final_weight(q));
      for (SymbolId s = 0; s < a.alphabet().size(); ++s) {
        if (auto e = view.next(view.key(q, n), s)) {
          out.add_transition(from, s, {static_cast<StateId>(e->target), *e->weight});
        }
      }
    }
  }
  out.set_initial({static_cast<StateId>(view.key(a.initial_state(), 0)), a.initial_weight()});
  return out;
}

BoundReport compute_bounds_for_k(const mpz_class& k, const BoundCoefficients& coeffs) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "K must be positive");
  BoundReport r;
  r.k = k;
  mpz_class k2 = k * k;
  mpz_class k4 = k2 * k2;
  r.p1 = coeffs.initial_space * k4 * k2;
  r.p2 = coeffs.belt_thickness * k4;
  mpz_class belt = k2 * r.p2;
  r.p3 = r.p1 + 2 * (belt * belt + 1);
  mpz_class kp3 = k * r.p3;
  r.p0 = 2 * kp3 * kp3;
  return r;
}

BoundReport compute_bounds(std::uint64_t size1, std::uint64_t size2, const BoundCoefficients& coeffs) {
  if (size1 == 0 || size2 == 0) throw Error(ErrorCode::InvalidArgument, "automaton sizes must be positive");
  return compute_bounds_for_k(mpz_class(size1) + mpz_class(size2), coeffs);
}

}  // namespace wroca
