#include "wroca/equiv.hpp"

#include <deque>
#include <map>
#include <tuple>

#include "wroca/error.hpp"

namespace wroca {

namespace {

void require_valid(const Dwroca& a, const char* which) {
  auto violations = validate(a);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidAutomaton, std::string(which) + ": " + violations.front().to_string());
  }
}

}  // namespace

bool synchronised_bisimulation(const Dwroca& a1, const Dwroca& a2) {
  using Key = std::tuple<StateId, StateId, bool>;
  std::map<Key, FieldElement> ratio;
  std::deque<Key> work;
  Key start{a1.initial_state(), a2.initial_state(), true};
  ratio.emplace(start, a1.initial_weight() / a2.initial_weight());
  work.push_back(start);

  auto visit = [&](const Key& k, const FieldElement& r) {
    auto [it, inserted] = ratio.emplace(k, r);
    if (inserted) {
      work.push_back(k);
      return true;
    }
    return it->second == r;
  };

  while (!work.empty()) {
    Key k = work.front();
    work.pop_front();
    auto [p, q, zero] = k;
    const FieldElement r = ratio.at(k);
    // left weight = r * right weight, so outputs agree iff r * eta1 = eta2.
    if (!(r * a1.final_weight(p) == a2.final_weight(q))) return false;
    for (SymbolId s = 0; s < a1.alphabet().size(); ++s) {
      const auto* t1 = zero ? a1.zero_transition(p, s) : a1.positive_transition(p, s);
      const auto* t2 = zero ? a2.zero_transition(q, s) : a2.positive_transition(q, s);
      if (t1 == nullptr && t2 == nullptr) continue;
      if (t1 == nullptr || t2 == nullptr || t1->effect != t2->effect) return false;
      FieldElement next = r * t1->weight / t2->weight;
      if (zero) {
        if (!visit({t1->target, t2->target, t1->effect == 0}, next)) return false;
      } else {
        if (t1->effect < 0 && !visit({t1->target, t2->target, true}, next)) return false;
        if (!visit({t1->target, t2->target, false}, next)) return false;
      }
    }
  }
  return true;
}

EquivalenceVerdict check_equivalence(const Dwroca& a1, const Dwroca& a2, const EquivOptions& options) {
  if (!(a1.alphabet() == a2.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "automata are over different alphabets");
  if (!(a1.field() == a2.field())) {
    throw Error(ErrorCode::FieldMismatch, a1.field().to_string() + " vs " + a2.field().to_string());
  }
  require_valid(a1, "first automaton");
  require_valid(a2, "second automaton");

  BoundReport bounds = compute_bounds(a1.size(), a2.size(), options.coefficients);
  EquivalenceVerdict verdict{Outcome::Equivalent, std::nullopt, true, bounds.p0, Certificate::BasisSaturation, {}};
  if (options.bound_override) {
    verdict.bound = *options.bound_override;
    verdict.theoretical = verdict.bound >= bounds.p0;
  }

  if (options.use_bisimulation && synchronised_bisimulation(a1, a2)) {
    verdict.certificate = Certificate::SynchronisedBisimulation;
    return verdict;
  }

  auto view_bound = to_view_bound(verdict.bound);
  UnfoldingView left(a1, view_bound);
  UnfoldingView right(a2, view_bound);
  SearchOptions search;
  search.max_depth = view_bound;
  search.budget = options.budget;
  SearchResult r = search_distinguishing_word(left, right, search);
  verdict.stats = r.stats;
  if (r.witness) {
    verdict.outcome = Outcome::NotEquivalent;
    verdict.certificate = Certificate::None;
    verdict.witness = std::move(r.witness);
  }
  return verdict;
}

WitnessReplay replay_witness(const Dwroca& a1, const Dwroca& a2, const Word& word) {
  WitnessReplay out{FieldElement::zero(a1.field()), FieldElement::zero(a2.field()),
                    run_word(a1, initial_configuration(a1), word), run_word(a2, initial_configuration(a2), word)};
  if (out.left_run.defined()) out.left = out.left_run.run.end.weight * a1.final_weight(out.left_run.run.end.state);
  if (out.right_run.defined()) {
    out.right = out.right_run.run.end.weight * a2.final_weight(out.right_run.run.end.state);
  }
  return out;
}

SynchronisedTrace synchronized_run(const Dwroca& a1, const Dwroca& a2, const Word& word) {
  SynchronisedTrace trace;
  ConfigurationPair cur{initial_configuration(a1), initial_configuration(a2)};
  trace.pairs.push_back(cur);
  for (std::size_t i = 0; i < word.size(); ++i) {
    auto l = step(a1, cur.left, word[i]);
    auto r = step(a2, cur.right, word[i]);
    if (!l || !r) {
      trace.stuck_at = i;
      trace.left_stuck = !l;
      trace.right_stuck = !r;
      break;
    }
    cur = {std::move(*l), std::move(*r)};
    trace.pairs.push_back(cur);
  }
  return trace;
}

}  // namespace wroca
