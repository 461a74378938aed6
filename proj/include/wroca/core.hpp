#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wroca/field.hpp"

namespace wroca {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
using Word = std::vector<SymbolId>;

/// Ordered list of distinct, non-empty symbol names. The declared order is the
/// lexicographic order used to break ties between witnesses of equal length.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InvalidArgument on an empty list, empty names or duplicates.
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& name(SymbolId id) const { return symbols_.at(id); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<SymbolId> find(std::string_view name) const;

  /// Comma-separated symbol names, or single characters when `letters` is set.
  /// Throws UnknownSymbol.
  Word parse_word(std::string_view text, bool letters = false) const;
  /// Concatenated when every symbol is one character long, comma-separated otherwise.
  std::string render(const Word& word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
};

struct CounterTransition {
  StateId target;
  int effect;  // -1, 0 or +1
  FieldElement weight;
};

/// A deterministic weighted real-time one-counter automaton. Transitions are
/// split into the zero-test map (taken when the counter is 0) and the
/// positive map (taken otherwise). Both maps are partial.
///
/// Construction accepts anything; `validate` reports what is wrong. A second
/// transition for an occupied (state, symbol) slot is kept as a conflict and
/// reported as a determinism violation.
class Dwroca {
 public:
  Dwroca(FieldSpec field, std::vector<std::string> states, Alphabet alphabet);

  const FieldSpec& field() const { return field_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  std::optional<StateId> find_state(std::string_view name) const;

  StateId initial_state() const { return initial_state_; }
  const FieldElement& initial_weight() const { return initial_weight_; }
  void set_initial(StateId q, FieldElement weight);

  void add_zero_transition(StateId from, SymbolId on, CounterTransition t);
  void add_positive_transition(StateId from, SymbolId on, CounterTransition t);
  const CounterTransition* zero_transition(StateId from, SymbolId on) const;
  const CounterTransition* positive_transition(StateId from, SymbolId on) const;

  const FieldElement& final_weight(StateId q) const { return finals_.at(q); }
  void set_final(StateId q, FieldElement weight);

  struct Conflict {
    bool zero_map;
    StateId from;
    SymbolId on;
  };
  const std::vector<Conflict>& conflicts() const { return conflicts_; }

 private:
  std::size_t slot(StateId q, SymbolId a) const;

  FieldSpec field_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, StateId> state_index_;
  Alphabet alphabet_;
  StateId initial_state_ = 0;
  FieldElement initial_weight_;
  std::vector<std::optional<CounterTransition>> zero_;
  std::vector<std::optional<CounterTransition>> positive_;
  std::vector<FieldElement> finals_;
  std::vector<Conflict> conflicts_;
};

struct Violation {
  std::string location;
  std::string message;

  std::string to_string() const { return message + " at " + location; }
};

std::vector<Violation> validate(const Dwroca& a);

struct Configuration {
  StateId state;
  std::uint64_t counter;
  FieldElement weight;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const Dwroca& a);

struct RunStep {
  SymbolId symbol;
  bool zero_test;
  int effect;
  FieldElement weight;
  StateId source;
  StateId target;

  friend bool operator==(const RunStep&, const RunStep&) = default;
};

struct Run {
  Configuration start;
  std::vector<RunStep> steps;
  Configuration end;

  friend bool operator==(const Run&, const Run&) = default;
};

/// The run of a word, cut at the first position with no applicable
/// transition. `run` always holds the defined prefix.
struct RunResult {
  Run run;
  std::optional<std::size_t> stuck_at;

  bool defined() const { return !stuck_at.has_value(); }
};

/// Successor configuration, or nullopt when the relevant map has no entry.
/// Throws UnknownSymbol.
std::optional<Configuration> step(const Dwroca& a, const Configuration& c, SymbolId symbol);

RunResult run_word(const Dwroca& a, const Configuration& c, const Word& word);

/// Weight of `word` from `c`: c.weight times the step weights times the final
/// weight of the last state. nullopt when the run is undefined.
std::optional<FieldElement> accept_weight_from(const Dwroca& a, const Configuration& c, const Word& word);
std::optional<FieldElement> accept_weight(const Dwroca& a, const Word& word);
/// Same, with undefined runs counted as weight zero.
FieldElement accept_weight_or_zero(const Dwroca& a, const Configuration& c, const Word& word);

struct CounterProfile {
  std::vector<std::int64_t> prefix_effects;
  std::int64_t min_effect = 0;
  std::int64_t max_effect = 0;
  bool grounded = false;
};

/// Counter effect of each non-empty prefix. The empty run has min = max = 0.
CounterProfile counter_effect_profile(const Run& run);

struct Interval {
  std::size_t first;
  std::size_t last;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted list of pairwise disjoint closed intervals over word positions.
class PumpingIntervals {
 public:
  PumpingIntervals() = default;
  /// Sorts; throws InvalidArgument on reversed or overlapping intervals.
  static PumpingIntervals from(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool contains(std::size_t position) const;
  bool disjoint_with(const PumpingIntervals& other) const;
  /// Disjoint union; throws InvalidArgument when the lists overlap.
  PumpingIntervals merged(const PumpingIntervals& other) const;
  std::string to_string() const;

  friend bool operator==(const PumpingIntervals&, const PumpingIntervals&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// Throws IntervalOutOfBounds when an interval reaches past the word.
Word remove_intervals(const Word& word, const PumpingIntervals& intervals);

/// True iff removing `intervals` from `word` is a pumping of the run from `c`:
/// every interval is a loop on control states, the residual run is defined,
/// its minimal counter effect does not drop, every kept position takes the
/// same kind of transition (zero-test or not) as before, and the last
/// zero-test of the original run is kept.
///
/// Throws PreconditionViolated when the run of `word` is undefined.
bool check_pumping(const Dwroca& a, const Configuration& c, const Word& word, const PumpingIntervals& intervals);

}  // namespace wroca
