#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wroca/core.hpp"
#include "wroca/field.hpp"

namespace wroca {

struct WeightedTransition {
  StateId target;
  FieldElement weight;
};

struct WaConfig {
  StateId state;
  FieldElement weight;

  friend bool operator==(const WaConfig&, const WaConfig&) = default;
};

/// Deterministic weighted automaton with a partial transition map. The
/// initial configuration is optional: `uwa` produces uninitialised automata.
class Dwa {
 public:
  Dwa(FieldSpec field, std::vector<std::string> states, Alphabet alphabet);

  const FieldSpec& field() const { return field_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  std::optional<StateId> find_state(std::string_view name) const;

  const std::optional<WaConfig>& initial() const { return initial_; }
  void set_initial(WaConfig c);
  Dwa with_initial(WaConfig c) const;

  /// Throws InvalidArgument if the slot is already taken.
  void add_transition(StateId from, SymbolId on, WeightedTransition t);
  const WeightedTransition* transition(StateId from, SymbolId on) const;
  std::size_t transition_count() const;

  const FieldElement& final_weight(StateId q) const { return finals_.at(q); }
  void set_final(StateId q, FieldElement weight);

 private:
  std::size_t slot(StateId q, SymbolId a) const;

  FieldSpec field_;
  std::vector<std::string> states_;
  Alphabet alphabet_;
  std::optional<WaConfig> initial_;
  std::vector<std::optional<WeightedTransition>> transitions_;
  std::vector<FieldElement> finals_;
};

/// The underlying weighted automaton: positive-counter transitions with their
/// counter effects erased, same finals, no initial configuration.
Dwa underlying_wa(const Dwroca& a);

/// Undefined paths count as weight zero. Throws UnknownSymbol.
FieldElement dwa_accept_weight(const Dwa& b, const WaConfig& start, const Word& word);

/// Read-only, possibly infinite, deterministic weighted automaton explored on
/// demand. States are opaque 64-bit keys.
class WeightedView {
 public:
  using StateKey = std::uint64_t;

  struct Edge {
    StateKey target;
    const FieldElement* weight;
  };

  virtual ~WeightedView() = default;

  virtual const FieldSpec& field() const = 0;
  virtual std::size_t alphabet_size() const = 0;
  virtual StateKey initial_state() const = 0;
  virtual const FieldElement& initial_weight() const = 0;
  virtual std::optional<Edge> next(StateKey state, SymbolId symbol) const = 0;
  virtual const FieldElement& final_weight(StateKey state) const = 0;
  /// Counter row of a state, for telemetry. Zero for finite automata.
  virtual std::uint64_t row(StateKey) const { return 0; }
};

/// View of an initialised Dwa (or of a Dwa from an explicit configuration).
class DwaView final : public WeightedView {
 public:
  /// Throws InvalidArgument when `b` has no initial configuration.
  explicit DwaView(const Dwa& b);
  DwaView(const Dwa& b, WaConfig start);

  const FieldSpec& field() const override { return dwa_.field(); }
  std::size_t alphabet_size() const override { return dwa_.alphabet().size(); }
  StateKey initial_state() const override { return start_.state; }
  const FieldElement& initial_weight() const override { return start_.weight; }
  std::optional<Edge> next(StateKey state, SymbolId symbol) const override;
  const FieldElement& final_weight(StateKey state) const override;

 private:
  const Dwa& dwa_;
  WaConfig start_;
};

struct Witness {
  Word word;
  FieldElement left;
  FieldElement right;
};

struct SearchStats {
  std::uint64_t explored = 0;
  std::uint64_t basis_size = 0;
  std::uint64_t columns = 0;
  std::uint64_t max_row = 0;
  std::uint64_t max_depth = 0;

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct SearchOptions {
  /// Words longer than this are never explored.
  std::optional<std::uint64_t> max_depth;
  /// Ceiling on explored words; exceeding it throws ResourceBudgetExceeded.
  std::uint64_t budget = 200000;
  /// With pruning off every explored word is extended, not only the ones
  /// that enlarged the basis. Requires max_depth.
  bool prune = true;
};

struct SearchResult {
  std::optional<Witness> witness;
  SearchStats stats;
  /// Words whose difference vectors form the kept basis, in insertion order.
  std::vector<Word> basis_words;
};

/// Breadth-first search over words in length-lexicographic order, keeping a
/// basis of the difference vectors (left configuration, minus right
/// configuration) by exact sparse Gaussian elimination. Only words that
/// enlarge the basis are extended. Returns the length-lexicographically
/// least distinguishing word within max_depth, if any.
SearchResult search_distinguishing_word(const WeightedView& left, const WeightedView& right,
                                        const SearchOptions& options);

struct DwaVerdict {
  bool equivalent;
  std::optional<Witness> witness;
  SearchStats stats;
};

/// Equivalence of two initialised Dwas with a minimal, lexicographically
/// first witness. Throws AlphabetMismatch, FieldMismatch.
DwaVerdict dwa_equiv(const Dwa& b1, const Dwa& b2, const SearchOptions& options = {});

/// Agreement on every word of length at most k.
bool bounded_k_equiv(const Dwa& c_side, const Dwa& d_side, std::uint64_t k);
bool bounded_k_equiv(const WeightedView& c_side, const WeightedView& d_side, std::uint64_t k);

/// Some configuration of `b` that agrees with `c` in `a` on all words of
/// length at most k, or nullopt if no state of `b` admits one.
std::optional<WaConfig> find_k_equiv_wa_config(const Dwroca& a, const Configuration& c, const Dwa& b,
                                               std::uint64_t k);

}  // namespace wroca
