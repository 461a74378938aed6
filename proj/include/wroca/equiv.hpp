#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wroca/core.hpp"
#include "wroca/dwa.hpp"
#include "wroca/unfold.hpp"

namespace wroca {

enum class Outcome { Equivalent, NotEquivalent };

/// How an Equivalent verdict was established.
enum class Certificate {
  /// Basis saturation in the unfolding search.
  BasisSaturation,
  /// A counter-synchronised proportional bisimulation between the machines.
  SynchronisedBisimulation,
  /// Not applicable (NotEquivalent).
  None,
};

struct EquivalenceVerdict {
  Outcome outcome;
  std::optional<Witness> witness;
  /// True when the search bound is at least P0(K); otherwise an Equivalent
  /// verdict only means "no witness of length <= bound".
  bool theoretical;
  mpz_class bound;
  Certificate certificate;
  SearchStats stats;
};

struct EquivOptions {
  std::optional<mpz_class> bound_override;
  std::uint64_t budget = 200000;
  BoundCoefficients coefficients;
  /// Try the bisimulation certificate before searching.
  bool use_bisimulation = true;
};

/// Throws AlphabetMismatch, FieldMismatch, InvalidAutomaton, ResourceBudgetExceeded.
EquivalenceVerdict check_equivalence(const Dwroca& a1, const Dwroca& a2, const EquivOptions& options = {});

/// Sufficient condition for equivalence: counters move in lockstep, both
/// sides are defined on the same transitions, and the ratio of the two run
/// weights is a function of (state pair, counter is zero) that makes the
/// final weights agree.
bool synchronised_bisimulation(const Dwroca& a1, const Dwroca& a2);

struct WitnessReplay {
  FieldElement left;
  FieldElement right;
  RunResult left_run;
  RunResult right_run;
};

/// Both acceptance weights, undefined runs counted as zero.
WitnessReplay replay_witness(const Dwroca& a1, const Dwroca& a2, const Word& word);

struct ConfigurationPair {
  Configuration left;
  Configuration right;

  friend bool operator==(const ConfigurationPair&, const ConfigurationPair&) = default;
};

struct SynchronisedTrace {
  std::vector<ConfigurationPair> pairs;
  /// Position of the symbol on which a side got stuck, and which side.
  std::optional<std::size_t> stuck_at;
  bool left_stuck = false;
  bool right_stuck = false;
};

SynchronisedTrace synchronized_run(const Dwroca& a1, const Dwroca& a2, const Word& word);

}  // namespace wroca
