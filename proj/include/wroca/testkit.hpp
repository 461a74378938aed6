#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wroca/core.hpp"
#include "wroca/dwa.hpp"
#include "wroca/field.hpp"

namespace wroca::testkit {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t min_states = 1;
  std::size_t max_states = 3;
  std::size_t min_symbols = 2;
  std::size_t max_symbols = 2;
  FieldSpec field = FieldSpec::rational();
  /// Nonzero weights drawn for transitions and the initial weight. Empty
  /// means the default pool: {1, 2, 3, 1/2, -1} over Q, {1..p-1} over GF(p).
  std::vector<FieldElement> weight_pool;
  double zero_density = 0.8;
  double positive_density = 0.8;
  double zero_final_prob = 0.3;
  /// All transition and initial weights one, final weights in {0, 1}.
  bool unit_weights = false;
};

std::vector<FieldElement> default_weight_pool(const FieldSpec& field);

/// Deterministic in cfg.seed; the result always passes validate().
Dwroca generate(const GeneratorConfig& cfg);
/// Initialised Dwa with the same shape parameters.
Dwa generate_dwa(const GeneratorConfig& cfg);

/// Duplicates state `q`, sending a random subset of the transitions that
/// entered `q` to the copy. The result computes the same function.
Dwroca split_state(const Dwroca& a, StateId q, std::mt19937_64& rng);
/// Multiplies weights into `q` by `factor` and weights out of `q` (and its
/// final weight) by its inverse. Same function, different weights.
Dwroca rescale_state(const Dwroca& a, StateId q, const FieldElement& factor);
/// Replaces the weight of one random transition with another pool weight.
Dwroca perturb(const Dwroca& a, const std::vector<FieldElement>& pool, std::mt19937_64& rng);
Dwa split_state(const Dwa& b, StateId q, std::mt19937_64& rng);

struct OracleResult {
  std::optional<Word> shortest_witness;
  std::size_t checked_up_to = 0;
  /// agreement[l] = number of words of length l on which the machines agree
  /// (for the witness length: those before the witness in lexicographic order).
  std::vector<std::uint64_t> agreement;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

/// Enumerates words of length 0..max_len in length-lexicographic order and
/// stops at the first one whose weights (undefined = 0) differ. Words of
/// each length are sharded by first symbol across OpenMP threads.
/// Throws BudgetExceeded when more than `budget` words would be enumerated.
OracleResult brute_force_witness(const Dwroca& a1, const Dwroca& a2, std::size_t max_len,
                                 std::uint64_t budget = kDefaultOracleBudget);
/// Single-threaded reference of the same enumeration.
OracleResult brute_force_witness_serial(const Dwroca& a1, const Dwroca& a2, std::size_t max_len,
                                        std::uint64_t budget = kDefaultOracleBudget);

/// Shortest word accepted (nonzero weight) by exactly one machine, by plain
/// language membership: a word is accepted iff its run is defined and ends in
/// a state with nonzero final weight.
std::optional<Word> language_witness(const Dwroca& a1, const Dwroca& a2, std::size_t max_len);

/// Loop intervals of the run of `word` from `c` that pass check_pumping:
/// the empty pumping, single loops, then pairs of disjoint loops, up to `cap`.
std::vector<PumpingIntervals> find_pumpings(const Dwroca& a, const Configuration& c, const Word& word,
                                            std::size_t cap = 256);

enum class Distinguisher { I, J, Union };

struct TrialOutcome {
  bool union_is_pumping;
  /// First of w_I, w_J, w_{I+J} that still distinguishes, if any.
  std::optional<Distinguisher> distinguisher;

  bool holds() const { return union_is_pumping && distinguisher.has_value(); }
};

/// Checks the disjoint-pumping property on one instance. Throws
/// PreconditionViolated when I and J overlap, when either is not a pumping
/// from both configurations, or when `word` does not distinguish them.
TrialOutcome disjoint_pumping_trial(const Dwroca& a1, const Dwroca& a2, const Configuration& c, const Configuration& c2,
                            const Word& word, const PumpingIntervals& i, const PumpingIntervals& j);

/// All words of length <= max_len over `alphabet_size` symbols, length-lex order.
std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len);

}  // namespace wroca::testkit
