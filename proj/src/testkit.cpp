#include "wroca/testkit.hpp"

#include <algorithm>
#include <functional>

#include "wroca/error.hpp"

namespace wroca::testkit {

std::vector<FieldElement> default_weight_pool(const FieldSpec& field) {
  std::vector<FieldElement> pool;
  if (field.is_rational()) {
    for (const char* text : {"1", "2", "3", "1/2", "-1"}) pool.push_back(FieldElement::parse(text, field));
  } else {
    for (std::uint32_t r = 1; r < field.modulus(); ++r) pool.push_back(FieldElement::from_int(field, r));
  }
  return pool;
}

namespace {

std::vector<std::string> symbol_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

std::vector<std::string> state_names(std::size_t n, const char* prefix = "q") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

struct Draw {
  explicit Draw(const GeneratorConfig& cfg)
      : cfg(cfg), rng(cfg.seed), pool(cfg.weight_pool.empty() ? default_weight_pool(cfg.field) : cfg.weight_pool) {
    for (const auto& w : pool) {
      if (w.is_zero()) throw Error(ErrorCode::InvalidArgument, "weight pool must not contain zero");
    }
    if (cfg.min_states == 0 || cfg.min_states > cfg.max_states || cfg.min_symbols == 0 ||
        cfg.min_symbols > cfg.max_symbols || cfg.max_symbols > 26) {
      throw Error(ErrorCode::InvalidArgument, "bad generator ranges");
    }
  }

  std::size_t between(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }
  FieldElement weight() {
    if (cfg.unit_weights) return FieldElement::one(cfg.field);
    return pool[between(0, pool.size() - 1)];
  }
  FieldElement final_weight() {
    if (chance(cfg.zero_final_prob)) return FieldElement::zero(cfg.field);
    return weight();
  }

  const GeneratorConfig& cfg;
  std::mt19937_64 rng;
  std::vector<FieldElement> pool;
};

/// Copies `a` into a machine with `extra` more states, mapping each transition
/// through `edit` (which may change target and weight).
using EditFn = std::function<CounterTransition(StateId from, SymbolId on, bool zero_map, CounterTransition t)>;

Dwroca rebuild(const Dwroca& a, std::vector<std::string> names, const std::function<StateId(StateId)>& source_of,
               const EditFn& edit) {
  Dwroca out(a.field(), std::move(names), a.alphabet());
  out.set_initial(a.initial_state(), a.initial_weight());
  for (StateId p = 0; p < out.size(); ++p) {
    StateId src = source_of(p);
    out.set_final(p, a.final_weight(src));
    for (SymbolId s = 0; s < a.alphabet().size(); ++s) {
      if (const auto* t = a.zero_transition(src, s)) out.add_zero_transition(p, s, edit(p, s, true, *t));
      if (const auto* t = a.positive_transition(src, s)) out.add_positive_transition(p, s, edit(p, s, false, *t));
    }
  }
  return out;
}

std::string fresh_name(const std::vector<std::string>& names, std::string base) {
  while (std::find(names.begin(), names.end(), base) != names.end()) base += "'";
  return base;
}

}  // namespace

Dwroca generate(const GeneratorConfig& cfg) {
  Draw d(cfg);
  const std::size_t n = d.between(cfg.min_states, cfg.max_states);
  const std::size_t sigma = d.between(cfg.min_symbols, cfg.max_symbols);
  Dwroca a(cfg.field, state_names(n), Alphabet(symbol_names(sigma)));
  a.set_initial(0, d.weight());
  for (StateId q = 0; q < n; ++q) {
    for (SymbolId s = 0; s < sigma; ++s) {
      if (d.chance(cfg.zero_density)) {
        auto target = static_cast<StateId>(d.between(0, n - 1));
        int effect = static_cast<int>(d.between(0, 1));
        a.add_zero_transition(q, s, {target, effect, d.weight()});
      }
      if (d.chance(cfg.positive_density)) {
        auto target = static_cast<StateId>(d.between(0, n - 1));
        int effect = static_cast<int>(d.between(0, 2)) - 1;
        a.add_positive_transition(q, s, {target, effect, d.weight()});
      }
    }
  }
  for (StateId q = 0; q < n; ++q) a.set_final(q, d.final_weight());
  return a;
}

Dwa generate_dwa(const GeneratorConfig& cfg) {
  Draw d(cfg);
  const std::size_t n = d.between(cfg.min_states, cfg.max_states);
  const std::size_t sigma = d.between(cfg.min_symbols, cfg.max_symbols);
  Dwa b(cfg.field, state_names(n), Alphabet(symbol_names(sigma)));
  for (StateId q = 0; q < n; ++q) {
    for (SymbolId s = 0; s < sigma; ++s) {
      if (d.chance(cfg.positive_density)) {
        auto target = static_cast<StateId>(d.between(0, n - 1));
        b.add_transition(q, s, {target, d.weight()});
      }
    }
  }
  for (StateId q = 0; q < n; ++q) b.set_final(q, d.final_weight());
  b.set_initial({0, d.weight()});
  return b;
}

Dwroca split_state(const Dwroca& a, StateId q, std::mt19937_64& rng) {
  auto names = a.state_names();
  const auto copy = static_cast<StateId>(names.size());
  names.push_back(fresh_name(names, a.state_name(q) + "'"));
  std::bernoulli_distribution coin(0.5);
  return rebuild(
      a, std::move(names), [&](StateId p) { return p == copy ? q : p; },
      [&](StateId, SymbolId, bool, CounterTransition t) {
        if (t.target == q && coin(rng)) t.target = copy;
        return t;
      });
}

Dwroca rescale_state(const Dwroca& a, StateId q, const FieldElement& factor) {
  const FieldElement inv = factor.inverse();
  Dwroca out = rebuild(
      a, a.state_names(), [](StateId p) { return p; },
      [&](StateId from, SymbolId, bool, CounterTransition t) {
        if (t.target == q) t.weight *= factor;
        if (from == q) t.weight *= inv;
        return t;
      });
  out.set_final(q, a.final_weight(q) * inv);
  if (a.initial_state() == q) out.set_initial(q, a.initial_weight() * factor);
  return out;
}

Dwroca perturb(const Dwroca& a, const std::vector<FieldElement>& pool, std::mt19937_64& rng) {
  std::size_t count = 0;
  for (StateId p = 0; p < a.size(); ++p) {
    for (SymbolId s = 0; s < a.alphabet().size(); ++s) {
      count += a.zero_transition(p, s) != nullptr;
      count += a.positive_transition(p, s) != nullptr;
    }
  }
  if (count == 0 || pool.size() < 2) return a;
  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
  std::size_t seen = 0;
  return rebuild(
      a, a.state_names(), [](StateId p) { return p; },
      [&](StateId, SymbolId, bool, CounterTransition t) {
        if (seen++ == pick) {
          FieldElement w = t.weight;
          while (w == t.weight) w = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
          t.weight = w;
        }
        return t;
      });
}

Dwa split_state(const Dwa& b, StateId q, std::mt19937_64& rng) {
  auto names = b.state_names();
  const auto copy = static_cast<StateId>(names.size());
  names.push_back(fresh_name(names, b.state_name(q) + "'"));
  Dwa out(b.field(), std::move(names), b.alphabet());
  std::bernoulli_distribution coin(0.5);
  for (StateId p = 0; p < out.size(); ++p) {
    StateId src = p == copy ? q : p;
    out.set_final(p, b.final_weight(src));
    for (SymbolId s = 0; s < b.alphabet().size(); ++s) {
      if (const auto* t = b.transition(src, s)) {
        StateId target = t->target == q && coin(rng) ? copy : t->target;
        out.add_transition(p, s, {target, t->weight});
      }
    }
  }
  if (b.initial()) out.set_initial(*b.initial());
  return out;
}

std::vector<PumpingIntervals> find_pumpings(const Dwroca& a, const Configuration& c, const Word& word,
                                            std::size_t cap) {
  RunResult r = run_word(a, c, word);
  if (!r.defined()) throw Error(ErrorCode::PreconditionViolated, "run is undefined");
  const auto& steps = r.run.steps;
  std::vector<Interval> loops;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t j = i; j < steps.size(); ++j) {
      if (steps[i].source == steps[j].target) loops.push_back({i, j});
    }
  }
  std::vector<PumpingIntervals> out{PumpingIntervals{}};
  std::vector<Interval> singles;
  for (const auto& iv : loops) {
    if (out.size() >= cap) return out;
    auto p = PumpingIntervals::from({iv});
    if (check_pumping(a, c, word, p)) {
      out.push_back(p);
      singles.push_back(iv);
    }
  }
  // Pairs of loops need not be pumpings one by one, so scan all loop pairs.
  for (std::size_t x = 0; x < loops.size(); ++x) {
    for (std::size_t y = x + 1; y < loops.size(); ++y) {
      if (out.size() >= cap) return out;
      if (loops[y].first <= loops[x].last) continue;
      auto p = PumpingIntervals::from({loops[x], loops[y]});
      if (check_pumping(a, c, word, p)) out.push_back(p);
    }
  }
  return out;
}

TrialOutcome disjoint_pumping_trial(const Dwroca& a1, const Dwroca& a2, const Configuration& c, const Configuration& c2,
                            const Word& word, const PumpingIntervals& i, const PumpingIntervals& j) {
  if (!i.disjoint_with(j)) throw Error(ErrorCode::PreconditionViolated, "I and J overlap");
  auto defined = [&](const Dwroca& a, const Configuration& from) { return run_word(a, from, word).defined(); };
  if (!defined(a1, c) || !defined(a2, c2)) throw Error(ErrorCode::PreconditionViolated, "run of the word is undefined");
  for (const auto* p : {&i, &j}) {
    if (!check_pumping(a1, c, word, *p) || !check_pumping(a2, c2, word, *p)) {
      throw Error(ErrorCode::PreconditionViolated, p->to_string() + " is not a pumping from both configurations");
    }
  }
  auto differs = [&](const Word& w) { return !(accept_weight_or_zero(a1, c, w) == accept_weight_or_zero(a2, c2, w)); };
  if (!differs(word)) throw Error(ErrorCode::PreconditionViolated, "the word does not distinguish the configurations");

  PumpingIntervals both = i.merged(j);
  TrialOutcome out{check_pumping(a1, c, word, both) && check_pumping(a2, c2, word, both), std::nullopt};
  if (differs(remove_intervals(word, i))) out.distinguisher = Distinguisher::I;
  else if (differs(remove_intervals(word, j))) out.distinguisher = Distinguisher::J;
  else if (differs(remove_intervals(word, both))) out.distinguisher = Distinguisher::Union;
  return out;
}

std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (SymbolId s = 0; s < alphabet_size; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    level_start = level_end;
  }
  return out;
}

}  // namespace wroca::testkit
