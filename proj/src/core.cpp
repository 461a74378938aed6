#include "wroca/core.hpp"

#include <algorithm>

#include "wroca/error.hpp"

namespace wroca {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error(ErrorCode::InvalidArgument, "alphabet is empty");
  for (SymbolId i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw Error(ErrorCode::InvalidArgument, "empty symbol name");
    if (!index_.emplace(symbols_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate symbol '" + symbols_[i] + "'");
    }
  }
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::parse_word(std::string_view text, bool letters) const {
  Word word;
  if (text.empty()) return word;
  auto lookup = [&](std::string_view name) {
    auto id = find(name);
    if (!id) throw Error(ErrorCode::UnknownSymbol, "'" + std::string(name) + "'");
    word.push_back(*id);
  };
  if (letters) {
    for (std::size_t i = 0; i < text.size(); ++i) lookup(text.substr(i, 1));
    return word;
  }
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    lookup(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return word;
}

std::string Alphabet::render(const Word& word) const {
  bool single = std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i > 0) out += ',';
    out += name(word[i]);
  }
  return out;
}

Dwroca::Dwroca(FieldSpec field, std::vector<std::string> states, Alphabet alphabet)
    : field_(field),
      states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_weight_(FieldElement::one(field)),
      zero_(states_.size() * alphabet_.size()),
      positive_(states_.size() * alphabet_.size()),
      finals_(states_.size(), FieldElement::zero(field)) {
  if (states_.empty()) throw Error(ErrorCode::InvalidArgument, "automaton has no states");
  for (StateId i = 0; i < states_.size(); ++i) {
    if (states_[i].empty()) throw Error(ErrorCode::InvalidArgument, "empty state name");
    if (!state_index_.emplace(states_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate state '" + states_[i] + "'");
    }
  }
}

std::optional<StateId> Dwroca::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Dwroca::slot(StateId q, SymbolId a) const {
  if (q >= states_.size()) throw Error(ErrorCode::InvalidArgument, "state index out of range");
  if (a >= alphabet_.size()) throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(a));
  return std::size_t{q} * alphabet_.size() + a;
}

void Dwroca::set_initial(StateId q, FieldElement weight) {
  slot(q, 0);
  initial_state_ = q;
  initial_weight_ = std::move(weight);
}

void Dwroca::add_zero_transition(StateId from, SymbolId on, CounterTransition t) {
  slot(t.target, 0);
  auto& entry = zero_[slot(from, on)];
  if (entry) {
    conflicts_.push_back({true, from, on});
    return;
  }
  entry = std::move(t);
}

void Dwroca::add_positive_transition(StateId from, SymbolId on, CounterTransition t) {
  slot(t.target, 0);
  auto& entry = positive_[slot(from, on)];
  if (entry) {
    conflicts_.push_back({false, from, on});
    return;
  }
  entry = std::move(t);
}

const CounterTransition* Dwroca::zero_transition(StateId from, SymbolId on) const {
  const auto& entry = zero_[slot(from, on)];
  return entry ? &*entry : nullptr;
}

const CounterTransition* Dwroca::positive_transition(StateId from, SymbolId on) const {
  const auto& entry = positive_[slot(from, on)];
  return entry ? &*entry : nullptr;
}

void Dwroca::set_final(StateId q, FieldElement weight) {
  slot(q, 0);
  finals_[q] = std::move(weight);
}

std::vector<Violation> validate(const Dwroca& a) {
  std::vector<Violation> out;
  auto where = [&](StateId q, SymbolId s) { return "(" + a.state_name(q) + "," + a.alphabet().name(s) + ")"; };
  auto check_weight = [&](const FieldElement& w, const std::string& loc, const char* what) {
    if (!(w.spec() == a.field())) {
      out.push_back({loc, std::string(what) + " weight is not in " + a.field().to_string()});
    } else if (w.is_zero()) {
      out.push_back({loc, std::string("zero ") + what + " weight"});
    }
  };

  check_weight(a.initial_weight(), "initial", "initial");
  for (const auto& c : a.conflicts()) {
    out.push_back({where(c.from, c.on), std::string("duplicate ") + (c.zero_map ? "delta0" : "delta1") + " transition"});
  }
  for (StateId q = 0; q < a.size(); ++q) {
    for (SymbolId s = 0; s < a.alphabet().size(); ++s) {
      if (const auto* t = a.zero_transition(q, s)) {
        if (t->effect == -1) out.push_back({where(q, s), "zero-test decrement"});
        else if (t->effect != 0 && t->effect != 1) out.push_back({where(q, s), "delta0 counter effect out of range"});
        check_weight(t->weight, "delta0" + where(q, s), "transition");
      }
      if (const auto* t = a.positive_transition(q, s)) {
        if (t->effect < -1 || t->effect > 1) out.push_back({where(q, s), "delta1 counter effect out of range"});
        check_weight(t->weight, "delta1" + where(q, s), "transition");
      }
    }
    if (!(a.final_weight(q).spec() == a.field())) {
      out.push_back({"final(" + a.state_name(q) + ")", "final weight is not in " + a.field().to_string()});
    }
  }
  return out;
}

Configuration initial_configuration(const Dwroca& a) { return {a.initial_state(), 0, a.initial_weight()}; }

std::optional<Configuration> step(const Dwroca& a, const Configuration& c, SymbolId symbol) {
  if (symbol >= a.alphabet().size()) throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(symbol));
  const CounterTransition* t = c.counter == 0 ? a.zero_transition(c.state, symbol) : a.positive_transition(c.state, symbol);
  if (t == nullptr) return std::nullopt;
  if (t->effect < 0 && c.counter == 0) return std::nullopt;
  return Configuration{t->target, c.counter + t->effect, c.weight * t->weight};
}

RunResult run_word(const Dwroca& a, const Configuration& c, const Word& word) {
  RunResult result{{c, {}, c}, std::nullopt};
  result.run.steps.reserve(word.size());
  Configuration cur = c;
  for (std::size_t i = 0; i < word.size(); ++i) {
    bool zero = cur.counter == 0;
    auto next = step(a, cur, word[i]);
    if (!next) {
      result.stuck_at = i;
      break;
    }
    const CounterTransition* t = zero ? a.zero_transition(cur.state, word[i]) : a.positive_transition(cur.state, word[i]);
    result.run.steps.push_back({word[i], zero, t->effect, t->weight, cur.state, next->state});
    cur = std::move(*next);
  }
  result.run.end = std::move(cur);
  return result;
}

std::optional<FieldElement> accept_weight_from(const Dwroca& a, const Configuration& c, const Word& word) {
  Configuration cur = c;
  for (SymbolId s : word) {
    auto next = step(a, cur, s);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur.weight * a.final_weight(cur.state);
}

std::optional<FieldElement> accept_weight(const Dwroca& a, const Word& word) {
  return accept_weight_from(a, initial_configuration(a), word);
}

FieldElement accept_weight_or_zero(const Dwroca& a, const Configuration& c, const Word& word) {
  auto w = accept_weight_from(a, c, word);
  return w ? *w : FieldElement::zero(a.field());
}

CounterProfile counter_effect_profile(const Run& run) {
  CounterProfile p;
  std::int64_t acc = 0;
  for (const auto& s : run.steps) {
    acc += s.effect;
    p.prefix_effects.push_back(acc);
    p.grounded = p.grounded || s.zero_test;
  }
  if (!p.prefix_effects.empty()) {
    auto [lo, hi] = std::minmax_element(p.prefix_effects.begin(), p.prefix_effects.end());
    p.min_effect = *lo;
    p.max_effect = *hi;
  }
  return p;
}

PumpingIntervals PumpingIntervals::from(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (iv.first > iv.last) throw Error(ErrorCode::InvalidArgument, "reversed interval");
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& x, const Interval& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].first <= intervals[i - 1].last) throw Error(ErrorCode::InvalidArgument, "overlapping intervals");
  }
  PumpingIntervals p;
  p.intervals_ = std::move(intervals);
  return p;
}

bool PumpingIntervals::contains(std::size_t position) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return iv.first <= position && position <= iv.last; });
}

bool PumpingIntervals::disjoint_with(const PumpingIntervals& other) const {
  for (const auto& x : intervals_) {
    for (const auto& y : other.intervals_) {
      if (x.first <= y.last && y.first <= x.last) return false;
    }
  }
  return true;
}

PumpingIntervals PumpingIntervals::merged(const PumpingIntervals& other) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return from(std::move(all));
}

std::string PumpingIntervals::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i > 0) out += ",";
    out += "[" + std::to_string(intervals_[i].first) + "," + std::to_string(intervals_[i].last) + "]";
  }
  return out + "]";
}

Word remove_intervals(const Word& word, const PumpingIntervals& intervals) {
  for (const auto& iv : intervals.intervals()) {
    if (iv.last >= word.size()) {
      throw Error(ErrorCode::IntervalOutOfBounds, "[" + std::to_string(iv.first) + "," + std::to_string(iv.last) +
                                                      "] on a word of length " + std::to_string(word.size()));
    }
  }
  Word out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!intervals.contains(i)) out.push_back(word[i]);
  }
  return out;
}

bool check_pumping(const Dwroca& a, const Configuration& c, const Word& word, const PumpingIntervals& intervals) {
  Word residual_word = remove_intervals(word, intervals);
  RunResult original = run_word(a, c, word);
  if (!original.defined()) {
    throw Error(ErrorCode::PreconditionViolated, "run is undefined at position " + std::to_string(*original.stuck_at));
  }
  const auto& steps = original.run.steps;
  for (const auto& iv : intervals.intervals()) {
    if (steps[iv.first].source != steps[iv.last].target) return false;
  }

  RunResult residual = run_word(a, c, residual_word);
  if (!residual.defined()) return false;
  if (counter_effect_profile(residual.run).min_effect < counter_effect_profile(original.run).min_effect) return false;

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!intervals.contains(i)) kept.push_back(i);
  }
  for (std::size_t r = 0; r < kept.size(); ++r) {
    if (residual.run.steps[r].zero_test != steps[kept[r]].zero_test) return false;
  }
  // No zero-test at all counts as preserved.
  for (std::size_t i = steps.size(); i-- > 0;) {
    if (steps[i].zero_test) return !intervals.contains(i);
  }
  return true;
}

}  // namespace wroca
