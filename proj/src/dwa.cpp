#include "wroca/dwa.hpp"

#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "wroca/error.hpp"
#include "wroca/unfold.hpp"

namespace wroca {

Dwa::Dwa(FieldSpec field, std::vector<std::string> states, Alphabet alphabet)
    : field_(field),
      states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      transitions_(states_.size() * alphabet_.size()),
      finals_(states_.size(), FieldElement::zero(field)) {}

std::optional<StateId> Dwa::find_state(std::string_view name) const {
  for (StateId q = 0; q < states_.size(); ++q) {
    if (states_[q] == name) return q;
  }
  return std::nullopt;
}

std::size_t Dwa::slot(StateId q, SymbolId a) const {
  if (q >= states_.size()) throw Error(ErrorCode::InvalidArgument, "state index out of range");
  if (a >= alphabet_.size()) throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(a));
  return std::size_t{q} * alphabet_.size() + a;
}

void Dwa::set_initial(WaConfig c) {
  slot(c.state, 0);
  if (c.weight.is_zero()) throw Error(ErrorCode::InvalidArgument, "initial weight must be nonzero");
  initial_ = std::move(c);
}

Dwa Dwa::with_initial(WaConfig c) const {
  Dwa copy = *this;
  copy.set_initial(std::move(c));
  return copy;
}

void Dwa::add_transition(StateId from, SymbolId on, WeightedTransition t) {
  slot(t.target, 0);
  auto& entry = transitions_[slot(from, on)];
  if (entry) {
    throw Error(ErrorCode::InvalidArgument,
                "duplicate transition at (" + states_[from] + "," + alphabet_.name(on) + ")");
  }
  if (t.weight.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero transition weight");
  entry = std::move(t);
}

const WeightedTransition* Dwa::transition(StateId from, SymbolId on) const {
  const auto& entry = transitions_[slot(from, on)];
  return entry ? &*entry : nullptr;
}

std::size_t Dwa::transition_count() const {
  std::size_t n = 0;
  for (const auto& t : transitions_) n += t.has_value();
  return n;
}

void Dwa::set_final(StateId q, FieldElement weight) {
  slot(q, 0);
  finals_[q] = std::move(weight);
}

Dwa underlying_wa(const Dwroca& a) {
  Dwa b(a.field(), a.state_names(), a.alphabet());
  for (StateId q = 0; q < a.size(); ++q) {
    b.set_final(q, a.final_weight(q));
    for (SymbolId s = 0; s < a.alphabet().size(); ++s) {
      if (const auto* t = a.positive_transition(q, s)) b.add_transition(q, s, {t->target, t->weight});
    }
  }
  return b;
}

FieldElement dwa_accept_weight(const Dwa& b, const WaConfig& start, const Word& word) {
  StateId q = start.state;
  FieldElement w = start.weight;
  for (SymbolId s : word) {
    if (s >= b.alphabet().size()) throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(s));
    const auto* t = b.transition(q, s);
    if (t == nullptr) return FieldElement::zero(b.field());
    q = t->target;
    w *= t->weight;
  }
  return w * b.final_weight(q);
}

DwaView::DwaView(const Dwa& b) : dwa_(b), start_(b.initial() ? *b.initial() : WaConfig{0, FieldElement()}) {
  if (!b.initial()) throw Error(ErrorCode::InvalidArgument, "automaton is uninitialised");
}

DwaView::DwaView(const Dwa& b, WaConfig start) : dwa_(b), start_(std::move(start)) {}

std::optional<WeightedView::Edge> DwaView::next(StateKey state, SymbolId symbol) const {
  const auto* t = dwa_.transition(static_cast<StateId>(state), symbol);
  if (t == nullptr) return std::nullopt;
  return Edge{t->target, &t->weight};
}

const FieldElement& DwaView::final_weight(StateKey state) const {
  return dwa_.final_weight(static_cast<StateId>(state));
}

namespace {

using SparseVector = std::map<std::uint32_t, FieldElement>;

/// Row-echelon basis of sparse vectors. Every row starts with its pivot
/// column, normalised to one; all other entries lie in larger columns.
class SparseBasis {
 public:
  /// Reduces `v` against the basis and keeps it if anything is left.
  bool insert(SparseVector v) {
    auto it = v.begin();
    while (it != v.end()) {
      auto found = by_pivot_.find(it->first);
      if (found == by_pivot_.end()) {
        ++it;
        continue;
      }
      const std::uint32_t pivot = it->first;
      const FieldElement coef = it->second;
      v.erase(it);
      const auto& row = rows_[found->second];
      for (std::size_t k = 1; k < row.size(); ++k) {
        FieldElement delta = coef * row[k].second;
        auto jt = v.find(row[k].first);
        if (jt == v.end()) {
          v.emplace(row[k].first, -delta);
        } else {
          jt->second -= delta;
          if (jt->second.is_zero()) v.erase(jt);
        }
      }
      it = v.upper_bound(pivot);
    }
    if (v.empty()) return false;

    FieldElement inv = v.begin()->second.inverse();
    std::vector<std::pair<std::uint32_t, FieldElement>> row;
    row.reserve(v.size());
    for (auto& [col, val] : v) row.emplace_back(col, val * inv);
    by_pivot_.emplace(row.front().first, rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::vector<std::pair<std::uint32_t, FieldElement>>> rows_;
  std::unordered_map<std::uint32_t, std::size_t> by_pivot_;
};

struct SideConfig {
  WeightedView::StateKey state;
  FieldElement weight;
};

struct Node {
  std::size_t parent;
  SymbolId symbol;
  std::uint64_t depth;
  std::optional<SideConfig> left;
  std::optional<SideConfig> right;
};

constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

Word word_of(const std::vector<Node>& nodes, std::size_t index) {
  Word w;
  for (std::size_t i = index; nodes[i].parent != kNoParent; i = nodes[i].parent) w.push_back(nodes[i].symbol);
  return Word(w.rbegin(), w.rend());
}

std::optional<SideConfig> advance(const WeightedView& view, const std::optional<SideConfig>& cur, SymbolId s) {
  if (!cur) return std::nullopt;
  auto edge = view.next(cur->state, s);
  if (!edge) return std::nullopt;
  return SideConfig{edge->target, cur->weight * *edge->weight};
}

FieldElement output(const WeightedView& view, const std::optional<SideConfig>& cur) {
  if (!cur) return FieldElement::zero(view.field());
  return cur->weight * view.final_weight(cur->state);
}

std::string describe(const SearchStats& s) {
  return "explored " + std::to_string(s.explored) + " words, basis " + std::to_string(s.basis_size) +
         ", max row " + std::to_string(s.max_row) + ", depth " + std::to_string(s.max_depth);
}

}  // namespace

SearchResult search_distinguishing_word(const WeightedView& left, const WeightedView& right,
                                        const SearchOptions& options) {
  if (!(left.field() == right.field())) {
    throw Error(ErrorCode::FieldMismatch, left.field().to_string() + " vs " + right.field().to_string());
  }
  if (left.alphabet_size() != right.alphabet_size()) throw Error(ErrorCode::AlphabetMismatch, "alphabet sizes differ");
  if (!options.prune && !options.max_depth) {
    throw Error(ErrorCode::InvalidArgument, "exhaustive exploration needs a depth limit");
  }

  const std::size_t sigma = left.alphabet_size();
  SearchResult result;
  SparseBasis basis;
  std::unordered_map<WeightedView::StateKey, std::uint32_t> left_cols;
  std::unordered_map<WeightedView::StateKey, std::uint32_t> right_cols;
  std::uint32_t next_col = 0;
  auto column = [&](std::unordered_map<WeightedView::StateKey, std::uint32_t>& cols, WeightedView::StateKey key) {
    auto [it, inserted] = cols.emplace(key, next_col);
    if (inserted) ++next_col;
    return it->second;
  };

  std::vector<Node> nodes;
  std::vector<std::size_t> basis_nodes;
  nodes.push_back({kNoParent, 0, 0, SideConfig{left.initial_state(), left.initial_weight()},
                   SideConfig{right.initial_state(), right.initial_weight()}});

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto& stats = result.stats;
    if (stats.explored >= options.budget) {
      throw Error(ErrorCode::ResourceBudgetExceeded, describe(stats));
    }
    ++stats.explored;
    const std::uint64_t depth = nodes[i].depth;
    stats.max_depth = std::max(stats.max_depth, depth);
    if (nodes[i].left) stats.max_row = std::max(stats.max_row, left.row(nodes[i].left->state));
    if (nodes[i].right) stats.max_row = std::max(stats.max_row, right.row(nodes[i].right->state));

    FieldElement f1 = output(left, nodes[i].left);
    FieldElement f2 = output(right, nodes[i].right);
    if (!(f1 == f2)) {
      result.witness = Witness{word_of(nodes, i), std::move(f1), std::move(f2)};
      break;
    }

    SparseVector v;
    if (nodes[i].left) v.emplace(column(left_cols, nodes[i].left->state), nodes[i].left->weight);
    if (nodes[i].right) v.emplace(column(right_cols, nodes[i].right->state), -nodes[i].right->weight);
    bool independent = basis.insert(std::move(v));
    if (independent) basis_nodes.push_back(i);
    stats.basis_size = basis.size();
    stats.columns = next_col;
    if (basis.size() > next_col) throw std::logic_error("basis larger than the number of columns");

    if (!(independent || !options.prune)) continue;
    if (options.max_depth && depth >= *options.max_depth) continue;
    for (SymbolId s = 0; s < sigma; ++s) {
      Node child{i, s, depth + 1, advance(left, nodes[i].left, s), advance(right, nodes[i].right, s)};
      nodes.push_back(std::move(child));
    }
  }

  for (std::size_t idx : basis_nodes) result.basis_words.push_back(word_of(nodes, idx));
  return result;
}

namespace {

void require_compatible(const Alphabet& x, const FieldSpec& fx, const Alphabet& y, const FieldSpec& fy) {
  if (!(x == y)) throw Error(ErrorCode::AlphabetMismatch, "automata are over different alphabets");
  if (!(fx == fy)) throw Error(ErrorCode::FieldMismatch, fx.to_string() + " vs " + fy.to_string());
}

}  // namespace

DwaVerdict dwa_equiv(const Dwa& b1, const Dwa& b2, const SearchOptions& options) {
  require_compatible(b1.alphabet(), b1.field(), b2.alphabet(), b2.field());
  DwaView left(b1);
  DwaView right(b2);
  SearchResult r = search_distinguishing_word(left, right, options);
  return {!r.witness.has_value(), std::move(r.witness), r.stats};
}

bool bounded_k_equiv(const WeightedView& c_side, const WeightedView& d_side, std::uint64_t k) {
  SearchOptions opts;
  opts.max_depth = k;
  opts.budget = std::numeric_limits<std::uint64_t>::max();
  return !search_distinguishing_word(c_side, d_side, opts).witness.has_value();
}

bool bounded_k_equiv(const Dwa& c_side, const Dwa& d_side, std::uint64_t k) {
  require_compatible(c_side.alphabet(), c_side.field(), d_side.alphabet(), d_side.field());
  return bounded_k_equiv(DwaView(c_side), DwaView(d_side), k);
}

std::optional<WaConfig> find_k_equiv_wa_config(const Dwroca& a, const Configuration& c, const Dwa& b,
                                               std::uint64_t k) {
  require_compatible(a.alphabet(), a.field(), b.alphabet(), b.field());
  if (c.weight.is_zero()) throw Error(ErrorCode::InvalidArgument, "configuration weight must be nonzero");

  // Constant-zero automaton: searching against it yields the first word with
  // a nonzero weight.
  Dwa zero(a.field(), {"zero"}, a.alphabet());
  zero.set_initial({0, FieldElement::one(a.field())});
  DwaView zero_view(zero);

  // Within k steps the counter stays below n_c + k, so the bounded unfolding is exact.
  UnfoldingView from_c(a, c, c.counter + k);
  auto first_nonzero = [&](const WeightedView& v) {
    SearchOptions opts;
    opts.max_depth = k;
    opts.budget = std::numeric_limits<std::uint64_t>::max();
    return search_distinguishing_word(v, zero_view, opts).witness;
  };
  const auto lead_a = first_nonzero(from_c);

  const FieldElement one = FieldElement::one(a.field());
  for (StateId q = 0; q < b.size(); ++q) {
    auto lead_b = first_nonzero(DwaView(b, {q, one}));
    if (!lead_a && !lead_b) return WaConfig{q, one};
    if (!lead_a || !lead_b || lead_a->word != lead_b->word) continue;
    WaConfig candidate{q, lead_a->left / lead_b->left};
    if (bounded_k_equiv(from_c, DwaView(b, candidate), k)) return candidate;
  }
  return std::nullopt;
}

}  // namespace wroca
