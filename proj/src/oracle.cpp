// Brute-force witness enumeration. The OpenMP kernel shards each length by
// first symbol; the serial kernel walks the same shards in order. Both merge
// shard results in symbol order, so they report the same witness.

#include <limits>

#include "wroca/error.hpp"
#include "wroca/testkit.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wroca::testkit {

namespace {

struct Side {
  bool alive;
  StateId state;
  std::uint64_t counter;
  FieldElement weight;
};

Side advance(const Dwroca& a, const Side& cur, SymbolId s) {
  if (!cur.alive) return cur;
  const CounterTransition* t = cur.counter == 0 ? a.zero_transition(cur.state, s) : a.positive_transition(cur.state, s);
  if (t == nullptr || (cur.counter == 0 && t->effect < 0)) return {false, 0, 0, FieldElement::zero(a.field())};
  return {true, t->target, cur.counter + t->effect, cur.weight * t->weight};
}

FieldElement output(const Dwroca& a, const Side& s) {
  return s.alive ? s.weight * a.final_weight(s.state) : FieldElement::zero(a.field());
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

struct ShardResult {
  bool found = false;
  Word word;
  std::uint64_t agree = 0;
};

class Enumerator {
 public:
  Enumerator(const Dwroca& a1, const Dwroca& a2) : a1_(a1), a2_(a2), sigma_(a1.alphabet().size()) {}

  Side root1() const { return {true, a1_.initial_state(), 0, a1_.initial_weight()}; }
  Side root2() const { return {true, a2_.initial_state(), 0, a2_.initial_weight()}; }

  bool differs(const Side& l, const Side& r) const { return !(output(a1_, l) == output(a2_, r)); }

  /// Words of length exactly `len` starting with `first`, in lexicographic order.
  ShardResult shard(SymbolId first, std::size_t len) const {
    ShardResult out;
    Word prefix{first};
    out.found = dfs(advance(a1_, root1(), first), advance(a2_, root2(), first), len, prefix, out.agree);
    if (out.found) out.word = std::move(prefix);
    return out;
  }

  std::size_t sigma() const { return sigma_; }

 private:
  bool dfs(const Side& l, const Side& r, std::size_t len, Word& prefix, std::uint64_t& agree) const {
    if (prefix.size() == len) {
      if (differs(l, r)) return true;
      ++agree;
      return false;
    }
    if (!l.alive && !r.alive) {
      agree += saturating_pow(sigma_, len - prefix.size());
      return false;
    }
    for (SymbolId s = 0; s < sigma_; ++s) {
      prefix.push_back(s);
      if (dfs(advance(a1_, l, s), advance(a2_, r, s), len, prefix, agree)) return true;
      prefix.pop_back();
    }
    return false;
  }

  const Dwroca& a1_;
  const Dwroca& a2_;
  std::size_t sigma_;
};

void check_inputs(const Dwroca& a1, const Dwroca& a2, std::size_t max_len, std::uint64_t budget) {
  if (!(a1.alphabet() == a2.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "automata are over different alphabets");
  if (!(a1.field() == a2.field())) throw Error(ErrorCode::FieldMismatch, a1.field().to_string() + " vs " + a2.field().to_string());
  std::uint64_t total = 0;
  for (std::size_t l = 0; l <= max_len; ++l) {
    std::uint64_t level = saturating_pow(a1.alphabet().size(), l);
    if (level > budget || total > budget - level) {
      throw Error(ErrorCode::BudgetExceeded, "enumerating words up to length " + std::to_string(max_len) +
                                                 " exceeds the budget of " + std::to_string(budget));
    }
    total += level;
  }
}

template <typename RunShards>
OracleResult enumerate(const Dwroca& a1, const Dwroca& a2, std::size_t max_len, RunShards run_shards) {
  Enumerator e(a1, a2);
  OracleResult result;
  if (e.differs(e.root1(), e.root2())) {
    result.shortest_witness = Word{};
    result.agreement.push_back(0);
    return result;
  }
  result.agreement.push_back(1);
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<ShardResult> shards = run_shards(e, len);
    std::uint64_t agree = 0;
    for (auto& s : shards) {
      agree += s.agree;
      if (s.found) {
        result.checked_up_to = len;
        result.agreement.push_back(agree);
        result.shortest_witness = std::move(s.word);
        return result;
      }
    }
    result.agreement.push_back(agree);
    result.checked_up_to = len;
  }
  return result;
}

}  // namespace

OracleResult brute_force_witness_serial(const Dwroca& a1, const Dwroca& a2, std::size_t max_len, std::uint64_t budget) {
  check_inputs(a1, a2, max_len, budget);
  return enumerate(a1, a2, max_len, [](const Enumerator& e, std::size_t len) {
    std::vector<ShardResult> shards;
    for (SymbolId s = 0; s < e.sigma(); ++s) {
      shards.push_back(e.shard(s, len));
      if (shards.back().found) break;
    }
    return shards;
  });
}

OracleResult brute_force_witness(const Dwroca& a1, const Dwroca& a2, std::size_t max_len, std::uint64_t budget) {
  check_inputs(a1, a2, max_len, budget);
  return enumerate(a1, a2, max_len, [](const Enumerator& e, std::size_t len) {
    std::vector<ShardResult> shards(e.sigma());
    const auto n = static_cast<std::int64_t>(e.sigma());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < n; ++s) shards[s] = e.shard(static_cast<SymbolId>(s), len);
    return shards;
  });
}

std::optional<Word> language_witness(const Dwroca& a1, const Dwroca& a2, std::size_t max_len) {
  if (!(a1.alphabet() == a2.alphabet())) throw Error(ErrorCode::AlphabetMismatch, "automata are over different alphabets");
  struct Cfg {
    bool alive;
    StateId state;
    std::uint64_t counter;
  };
  auto move = [](const Dwroca& a, Cfg c, SymbolId s) -> Cfg {
    if (!c.alive) return c;
    const CounterTransition* t = c.counter == 0 ? a.zero_transition(c.state, s) : a.positive_transition(c.state, s);
    if (t == nullptr || (c.counter == 0 && t->effect < 0)) return {false, 0, 0};
    return {true, t->target, c.counter + t->effect};
  };
  auto accepts = [](const Dwroca& a, const Cfg& c) { return c.alive && !a.final_weight(c.state).is_zero(); };

  // Level-by-level frontier of (word, left, right).
  struct Item {
    Word word;
    Cfg left;
    Cfg right;
  };
  std::vector<Item> level{{Word{}, {true, a1.initial_state(), 0}, {true, a2.initial_state(), 0}}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const auto& it : level) {
      if (accepts(a1, it.left) != accepts(a2, it.right)) return it.word;
    }
    if (len == max_len) break;
    std::vector<Item> next;
    for (const auto& it : level) {
      if (!it.left.alive && !it.right.alive) continue;
      for (SymbolId s = 0; s < a1.alphabet().size(); ++s) {
        Item child{it.word, move(a1, it.left, s), move(a2, it.right, s)};
        child.word.push_back(s);
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace wroca::testkit
