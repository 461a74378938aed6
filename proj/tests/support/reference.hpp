#pragma once

// Naive reference semantics used as an oracle in tests. It reads the JSON
// form of an automaton and never calls into the library's run code.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace reftest {

using nlohmann::json;

// Either a rational or a residue mod p, with p == 0 meaning the rationals.
struct Num {
  std::uint64_t p = 0;
  mpq_class q;
  std::uint64_t r = 0;

  static Num parse(const std::string& s, std::uint64_t p) {
    Num n;
    n.p = p;
    if (p == 0) {
      n.q = mpq_class(s);
      n.q.canonicalize();
    } else {
      long long v = std::stoll(s);
      n.r = static_cast<std::uint64_t>(((v % static_cast<long long>(p)) + p) % p);
    }
    return n;
  }
  static Num zero(std::uint64_t p) { return parse("0", p); }

  Num operator*(const Num& o) const {
    Num n = *this;
    if (p == 0) n.q = q * o.q;
    else n.r = r * o.r % p;
    return n;
  }
  bool operator==(const Num& o) const { return p == 0 ? q == o.q : r == o.r; }
  std::string str() const { return p == 0 ? q.get_str() : std::to_string(r); }
};

struct Machine {
  std::uint64_t p = 0;
  std::map<std::string, std::tuple<std::string, int, std::string>> d0, d1;  // key "state|symbol"
  std::map<std::string, std::string> finals;
  std::string init_state;
  std::string init_weight;

  explicit Machine(const json& j) {
    if (j.at("field").at("kind") == "gf") p = j["field"]["p"].get<std::uint64_t>();
    init_state = j.at("initial").at("state");
    init_weight = j["initial"]["weight"];
    for (const auto& t : j.value("delta0", json::array()))
      d0[t["from"].get<std::string>() + "|" + t["on"].get<std::string>()] = {t["to"], t["ce"], t["weight"]};
    for (const auto& t : j.value("delta1", json::array()))
      d1[t["from"].get<std::string>() + "|" + t["on"].get<std::string>()] = {t["to"], t["ce"], t["weight"]};
    const json fin = j.value("final", json::object());
    for (const auto& [k, v] : fin.items()) finals[k] = v;
  }

  // Acceptance weight with undefined runs counted as zero.
  Num weight(const std::vector<std::string>& word, const std::string& state, std::uint64_t counter,
             const std::string& w0) const {
    std::string q = state;
    long long n = static_cast<long long>(counter);
    Num w = Num::parse(w0, p);
    for (const auto& a : word) {
      const auto& table = n == 0 ? d0 : d1;
      auto it = table.find(q + "|" + a);
      if (it == table.end()) return Num::zero(p);
      const auto& [to, ce, tw] = it->second;
      n += ce;
      if (n < 0) return Num::zero(p);
      q = to;
      w = w * Num::parse(tw, p);
    }
    auto f = finals.find(q);
    return f == finals.end() ? Num::zero(p) : w * Num::parse(f->second, p);
  }
  Num weight(const std::vector<std::string>& word) const { return weight(word, init_state, 0, init_weight); }
};

inline std::vector<std::string> letters(const std::string& s) {
  std::vector<std::string> out;
  for (char c : s) out.emplace_back(1, c);
  return out;
}

// All words over `sigma` of length <= max_len, length-lexicographic.
inline std::vector<std::vector<std::string>> words_upto(const std::vector<std::string>& sigma, std::size_t max_len) {
  std::vector<std::vector<std::string>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& a : sigma) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

// Shortest distinguishing word by direct enumeration.
inline std::optional<std::vector<std::string>> shortest_witness(const Machine& a, const Machine& b,
                                                                const std::vector<std::string>& sigma,
                                                                std::size_t max_len) {
  for (const auto& w : words_upto(sigma, max_len))
    if (!(a.weight(w) == b.weight(w))) return w;
  return std::nullopt;
}

// Rank of a dense matrix over Q by plain Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace reftest
