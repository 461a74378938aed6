// Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
// exits non-zero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/reference.hpp"
#include "wroca/cli.hpp"
#include "wroca/equiv.hpp"
#include "wroca/error.hpp"
#include "wroca/json_io.hpp"
#include "wroca/testkit.hpp"

using namespace wroca;
using nlohmann::json;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out;
}

std::string str(std::uint64_t n) { return std::to_string(n); }

FieldElement draw_nonzero(const FieldSpec& f, std::mt19937_64& rng) {
  if (!f.is_rational()) return FieldElement::from_int(f, 1 + static_cast<long>(rng() % (f.modulus() - 1)));
  std::uniform_int_distribution<long> num(1, 9), den(1, 7);
  mpq_class v(num(rng) * (rng() % 2 ? 1 : -1), den(rng));
  v.canonicalize();
  return FieldElement::from_rational(f, v);
}

// 500 seeded pairs, 2-4 states, 2 or 3 symbols, over Q and GF(7). Five
// constructions rotate so that both verdicts occur.
std::vector<std::pair<Dwroca, Dwroca>> agreement_pairs() {
  std::vector<std::pair<Dwroca, Dwroca>> pairs;
  for (std::uint64_t i = 0; i < 500; ++i) {
    testkit::GeneratorConfig cfg;
    cfg.seed = 1000 + i;
    cfg.min_states = 2;
    cfg.max_states = 4;
    cfg.min_symbols = cfg.max_symbols = 2 + (i / 2) % 2;
    cfg.field = i % 2 ? FieldSpec::prime(7) : FieldSpec::rational();
    Dwroca a = testkit::generate(cfg);
    std::mt19937_64 rng(i);
    auto state = [&](const Dwroca& m) { return static_cast<StateId>(rng() % m.size()); };
    auto pool = testkit::default_weight_pool(cfg.field);
    switch (i % 5) {
      case 0: pairs.emplace_back(a, testkit::split_state(a, state(a), rng)); break;
      case 1: pairs.emplace_back(a, testkit::rescale_state(a, state(a), draw_nonzero(cfg.field, rng))); break;
      case 2: pairs.emplace_back(a, testkit::perturb(a, pool, rng)); break;
      case 3: {
        cfg.seed = 50000 + i;
        pairs.emplace_back(a, testkit::generate(cfg));
        break;
      }
      default: {
        Dwroca s = testkit::split_state(a, state(a), rng);
        pairs.emplace_back(a, testkit::perturb(s, pool, rng));
      }
    }
  }
  return pairs;
}

Verdict oracle_agreement() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "wroca_acceptance";
  fs::create_directories(dir);
  auto pairs = agreement_pairs();
  std::uint64_t mismatches = 0, equivalent = 0, inequivalent = 0;
  std::string first;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    fs::path f1 = dir / "left.json", f2 = dir / "right.json";
    std::ofstream(f1) << json_io::to_json(a).dump();
    std::ofstream(f2) << json_io::to_json(b).dump();
    std::ostringstream out, err;
    int code = cli::run({"wroca", "--format", "json", "equiv", f1.string(), f2.string(), "--bound", "12"}, out, err);
    testkit::OracleResult oracle = testkit::brute_force_witness(a, b, 12);

    bool ok = code == cli::kOk || code == cli::kNegative;
    if (ok) {
      json v = json::parse(out.str());
      bool says_equal = v["outcome"] == "equivalent";
      ok = says_equal == !oracle.shortest_witness.has_value() && (code == cli::kOk) == says_equal;
      if (ok && oracle.shortest_witness) {
        ok = v["witness_length"] == oracle.shortest_witness->size() &&
             v["witness"] == a.alphabet().render(*oracle.shortest_witness);
      }
    }
    (oracle.shortest_witness ? inequivalent : equivalent)++;
    if (!ok) {
      if (mismatches++ == 0) first = "pair " + str(i) + ": cli exit " + std::to_string(code) + " " + out.str();
    }
  }
  fs::remove_all(dir);
  return {mismatches == 0, join({"500 pairs", str(equivalent) + " equivalent", str(inequivalent) + " inequivalent",
                                 str(mismatches) + " mismatches on outcome/length/word"}) +
                               (first.empty() ? "" : "; first: " + first)};
}

Verdict witness_replay() {
  auto pairs = agreement_pairs();
  std::uint64_t verdicts = 0, bad = 0, gave_up = 0;
  for (const auto& [a, b] : pairs) {
    std::vector<EquivOptions> modes(2);
    modes[0].bound_override = mpz_class(12);
    for (const auto& opts : modes) {
      EquivalenceVerdict v;
      try {
        v = check_equivalence(a, b, opts);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ResourceBudgetExceeded) throw;
        ++gave_up;
        continue;
      }
      if (v.outcome != Outcome::NotEquivalent) continue;
      ++verdicts;
      WitnessReplay r = replay_witness(a, b, v.witness->word);
      if (!(r.left == v.witness->left) || !(r.right == v.witness->right) || r.left == r.right) ++bad;
    }
  }
  return {bad == 0 && verdicts > 0,
          join({str(verdicts) + " NotEquivalent verdicts (bound 12 and theoretical)", str(bad) + " failed to replay",
                str(gave_up) + " theoretical runs over budget"})};
}

Verdict unfolding_faithfulness() {
  std::uint64_t words = 0, bad = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    testkit::GeneratorConfig cfg;
    cfg.seed = 7000 + i;
    cfg.min_states = 1;
    cfg.max_states = 4;
    cfg.min_symbols = 1;
    cfg.max_symbols = 2;
    cfg.field = i % 2 ? FieldSpec::prime(7) : FieldSpec::rational();
    Dwroca a = testkit::generate(cfg);
    const std::uint64_t m = 1 + i % 8;
    Dwa b = unfold(a, m);
    reftest::Machine ref(json_io::to_json(a));
    for (const Word& w : testkit::all_words(a.alphabet().size(), m)) {
      FieldElement direct = accept_weight_or_zero(a, initial_configuration(a), w);
      FieldElement unfolded = dwa_accept_weight(b, *b.initial(), w);
      std::vector<std::string> names;
      for (auto s : w) names.push_back(a.alphabet().name(s));
      if (!(direct == unfolded) || unfolded.to_string() != ref.weight(names).str()) ++bad;
      ++words;
    }
  }
  return {bad == 0, join({"200 automata", "M in 1..8", str(words) + " words", str(bad) + " disagreements"})};
}

FieldElement walk(const Dwa& b, const Word& w) {
  StateId s = b.initial()->state;
  FieldElement weight = b.initial()->weight;
  for (SymbolId x : w) {
    const WeightedTransition* t = b.transition(s, x);
    if (!t) return FieldElement::zero(b.field());
    weight *= t->weight;
    s = t->target;
  }
  return weight * b.final_weight(s);
}

Verdict basis_bound() {
  std::uint64_t over = 0, equivalent = 0, spot_bad = 0, replay_bad = 0, max_basis = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    testkit::GeneratorConfig cfg;
    cfg.seed = 9000 + i;
    cfg.min_states = 1;
    cfg.max_states = 5;
    cfg.min_symbols = cfg.max_symbols = 1 + i % 3;
    cfg.field = i % 2 ? FieldSpec::prime(7) : FieldSpec::rational();
    Dwa b1 = testkit::generate_dwa(cfg);
    std::mt19937_64 rng(i);
    Dwa b2 = b1;
    switch (i % 3) {
      case 0: b2 = testkit::split_state(b1, static_cast<StateId>(rng() % b1.size()), rng); break;
      case 1: {
        b2 = testkit::split_state(b1, 0, rng);
        StateId q = static_cast<StateId>(rng() % b2.size());
        b2.set_final(q, b2.final_weight(q) + FieldElement::one(cfg.field));
        break;
      }
      default: cfg.seed += 100000; b2 = testkit::generate_dwa(cfg);
    }
    DwaVerdict v = dwa_equiv(b1, b2);
    max_basis = std::max<std::uint64_t>(max_basis, v.stats.basis_size);
    if (v.stats.basis_size > b1.size() + b2.size()) ++over;
    if (v.equivalent) {
      ++equivalent;
      std::uniform_int_distribution<std::size_t> len(0, 20);
      for (int k = 0; k < 1000; ++k) {
        Word w(len(rng));
        for (auto& x : w) x = static_cast<SymbolId>(rng() % b1.alphabet().size());
        if (!(walk(b1, w) == walk(b2, w))) ++spot_bad;
      }
    } else if (!(walk(b1, v.witness->word) == v.witness->left) || !(walk(b2, v.witness->word) == v.witness->right) ||
               v.witness->left == v.witness->right) {
      ++replay_bad;
    }
  }
  return {over == 0 && spot_bad == 0 && replay_bad == 0,
          join({"500 pairs", "largest basis " + str(max_basis), str(over) + " over |Q1|+|Q2|",
                str(equivalent) + " equivalent x 1000 random words", str(spot_bad) + " disagreements",
                str(replay_bad) + " bad witnesses"})};
}

Verdict pumping_property() {
  const std::size_t kMaxLen = 8;
  const std::uint64_t kTrialCap = 20000;
  std::uint64_t trials = 0, nontrivial = 0, union_fail = 0, no_distinguisher = 0;
  std::string first;
  std::set<std::string> instances;
  for (std::uint64_t seed = 0; seed < 400 && trials < kTrialCap; ++seed) {
    testkit::GeneratorConfig cfg;
    cfg.seed = 20000 + seed;
    cfg.min_states = 1;
    cfg.max_states = 3;
    cfg.zero_density = 1;
    cfg.positive_density = 0.9;
    Dwroca a1 = testkit::generate(cfg);
    std::mt19937_64 rng(seed);
    Dwroca a2 = seed % 2 ? testkit::perturb(a1, testkit::default_weight_pool(cfg.field), rng)
                         : testkit::generate([&] {
                             auto c2 = cfg;
                             c2.seed += 7777;
                             c2.min_symbols = c2.max_symbols = a1.alphabet().size();
                             return c2;
                           }());
    Configuration c{static_cast<StateId>(rng() % a1.size()), rng() % 3, draw_nonzero(cfg.field, rng)};
    Configuration c2{static_cast<StateId>(rng() % a2.size()), rng() % 3, draw_nonzero(cfg.field, rng)};
    for (const Word& w : testkit::all_words(a1.alphabet().size(), kMaxLen)) {
      if (w.size() < 2 || trials >= kTrialCap) continue;
      if (!run_word(a1, c, w).defined() || !run_word(a2, c2, w).defined()) continue;
      if (accept_weight_or_zero(a1, c, w) == accept_weight_or_zero(a2, c2, w)) continue;
      auto p1 = testkit::find_pumpings(a1, c, w);
      std::vector<PumpingIntervals> common;
      for (const auto& p : p1)
        if (check_pumping(a2, c2, w, p)) common.push_back(p);
      for (std::size_t x = 0; x < common.size(); ++x) {
        for (std::size_t y = x + 1; y < common.size(); ++y) {
          if (!common[x].disjoint_with(common[y])) continue;
          testkit::TrialOutcome t = testkit::disjoint_pumping_trial(a1, a2, c, c2, w, common[x], common[y]);
          ++trials;
          if (!common[x].empty() && !common[y].empty()) {
            ++nontrivial;
            instances.insert(str(seed) + "/" + a1.alphabet().render(w));
          }
          if (!t.union_is_pumping) ++union_fail;
          if (!t.distinguisher) ++no_distinguisher;
          if (!t.holds() && first.empty()) {
            first = "seed " + str(seed) + " c=(" + a1.state_name(c.state) + "," + str(c.counter) + "," +
                    c.weight.to_string() + ") c'=(" + a2.state_name(c2.state) + "," + str(c2.counter) + "," +
                    c2.weight.to_string() + ") w=" + a1.alphabet().render(w) + " I=" + common[x].to_string() +
                    " J=" + common[y].to_string() + (t.union_is_pumping ? "" : " (union not a pumping)") +
                    (t.distinguisher ? "" : " (no distinguisher)");
          }
        }
      }
    }
  }
  bool pass = nontrivial >= 100 && union_fail == 0 && no_distinguisher == 0;
  return {pass, join({str(trials) + " trials", str(nontrivial) + " with I, J both non-empty over " +
                                                   str(instances.size()) + " (automaton, word) instances",
                      str(union_fail) + " where I+J is not a pumping",
                      str(no_distinguisher) + " with no distinguishing residual"}) +
                    (first.empty() ? "" : "; first counterexample: " + first)};
}

Verdict reweighting_invariance() {
  std::uint64_t checks = 0, bad = 0, found = 0, not_found = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    testkit::GeneratorConfig cfg;
    cfg.seed = 30000 + i;
    cfg.min_states = 1;
    cfg.max_states = 3;
    cfg.field = i % 2 ? FieldSpec::prime(7) : FieldSpec::rational();
    Dwroca a = testkit::generate(cfg);
    std::mt19937_64 rng(i);
    Dwa b = underlying_wa(a);
    if (i % 3 == 1) b = underlying_wa(testkit::split_state(a, 0, rng));
    if (i % 3 == 2) {
      cfg.seed += 500;
      cfg.min_symbols = cfg.max_symbols = a.alphabet().size();
      b = underlying_wa(testkit::generate(cfg));
    }
    const std::uint64_t k = i % 4;
    Configuration c{static_cast<StateId>(rng() % a.size()), rng() % 4, draw_nonzero(cfg.field, rng)};
    auto beta = find_k_equiv_wa_config(a, c, b, k);
    (beta ? found : not_found)++;
    for (int r = 0; r < 5; ++r) {
      Configuration c_bar = c;
      c_bar.weight = draw_nonzero(cfg.field, rng);
      auto beta_bar = find_k_equiv_wa_config(a, c_bar, b, k);
      ++checks;
      if (beta.has_value() != beta_bar.has_value()) {
        ++bad;
        continue;
      }
      if (!beta) continue;
      // The scaled configuration must itself be k-equivalent.
      WaConfig scaled{beta->state, c_bar.weight * c.weight.inverse() * beta->weight};
      UnfoldingView from(a, c_bar, c_bar.counter + k);
      if (!bounded_k_equiv(from, DwaView(b, scaled), k)) ++bad;
    }
  }
  return {bad == 0, join({"100 triples x 5 reweightings", str(found) + " members", str(not_found) + " non-members",
                          str(bad) + " of " + str(checks) + " checks changed"})};
}

double log_ratio(const mpz_class& value, double k) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return (std::log(mant) + exp * std::log(2.0)) / std::log(k);
}

Verdict bound_formulas() {
  BoundReport r = compute_bounds(1, 1);
  bool exact = r.p3 == 295810 && r.p0 == mpz_class("700028448800");
  BoundReport big = compute_bounds_for_k(50);
  double e3 = log_ratio(big.p3, 50), e0 = log_ratio(big.p0, 50);
  bool g3 = std::abs(e3 - 12) <= 0.05 * 12;
  bool g0 = std::abs(e0 - 26) <= 0.05 * 26;
  // Slope of log P against log K between K = 50 and K = 100, for reference.
  BoundReport twice = compute_bounds_for_k(100);
  double s3 = (log_ratio(twice.p3, 2) - log_ratio(big.p3, 2));
  double s0 = (log_ratio(twice.p0, 2) - log_ratio(big.p0, 2));
  std::ostringstream d;
  d << std::fixed << std::setprecision(3) << "K=2: P3=" << r.p3.get_str() << " P0=" << r.p0.get_str()
    << (exact ? " (exact)" : " (WRONG)") << "; K=50: log P3/log K=" << e3 << " (target 12 +-5%: " << (g3 ? "ok" : "out")
    << "), log P0/log K=" << e0 << " (target 26 +-5%: " << (g0 ? "ok" : "out") << "); slope 50->100: P3 " << s3
    << ", P0 " << s0;
  return {exact && g3 && g0, d.str()};
}

Verdict unweighted_language() {
  std::uint64_t bad = 0, equivalent = 0, inequivalent = 0, theoretical = 0, theoretical_bad = 0;
  std::string first;
  for (std::uint64_t i = 0; i < 100; ++i) {
    testkit::GeneratorConfig cfg;
    cfg.seed = 40000 + i;
    cfg.min_states = 2;
    cfg.max_states = 4;
    cfg.min_symbols = cfg.max_symbols = 2 + i % 2;
    cfg.unit_weights = true;
    Dwroca a = testkit::generate(cfg);
    std::mt19937_64 rng(i);
    Dwroca b = a;
    switch (i % 4) {
      case 0: b = testkit::split_state(a, static_cast<StateId>(rng() % a.size()), rng); break;
      case 1: {
        StateId q = static_cast<StateId>(rng() % a.size());
        b.set_final(q, a.final_weight(q).is_zero() ? FieldElement::one(a.field()) : FieldElement::zero(a.field()));
        break;
      }
      case 2: {
        Dwroca s = testkit::split_state(a, 0, rng);
        StateId q = static_cast<StateId>(s.size() - 1);
        s.set_final(q, s.final_weight(q).is_zero() ? FieldElement::one(a.field()) : FieldElement::zero(a.field()));
        b = s;
        break;
      }
      default: cfg.seed += 1000; b = testkit::generate(cfg);
    }
    auto lang = testkit::language_witness(a, b, 12);
    EquivOptions opts;
    opts.bound_override = mpz_class(12);
    EquivalenceVerdict v = check_equivalence(a, b, opts);
    bool ok = (v.outcome == Outcome::NotEquivalent) == lang.has_value();
    if (ok && lang) ok = v.witness->word == *lang;
    (lang ? inequivalent : equivalent)++;
    if (!ok && bad++ == 0) first = "pair " + str(i);

    try {
      EquivalenceVerdict t = check_equivalence(a, b);
      ++theoretical;
      bool consistent = t.outcome == Outcome::Equivalent ? !lang.has_value()
                                                         : (t.witness->word.size() > 12 ? !lang : lang == t.witness->word);
      if (!consistent) ++theoretical_bad;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResourceBudgetExceeded) throw;
    }
  }
  return {bad == 0 && theoretical_bad == 0,
          join({"100 unit-weight pairs", str(equivalent) + " language-equivalent to depth 12",
                str(inequivalent) + " not", str(bad) + " mismatches at bound 12",
                str(theoretical) + " also decided in theoretical mode with " + str(theoretical_bad) + " mismatches"}) +
              (first.empty() ? "" : "; first: " + first)};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria = {
    {"oracle_agreement", oracle_agreement},
    {"witness_replay", witness_replay},
    {"unfolding_faithfulness", unfolding_faithfulness},
    {"basis_bound", basis_bound},
    {"pumping_property", pumping_property},
    {"reweighting_invariance", reweighting_invariance},
    {"bound_formulas", bound_formulas},
    {"unweighted_language", unweighted_language},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> selected(argv + 1, argv + argc);
  for (const auto& name : selected) {
    bool known = false;
    for (const auto& c : kCriteria) known = known || c.first == name;
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  }
  bool all_pass = true;
  for (const auto& [name, fn] : kCriteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << " [" << std::fixed << std::setprecision(1)
              << secs << "s]" << std::endl;
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 1;
}
