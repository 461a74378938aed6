#include "wroca/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "wroca/equiv.hpp"
#include "wroca/error.hpp"
#include "wroca/json_io.hpp"
#include "wroca/testkit.hpp"
#include "wroca/unfold.hpp"

namespace wroca::cli {

namespace {

using json_io::json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json_output = false;
};

Dwroca load(const std::string& path) { return json_io::dwroca_from_json(json_io::read_file(path)); }

mpz_class parse_natural(const std::string& text, const char* what) {
  mpz_class v;
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || v.set_str(text, 10) != 0) {
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a natural number, got '" + text + "'");
  }
  return v;
}

std::uint64_t state_cap() {
  if (const char* env = std::getenv("WROCA_STATE_CAP")) {
    mpz_class v = parse_natural(env, "WROCA_STATE_CAP");
    if (v.fits_ulong_p()) return v.get_ui();
  }
  return kDefaultStateCap;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  f << text << "\n";
}

int cmd_validate(Context& ctx, const std::string& file) {
  Dwroca a = load(file);
  auto violations = validate(a);
  if (ctx.json_output) {
    json list = json::array();
    for (const auto& v : violations) list.push_back({{"location", v.location}, {"message", v.message}});
    ctx.out << json{{"valid", violations.empty()}, {"violations", list}}.dump() << "\n";
  } else if (violations.empty()) {
    ctx.out << "OK\n";
  } else {
    for (const auto& v : violations) ctx.out << v.to_string() << "\n";
  }
  return violations.empty() ? kOk : kNegative;
}

int cmd_eval(Context& ctx, const std::string& file, const std::string& word_text, bool letters) {
  Dwroca a = load(file);
  Word word = a.alphabet().parse_word(word_text, letters);
  RunResult r = run_word(a, initial_configuration(a), word);
  FieldElement weight = r.defined() ? r.run.end.weight * a.final_weight(r.run.end.state) : FieldElement::zero(a.field());
  if (ctx.json_output) {
    json j{{"weight", weight.to_string()}, {"defined", r.defined()}};
    if (r.stuck_at) j["stuck_at"] = *r.stuck_at;
    ctx.out << j.dump() << "\n";
  } else if (r.defined()) {
    ctx.out << weight.to_string() << "\n";
  } else {
    ctx.out << "undefined at position " << *r.stuck_at << " -> 0\n";
  }
  return kOk;
}

struct EquivFlags {
  std::string bound;
  std::string method = "pipeline";
  std::optional<std::size_t> max_len;
  std::uint64_t budget = 200000;
  std::string p1_coeff = "14";
  std::string p2_coeff = "6";
  bool no_bisimulation = false;
};

void print_verdict(Context& ctx, const EquivalenceVerdict& v, const Alphabet& alphabet) {
  if (ctx.json_output) {
    ctx.out << json_io::to_json(v, alphabet).dump() << "\n";
    return;
  }
  if (v.outcome == Outcome::Equivalent) {
    if (v.theoretical) ctx.out << "equivalent (theoretical, M = " << v.bound.get_str() << ")\n";
    else ctx.out << "no witness up to length " << v.bound.get_str() << " (bounded)\n";
  } else {
    ctx.out << "not equivalent: witness \"" << alphabet.render(v.witness->word) << "\" (length "
            << v.witness->word.size() << ") weights " << v.witness->left.to_string() << " vs "
            << v.witness->right.to_string() << "\n";
  }
}

int cmd_equiv(Context& ctx, const std::string& f1, const std::string& f2, const EquivFlags& flags) {
  if (flags.method == "pipeline" && flags.max_len) {
    throw Error(ErrorCode::InvalidArgument, "--max-len only applies to --method oracle");
  }
  if (flags.method == "oracle" && !flags.bound.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--bound only applies to --method pipeline");
  }
  Dwroca a1 = load(f1);
  Dwroca a2 = load(f2);

  if (flags.method == "oracle") {
    for (const auto* a : {&a1, &a2}) {
      auto violations = validate(*a);
      if (!violations.empty()) throw Error(ErrorCode::InvalidAutomaton, violations.front().to_string());
    }
    std::size_t max_len = flags.max_len.value_or(8);
    testkit::OracleResult r = testkit::brute_force_witness(a1, a2, max_len);
    EquivalenceVerdict v{Outcome::Equivalent, std::nullopt, false, mpz_class(max_len), Certificate::None, {}};
    if (r.shortest_witness) {
      WitnessReplay replay = replay_witness(a1, a2, *r.shortest_witness);
      v.outcome = Outcome::NotEquivalent;
      v.witness = Witness{*r.shortest_witness, replay.left, replay.right};
    }
    for (auto n : r.agreement) v.stats.explored += n;
    v.stats.max_depth = r.checked_up_to;
    print_verdict(ctx, v, a1.alphabet());
    return v.outcome == Outcome::Equivalent ? kOk : kNegative;
  }

  EquivOptions opts;
  if (!flags.bound.empty()) opts.bound_override = parse_natural(flags.bound, "--bound");
  opts.budget = flags.budget;
  opts.coefficients.initial_space = parse_natural(flags.p1_coeff, "--p1-coeff");
  opts.coefficients.belt_thickness = parse_natural(flags.p2_coeff, "--p2-coeff");
  opts.use_bisimulation = !flags.no_bisimulation;
  EquivalenceVerdict v = check_equivalence(a1, a2, opts);
  print_verdict(ctx, v, a1.alphabet());
  return v.outcome == Outcome::Equivalent ? kOk : kNegative;
}

int cmd_unfold(Context& ctx, const std::string& file, const std::string& bound, const std::string& out_path) {
  Dwroca a = load(file);
  auto violations = validate(a);
  if (!violations.empty()) throw Error(ErrorCode::InvalidAutomaton, violations.front().to_string());
  Dwa b = unfold(a, parse_natural(bound, "--bound"), state_cap());
  write_output(out_path, json_io::to_json(b).dump(2), ctx.out);
  return kOk;
}

int cmd_bounds(Context& ctx, const std::string& k_text, const std::vector<std::string>& files,
               const BoundCoefficients& coeffs) {
  if (k_text.empty() == files.empty()) throw Error(ErrorCode::InvalidArgument, "give either --k or two automaton files");
  BoundReport r;
  if (!k_text.empty()) {
    r = compute_bounds_for_k(parse_natural(k_text, "--k"), coeffs);
  } else {
    if (files.size() != 2) throw Error(ErrorCode::InvalidArgument, "bounds takes exactly two automaton files");
    r = compute_bounds(load(files[0]).size(), load(files[1]).size(), coeffs);
  }
  if (ctx.json_output) {
    ctx.out << json_io::to_json(r).dump() << "\n";
  } else {
    ctx.out << "K  = " << r.k.get_str() << "\nP1 = " << r.p1.get_str() << "\nP2 = " << r.p2.get_str()
            << "\nP3 = " << r.p3.get_str() << "\nP0 = " << r.p0.get_str() << "\n";
  }
  return kOk;
}

FieldSpec parse_field(const std::string& text) {
  if (text == "rational") return FieldSpec::rational();
  if (text.rfind("gf:", 0) == 0) return FieldSpec::prime(parse_natural(text.substr(3), "modulus").get_ui());
  throw Error(ErrorCode::InvalidArgument, "field must be 'rational' or 'gf:P', got '" + text + "'");
}

int cmd_pumpcheck(Context& ctx, const std::string& file, const std::string& word_text, bool letters,
                  const std::string& intervals_text, const std::string& from_text) {
  Dwroca a = load(file);
  Word word = a.alphabet().parse_word(word_text, letters);
  std::vector<Interval> ivs;
  std::size_t pos = 0;
  while (pos < intervals_text.size()) {
    auto comma = intervals_text.find(',', pos);
    std::string item = intervals_text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto dash = item.find('-');
    if (dash == std::string::npos) throw Error(ErrorCode::ParseError, "interval '" + item + "' is not of the form i-j");
    ivs.push_back({parse_natural(item.substr(0, dash), "interval start").get_ui(),
                   parse_natural(item.substr(dash + 1), "interval end").get_ui()});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  Configuration c = initial_configuration(a);
  if (!from_text.empty()) {
    auto first = from_text.find(',');
    auto second = from_text.find(',', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
      throw Error(ErrorCode::ParseError, "--from must be state,counter,weight");
    }
    auto q = a.find_state(from_text.substr(0, first));
    if (!q) throw Error(ErrorCode::ParseError, "unknown state in --from");
    c = {*q, parse_natural(from_text.substr(first + 1, second - first - 1), "counter").get_ui(),
         FieldElement::parse(from_text.substr(second + 1), a.field())};
  }
  bool ok = check_pumping(a, c, word, PumpingIntervals::from(std::move(ivs)));
  if (ctx.json_output) ctx.out << json{{"pumping", ok}}.dump() << "\n";
  else ctx.out << (ok ? "pumping" : "not a pumping") << "\n";
  return ok ? kOk : kNegative;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownSymbol: return kUnknownSymbol;
    case ErrorCode::ResourceBudgetExceeded:
    case ErrorCode::BudgetExceeded: return kBudgetExceeded;
    case ErrorCode::BoundTooLarge: return kBoundTooLarge;
    default: return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic weighted real-time one-counter automata: evaluation and equivalence"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));

  std::string file, file2, word, out_path, bound, k_text, intervals, from;
  std::vector<std::string> files;
  bool letters = false;
  bool empty_word = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check an automaton file");
  validate_cmd->add_option("file", file)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Acceptance weight of a word");
  eval_cmd->add_option("file", file)->required();
  eval_cmd->add_option("word", word, "Comma-separated symbols");
  eval_cmd->add_flag("--letters", letters, "Treat the word as single-character symbols");
  eval_cmd->add_flag("--empty", empty_word, "Evaluate the empty word");

  EquivFlags eq;
  auto* equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of two automata");
  equiv_cmd->add_option("file1", file)->required();
  equiv_cmd->add_option("file2", file2)->required();
  equiv_cmd->add_option("--bound", eq.bound, "Search bound M (default: P0(K))");
  equiv_cmd->add_option("--method", eq.method)->check(CLI::IsMember({"pipeline", "oracle"}));
  equiv_cmd->add_option("--max-len", eq.max_len, "Oracle enumeration depth");
  equiv_cmd->add_option("--budget", eq.budget, "Ceiling on explored words");
  equiv_cmd->add_option("--p1-coeff", eq.p1_coeff, "Coefficient of P1(K) = c K^6");
  equiv_cmd->add_option("--p2-coeff", eq.p2_coeff, "Coefficient of P2(K) = c K^4");
  equiv_cmd->add_flag("--no-bisimulation", eq.no_bisimulation, "Skip the bisimulation certificate");

  auto* unfold_cmd = app.add_subcommand("unfold", "Write the M-unfolding as a DWA file");
  unfold_cmd->add_option("file", file)->required();
  unfold_cmd->add_option("--bound", bound, "M")->required();
  unfold_cmd->add_option("-o,--out", out_path, "Output file (stdout if omitted)");

  std::string p1 = "14", p2 = "6";
  auto* bounds_cmd = app.add_subcommand("bounds", "Print P1, P2, P3, P0 for K or two automata");
  bounds_cmd->add_option("--k", k_text, "K = |A1| + |A2|");
  bounds_cmd->add_option("files", files, "Two automaton files");
  bounds_cmd->add_option("--p1-coeff", p1);
  bounds_cmd->add_option("--p2-coeff", p2);

  testkit::GeneratorConfig gen;
  std::string field_text = "rational";
  auto* random_cmd = app.add_subcommand("random", "Generate a random valid automaton");
  random_cmd->add_option("--seed", gen.seed)->required();
  random_cmd->add_option("--min-states", gen.min_states);
  random_cmd->add_option("--max-states", gen.max_states);
  random_cmd->add_option("--min-symbols", gen.min_symbols);
  random_cmd->add_option("--max-symbols", gen.max_symbols);
  random_cmd->add_option("--field", field_text, "rational or gf:P");
  random_cmd->add_option("--zero-density", gen.zero_density)->check(CLI::Range(0.0, 1.0));
  random_cmd->add_option("--positive-density", gen.positive_density)->check(CLI::Range(0.0, 1.0));
  random_cmd->add_option("--zero-final", gen.zero_final_prob)->check(CLI::Range(0.0, 1.0));
  random_cmd->add_flag("--unit-weights", gen.unit_weights);
  random_cmd->add_option("-o,--out", out_path);

  auto* pump_cmd = app.add_subcommand("pumpcheck", "Check whether removing intervals is a pumping");
  pump_cmd->add_option("file", file)->required();
  pump_cmd->add_option("word", word)->required();
  pump_cmd->add_option("--intervals", intervals, "Comma-separated i-j list (empty for none)");
  pump_cmd->add_option("--from", from, "Start configuration state,counter,weight (default: initial)");
  pump_cmd->add_flag("--letters", letters);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  Context ctx{out, err, format == "json"};
  try {
    if (*validate_cmd) return cmd_validate(ctx, file);
    if (*eval_cmd) {
      if (empty_word && !word.empty()) throw Error(ErrorCode::InvalidArgument, "--empty conflicts with a word");
      return cmd_eval(ctx, file, word, letters);
    }
    if (*equiv_cmd) return cmd_equiv(ctx, file, file2, eq);
    if (*unfold_cmd) return cmd_unfold(ctx, file, bound, out_path);
    if (*bounds_cmd) {
      BoundCoefficients coeffs{parse_natural(p1, "--p1-coeff"), parse_natural(p2, "--p2-coeff")};
      return cmd_bounds(ctx, k_text, files, coeffs);
    }
    if (*random_cmd) {
      gen.field = parse_field(field_text);
      write_output(out_path, json_io::to_json(testkit::generate(gen)).dump(2), out);
      return kOk;
    }
    if (*pump_cmd) return cmd_pumpcheck(ctx, file, word, letters, intervals, from);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const json_io::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace wroca::cli
