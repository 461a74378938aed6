#include "wroca/json_io.hpp"

#include <fstream>
#include <set>

#include "wroca/error.hpp"

namespace wroca::json_io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

std::string need_string(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) fail("'" + std::string(key) + "' in " + where + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  const json& v = need(j, key, "automaton");
  if (!v.is_array()) fail("'" + std::string(key) + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) fail("'" + std::string(key) + "' must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

template <typename Automaton>
StateId state_ref(const Automaton& a, const std::string& name, const std::string& where) {
  auto q = a.find_state(name);
  if (!q) fail("unknown state '" + name + "' in " + where);
  return *q;
}

template <typename Automaton>
SymbolId symbol_ref(const Automaton& a, const std::string& name, const std::string& where) {
  auto s = a.alphabet().find(name);
  if (!s) fail("unknown symbol '" + name + "' in " + where);
  return *s;
}

template <typename Automaton>
void read_finals(Automaton& a, const json& j) {
  auto it = j.find("final");
  if (it == j.end()) return;
  if (!it->is_object()) fail("'final' must be an object mapping states to weights");
  for (const auto& [name, w] : it->items()) {
    if (!w.is_string()) fail("final weight of '" + name + "' must be a string");
    a.set_final(state_ref(a, name, "final"), FieldElement::parse(w.template get<std::string>(), a.field()));
  }
}

template <typename Automaton>
json finals_to_json(const Automaton& a) {
  json finals = json::object();
  for (StateId q = 0; q < a.size(); ++q) finals[a.state_name(q)] = a.final_weight(q).to_string();
  return finals;
}

template <typename Automaton>
std::string where_of(const Automaton& a, const char* map, StateId q, SymbolId s) {
  return std::string(map) + "(" + a.state_name(q) + "," + a.alphabet().name(s) + ")";
}

}  // namespace

FieldSpec field_from_json(const json& j) {
  only_keys(j, {"kind", "p"}, "field");
  std::string kind = need_string(j, "kind", "field");
  if (kind == "rational") {
    if (j.contains("p")) fail("rational field takes no modulus");
    return FieldSpec::rational();
  }
  if (kind == "gf") {
    const json& p = need(j, "p", "field");
    if (!p.is_number_unsigned()) fail("field modulus must be a positive integer");
    try {
      return FieldSpec::prime(p.get<std::uint64_t>());
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  fail("unknown field kind '" + kind + "'");
}

json to_json(const FieldSpec& field) {
  if (field.is_rational()) return {{"kind", "rational"}};
  return {{"kind", "gf"}, {"p", field.modulus()}};
}

Dwroca dwroca_from_json(const json& j) {
  only_keys(j, {"field", "states", "alphabet", "initial", "delta0", "delta1", "final"}, "automaton");
  FieldSpec field = field_from_json(need(j, "field", "automaton"));
  std::optional<Dwroca> built;
  try {
    built.emplace(field, string_list(j, "states"), Alphabet(string_list(j, "alphabet")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(e.what());
  }
  Dwroca& a = *built;

  const json& init = need(j, "initial", "automaton");
  only_keys(init, {"state", "weight"}, "initial");
  a.set_initial(state_ref(a, need_string(init, "state", "initial"), "initial"),
                FieldElement::parse(need_string(init, "weight", "initial"), field));

  for (const char* map : {"delta0", "delta1"}) {
    auto it = j.find(map);
    if (it == j.end()) continue;
    if (!it->is_array()) fail(std::string(map) + " must be an array");
    for (const auto& t : *it) {
      only_keys(t, {"from", "on", "to", "ce", "weight"}, map);
      StateId from = state_ref(a, need_string(t, "from", map), map);
      SymbolId on = symbol_ref(a, need_string(t, "on", map), map);
      StateId to = state_ref(a, need_string(t, "to", map), map);
      const json& ce = need(t, "ce", map);
      if (!ce.is_number_integer()) fail("'ce' must be an integer");
      std::int64_t effect = ce.get<std::int64_t>();
      // Out-of-range effects are reported by validate(), not here.
      if (effect < -2 || effect > 2) effect = effect < 0 ? -2 : 2;
      CounterTransition tr{to, static_cast<int>(effect), FieldElement::parse(need_string(t, "weight", map), field)};
      if (std::string(map) == "delta0") a.add_zero_transition(from, on, std::move(tr));
      else a.add_positive_transition(from, on, std::move(tr));
    }
  }
  read_finals(a, j);
  return std::move(a);
}

json to_json(const Dwroca& a) {
  json j;
  j["field"] = to_json(a.field());
  j["states"] = a.state_names();
  j["alphabet"] = a.alphabet().symbols();
  j["initial"] = {{"state", a.state_name(a.initial_state())}, {"weight", a.initial_weight().to_string()}};
  json d0 = json::array();
  json d1 = json::array();
  for (StateId q = 0; q < a.size(); ++q) {
    for (SymbolId s = 0; s < a.alphabet().size(); ++s) {
      auto entry = [&](const CounterTransition& t) {
        return json{{"from", a.state_name(q)}, {"on", a.alphabet().name(s)}, {"to", a.state_name(t.target)},
                    {"ce", t.effect}, {"weight", t.weight.to_string()}};
      };
      if (const auto* t = a.zero_transition(q, s)) d0.push_back(entry(*t));
      if (const auto* t = a.positive_transition(q, s)) d1.push_back(entry(*t));
    }
  }
  j["delta0"] = std::move(d0);
  j["delta1"] = std::move(d1);
  j["final"] = finals_to_json(a);
  return j;
}

Dwa dwa_from_json(const json& j) {
  only_keys(j, {"field", "states", "alphabet", "initial", "delta1", "final"}, "automaton");
  FieldSpec field = field_from_json(need(j, "field", "automaton"));
  std::optional<Dwa> built;
  try {
    built.emplace(field, string_list(j, "states"), Alphabet(string_list(j, "alphabet")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(e.what());
  }
  Dwa& b = *built;
  if (auto it = j.find("initial"); it != j.end() && !it->is_null()) {
    only_keys(*it, {"state", "weight"}, "initial");
    FieldElement w = FieldElement::parse(need_string(*it, "weight", "initial"), field);
    if (w.is_zero()) fail("initial weight must be nonzero");
    b.set_initial({state_ref(b, need_string(*it, "state", "initial"), "initial"), std::move(w)});
  }
  if (auto it = j.find("delta1"); it != j.end()) {
    if (!it->is_array()) fail("delta1 must be an array");
    for (const auto& t : *it) {
      only_keys(t, {"from", "on", "to", "weight"}, "delta1");
      StateId from = state_ref(b, need_string(t, "from", "delta1"), "delta1");
      SymbolId on = symbol_ref(b, need_string(t, "on", "delta1"), "delta1");
      StateId to = state_ref(b, need_string(t, "to", "delta1"), "delta1");
      FieldElement w = FieldElement::parse(need_string(t, "weight", "delta1"), field);
      if (w.is_zero()) fail("zero transition weight at " + where_of(b, "delta1", from, on));
      if (b.transition(from, on)) fail("duplicate transition at " + where_of(b, "delta1", from, on));
      b.add_transition(from, on, {to, std::move(w)});
    }
  }
  read_finals(b, j);
  return std::move(b);
}

json to_json(const Dwa& b) {
  json j;
  j["field"] = to_json(b.field());
  j["states"] = b.state_names();
  j["alphabet"] = b.alphabet().symbols();
  if (b.initial()) {
    j["initial"] = {{"state", b.state_name(b.initial()->state)}, {"weight", b.initial()->weight.to_string()}};
  }
  json d1 = json::array();
  for (StateId q = 0; q < b.size(); ++q) {
    for (SymbolId s = 0; s < b.alphabet().size(); ++s) {
      if (const auto* t = b.transition(q, s)) {
        d1.push_back({{"from", b.state_name(q)}, {"on", b.alphabet().name(s)}, {"to", b.state_name(t->target)},
                      {"weight", t->weight.to_string()}});
      }
    }
  }
  j["delta1"] = std::move(d1);
  j["final"] = finals_to_json(b);
  return j;
}

json to_json(const EquivalenceVerdict& v, const Alphabet& alphabet) {
  json j;
  j["outcome"] = v.outcome == Outcome::Equivalent ? "equivalent" : "not_equivalent";
  if (v.witness) {
    j["witness"] = alphabet.render(v.witness->word);
    j["witness_length"] = v.witness->word.size();
    j["f1"] = v.witness->left.to_string();
    j["f2"] = v.witness->right.to_string();
  }
  j["mode"] = v.theoretical ? "theoretical" : "bounded";
  j["bound"] = v.bound.get_str();
  switch (v.certificate) {
    case Certificate::BasisSaturation: j["certificate"] = "basis_saturation"; break;
    case Certificate::SynchronisedBisimulation: j["certificate"] = "synchronised_bisimulation"; break;
    case Certificate::None: break;
  }
  j["stats"] = {{"explored", v.stats.explored},
                {"basis_size", v.stats.basis_size},
                {"columns", v.stats.columns},
                {"max_row", v.stats.max_row},
                {"max_depth", v.stats.max_depth}};
  return j;
}

json to_json(const BoundReport& r) {
  return {{"K", r.k.get_str()}, {"P1", r.p1.get_str()}, {"P2", r.p2.get_str()},
          {"P3", r.p3.get_str()}, {"P0", r.p0.get_str()}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("'" + path + "': " + e.what());
  }
}

}  // namespace wroca::json_io
