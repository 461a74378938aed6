#pragma once

#include <string>

#include "wroca/core.hpp"
#include "wroca/json_io.hpp"

namespace fixtures {

using namespace wroca;

inline std::string data_path(const std::string& name) { return std::string(WROCA_TEST_DATA) + "/" + name; }

inline Dwroca load(const std::string& name) { return json_io::dwroca_from_json(json_io::read_file(data_path(name))); }

inline FieldElement q(const char* text) { return FieldElement::parse(text, FieldSpec::rational()); }

// One state, a-loop of the given weight in both maps, counter +1.
inline Dwroca loop_machine(const char* weight, const char* final_weight = "1") {
  Dwroca a(FieldSpec::rational(), {"q0"}, Alphabet({"a"}));
  a.set_initial(0, q("1"));
  a.add_zero_transition(0, 0, {0, 1, q(weight)});
  a.add_positive_transition(0, 0, {0, 1, q(weight)});
  a.set_final(0, q(final_weight));
  return a;
}

inline Dwroca e1() { return loop_machine("2"); }
inline Dwroca e1_prime() { return loop_machine("3"); }

}  // namespace fixtures
