#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qmvtm/algebra.hpp"
#include "qmvtm/machine.hpp"
#include "qmvtm/transforms.hpp"

namespace fx {

using namespace qmvtm;

inline AlgebraPtr algebra(const std::string& expr) { return make_builtin(expr); }

inline Machine mprop(const char* expr, const char* a, const char* b, const char* c) {
  const auto A = algebra(expr);
  return counterexample_machine(A, A->element(a), A->element(b), A->element(c));
}

struct R {
  std::string from, read, to, write;
  Move move;
  std::string value;
};

struct Sketch {
  std::string name = "m";
  AlgebraPtr algebra;
  std::vector<std::string> states;
  std::vector<std::string> sigma;
  std::vector<std::string> gamma;
  std::map<std::string, std::string> initial;
  std::map<std::string, std::string> final;
  std::vector<R> rules;
  std::string blank = "B";
};

inline MachineDef def(const Sketch& s) {
  MachineDef d;
  d.name = s.name;
  d.algebra = s.algebra;
  d.states = s.states;
  d.input_alphabet = s.sigma;
  d.tape_alphabet = s.gamma;
  d.blank = s.blank;
  for (const auto& [q, v] : s.initial) d.initial[q] = s.algebra->element(v);
  for (const auto& [q, v] : s.final) d.final[q] = s.algebra->element(v);
  for (const auto& r : s.rules) {
    d.transitions.push_back({r.from, r.read, r.to, r.write, r.move, s.algebra->element(r.value)});
  }
  return d;
}

inline Machine machine(const Sketch& s) { return Machine(def(s)); }

/// Words as single-character symbols: "ab" -> {"a","b"}.
inline Word w(std::string_view text) {
  Word out;
  for (char c : text) out.emplace_back(1, c);
  return out;
}

}  // namespace fx
