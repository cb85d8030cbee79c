#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmvtm/machine.hpp"

namespace qmvtm {

/// Metadata written next to a transformed machine.
struct Sidecar {
  std::string kind;
  std::string source;
  /// |S_M| for transitions-width, |R_M^+| for transitions-depth.
  std::optional<std::size_t> closure_size;
  /// Input symbol re-encoding (transitions-depth only): a -> (a,0).
  std::map<std::string, std::string> input_encoding;
  std::size_t states = 0;
  std::size_t transitions = 0;

  /// Applies input_encoding symbolwise; identity when the map is empty.
  Word encode(const Word& input) const;
};

struct TransformResult {
  Machine machine;
  Sidecar sidecar;
};

/// Fresh state p_I with I(p_I) = 0 bridging into every q with I(q) != 1 by an
/// S-move of value I(q); the original initial function becomes all 1.
TransformResult classicalize_initial(const Machine& m);

/// States become pairs (p, T(p)); transitions into q with T(q) != 1 absorb
/// T(q); the final function becomes 0 / 1.
TransformResult classicalize_final(const Machine& m);

/// classicalize_final after classicalize_initial.
TransformResult classicalize_both(const Machine& m);

/// States are functions X : Q -> S_M reachable from the indicator of the single
/// classical initial state; every generated transition has value 0.
/// Applies classicalize_initial first unless the machine already has exactly
/// one initial state, with value 0. Throws CapExceeded when |S_M| > cap.
TransformResult classicalize_transitions_width(const Machine& m, std::size_t cap = 256);

/// Accumulator-carrying tape construction: every symbol is annotated with the
/// boxplus-sum of values so far, transitions become classical and the sum is
/// released through final-check states. Inputs are re-encoded a -> (a,0).
TransformResult classicalize_transitions_depth(const Machine& m, std::size_t cap = 256);

/// Name of the annotated tape symbol (c, z).
std::string annotated_symbol(std::string_view base, std::string_view accumulator);

/// I = {q0:b, q1:c}, T = {q2:a}, delta(q0,s,q2,s,R) = delta(q1,s,q2,s,R) = 0.
/// The input symbol is "s" and the blank "B".
Machine counterexample_machine(const AlgebraPtr& algebra, Element a, Element b, Element c);

/// Two-valued machine description; accepting states are those with T = 0 and
/// the start state is the one with I = 0.
struct ClassicalMachine {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> input_alphabet;
  std::vector<std::string> tape_alphabet;
  std::string blank;
  std::string start;
  std::vector<std::string> accepting;
  struct Rule {
    std::string from, read, to, write;
    Move move;
  };
  std::vector<Rule> rules;
};

/// Non-deterministic wrapper: from q_I either run the base machine (value 0)
/// or jump to q_T with T(q_T) = x. Depth value is 0 on accepted inputs and x
/// otherwise. Throws InvalidArgument unless 0 < x < 1.
Machine acceptance_wrapper(const ClassicalMachine& base, const AlgebraPtr& algebra, Element x);

}  // namespace qmvtm
