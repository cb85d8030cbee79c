#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qmvtm/algebra.hpp"

namespace qmvtm {

enum class Move : std::uint8_t { L, S, R };

char to_char(Move m);
/// Accepts "L", "S", "R".
std::optional<Move> parse_move(std::string_view text);

using StateId = std::uint32_t;
using SymbolId = std::uint16_t;
/// An input string as a sequence of symbol names.
using Word = std::vector<std::string>;

struct TransitionDef {
  std::string from;
  std::string read;
  std::string to;
  std::string write;
  Move move = Move::S;
  Element value;

  friend bool operator==(const TransitionDef&, const TransitionDef&) = default;
};

/// Plain, possibly invalid, description of an E-valued Turing machine.
/// Absent initial/final/transition entries carry the value 1.
struct MachineDef {
  std::string name;
  AlgebraPtr algebra;
  std::vector<std::string> states;
  std::vector<std::string> input_alphabet;
  std::vector<std::string> tape_alphabet;
  std::string blank;
  std::map<std::string, Element> initial;
  std::map<std::string, Element> final;
  std::vector<TransitionDef> transitions;

  /// Structural equality; algebras compare by identity hash.
  bool same_as(const MachineDef& other) const;
};

/// Checks the structural constraints: declared references, blank in the tape
/// alphabet, input alphabet inside tape alphabet minus blank, values from the
/// machine's algebra, no duplicate transition keys.
AxiomReport validate_machine(const MachineDef& def);

/// Instantaneous description in canonical form: `left` has no leading blanks,
/// `right` no trailing blanks; an empty `right` means the head scans a blank.
struct Configuration {
  std::vector<SymbolId> left;
  StateId state = 0;
  std::vector<SymbolId> right;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept;
};

struct TransitionLabel {
  StateId from = 0;
  SymbolId read = 0;
  StateId to = 0;
  SymbolId write = 0;
  Move move = Move::S;
  FiniteAlgebra::Index value = 0;

  friend bool operator==(const TransitionLabel&, const TransitionLabel&) = default;
};

struct Successor {
  Configuration config;
  TransitionLabel label;
};

struct MachineClass {
  bool deterministic = false;
  bool classical_delta = false;
  bool classical_initial = false;
  bool classical_final = false;
};

/// A validated machine with interned states and symbols. Immutable.
class Machine {
 public:
  /// One non-1 transition out of a (state, scanned symbol) pair.
  struct Edge {
    StateId to;
    SymbolId write;
    Move move;
    FiniteAlgebra::Index value;
  };

  /// Throws LoadError carrying the first validation failure.
  explicit Machine(MachineDef def);

  const MachineDef& def() const noexcept { return def_; }
  const std::string& name() const noexcept { return def_.name; }
  const FiniteAlgebra& algebra() const noexcept { return *def_.algebra; }
  const AlgebraPtr& algebra_ptr() const noexcept { return def_.algebra; }

  std::size_t state_count() const noexcept { return def_.states.size(); }
  std::size_t symbol_count() const noexcept { return def_.tape_alphabet.size(); }
  const std::string& state_name(StateId s) const { return def_.states.at(s); }
  const std::string& symbol_name(SymbolId a) const { return def_.tape_alphabet.at(a); }
  StateId state_id(std::string_view name) const;
  SymbolId symbol_id(std::string_view name) const;
  bool has_symbol(std::string_view name) const;
  bool is_input_symbol(SymbolId a) const { return input_symbol_[a]; }
  SymbolId blank() const noexcept { return blank_; }

  FiniteAlgebra::Index initial_value(StateId s) const { return initial_[s]; }
  FiniteAlgebra::Index final_value(StateId s) const { return final_[s]; }
  /// Value of delta(p, a, q, b, D); 1 for unlisted tuples.
  FiniteAlgebra::Index delta(StateId p, SymbolId a, StateId q, SymbolId b, Move d) const;
  /// Non-1 edges out of (p, a), ordered by (target name, written name, move).
  std::span<const Edge> edges(StateId p, SymbolId a) const;
  /// Number of non-1 transition entries.
  std::size_t effective_transition_count() const noexcept { return transition_count_; }

  /// Converts symbol names, checking membership in the input alphabet and non-emptiness.
  std::vector<SymbolId> encode_input(const Word& word) const;

  Configuration make_configuration(const Word& left, std::string_view state,
                                   const Word& right) const;
  std::string to_string(const Configuration& c) const;

 private:
  MachineDef def_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, SymbolId> symbol_index_;
  std::vector<bool> input_symbol_;
  SymbolId blank_ = 0;
  std::vector<FiniteAlgebra::Index> initial_;
  std::vector<FiniteAlgebra::Index> final_;
  std::vector<std::vector<Edge>> edges_;  // indexed by p * |Gamma| + a
  std::size_t transition_count_ = 0;
};

/// Strips leading blanks of `left` and trailing blanks of `right`.
void canonicalize(Configuration& c, SymbolId blank);
SymbolId scanned_symbol(const Configuration& c, SymbolId blank);
/// Applies one transition to a canonical configuration; result is canonical.
Configuration apply_transition(const Configuration& c, SymbolId write, Move move, StateId to,
                               SymbolId blank);

MachineClass classify(const Machine& m);

/// Value of moving from c1 to c2 in one step; 1 when no transition pattern matches.
/// When several transitions yield the same successor (only possible when the
/// resulting tape is entirely blank) the lattice meet of their values is used.
Element delta_star(const Machine& m, const Configuration& c1, const Configuration& c2);

/// Successor configurations with delta_star != 1, one entry per distinct successor,
/// ordered by the label of the (first) transition producing it.
std::vector<Successor> effective_successors(const Machine& m, const Configuration& c);

bool is_halting(const Machine& m, const Configuration& c);

struct InitialEntry {
  Configuration config;
  Element value;
};

/// Initial configurations q0 s for every q0 with I(q0) != 1.
std::vector<InitialEntry> initial_distribution(const Machine& m, const Word& input);

/// Configurations reachable in exactly n effective steps, never expanding
/// halting configurations.
std::vector<Configuration> reachable_ids(const Machine& m, const Word& input, std::size_t n);

/// Union of the ranges of I, delta and T (the value 1 included whenever some
/// entry of the total maps is left at its default).
ElementSet machine_range(const Machine& m);

}  // namespace qmvtm
