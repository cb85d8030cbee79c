#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmvtm/algebra.hpp"
#include "qmvtm/machine.hpp"
#include "qmvtm/semantics.hpp"
#include "qmvtm/transforms.hpp"

namespace qmvtm {

enum class Mode { depth, width };
enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Mode mode);
std::string_view to_string(Verdict verdict);
std::optional<Mode> parse_mode(std::string_view text);
/// Worst verdict wins: fail over inconclusive over pass.
Verdict combine(Verdict a, Verdict b);

EvalResult evaluate(const Machine& m, const Word& input, Mode mode, const Budget& budget);

struct InputOutcome {
  Word input;
  EvalResult first;
  EvalResult second;
  std::string first_value;
  std::string second_value;
  /// False when either run was incomplete.
  bool compared = false;
  bool holds = false;
};

struct EquivReport {
  std::string first;
  std::string second;
  /// "depth", "width", or "width<=depth" for order checks.
  std::string relation;
  std::vector<InputOutcome> outcomes;
  Verdict verdict = Verdict::pass;

  std::vector<const InputOutcome*> witnesses() const;
};

using InputEncoder = std::function<Word(const Word&)>;

/// Evaluates both machines on every input (M2's input passed through `encode`
/// when set) and compares values where both runs are complete. Undefined
/// results compare by their value field.
EquivReport equiv_check(const Machine& m1, const Machine& m2, Mode mode, const std::vector<Word>& inputs,
                        const Budget& budget, const InputEncoder& encode = {});

/// width <= depth per input; an undefined side makes the input inconclusive.
EquivReport order_check(const Machine& m, const std::vector<Word>& inputs, const Budget& budget);

/// MV pass == DISTRIBUTIVE pass; for extended-effect algebras additionally
/// DISTRIBUTIVE == (MV and LINEAR). Throws PrerequisiteMissing unless the
/// algebra passes QMV and LATTICE.
AxiomReport mv_distributivity_theorem_check(const FiniteAlgebra& algebra);

struct TripleOutcome {
  std::string a, b, c;
  std::string depth, width;
  std::string expected_depth, expected_width;
  bool complete = false;
};

struct SweepReport {
  std::string algebra;
  std::vector<TripleOutcome> triples;
  /// Every run matched its table formula.
  bool formulas_match = true;
  bool all_equal = true;
  bool distributive = false;
  Verdict verdict = Verdict::pass;

  /// Triples with depth != width.
  std::vector<const TripleOutcome*> unequal() const;
};

/// Runs the counterexample machine on every triple and input "s".
SweepReport proposition_sweep(const AlgebraPtr& algebra, const Budget& budget = {});

/// Every S-algebra on k elements with carrier 0, e1, ..., 1, up to the naming
/// of the middle elements (no isomorphism reduction).
std::vector<FiniteAlgebra> enumerate_s_algebras(std::size_t k);

/// Built-in algebras covering both sides of the MV / distributivity theorems.
std::vector<AlgebraPtr> algebra_catalog();

/// All words over `alphabet` of length 1..max_len, shortlex order.
std::vector<Word> enumerate_words(const std::vector<std::string>& alphabet, std::size_t max_len);

/// Deterministic decider for "contains 11" over {0,1}.
ClassicalMachine contains_11_decider();
/// Moves right forever on every input.
ClassicalMachine runaway_machine();
/// Direct simulation of a classical machine; nullopt when it does not halt
/// within `max_steps`.
std::optional<bool> classical_accepts(const ClassicalMachine& m, const Word& input, std::size_t max_steps);

struct Fixture {
  std::string name;
  Machine machine;
  std::vector<Word> inputs;
  Budget budget;
  bool transitions_width = false;
  bool transitions_depth = false;
};

std::vector<Fixture> corpus();

struct CheckResult {
  int criterion = 0;
  std::string fixture;
  std::string property;
  Verdict verdict = Verdict::pass;
  /// Findings are reported but never change the overall verdict.
  bool finding = false;
  std::string detail;
  double seconds = 0;
};

struct CorpusReport {
  std::vector<CheckResult> checks;
  Verdict verdict = Verdict::pass;

  std::string to_json() const;
  std::string to_table() const;
};

/// Runs every corpus property, numbered by acceptance criterion. Width
/// preservation under classicalize_final and determinism of the depth
/// construction are findings.
CorpusReport verify_corpus();

/// Exit status for a verdict: 0 pass, 1 fail, 3 inconclusive.
int exit_code(Verdict verdict);

}  // namespace qmvtm
