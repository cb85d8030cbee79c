#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "qmvtm/error.hpp"
#include "qmvtm/harness.hpp"

using namespace qmvtm;

namespace {

bool has_violation(const AxiomReport& r, const std::string& constraint) {
  for (const auto& v : r.violations) {
    if (v.axiom == constraint) return true;
  }
  return false;
}

fx::Sketch small_sketch() {
  fx::Sketch s;
  s.algebra = fx::algebra("lukasiewicz(3)");
  s.states = {"p", "q"};
  s.sigma = {"a"};
  s.gamma = {"B", "a", "b"};
  s.initial = {{"p", "0"}};
  s.final = {{"q", "1/2"}};
  return s;
}

// Converts a configuration to the oracle's sparse tape.
oracle::Tape to_tape(const Machine& m, const Configuration& c) {
  oracle::Tape t;
  t.state = m.state_name(c.state);
  const long offset = -static_cast<long>(c.left.size());
  for (std::size_t i = 0; i < c.left.size(); ++i) t.cells[offset + static_cast<long>(i)] = m.symbol_name(c.left[i]);
  for (std::size_t i = 0; i < c.right.size(); ++i) t.cells[static_cast<long>(i)] = m.symbol_name(c.right[i]);
  return t;
}

Configuration from_tape(const Machine& m, const oracle::Tape& t) {
  Word left, right;
  long lo = t.head, hi = t.head;
  for (const auto& [pos, sym] : t.cells) {
    lo = std::min(lo, pos);
    hi = std::max(hi, pos);
  }
  auto at = [&](long p) {
    auto it = t.cells.find(p);
    return it == t.cells.end() ? m.def().blank : it->second;
  };
  for (long p = lo; p < t.head; ++p) left.push_back(at(p));
  for (long p = t.head; p <= hi; ++p) right.push_back(at(p));
  return m.make_configuration(left, t.state, right);
}

Configuration random_configuration(const Machine& m, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> len(0, 3), sym(0, m.symbol_count() - 1), st(0, m.state_count() - 1);
  Word left, right;
  for (std::size_t i = len(rng); i > 0; --i) left.push_back(m.symbol_name(static_cast<SymbolId>(sym(rng))));
  for (std::size_t i = len(rng); i > 0; --i) right.push_back(m.symbol_name(static_cast<SymbolId>(sym(rng))));
  return m.make_configuration(left, m.state_name(static_cast<StateId>(st(rng))), right);
}

// Every configuration one cell-rewrite and one head move away, in any state.
std::set<Configuration> neighbours(const Machine& m, const Configuration& c) {
  std::set<Configuration> out;
  const oracle::Tape base = to_tape(m, c);
  for (const auto& q : m.def().states) {
    for (const auto& b : m.def().tape_alphabet) {
      for (long d : {-1L, 0L, 1L}) {
        oracle::Tape t = base;
        t.cells[t.head] = b;
        t.head += d;
        t.state = q;
        out.insert(from_tape(m, t));
      }
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("machine") {
  TEST_CASE("validate_machine examples") {
    CHECK(validate_machine(fx::mprop("diamond", "p", "p", "q").def()).pass);

    auto s = small_sketch();
    s.sigma = {"a", "B"};
    const auto blank_in_sigma = validate_machine(fx::def(s));
    CHECK_FALSE(blank_in_sigma.pass);
    CHECK(has_violation(blank_in_sigma, "Sigma subset of Gamma\\{B}"));

    auto d = fx::def(small_sketch());
    d.transitions.push_back({"p", "a", "q", "b", Move::R, lukasiewicz(4).zero()});
    const auto foreign = validate_machine(d);
    CHECK_FALSE(foreign.pass);
    CHECK(has_violation(foreign, "value in algebra"));
    CHECK_THROWS_AS(Machine{d}, LoadError);
  }

  TEST_CASE("structural validation failures") {
    auto s = small_sketch();
    s.rules = {{"p", "a", "r", "b", Move::R, "0"}};
    CHECK(has_violation(validate_machine(fx::def(s)), "declared state"));

    s = small_sketch();
    s.rules = {{"p", "c", "q", "b", Move::R, "0"}};
    CHECK(has_violation(validate_machine(fx::def(s)), "declared symbol"));

    s = small_sketch();
    s.rules = {{"p", "a", "q", "b", Move::R, "0"}, {"p", "a", "q", "b", Move::R, "1/2"}};
    CHECK(has_violation(validate_machine(fx::def(s)), "unique transition"));

    s = small_sketch();
    s.blank = "_";
    CHECK(has_violation(validate_machine(fx::def(s)), "B in Gamma"));

    s = small_sketch();
    s.initial = {{"z", "0"}};
    CHECK(has_violation(validate_machine(fx::def(s)), "declared state"));
  }

  TEST_CASE("classify examples") {
    const auto cls = classify(fx::mprop("diamond", "p", "p", "q"));
    CHECK(cls.deterministic);
    CHECK(cls.classical_delta);
    CHECK_FALSE(cls.classical_initial);
    CHECK_FALSE(cls.classical_final);

    auto s = small_sketch();
    s.rules = {{"p", "a", "q", "b", Move::R, "0"}, {"p", "a", "p", "a", Move::S, "1/2"}};
    CHECK_FALSE(classify(fx::machine(s)).deterministic);
    CHECK_FALSE(classify(fx::machine(s)).classical_delta);
  }

  TEST_CASE("delta_star examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    const auto c1 = m.make_configuration({}, "q0", {"s"});
    const auto c2 = m.make_configuration({"s"}, "q2", {});
    CHECK(m.algebra().name_of(delta_star(m, c1, c2)) == "0");
    CHECK(delta_star(m, c1, c1) == m.algebra().one());
    CHECK(delta_star(m, c2, c2) == m.algebra().one());
  }

  TEST_CASE("left edge move pads with a blank") {
    auto s = small_sketch();
    s.rules = {{"p", "a", "q", "b", Move::L, "1/2"}};
    const auto m = fx::machine(s);
    const auto c1 = m.make_configuration({}, "p", {"a"});
    const auto succ = effective_successors(m, c1);
    REQUIRE(succ.size() == 1);
    const auto expected = m.make_configuration({}, "q", {"B", "b"});
    CHECK(succ.front().config == expected);
    CHECK(expected.left.empty());
    CHECK(expected.right.size() == 2);
    CHECK(m.algebra().name_of(delta_star(m, c1, expected)) == "1/2");
    CHECK(m.to_string(expected) == "[q] B b");
  }

  TEST_CASE("canonical form strips edge blanks") {
    const auto m = fx::machine(small_sketch());
    CHECK(m.make_configuration({"B", "a"}, "p", {"a", "B", "B"}) == m.make_configuration({"a"}, "p", {"a"}));
    CHECK(m.make_configuration({}, "q", {"B"}) == m.make_configuration({}, "q", {}));
    CHECK(scanned_symbol(m.make_configuration({"a"}, "p", {}), m.blank()) == m.blank());
  }

  TEST_CASE("effective_successors examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    const auto succ = effective_successors(m, m.make_configuration({}, "q0", {"s"}));
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].config == m.make_configuration({"s"}, "q2", {}));
    CHECK(m.state_name(succ[0].label.from) == "q0");
    CHECK(m.state_name(succ[0].label.to) == "q2");
    CHECK(succ[0].label.move == Move::R);
    CHECK(m.algebra().carrier()[succ[0].label.value] == "0");
    CHECK(effective_successors(m, m.make_configuration({"s"}, "q2", {})).empty());

    const auto A = fx::algebra("lukasiewicz(3)");
    const auto wrap = acceptance_wrapper(contains_11_decider(), A, A->element("1/2"));
    const auto init = initial_distribution(wrap, fx::w("01"));
    REQUIRE(init.size() == 1);
    CHECK(effective_successors(wrap, init[0].config).size() == 2);
  }

  TEST_CASE("is_halting examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    CHECK(is_halting(m, m.make_configuration({"s"}, "q2", {})));
    CHECK_FALSE(is_halting(m, m.make_configuration({}, "q0", {"s"})));
    auto s = small_sketch();
    s.final = {};
    const auto bare = fx::machine(s);
    CHECK(is_halting(bare, bare.make_configuration({}, "q", {"a"})));
  }

  TEST_CASE("initial_distribution examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    const auto init = initial_distribution(m, {"s"});
    REQUIRE(init.size() == 2);
    CHECK(init[0].config == m.make_configuration({}, "q0", {"s"}));
    CHECK(m.algebra().name_of(init[0].value) == "p");
    CHECK(init[1].config == m.make_configuration({}, "q1", {"s"}));
    CHECK(m.algebra().name_of(init[1].value) == "q");

    const auto single = fx::machine(small_sketch());
    const auto one = initial_distribution(single, {"a"});
    REQUIRE(one.size() == 1);
    CHECK(one[0].value == single.algebra().zero());

    auto s = small_sketch();
    s.initial = {};
    CHECK(initial_distribution(fx::machine(s), {"a"}).empty());

    CHECK_THROWS_AS(initial_distribution(m, {}), InvalidArgument);
    CHECK_THROWS_AS(initial_distribution(m, {"B"}), InvalidArgument);
    CHECK_THROWS_AS(initial_distribution(m, {"x"}), InvalidArgument);
  }

  TEST_CASE("reachable_ids examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    const auto one = reachable_ids(m, {"s"}, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == m.make_configuration({"s"}, "q2", {}));
    CHECK(reachable_ids(m, {"s"}, 2).empty());
    CHECK(reachable_ids(fx::machine(small_sketch()), {"a"}, 1).empty());
    CHECK_THROWS_AS(reachable_ids(m, {"s"}, 0), InvalidArgument);
  }

  TEST_CASE("machine_range examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    std::vector<std::string> names;
    for (auto e : machine_range(m).elements()) names.push_back(m.algebra().name_of(e));
    CHECK(names == std::vector<std::string>{"0", "p", "q", "1"});

    const auto A = fx::algebra("lukasiewicz(3)");
    const auto wrap = acceptance_wrapper(contains_11_decider(), A, A->element("1/2"));
    const auto classical = classicalize_both(wrap).machine;
    CHECK(classify(classical).classical_initial);
    CHECK(classify(classical).classical_final);
    CHECK(machine_range(classical).contains(A->element("1/2")));

    auto s = small_sketch();
    s.initial = {};
    s.final = {};
    const auto empty = fx::machine(s);
    CHECK(machine_range(empty).size() == 1);
    CHECK(machine_range(empty).contains(empty.algebra().one()));
  }

  TEST_CASE("property: canonical round trip through a reverse step") {
    std::mt19937 rng(7);
    auto s = small_sketch();
    s.rules = {{"p", "a", "q", "b", Move::L, "0"}, {"p", "b", "q", "a", Move::R, "0"},
               {"p", "B", "q", "a", Move::S, "0"}, {"q", "a", "p", "B", Move::R, "0"},
               {"q", "b", "p", "b", Move::L, "0"}, {"q", "B", "p", "B", Move::L, "0"}};
    const auto m = fx::machine(s);
    std::size_t checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const auto c1 = random_configuration(m, rng);
      for (const auto& succ : effective_successors(m, c1)) {
        const auto& l = succ.label;
        // Undo the move keeping the scanned symbol, then restore the read symbol.
        const Move back = l.move == Move::L ? Move::R : l.move == Move::R ? Move::L : Move::S;
        auto c = apply_transition(succ.config, scanned_symbol(succ.config, m.blank()), back, l.to, m.blank());
        c = apply_transition(c, l.read, Move::S, l.from, m.blank());
        CHECK(c == c1);
        ++checked;
      }
    }
    CHECK(checked > 100);
  }

  TEST_CASE("property: successors equal the brute-force delta_star neighbourhood") {
    std::mt19937 rng(11);
    std::vector<Machine> machines;
    for (const auto& f : corpus()) machines.push_back(f.machine);
    auto s = small_sketch();
    s.rules = {{"p", "B", "q", "B", Move::L, "1/2"}, {"p", "B", "q", "B", Move::R, "0"},
               {"p", "a", "p", "a", Move::S, "1/2"}, {"p", "a", "q", "B", Move::R, "0"}};
    machines.push_back(fx::machine(s));
    for (const auto& m : machines) {
      for (int trial = 0; trial < 60; ++trial) {
        const auto c = random_configuration(m, rng);
        std::set<Configuration> expected;
        for (const auto& n : neighbours(m, c)) {
          if (delta_star(m, c, n) != m.algebra().one()) expected.insert(n);
        }
        std::set<Configuration> actual;
        for (const auto& succ : effective_successors(m, c)) {
          actual.insert(succ.config);
          CHECK(delta_star(m, c, succ.config).index == succ.label.value);
        }
        CHECK(actual == expected);
        // The oracle agrees on successor count and values.
        const auto steps = oracle::steps(m.def(), to_tape(m, c));
        CHECK(steps.size() == actual.size());
      }
    }
  }

  TEST_CASE("meet resolves transitions that reach the same blank configuration") {
    auto s = small_sketch();
    s.algebra = fx::algebra("diamond");
    s.initial = {{"p", "0"}};
    s.final = {{"q", "0"}};
    s.rules = {{"p", "B", "q", "B", Move::L, "p"}, {"p", "B", "q", "B", Move::R, "q"}};
    const auto m = fx::machine(s);
    const auto c = m.make_configuration({}, "p", {});
    const auto succ = effective_successors(m, c);
    REQUIRE(succ.size() == 1);
    CHECK(m.algebra().name_of(delta_star(m, c, succ[0].config)) == "0");
  }

  TEST_CASE("property: deterministic machines have at most one successor") {
    for (const auto& f : corpus()) {
      if (!classify(f.machine).deterministic) continue;
      for (const auto& input : f.inputs) {
        for (std::size_t n = 1; n <= 6; ++n) {
          for (const auto& c : reachable_ids(f.machine, input, n)) {
            CHECK(effective_successors(f.machine, c).size() <= 1);
          }
        }
      }
    }
  }

  TEST_CASE("property: reachable ids grow only through non-halting successors") {
    for (const auto& f : corpus()) {
      for (const auto& input : f.inputs) {
        if (input.size() > 3) continue;
        for (std::size_t n = 1; n <= 5; ++n) {
          std::set<Configuration> allowed;
          for (const auto& c : reachable_ids(f.machine, input, n)) {
            if (is_halting(f.machine, c)) continue;
            for (const auto& s : effective_successors(f.machine, c)) allowed.insert(s.config);
          }
          for (const auto& c : reachable_ids(f.machine, input, n + 1)) CHECK(allowed.contains(c));
        }
      }
    }
  }
}
