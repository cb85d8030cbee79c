#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "qmvtm/error.hpp"
#include "qmvtm/harness.hpp"
#include "qmvtm/semantics.hpp"

using namespace qmvtm;

namespace {

Machine single_state(const char* t) {
  fx::Sketch s;
  s.algebra = fx::algebra("lukasiewicz(3)");
  s.states = {"q"};
  s.sigma = {"a"};
  s.gamma = {"B", "a"};
  s.initial = {{"q", "0"}};
  s.final = {{"q", t}};
  return fx::machine(s);
}

// Small random machines over lattice-ordered catalog algebras.
Machine random_machine(std::mt19937& rng, int id) {
  static const auto algebras = [] {
    std::vector<AlgebraPtr> out;
    for (const auto& A : algebra_catalog()) {
      if (A->is_lattice() && A->size() <= 6) out.push_back(A);
    }
    return out;
  }();
  const auto& A = algebras[static_cast<std::size_t>(rng()) % algebras.size()];
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng()) % n; };
  auto value = [&] { return A->carrier()[pick(A->size())]; };
  fx::Sketch s;
  s.name = "random" + std::to_string(id);
  s.algebra = A;
  s.states = {"p", "q", "r"};
  s.sigma = {"a", "b"};
  s.gamma = {"B", "a", "b"};
  for (const auto& q : s.states) {
    if (pick(2)) s.initial[q] = value();
    if (pick(3) == 0) s.final[q] = value();
  }
  std::set<std::tuple<std::string, std::string, std::string, std::string, int>> keys;
  const std::size_t count = 3 + pick(6);
  for (std::size_t i = 0; i < count; ++i) {
    const std::string from = s.states[pick(3)], read = s.gamma[pick(3)], to = s.states[pick(3)],
                      write = s.gamma[pick(3)];
    const int move = static_cast<int>(pick(3));
    if (!keys.emplace(from, read, to, write, move).second) continue;
    s.rules.push_back({from, read, to, write, static_cast<Move>(move), value()});
  }
  return fx::machine(s);
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("path_value examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    const std::vector<Configuration> p0{m.make_configuration({}, "q0", {"s"}), m.make_configuration({"s"}, "q2", {})};
    CHECK(m.algebra().name_of(path_value(m, p0)) == "1");
    const std::vector<Configuration> p1{m.make_configuration({}, "q1", {"s"}), m.make_configuration({"s"}, "q2", {})};
    CHECK(m.algebra().name_of(path_value(m, p1)) == "1");

    const auto z = single_state("1/2");
    const std::vector<Configuration> zero{z.make_configuration({}, "q", {"a"})};
    CHECK(z.algebra().name_of(path_value(z, zero)) == "1/2");
  }

  TEST_CASE("path_value rejects malformed paths") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    const std::vector<Configuration> stuck{m.make_configuration({}, "q0", {"s"})};
    CHECK_THROWS_AS(path_value(m, stuck), InvalidArgument);
    const std::vector<Configuration> jump{m.make_configuration({}, "q0", {"s"}), m.make_configuration({}, "q2", {"s"})};
    CHECK_THROWS_AS(path_value(m, jump), InvalidArgument);
    const std::vector<Configuration> no_start{m.make_configuration({}, "q2", {"s"})};
    CHECK_THROWS_AS(path_value(m, no_start), InvalidArgument);
    CHECK_THROWS_AS(path_value(m, std::vector<Configuration>{}), InvalidArgument);
  }

  TEST_CASE("path_vector and dominance examples") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    const std::vector<Configuration> path{m.make_configuration({}, "q0", {"s"}), m.make_configuration({"s"}, "q2", {})};
    const KVector v = path_vector(m, path);
    CHECK(v.counts == std::vector<std::uint32_t>{1, 2, 0, 0});
    CHECK(kvector_value(m.algebra(), v) == path_value(m, path).index);

    const KVector a{v.basis, {1, 2, 0, 0}};
    const KVector b{v.basis, {0, 1, 0, 0}};
    CHECK(dominates(a, a));
    CHECK(dominates(b, a));
    CHECK_FALSE(dominates(a, b));
    CHECK_THROWS_AS(dominates(a, KVector{{}, {1}}), InvalidArgument);
  }

  TEST_CASE("eval examples") {
    const auto d4 = fx::mprop("diamond", "p", "p", "q");
    const auto depth = eval_depth(d4, {"s"});
    CHECK(d4.algebra().name_of(depth.value) == "1");
    CHECK(depth.complete);
    CHECK(depth.defined);
    const auto width = eval_width(d4, {"s"});
    CHECK(d4.algebra().name_of(width.value) == "p");
    CHECK(width.complete);

    const auto l3 = fx::mprop("lukasiewicz(3)", "1/2", "1/2", "1/2");
    CHECK(l3.algebra().name_of(eval_depth(l3, {"s"}).value) == "1");
    CHECK(l3.algebra().name_of(eval_width(l3, {"s"}).value) == "1");
    CHECK(eval_depth(l3, {"s"}).complete);

    const auto z = single_state("1/2");
    for (const auto& input : {fx::w("a"), fx::w("aaa")}) {
      CHECK(z.algebra().name_of(eval_depth(z, input).value) == "1/2");
      CHECK(z.algebra().name_of(eval_width(z, input).value) == "1/2");
    }
  }

  TEST_CASE("wrapper values through the evaluator") {
    const auto A = fx::algebra("lukasiewicz(3)");
    const auto m = acceptance_wrapper(contains_11_decider(), A, A->element("1/2"));
    const auto rejected = eval_depth(m, fx::w("010"));
    CHECK(A->name_of(rejected.value) == "1/2");
    CHECK(rejected.complete);
    CHECK(A->name_of(eval_depth(m, fx::w("011")).value) == "0");

    const auto loop = acceptance_wrapper(runaway_machine(), A, A->element("1/2"));
    const auto r = eval_depth(loop, fx::w("00"), Budget{60, true});
    CHECK(A->name_of(r.value) == "1/2");
    CHECK_FALSE(r.complete);
    CHECK(r.defined);
  }

  TEST_CASE("undefined value is the top element") {
    fx::Sketch s;
    s.algebra = fx::algebra("lukasiewicz(3)");
    s.states = {"q"};
    s.sigma = {"a"};
    s.gamma = {"B", "a"};
    const auto m = fx::machine(s);
    const auto r = eval_depth(m, {"a"});
    CHECK_FALSE(r.defined);
    CHECK(r.complete);
    CHECK(r.value == m.algebra().one());
  }

  TEST_CASE("argument errors") {
    const auto m = fx::mprop("diamond", "p", "p", "q");
    CHECK_THROWS_AS(eval_depth(m, {}), InvalidArgument);
    CHECK_THROWS_AS(eval_width(m, {}), InvalidArgument);
    CHECK_THROWS_AS(eval_depth(m, {"s"}, Budget{0, true}), InvalidArgument);
    CHECK_THROWS_AS(eval_width(m, {"s"}, Budget{0, true}), InvalidArgument);
  }

  TEST_CASE("property: order, MV coincidence and non-MV separation on the corpus") {
    for (const auto& f : corpus()) {
      const auto& A = f.machine.algebra();
      const bool mv = check_axioms(A, AxiomFamily::MV).pass;
      for (const auto& input : f.inputs) {
        const auto d = eval_depth(f.machine, input, f.budget);
        const auto w = eval_width(f.machine, input, f.budget);
        REQUIRE(d.complete);
        REQUIRE(w.complete);
        CHECK(A.leq(w.value, d.value));
        if (mv) CHECK_MESSAGE(w.value == d.value, f.name);
      }
    }
    const auto d4 = fx::mprop("diamond", "p", "p", "q");
    CHECK(eval_width(d4, {"s"}).value != eval_depth(d4, {"s"}).value);
  }

  TEST_CASE("property: evaluators agree with the brute-force oracle") {
    std::mt19937 rng(2024);
    std::vector<Machine> machines;
    for (const auto& f : corpus()) machines.push_back(f.machine);
    for (int i = 0; i < 150; ++i) machines.push_back(random_machine(rng, i));
    std::size_t compared = 0;
    for (const auto& m : machines) {
      for (const auto& input : enumerate_words(m.def().input_alphabet, 3)) {
        const std::size_t steps = 12;
        const auto od = oracle::depth(m.def(), input, steps);
        const auto d = eval_depth(m, input, Budget{steps, false});
        CHECK(d.complete == od.has_value());
        if (od && d.complete) {
          CHECK_MESSAGE(d.value.index == *od, m.name());
          ++compared;
        }
        const auto ow = oracle::width(m.def(), input, steps);
        const auto w = eval_width(m, input, Budget{steps, true});
        CHECK(w.complete == ow.has_value());
        if (ow && w.complete) CHECK_MESSAGE(w.value.index == *ow, m.name());
      }
    }
    CHECK(compared > 500);
  }

  TEST_CASE("property: pruning never changes the depth value") {
    std::mt19937 rng(99);
    std::vector<Machine> machines;
    for (const auto& f : corpus()) machines.push_back(f.machine);
    for (int i = 0; i < 150; ++i) machines.push_back(random_machine(rng, i));
    for (const auto& m : machines) {
      for (const auto& input : enumerate_words(m.def().input_alphabet, 3)) {
        const auto on = eval_depth(m, input, Budget{12, true});
        const auto off = eval_depth(m, input, Budget{12, false});
        if (on.complete && off.complete) CHECK_MESSAGE(on.value == off.value, m.name());
        if (off.complete) CHECK(on.complete);
      }
    }
  }

  TEST_CASE("property: larger budgets never raise the value or lose completeness") {
    std::mt19937 rng(5);
    std::vector<Machine> machines;
    for (const auto& f : corpus()) machines.push_back(f.machine);
    for (int i = 0; i < 60; ++i) machines.push_back(random_machine(rng, i));
    const auto A = fx::algebra("lukasiewicz(3)");
    machines.push_back(acceptance_wrapper(runaway_machine(), A, A->element("1/2")));
    for (const auto& m : machines) {
      for (const auto& input : enumerate_words(m.def().input_alphabet, 2)) {
        for (Mode mode : {Mode::depth, Mode::width}) {
          EvalResult prev = evaluate(m, input, mode, Budget{1, true});
          for (std::size_t n = 2; n <= 14; ++n) {
            const EvalResult next = evaluate(m, input, mode, Budget{n, true});
            CHECK(m.algebra().leq(next.value, prev.value));
            if (prev.complete) CHECK(next.complete);
            prev = next;
          }
        }
      }
    }
  }

  TEST_CASE("property: repeated runs are identical") {
    for (const auto& f : corpus()) {
      for (const auto& input : f.inputs) {
        CHECK(eval_depth(f.machine, input) == eval_depth(f.machine, input));
        CHECK(eval_width(f.machine, input) == eval_width(f.machine, input));
      }
    }
  }

  TEST_CASE("pruning is skipped on algebras without monotone addition") {
    const auto odd = std::make_shared<const FiniteAlgebra>(
        "odd", std::vector<std::string>{"0", "a", "b", "1"}, FiniteAlgebra::Index{0}, FiniteAlgebra::Index{3},
        std::vector<FiniteAlgebra::Index>{0, 1, 2, 3, 1, 0, 3, 3, 2, 3, 3, 3, 3, 3, 3, 3},
        std::vector<FiniteAlgebra::Index>{3, 2, 1, 0});
    REQUIRE_FALSE(probe_monotone_addition(*odd).pass);
    if (!odd->is_lattice()) return;
    fx::Sketch s;
    s.algebra = odd;
    s.states = {"q"};
    s.sigma = {"a"};
    s.gamma = {"B", "a"};
    s.initial = {{"q", "0"}};
    s.rules = {{"q", "a", "q", "a", Move::S, "a"}};
    const auto r = eval_depth(fx::machine(s), {"a"}, Budget{10, true});
    CHECK(r.pruned == 0);
  }
}
