#include "qmvtm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "qmvtm/error.hpp"

namespace qmvtm {

namespace {

using Index = FiniteAlgebra::Index;

struct Rule {
  const char* from;
  const char* read;
  const char* to;
  const char* write;
  Move move;
  const char* value;
};

Machine build(std::string name, const AlgebraPtr& algebra, std::vector<std::string> states,
              std::vector<std::string> sigma, std::vector<std::string> gamma,
              const std::map<std::string, std::string>& initial,
              const std::map<std::string, std::string>& final, const std::vector<Rule>& rules) {
  const auto& A = *algebra;
  MachineDef def;
  def.name = std::move(name);
  def.algebra = algebra;
  def.states = std::move(states);
  def.input_alphabet = std::move(sigma);
  def.tape_alphabet = std::move(gamma);
  def.blank = "B";
  for (const auto& [q, v] : initial) def.initial[q] = A.element(v);
  for (const auto& [q, v] : final) def.final[q] = A.element(v);
  for (const auto& r : rules) {
    def.transitions.push_back({r.from, r.read, r.to, r.write, r.move, A.element(r.value)});
  }
  return Machine(std::move(def));
}

std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i];
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::depth ? "depth" : "width"; }

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "depth") return Mode::depth;
  if (text == "width") return Mode::width;
  return std::nullopt;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

int exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::inconclusive: return 3;
  }
  return 2;
}

EvalResult evaluate(const Machine& m, const Word& input, Mode mode, const Budget& budget) {
  return mode == Mode::depth ? eval_depth(m, input, budget) : eval_width(m, input, budget);
}

std::vector<const InputOutcome*> EquivReport::witnesses() const {
  std::vector<const InputOutcome*> out;
  for (const auto& o : outcomes) {
    if (o.compared && !o.holds) out.push_back(&o);
  }
  return out;
}

namespace {

void settle(EquivReport& report) {
  report.verdict = Verdict::pass;
  for (const auto& o : report.outcomes) {
    const Verdict v = !o.compared ? Verdict::inconclusive : o.holds ? Verdict::pass : Verdict::fail;
    report.verdict = combine(report.verdict, v);
  }
}

}  // namespace

EquivReport equiv_check(const Machine& m1, const Machine& m2, Mode mode, const std::vector<Word>& inputs,
                        const Budget& budget, const InputEncoder& encode) {
  if (m1.algebra().id() != m2.algebra().id()) {
    throw AlgebraMismatch("machines '" + m1.name() + "' and '" + m2.name() + "' use different algebras");
  }
  EquivReport report{m1.name(), m2.name(), std::string(to_string(mode)), {}, Verdict::pass};
  const auto& A = m1.algebra();
  for (const auto& input : inputs) {
    InputOutcome o;
    o.input = input;
    o.first = evaluate(m1, input, mode, budget);
    o.second = evaluate(m2, encode ? encode(input) : input, mode, budget);
    o.first_value = A.name_of(o.first.value);
    o.second_value = A.name_of(o.second.value);
    o.compared = o.first.complete && o.second.complete;
    o.holds = o.compared && o.first.value == o.second.value;
    report.outcomes.push_back(std::move(o));
  }
  settle(report);
  return report;
}

EquivReport order_check(const Machine& m, const std::vector<Word>& inputs, const Budget& budget) {
  EquivReport report{m.name(), m.name(), "width<=depth", {}, Verdict::pass};
  const auto& A = m.algebra();
  for (const auto& input : inputs) {
    InputOutcome o;
    o.input = input;
    o.first = eval_width(m, input, budget);
    o.second = eval_depth(m, input, budget);
    o.first_value = A.name_of(o.first.value);
    o.second_value = A.name_of(o.second.value);
    o.compared = o.first.complete && o.second.complete && o.first.defined && o.second.defined;
    o.holds = o.compared && A.leq(o.first.value, o.second.value);
    report.outcomes.push_back(std::move(o));
  }
  settle(report);
  return report;
}

AxiomReport mv_distributivity_theorem_check(const FiniteAlgebra& A) {
  if (!check_axioms(A, AxiomFamily::QMV).pass || !check_axioms(A, AxiomFamily::Lattice).pass) {
    throw PrerequisiteMissing(A.name() + " is not a lattice-ordered QMV algebra");
  }
  AxiomReport report;
  report.family = "MV_DISTRIBUTIVE";
  const bool mv = check_axioms(A, AxiomFamily::MV).pass;
  const bool dist = check_axioms(A, AxiomFamily::Distributive).pass;
  auto flag = [](bool b) { return std::string(b ? "pass" : "fail"); };
  if (mv != dist) {
    report.add({"MV<=>DISTRIBUTIVE", {A.name()}, "MV " + flag(mv), "DISTRIBUTIVE " + flag(dist)});
  }
  if (A.origin() == AlgebraOrigin::extended_effect) {
    const bool linear = check_axioms(A, AxiomFamily::Linear).pass;
    if (dist != (mv && linear)) {
      report.add({"DISTRIBUTIVE<=>MV&LINEAR", {A.name()}, "DISTRIBUTIVE " + flag(dist),
                  "MV " + flag(mv) + ", LINEAR " + flag(linear)});
    }
  }
  return report;
}

std::vector<const TripleOutcome*> SweepReport::unequal() const {
  std::vector<const TripleOutcome*> out;
  for (const auto& t : triples) {
    if (t.depth != t.width) out.push_back(&t);
  }
  return out;
}

SweepReport proposition_sweep(const AlgebraPtr& algebra, const Budget& budget) {
  const auto& A = *algebra;
  if (!check_axioms(A, AxiomFamily::QMV).pass || !check_axioms(A, AxiomFamily::Lattice).pass) {
    throw PrerequisiteMissing(A.name() + " is not a lattice-ordered QMV algebra");
  }
  SweepReport report;
  report.algebra = A.name();
  report.distributive = check_axioms(A, AxiomFamily::Distributive).pass;
  const Word sigma{"s"};
  bool complete = true;
  for (Index i = 0; i < A.size(); ++i) {
    for (Index j = 0; j < A.size(); ++j) {
      for (Index k = 0; k < A.size(); ++k) {
        const Element a = A.element(i), b = A.element(j), c = A.element(k);
        const Machine m = counterexample_machine(algebra, a, b, c);
        const EvalResult d = eval_depth(m, sigma, budget);
        const EvalResult w = eval_width(m, sigma, budget);
        TripleOutcome t{A.name_of(a), A.name_of(b), A.name_of(c), A.name_of(d.value), A.name_of(w.value),
                        A.name_of(A.meet(A.boxplus(a, b), A.boxplus(a, c))),
                        A.name_of(A.boxplus(A.meet(b, c), a)), d.complete && w.complete};
        complete = complete && t.complete;
        report.formulas_match =
            report.formulas_match && t.depth == t.expected_depth && t.width == t.expected_width;
        report.all_equal = report.all_equal && t.depth == t.width;
        report.triples.push_back(std::move(t));
      }
    }
  }
  if (!complete) {
    report.verdict = Verdict::inconclusive;
  } else {
    report.verdict = report.formulas_match && report.all_equal == report.distributive ? Verdict::pass
                                                                                      : Verdict::fail;
  }
  return report;
}

std::vector<FiniteAlgebra> enumerate_s_algebras(std::size_t k) {
  if (k < 2 || k > 6) throw InvalidArgument("enumeration supports 2..6 elements");
  const Index zero = 0, one = static_cast<Index>(k - 1);
  std::vector<std::string> carrier{"0"};
  for (std::size_t i = 1; i + 1 < k; ++i) carrier.push_back("e" + std::to_string(i));
  carrier.push_back("1");

  // Involutions of the middle elements; 0 and 1 swap.
  std::vector<std::vector<Index>> complements;
  std::vector<int> partner(k, -1);
  partner[zero] = one;
  partner[one] = zero;
  std::function<void(Index)> involutions = [&](Index i) {
    while (i < one && partner[i] >= 0) ++i;
    if (i == one) {
      complements.emplace_back(partner.begin(), partner.end());
      return;
    }
    for (Index j = i; j < one; ++j) {
      if (partner[j] >= 0) continue;
      partner[i] = j;
      partner[j] = i;
      involutions(static_cast<Index>(i + 1));
      partner[i] = partner[j] = -1;
    }
  };
  involutions(1);

  std::vector<std::pair<Index, Index>> free_cells;
  for (Index a = 1; a < one; ++a) {
    for (Index b = a; b < one; ++b) free_cells.emplace_back(a, b);
  }

  std::vector<FiniteAlgebra> out;
  std::vector<Index> table(k * k);
  for (const auto& c : complements) {
    std::vector<std::size_t> digits(free_cells.size(), 0);
    while (true) {
      for (Index a = 0; a < k; ++a) {
        table[a * k + zero] = table[zero * k + a] = a;
        table[a * k + one] = table[one * k + a] = one;
      }
      for (std::size_t i = 0; i < free_cells.size(); ++i) {
        const auto [a, b] = free_cells[i];
        table[a * k + b] = table[b * k + a] = static_cast<Index>(digits[i]);
      }
      bool ok = true;
      for (Index a = 0; a < k && ok; ++a) ok = table[a * k + c[a]] == one;
      for (Index a = 0; a < k && ok; ++a) {
        for (Index b = 0; b < k && ok; ++b) {
          for (Index d = 0; d < k && ok; ++d) {
            ok = table[table[a * k + b] * k + d] == table[a * k + table[b * k + d]];
          }
        }
      }
      if (ok) {
        out.emplace_back("s" + std::to_string(k) + "#" + std::to_string(out.size()), carrier, zero, one, table,
                         c);
      }
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == k) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }
  return out;
}

std::vector<AlgebraPtr> algebra_catalog() {
  std::vector<AlgebraPtr> out;
  for (int n = 2; n <= 6; ++n) out.push_back(std::make_shared<const FiniteAlgebra>(lukasiewicz(n)));
  out.push_back(std::make_shared<const FiniteAlgebra>(diamond()));
  const auto l2 = lukasiewicz(2), l3 = lukasiewicz(3);
  out.push_back(std::make_shared<const FiniteAlgebra>(product(l2, l2)));
  out.push_back(std::make_shared<const FiniteAlgebra>(product(l2, l3)));
  out.push_back(std::make_shared<const FiniteAlgebra>(product(l3, l3)));

  // Chains written as effect tables, so they carry the extended-effect origin.
  for (int n : {3, 4}) {
    const auto chain = lukasiewicz(n);
    PartialEffectTable t;
    t.name = "effect_chain(" + std::to_string(n) + ")";
    t.carrier = chain.carrier();
    t.zero = chain.zero_index();
    t.one = chain.one_index();
    for (Index a = 0; a < chain.size(); ++a) {
      for (Index b = 0; b < chain.size(); ++b) {
        if (a + b <= n - 1) {
          t.oplus.emplace_back(static_cast<std::uint16_t>(a + b));
        } else {
          t.oplus.emplace_back(std::nullopt);
        }
      }
    }
    out.push_back(std::make_shared<const FiniteAlgebra>(extend_effect(t)));
  }
  return out;
}

std::vector<Word> enumerate_words(const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (const auto& a : alphabet) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

ClassicalMachine contains_11_decider() {
  ClassicalMachine m;
  m.name = "contains11";
  m.states = {"c0", "c1", "yes", "no"};
  m.input_alphabet = {"0", "1"};
  m.tape_alphabet = {"B", "0", "1"};
  m.blank = "B";
  m.start = "c0";
  m.accepting = {"yes"};
  m.rules = {
      {"c0", "0", "c0", "0", Move::R}, {"c0", "1", "c1", "1", Move::R}, {"c0", "B", "no", "B", Move::S},
      {"c1", "0", "c0", "0", Move::R}, {"c1", "1", "yes", "1", Move::S}, {"c1", "B", "no", "B", Move::S},
  };
  return m;
}

ClassicalMachine runaway_machine() {
  ClassicalMachine m;
  m.name = "runaway";
  m.states = {"r"};
  m.input_alphabet = {"0", "1"};
  m.tape_alphabet = {"B", "0", "1"};
  m.blank = "B";
  m.start = "r";
  m.accepting = {};
  m.rules = {{"r", "0", "r", "0", Move::R}, {"r", "1", "r", "1", Move::R}, {"r", "B", "r", "B", Move::R}};
  return m;
}

std::optional<bool> classical_accepts(const ClassicalMachine& m, const Word& input, std::size_t max_steps) {
  std::map<long, std::string> tape;
  for (std::size_t i = 0; i < input.size(); ++i) tape[static_cast<long>(i)] = input[i];
  long head = 0;
  std::string state = m.start;
  auto accepting = [&](const std::string& q) {
    return std::find(m.accepting.begin(), m.accepting.end(), q) != m.accepting.end();
  };
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (accepting(state)) return true;
    auto it = tape.find(head);
    const std::string symbol = it == tape.end() ? m.blank : it->second;
    auto rule = std::find_if(m.rules.begin(), m.rules.end(),
                             [&](const auto& r) { return r.from == state && r.read == symbol; });
    if (rule == m.rules.end()) return false;
    tape[head] = rule->write;
    head += rule->move == Move::L ? -1 : rule->move == Move::R ? 1 : 0;
    state = rule->to;
  }
  return std::nullopt;
}

namespace {

Machine scan_machine(const AlgebraPtr& algebra, const std::string& name, const char* v1, const char* v2,
                     const char* v3, bool rewrite_back) {
  std::vector<Rule> rules = {
      {"go", "a", "go", "a", Move::R, "0"},     {"go", "a", "go", "b", Move::R, v1},
      {"go", "b", "go", "b", Move::R, "0"},     {"go", "B", "back", "B", Move::L, "0"},
      {"back", "a", "back", "a", Move::L, "0"}, {"back", "b", "back", "b", Move::L, v1},
      {"back", "B", "done", "B", Move::R, "0"}, {"tap", "a", "go", "a", Move::R, "0"},
      {"tap", "b", "back", "b", Move::S, v1},
  };
  if (rewrite_back) rules.push_back({"back", "b", "back", "a", Move::L, v2});
  return build(name, algebra, {"go", "back", "done", "tap"}, {"a", "b"}, {"B", "a", "b"},
               {{"go", "0"}, {"tap", v3}}, {{"done", "0"}, {"tap", v2}}, rules);
}

}  // namespace

std::vector<Fixture> corpus() {
  const auto l2 = std::make_shared<const FiniteAlgebra>(lukasiewicz(2));
  const auto l3 = std::make_shared<const FiniteAlgebra>(lukasiewicz(3));
  const auto l4 = std::make_shared<const FiniteAlgebra>(lukasiewicz(4));
  const auto d4 = std::make_shared<const FiniteAlgebra>(diamond());
  const auto l2l3 = std::make_shared<const FiniteAlgebra>(product(*l2, *l3));
  const Budget budget{500, true};
  const auto s_words = enumerate_words({"s"}, 4);
  const auto ab_words = enumerate_words({"a", "b"}, 4);
  const auto bit_words = enumerate_words({"0", "1"}, 4);

  auto mprop = [&](const AlgebraPtr& A, const char* a, const char* b, const char* c) {
    return counterexample_machine(A, A->element(a), A->element(b), A->element(c));
  };

  std::vector<Fixture> out;
  out.push_back({"mprop_l2", mprop(l2, "0", "0", "1"), s_words, budget, false, true});
  out.push_back({"mprop_l3", mprop(l3, "1/2", "1/2", "1/2"), s_words, budget, true, true});
  out.push_back({"mprop_l4", mprop(l4, "1/3", "1/3", "2/3"), s_words, budget, true, true});
  out.push_back({"mprop_d4", mprop(d4, "p", "p", "q"), s_words, budget, true, true});
  out.push_back({"mprop_product", mprop(l2l3, "(0,1/2)", "(1,0)", "(0,1/2)"), s_words, budget, false, true});
  out.push_back({"scan_l3", scan_machine(l3, "scan_l3", "1/2", "1/2", "1/2", true), ab_words, budget, true, true});
  out.push_back({"scan_l4", scan_machine(l4, "scan_l4", "1/3", "2/3", "1/3", true), ab_words, budget, true, true});
  out.push_back({"scan_d4", scan_machine(d4, "scan_d4", "p", "q", "p", false), ab_words, budget, true, true});
  out.push_back({"count_l4",
                 build("count_l4", l4, {"r", "f"}, {"0", "1"}, {"B", "0", "1"}, {{"r", "0"}}, {{"f", "0"}},
                       {{"r", "0", "r", "0", Move::R, "0"},
                        {"r", "1", "r", "1", Move::R, "1/3"},
                        {"r", "B", "f", "B", Move::S, "0"}}),
                 bit_words, budget, true, true});
  out.push_back({"wrap_contains11", acceptance_wrapper(contains_11_decider(), l3, l3->element("1/2")), bit_words,
                 budget, true, true});
  return out;
}

namespace {

std::string describe(const EquivReport& r) {
  std::size_t compared = 0;
  for (const auto& o : r.outcomes) compared += o.compared ? 1 : 0;
  std::ostringstream os;
  os << compared << "/" << r.outcomes.size() << " inputs compared";
  for (const auto* w : r.witnesses()) {
    os << "; " << join_word(w->input) << ": " << w->first_value << " vs " << w->second_value;
    break;
  }
  return os.str();
}

class Runner {
 public:
  template <typename F>
  void run(int criterion, std::string fixture, std::string property, F&& body, bool finding = false) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r{criterion, std::move(fixture), std::move(property), Verdict::pass, finding, {}, 0};
    try {
      body(r);
    } catch (const std::exception& e) {
      r.verdict = Verdict::fail;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = seconds_since(start);
    if (!r.finding) report.verdict = combine(report.verdict, r.verdict);
    report.checks.push_back(std::move(r));
  }

  void equiv(int criterion, const Fixture& f, std::string property, const Machine& other, Mode mode,
             const InputEncoder& encode = {}, bool finding = false) {
    run(
        criterion, f.name, std::move(property),
        [&](CheckResult& r) {
          const auto e = equiv_check(f.machine, other, mode, f.inputs, f.budget, encode);
          r.verdict = e.verdict;
          r.detail = describe(e);
        },
        finding);
  }

  CorpusReport report;
};

}  // namespace

CorpusReport verify_corpus() {
  Runner run;

  run.run(1, "catalog", "axiom families", [](CheckResult& r) {
    std::ostringstream detail;
    const std::vector<AxiomFamily> chain_families{AxiomFamily::S,      AxiomFamily::MV,
                                                  AxiomFamily::QMV,    AxiomFamily::Lattice,
                                                  AxiomFamily::Linear, AxiomFamily::LocallyFinite};
    for (int n = 2; n <= 5; ++n) {
      const auto A = lukasiewicz(n);
      for (auto f : chain_families) {
        if (!check_axioms(A, f).pass) {
          r.verdict = Verdict::fail;
          detail << A.name() << " fails " << to_string(f) << "; ";
        }
      }
    }
    const auto D = diamond();
    for (auto f : {AxiomFamily::S, AxiomFamily::QMV, AxiomFamily::Lattice, AxiomFamily::Quasilinear}) {
      if (!check_axioms(D, f).pass) {
        r.verdict = Verdict::fail;
        detail << "diamond fails " << to_string(f) << "; ";
      }
    }
    const auto mv = check_axioms(D, AxiomFamily::MV);
    const auto dist = check_axioms(D, AxiomFamily::Distributive);
    const bool mv_ok = !mv.pass && mv.violations.front().witness == std::vector<std::string>{"p", "q"};
    const bool dist_ok = !dist.pass && dist.violations.front().witness == std::vector<std::string>{"p", "p", "q"};
    if (!mv_ok || !dist_ok) r.verdict = Verdict::fail;
    detail << "diamond MV witness " << (mv.pass ? "none" : mv.violations.front().witness[0] + "," +
                                                               mv.violations.front().witness[1]);
    r.detail = detail.str();
  });

  run.run(2, "catalog", "MV iff distributive", [](CheckResult& r) {
    std::size_t checked = 0;
    for (const auto& A : algebra_catalog()) {
      if (!check_axioms(*A, AxiomFamily::QMV).pass || !check_axioms(*A, AxiomFamily::Lattice).pass) continue;
      ++checked;
      const auto rep = mv_distributivity_theorem_check(*A);
      if (!rep.pass) {
        r.verdict = Verdict::fail;
        r.detail += A->name() + ": " + rep.violations.front().axiom + "; ";
      }
    }
    r.detail += std::to_string(checked) + " algebras";
  });

  for (const char* name : {"lukasiewicz(3)", "diamond"}) {
    run.run(3, name, "counterexample sweep", [&](CheckResult& r) {
      const auto sweep = proposition_sweep(make_builtin(name));
      r.verdict = sweep.verdict;
      const auto unequal = sweep.unequal();
      r.detail = std::to_string(sweep.triples.size()) + " triples, " + std::to_string(unequal.size()) +
                 " unequal, distributive " + (sweep.distributive ? "pass" : "fail");
      if (std::string(name) == "diamond") {
        const bool witness = std::any_of(unequal.begin(), unequal.end(), [](const TripleOutcome* t) {
          return t->a == "p" && t->b == "p" && t->c == "q" && t->depth == "1" && t->width == "p";
        });
        if (!witness) r.verdict = Verdict::fail;
      } else if (!sweep.all_equal || sweep.triples.size() != 27) {
        r.verdict = Verdict::fail;
      }
    });
  }

  const auto fixtures = corpus();
  for (const auto& f : fixtures) {
    run.run(4, f.name, "width <= depth", [&](CheckResult& r) {
      const auto e = order_check(f.machine, f.inputs, f.budget);
      r.verdict = e.verdict;
      r.detail = describe(e);
    });

    const auto initial = classicalize_initial(f.machine).machine;
    run.equiv(5, f, "initial, depth", initial, Mode::depth);
    run.equiv(5, f, "initial, width", initial, Mode::width);

    const auto final = classicalize_final(f.machine).machine;
    run.equiv(6, f, "final, depth", final, Mode::depth);
    run.equiv(6, f, "both, depth", classicalize_both(f.machine).machine, Mode::depth);
    run.equiv(6, f, "initial after final, depth", classicalize_initial(final).machine, Mode::depth);
    run.equiv(0, f, "final, width", final, Mode::width, {}, true);

    if (f.transitions_width) {
      run.run(7, f.name, "transitions-width, width", [&](CheckResult& r) {
        const auto t = classicalize_transitions_width(f.machine);
        const auto e = equiv_check(f.machine, t.machine, Mode::width, f.inputs, f.budget);
        r.verdict = e.verdict;
        r.detail = describe(e) + ", |S_M| " + std::to_string(t.sidecar.closure_size.value_or(0)) + "/" +
                   std::to_string(f.machine.algebra().size()) + ", " + std::to_string(t.sidecar.states) +
                   " states";
      });
    }
    if (f.transitions_depth) {
      run.run(8, f.name, "transitions-depth, depth", [&](CheckResult& r) {
        const auto t = classicalize_transitions_depth(f.machine);
        const Sidecar sidecar = t.sidecar;
        const auto e = equiv_check(f.machine, t.machine, Mode::depth, f.inputs, f.budget,
                                   [&](const Word& w) { return sidecar.encode(w); });
        r.verdict = e.verdict;
        r.detail = describe(e) + ", " + std::to_string(t.sidecar.states) + " states";
      });
    }

    run.run(10, f.name, "pruned = unpruned", [&](CheckResult& r) {
      std::size_t pruned = 0;
      for (const auto& input : f.inputs) {
        const auto a = eval_depth(f.machine, input, {f.budget.max_steps, true});
        const auto b = eval_depth(f.machine, input, {f.budget.max_steps, false});
        pruned += a.pruned;
        if (!a.complete || !b.complete) {
          r.verdict = combine(r.verdict, Verdict::inconclusive);
        } else if (a.value != b.value) {
          r.verdict = Verdict::fail;
          r.detail = join_word(input) + ": " + f.machine.algebra().name_of(a.value) + " vs " +
                     f.machine.algebra().name_of(b.value) + "; ";
        }
      }
      r.detail += std::to_string(pruned) + " branches pruned";
    });

    if (classify(f.machine).deterministic) {
      run.run(
          11, f.name, "transitions-depth keeps determinism",
          [&](CheckResult& r) {
            const auto t = classicalize_transitions_depth(f.machine);
            const bool det = classify(t.machine).deterministic;
            r.verdict = det ? Verdict::pass : Verdict::fail;
            r.detail = std::string("output deterministic: ") + (det ? "yes" : "no");
          },
          true);
    }
  }

  run.run(9, "wrap_contains11", "wrapper values, inputs up to length 6", [](CheckResult& r) {
    const auto A = make_builtin("lukasiewicz(3)");
    const auto base = contains_11_decider();
    const Machine m = acceptance_wrapper(base, A, A->element("1/2"));
    std::size_t accepted = 0, total = 0;
    for (const auto& w : enumerate_words(base.input_alphabet, 6)) {
      const auto res = eval_depth(m, w);
      const auto expect = classical_accepts(base, w, 1000);
      ++total;
      if (!res.complete || !expect) {
        r.verdict = combine(r.verdict, Verdict::inconclusive);
        continue;
      }
      accepted += *expect ? 1 : 0;
      if (res.value != (*expect ? A->zero() : A->element("1/2"))) {
        r.verdict = Verdict::fail;
        r.detail += join_word(w) + " -> " + A->name_of(res.value) + "; ";
      }
    }
    r.detail += std::to_string(accepted) + "/" + std::to_string(total) + " accepted";
  });

  auto& checks = run.report.checks;
  std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) {
    const int ka = a.criterion == 0 ? 100 : a.criterion;
    const int kb = b.criterion == 0 ? 100 : b.criterion;
    return ka < kb;
  });
  return run.report;
}

std::string CorpusReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"criterion", c.criterion},
                    {"fixture", c.fixture},
                    {"property", c.property},
                    {"verdict", to_string(c.verdict)},
                    {"finding", c.finding},
                    {"detail", c.detail}});
  }
  return nlohmann::json{{"verdict", to_string(verdict)}, {"checks", std::move(list)}}.dump(2);
}

std::string CorpusReport::to_table() const {
  std::size_t w_fixture = 7, w_property = 8;
  for (const auto& c : checks) {
    w_fixture = std::max(w_fixture, c.fixture.size());
    w_property = std::max(w_property, c.property.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(4) << "#" << std::setw(static_cast<int>(w_fixture) + 2) << "fixture"
     << std::setw(static_cast<int>(w_property) + 2) << "property" << std::setw(14) << "verdict"
     << "detail\n";
  for (const auto& c : checks) {
    std::string verdict(to_string(c.verdict));
    if (c.finding) verdict += "*";
    os << std::setw(4) << (c.criterion ? std::to_string(c.criterion) : "-")
       << std::setw(static_cast<int>(w_fixture) + 2) << c.fixture << std::setw(static_cast<int>(w_property) + 2)
       << c.property << std::setw(14) << verdict << c.detail << "\n";
  }
  os << "overall: " << to_string(verdict) << " (* = finding, not gated)\n";
  return os.str();
}

}  // namespace qmvtm
