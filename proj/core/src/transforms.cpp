#include "qmvtm/transforms.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>
#include <unordered_set>

#include "qmvtm/error.hpp"

namespace qmvtm {

namespace {

using Index = FiniteAlgebra::Index;

std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
  return base;
}

MachineDef skeleton(const Machine& m, std::string name) {
  MachineDef def;
  def.name = std::move(name);
  def.algebra = m.algebra_ptr();
  def.input_alphabet = m.def().input_alphabet;
  def.tape_alphabet = m.def().tape_alphabet;
  def.blank = m.def().blank;
  return def;
}

Sidecar basic_sidecar(std::string kind, const Machine& source, const Machine& out) {
  Sidecar s;
  s.kind = std::move(kind);
  s.source = source.name();
  s.states = out.state_count();
  s.transitions = out.effective_transition_count();
  return s;
}

}  // namespace

Word Sidecar::encode(const Word& input) const {
  if (input_encoding.empty()) return input;
  Word out;
  out.reserve(input.size());
  for (const auto& a : input) {
    auto it = input_encoding.find(a);
    if (it == input_encoding.end()) throw InvalidArgument("no encoding for input symbol '" + a + "'");
    out.push_back(it->second);
  }
  return out;
}

std::string annotated_symbol(std::string_view base, std::string_view accumulator) {
  return "(" + std::string(base) + "," + std::string(accumulator) + ")";
}

// ------------------------------------------------------------ initial / final

TransformResult classicalize_initial(const Machine& m) {
  const auto& A = m.algebra();
  MachineDef def = skeleton(m, m.name() + "_I");
  const std::string p_init = fresh_name("pI", m.def().states);
  def.states.push_back(p_init);
  def.states.insert(def.states.end(), m.def().states.begin(), m.def().states.end());
  def.initial[p_init] = A.zero();
  for (const auto& [q, v] : m.def().final) def.final[q] = v;
  def.transitions = m.def().transitions;
  for (StateId q = 0; q < m.state_count(); ++q) {
    const Index v = m.initial_value(q);
    if (v == A.one_index()) continue;
    for (const auto& a : m.def().tape_alphabet) {
      def.transitions.push_back({p_init, a, m.state_name(q), a, Move::S, A.element(v)});
    }
  }
  Machine out(std::move(def));
  Sidecar s = basic_sidecar("initial", m, out);
  return {std::move(out), std::move(s)};
}

TransformResult classicalize_final(const Machine& m) {
  const auto& A = m.algebra();
  MachineDef def = skeleton(m, m.name() + "_T");
  std::vector<std::string> renamed;
  for (StateId p = 0; p < m.state_count(); ++p) {
    renamed.push_back("(" + m.state_name(p) + "," + A.carrier()[m.final_value(p)] + ")");
  }
  def.states = renamed;
  for (StateId p = 0; p < m.state_count(); ++p) {
    const Index t = m.final_value(p);
    Index init = m.initial_value(p);
    // A halting initial configuration contributes I(p) + T(p) as a zero-step path.
    if (t != A.one_index()) init = A.plus(init, t);
    if (init != A.one_index()) def.initial[renamed[p]] = A.element(init);
    if (t != A.one_index()) def.final[renamed[p]] = A.zero();
  }
  for (const auto& t : m.def().transitions) {
    const StateId q = m.state_id(t.to);
    Index v = t.value.index;
    if (m.final_value(q) != A.one_index()) v = A.plus(v, m.final_value(q));
    if (v == A.one_index()) continue;
    def.transitions.push_back(
        {renamed[m.state_id(t.from)], t.read, renamed[q], t.write, t.move, A.element(v)});
  }
  Machine out(std::move(def));
  Sidecar s = basic_sidecar("final", m, out);
  return {std::move(out), std::move(s)};
}

TransformResult classicalize_both(const Machine& m) {
  TransformResult first = classicalize_initial(m);
  TransformResult second = classicalize_final(first.machine);
  second.sidecar.kind = "both";
  second.sidecar.source = m.name();
  return second;
}

// ------------------------------------------------------------ function states

namespace {

bool has_single_classical_initial(const Machine& m) {
  const auto& A = m.algebra();
  int count = 0;
  for (StateId q = 0; q < m.state_count(); ++q) {
    const Index v = m.initial_value(q);
    if (v == A.one_index()) continue;
    if (v != A.zero_index()) return false;
    ++count;
  }
  return count == 1;
}

}  // namespace

TransformResult classicalize_transitions_width(const Machine& input, std::size_t cap) {
  std::optional<Machine> prepared;
  if (!has_single_classical_initial(input)) prepared.emplace(classicalize_initial(input).machine);
  const Machine& m = prepared ? *prepared : input;
  const auto& A = m.algebra();
  const Index one = A.one_index();
  const ElementSet closure = subalgebra_closure(A, machine_range(m), cap);

  // State names sorted for the canonical rendering of a function X : Q -> S_M.
  std::vector<StateId> by_name(m.state_count());
  for (StateId q = 0; q < m.state_count(); ++q) by_name[q] = q;
  std::sort(by_name.begin(), by_name.end(),
            [&](StateId x, StateId y) { return m.state_name(x) < m.state_name(y); });

  using Function = std::vector<Index>;
  auto render = [&](const Function& x) {
    std::string s = "X{";
    for (std::size_t i = 0; i < by_name.size(); ++i) {
      if (i) s += ',';
      s += m.state_name(by_name[i]) + ":" + A.carrier()[x[by_name[i]]];
    }
    return s + "}";
  };

  MachineDef def = skeleton(m, input.name() + "_W");
  Function start(m.state_count(), one);
  for (StateId q = 0; q < m.state_count(); ++q) {
    if (m.initial_value(q) != one) start[q] = A.zero_index();
  }

  std::map<Function, std::string> names;
  std::deque<Function> work;
  auto intern = [&](const Function& x) -> const std::string& {
    auto [it, inserted] = names.emplace(x, render(x));
    if (inserted) {
      def.states.push_back(it->second);
      work.push_back(x);
    }
    return it->second;
  };
  def.initial[intern(start)] = A.zero();

  while (!work.empty()) {
    const Function x = work.front();
    work.pop_front();
    const std::string x_name = names.at(x);

    // Y(q) = meet over non-halting p of X(p) + delta(p, a, q, b, D), one Y per (a, b, D).
    std::map<std::tuple<SymbolId, SymbolId, Move>, Function> moves;
    for (StateId p = 0; p < m.state_count(); ++p) {
      if (x[p] == one || m.final_value(p) != one) continue;
      for (SymbolId a = 0; a < m.symbol_count(); ++a) {
        for (const auto& e : m.edges(p, a)) {
          auto [it, inserted] = moves.try_emplace({a, e.write, e.move}, Function(m.state_count(), one));
          Index& slot = it->second[e.to];
          slot = A.meet_index(slot, A.plus(x[p], e.value));
        }
      }
    }
    std::vector<TransitionDef> out_edges;
    for (const auto& [key, y] : moves) {
      if (std::all_of(y.begin(), y.end(), [&](Index v) { return v == one; })) continue;
      for (Index v : y) {
        if (!closure.contains_index(v)) throw Error("function state value escaped S_M");
      }
      const auto& [a, b, d] = key;
      const std::string y_name = intern(y);
      out_edges.push_back({x_name, m.symbol_name(a), y_name, m.symbol_name(b), d, A.zero()});
    }

    Index final_value = one;
    for (StateId p = 0; p < m.state_count(); ++p) {
      final_value = A.meet_index(final_value, A.plus(x[p], m.final_value(p)));
    }
    if (final_value != one && !out_edges.empty()) {
      // Part of X halts while another part continues: release the halting part
      // through a separate final-check state.
      const std::string check = x_name + "@f";
      def.states.push_back(check);
      def.final[check] = A.element(final_value);
      for (const auto& a : m.def().tape_alphabet) {
        out_edges.push_back({x_name, a, check, a, Move::S, A.zero()});
      }
    } else if (final_value != one) {
      def.final[x_name] = A.element(final_value);
    }
    def.transitions.insert(def.transitions.end(), out_edges.begin(), out_edges.end());
  }

  Machine out(std::move(def));
  Sidecar s = basic_sidecar("transitions-width", input, out);
  s.closure_size = closure.size();
  return {std::move(out), std::move(s)};
}

// ------------------------------------------------------- annotated tape symbols

TransformResult classicalize_transitions_depth(const Machine& m, std::size_t cap) {
  const auto& A = m.algebra();
  const Index one = A.one_index();
  const ElementSet sums = boxplus_closure(A, machine_range(m));
  if (sums.size() > cap) {
    throw CapExceeded("boxplus closure of the machine range has " + std::to_string(sums.size()) +
                      " elements, cap is " + std::to_string(cap));
  }
  const std::vector<Index> accumulators = sums.indices();
  auto val = [&](Index i) -> const std::string& { return A.carrier()[i]; };
  auto sym = [&](SymbolId c, Index z) { return annotated_symbol(m.symbol_name(c), val(z)); };

  MachineDef def;
  def.name = m.name() + "_c";
  def.algebra = m.algebra_ptr();
  def.blank = m.def().blank;
  def.tape_alphabet.push_back(def.blank);
  for (SymbolId c = 0; c < m.symbol_count(); ++c) {
    for (Index z : accumulators) def.tape_alphabet.push_back(sym(c, z));
  }
  Sidecar sidecar;
  for (const auto& a : m.def().input_alphabet) {
    const std::string encoded = annotated_symbol(a, val(A.zero_index()));
    def.input_alphabet.push_back(encoded);
    sidecar.input_encoding[a] = encoded;
  }
  def.states = m.def().states;
  for (const auto& [q, v] : m.def().initial) def.initial[q] = v;

  // Effective transitions numbered 1..N in lexicographic order of their names.
  struct Indexed {
    std::string from, read, to, write;
    Move move;
    Index value;
    StateId from_id, to_id;
    SymbolId read_id, write_id;
  };
  std::vector<Indexed> numbered;
  for (const auto& t : m.def().transitions) {
    if (t.value.index == one) continue;
    numbered.push_back({t.from, t.read, t.to, t.write, t.move, t.value.index, m.state_id(t.from),
                        m.state_id(t.to), m.symbol_id(t.read), m.symbol_id(t.write)});
  }
  std::sort(numbered.begin(), numbered.end(), [](const Indexed& x, const Indexed& y) {
    return std::tie(x.from, x.read, x.to, x.write, x.move) <
           std::tie(y.from, y.read, y.to, y.write, y.move);
  });

  auto stage = [&](const Indexed& t, std::size_t i, Index w, int j) {
    return t.to + "@" + val(w) + "@" + std::to_string(i) + "." + std::to_string(j);
  };
  auto add = [&](std::string from, std::string read, std::string to, std::string write, Move d) {
    def.transitions.push_back({std::move(from), std::move(read), std::move(to), std::move(write), d, A.zero()});
  };

  for (std::size_t n = 0; n < numbered.size(); ++n) {
    const Indexed& t = numbered[n];
    const std::size_t i = n + 1;
    // A state with T != 1 halts, so its transitions are never taken.
    if (m.final_value(t.from_id) != one) continue;
    std::set<Index> targets;
    for (Index x : accumulators) {
      const Index w = A.plus(x, t.value);
      targets.insert(w);
      // apply the step, annotating the written cell with x + y
      add(t.from, sym(t.read_id, x), stage(t, i, w, 0), sym(t.write_id, w), Move::S);
    }
    for (Index w : targets) {
      for (int j = 0; j <= 4; ++j) def.states.push_back(stage(t, i, w, j));
      const std::string written = sym(t.write_id, w);
      // step left
      add(stage(t, i, w, 0), written, stage(t, i, w, 1), written, Move::L);
      // re-annotate the left neighbour, back right
      for (SymbolId c = 0; c < m.symbol_count(); ++c) {
        for (Index z : accumulators) add(stage(t, i, w, 1), sym(c, z), stage(t, i, w, 2), sym(c, w), Move::R);
      }
      add(stage(t, i, w, 1), def.blank, stage(t, i, w, 2), sym(m.blank(), w), Move::R);
      // step right
      add(stage(t, i, w, 2), written, stage(t, i, w, 3), written, Move::R);
      // re-annotate the right neighbour, back left
      for (SymbolId c = 0; c < m.symbol_count(); ++c) {
        for (Index z : accumulators) add(stage(t, i, w, 3), sym(c, z), stage(t, i, w, 4), sym(c, w), Move::L);
      }
      add(stage(t, i, w, 3), def.blank, stage(t, i, w, 4), sym(m.blank(), w), Move::L);
      // perform the original move
      add(stage(t, i, w, 4), written, t.to, written, t.move);
    }
  }
  // jump to the final check carrying the current accumulator
  for (StateId q = 0; q < m.state_count(); ++q) {
    for (Index z : accumulators) {
      const std::string check = m.state_name(q) + "@" + val(z) + "@f";
      def.states.push_back(check);
      const Index t = A.plus(z, m.final_value(q));
      if (t != one) def.final[check] = A.element(t);
      for (SymbolId c = 0; c < m.symbol_count(); ++c) {
        add(m.state_name(q), sym(c, z), check, sym(c, z), Move::S);
      }
    }
  }

  Machine out(std::move(def));
  sidecar.kind = "transitions-depth";
  sidecar.source = m.name();
  sidecar.closure_size = accumulators.size();
  sidecar.states = out.state_count();
  sidecar.transitions = out.effective_transition_count();
  return {std::move(out), std::move(sidecar)};
}

// ------------------------------------------------------------------ generators

Machine counterexample_machine(const AlgebraPtr& algebra, Element a, Element b, Element c) {
  for (Element e : {a, b, c}) {
    if (!algebra->owns(e)) throw AlgebraMismatch("counterexample value from another algebra");
  }
  MachineDef def;
  def.name = "mprop(" + algebra->name_of(a) + "," + algebra->name_of(b) + "," + algebra->name_of(c) + ")";
  def.algebra = algebra;
  def.states = {"q0", "q1", "q2"};
  def.input_alphabet = {"s"};
  def.tape_alphabet = {"B", "s"};
  def.blank = "B";
  def.initial = {{"q0", b}, {"q1", c}, {"q2", algebra->one()}};
  def.final = {{"q0", algebra->one()}, {"q1", algebra->one()}, {"q2", a}};
  def.transitions = {
      {"q0", "s", "q2", "s", Move::R, algebra->zero()},
      {"q1", "s", "q2", "s", Move::R, algebra->zero()},
  };
  return Machine(std::move(def));
}

Machine acceptance_wrapper(const ClassicalMachine& base, const AlgebraPtr& algebra, Element x) {
  const auto& A = *algebra;
  if (!A.owns(x)) throw AlgebraMismatch("wrapper value from another algebra");
  if (x == A.zero() || x == A.one() || !A.leq(A.zero(), x) || !A.leq(x, A.one())) {
    throw InvalidArgument("wrapper value must lie strictly between 0 and 1");
  }
  MachineDef def;
  def.name = "wrap(" + base.name + "," + A.name_of(x) + ")";
  def.algebra = algebra;
  const std::string q_init = fresh_name("qI", base.states);
  const std::string q_exit = fresh_name("qT", base.states);
  def.states = {q_init, q_exit};
  def.states.insert(def.states.end(), base.states.begin(), base.states.end());
  def.input_alphabet = base.input_alphabet;
  def.tape_alphabet = base.tape_alphabet;
  def.blank = base.blank;
  def.initial[q_init] = A.zero();
  def.final[q_exit] = x;
  for (const auto& q : base.accepting) def.final[q] = A.zero();
  for (const auto& a : base.input_alphabet) {
    def.transitions.push_back({q_init, a, base.start, a, Move::S, A.zero()});
    def.transitions.push_back({q_init, a, q_exit, a, Move::S, A.zero()});
  }
  for (const auto& r : base.rules) {
    def.transitions.push_back({r.from, r.read, r.to, r.write, r.move, A.zero()});
  }
  return Machine(std::move(def));
}

}  // namespace qmvtm
