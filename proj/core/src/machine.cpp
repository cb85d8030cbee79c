#include "qmvtm/machine.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

#include "qmvtm/error.hpp"

namespace qmvtm {

char to_char(Move m) {
  switch (m) {
    case Move::L: return 'L';
    case Move::S: return 'S';
    case Move::R: return 'R';
  }
  return '?';
}

std::optional<Move> parse_move(std::string_view text) {
  if (text == "L") return Move::L;
  if (text == "S") return Move::S;
  if (text == "R") return Move::R;
  return std::nullopt;
}

bool MachineDef::same_as(const MachineDef& o) const {
  const bool algebras = (algebra && o.algebra) ? algebra->id() == o.algebra->id() : algebra == o.algebra;
  return algebras && name == o.name && states == o.states && input_alphabet == o.input_alphabet &&
         tape_alphabet == o.tape_alphabet && blank == o.blank && initial == o.initial &&
         final == o.final && transitions == o.transitions;
}

// ------------------------------------------------------------------ validation

AxiomReport validate_machine(const MachineDef& def) {
  AxiomReport report;
  report.family = "MACHINE";
  auto fail = [&](std::string constraint, std::string where, std::string detail = {}) {
    report.add({std::move(constraint), {std::move(where)}, std::move(detail), {}});
  };
  if (!def.algebra) {
    fail("algebra", def.name, "machine has no algebra");
    return report;
  }
  const FiniteAlgebra& A = *def.algebra;
  if (!A.is_lattice()) fail("lattice", A.name(), "value algebra is not lattice-ordered");

  if (def.states.empty()) fail("Q nonempty", def.name, "no states declared");
  std::unordered_set<std::string> states;
  for (const auto& q : def.states) {
    if (q.empty()) fail("state name", "states", "empty state name");
    if (!states.insert(q).second) fail("unique states", q, "duplicate state");
  }
  std::unordered_set<std::string> gamma;
  for (const auto& a : def.tape_alphabet) {
    if (a.empty()) fail("symbol name", "tape_alphabet", "empty symbol name");
    if (!gamma.insert(a).second) fail("unique symbols", a, "duplicate tape symbol");
  }
  if (!gamma.contains(def.blank)) fail("B in Gamma", def.blank, "blank not in tape alphabet");
  std::unordered_set<std::string> sigma;
  for (const auto& a : def.input_alphabet) {
    if (!sigma.insert(a).second) fail("unique symbols", a, "duplicate input symbol");
    if (a == def.blank || !gamma.contains(a)) {
      fail("Sigma subset of Gamma\\{B}", a, "input symbol is the blank or not a tape symbol");
    }
  }
  auto check_value = [&](const Element& v, const std::string& where) {
    if (!A.owns(v)) fail("value in algebra", where, "value belongs to another algebra");
  };
  for (const auto& [q, v] : def.initial) {
    if (!states.contains(q)) fail("declared state", "initial." + q, "undeclared state");
    check_value(v, "initial." + q);
  }
  for (const auto& [q, v] : def.final) {
    if (!states.contains(q)) fail("declared state", "final." + q, "undeclared state");
    check_value(v, "final." + q);
  }
  std::set<std::tuple<std::string, std::string, std::string, std::string, Move>> keys;
  for (std::size_t i = 0; i < def.transitions.size(); ++i) {
    const auto& t = def.transitions[i];
    const std::string where = "transitions[" + std::to_string(i) + "]";
    if (!states.contains(t.from)) fail("declared state", where, "undeclared state '" + t.from + "'");
    if (!states.contains(t.to)) fail("declared state", where, "undeclared state '" + t.to + "'");
    if (!gamma.contains(t.read)) fail("declared symbol", where, "undeclared symbol '" + t.read + "'");
    if (!gamma.contains(t.write)) fail("declared symbol", where, "undeclared symbol '" + t.write + "'");
    check_value(t.value, where);
    if (!keys.emplace(t.from, t.read, t.to, t.write, t.move).second) {
      fail("unique transition", where, "duplicate (from, read, to, write, move)");
    }
  }
  return report;
}

// --------------------------------------------------------------------- Machine

Machine::Machine(MachineDef def) : def_(std::move(def)) {
  const AxiomReport report = validate_machine(def_);
  if (!report.pass) {
    const auto& v = report.violations.front();
    throw LoadError("invalid machine '" + def_.name + "': " + v.axiom + " violated at " +
                    (v.witness.empty() ? std::string() : v.witness.front()) +
                    (v.lhs.empty() ? std::string() : " (" + v.lhs + ")"));
  }
  const FiniteAlgebra& A = *def_.algebra;
  for (StateId i = 0; i < def_.states.size(); ++i) state_index_.emplace(def_.states[i], i);
  for (SymbolId i = 0; i < def_.tape_alphabet.size(); ++i) {
    symbol_index_.emplace(def_.tape_alphabet[i], i);
  }
  blank_ = symbol_index_.at(def_.blank);
  input_symbol_.assign(def_.tape_alphabet.size(), false);
  for (const auto& a : def_.input_alphabet) input_symbol_[symbol_index_.at(a)] = true;

  initial_.assign(def_.states.size(), A.one_index());
  final_.assign(def_.states.size(), A.one_index());
  for (const auto& [q, v] : def_.initial) initial_[state_index_.at(q)] = v.index;
  for (const auto& [q, v] : def_.final) final_[state_index_.at(q)] = v.index;

  const std::size_t g = def_.tape_alphabet.size();
  edges_.assign(def_.states.size() * g, {});
  for (const auto& t : def_.transitions) {
    if (t.value.index == A.one_index()) continue;
    const StateId p = state_index_.at(t.from);
    const SymbolId a = symbol_index_.at(t.read);
    edges_[p * g + a].push_back({state_index_.at(t.to), symbol_index_.at(t.write), t.move, t.value.index});
    ++transition_count_;
  }
  for (auto& list : edges_) {
    std::sort(list.begin(), list.end(), [&](const Edge& x, const Edge& y) {
      return std::forward_as_tuple(def_.states[x.to], def_.tape_alphabet[x.write], x.move) <
             std::forward_as_tuple(def_.states[y.to], def_.tape_alphabet[y.write], y.move);
    });
  }
}

StateId Machine::state_id(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) throw InvalidArgument("unknown state '" + std::string(name) + "'");
  return it->second;
}

SymbolId Machine::symbol_id(std::string_view name) const {
  auto it = symbol_index_.find(std::string(name));
  if (it == symbol_index_.end()) throw InvalidArgument("unknown symbol '" + std::string(name) + "'");
  return it->second;
}

bool Machine::has_symbol(std::string_view name) const {
  return symbol_index_.contains(std::string(name));
}

FiniteAlgebra::Index Machine::delta(StateId p, SymbolId a, StateId q, SymbolId b, Move d) const {
  for (const Edge& e : edges(p, a)) {
    if (e.to == q && e.write == b && e.move == d) return e.value;
  }
  return algebra().one_index();
}

std::span<const Machine::Edge> Machine::edges(StateId p, SymbolId a) const {
  return edges_.at(p * def_.tape_alphabet.size() + a);
}

std::vector<SymbolId> Machine::encode_input(const Word& word) const {
  if (word.empty()) throw InvalidArgument("input must be non-empty");
  std::vector<SymbolId> out;
  out.reserve(word.size());
  for (const auto& s : word) {
    auto it = symbol_index_.find(s);
    if (it == symbol_index_.end() || !input_symbol_[it->second]) {
      throw InvalidArgument("'" + s + "' is not an input symbol of '" + def_.name + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

Configuration Machine::make_configuration(const Word& left, std::string_view state,
                                          const Word& right) const {
  Configuration c;
  for (const auto& s : left) c.left.push_back(symbol_id(s));
  c.state = state_id(state);
  for (const auto& s : right) c.right.push_back(symbol_id(s));
  canonicalize(c, blank_);
  return c;
}

std::string Machine::to_string(const Configuration& c) const {
  std::string out;
  auto put = [&](const std::string& token) {
    if (!out.empty()) out += ' ';
    out += token;
  };
  for (SymbolId a : c.left) put(symbol_name(a));
  put("[" + state_name(c.state) + "]");
  for (SymbolId a : c.right) put(symbol_name(a));
  return out;
}

// --------------------------------------------------------------- configurations

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ c.state;
  auto mix = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (SymbolId a : c.left) mix(a);
  mix(0xffff + 1);
  for (SymbolId a : c.right) mix(a);
  return h;
}

void canonicalize(Configuration& c, SymbolId blank) {
  auto lead = std::find_if(c.left.begin(), c.left.end(), [&](SymbolId a) { return a != blank; });
  c.left.erase(c.left.begin(), lead);
  while (!c.right.empty() && c.right.back() == blank) c.right.pop_back();
}

SymbolId scanned_symbol(const Configuration& c, SymbolId blank) {
  return c.right.empty() ? blank : c.right.front();
}

Configuration apply_transition(const Configuration& c, SymbolId write, Move move, StateId to,
                               SymbolId blank) {
  Configuration out;
  out.state = to;
  // Tape after writing: left | write | rest.
  const auto rest_begin = c.right.empty() ? c.right.end() : c.right.begin() + 1;
  switch (move) {
    case Move::S:
      out.left = c.left;
      out.right.reserve(c.right.size() + 1);
      out.right.push_back(write);
      out.right.insert(out.right.end(), rest_begin, c.right.end());
      break;
    case Move::R:
      out.left = c.left;
      out.left.push_back(write);
      out.right.assign(rest_begin, c.right.end());
      break;
    case Move::L: {
      // Moving left past the leftmost nonblank reads the blank c = B.
      const SymbolId cell = c.left.empty() ? blank : c.left.back();
      out.left.assign(c.left.begin(), c.left.empty() ? c.left.end() : c.left.end() - 1);
      out.right.reserve(c.right.size() + 2);
      out.right.push_back(cell);
      out.right.push_back(write);
      out.right.insert(out.right.end(), rest_begin, c.right.end());
      break;
    }
  }
  canonicalize(out, blank);
  return out;
}

// ------------------------------------------------------------------ semantics

MachineClass classify(const Machine& m) {
  const auto& A = m.algebra();
  auto classical = [&](FiniteAlgebra::Index v) { return v == A.zero_index() || v == A.one_index(); };
  MachineClass mc;
  mc.deterministic = true;
  mc.classical_delta = true;
  for (StateId p = 0; p < m.state_count(); ++p) {
    for (SymbolId a = 0; a < m.symbol_count(); ++a) {
      const auto edges = m.edges(p, a);
      if (edges.size() > 1) mc.deterministic = false;
      for (const auto& e : edges) {
        if (!classical(e.value)) mc.classical_delta = false;
      }
    }
  }
  mc.classical_initial = mc.classical_final = true;
  for (StateId p = 0; p < m.state_count(); ++p) {
    if (!classical(m.initial_value(p))) mc.classical_initial = false;
    if (!classical(m.final_value(p))) mc.classical_final = false;
  }
  return mc;
}

std::vector<Successor> effective_successors(const Machine& m, const Configuration& c) {
  const auto& A = m.algebra();
  const SymbolId a = scanned_symbol(c, m.blank());
  std::vector<Successor> out;
  for (const auto& e : m.edges(c.state, a)) {
    Configuration next = apply_transition(c, e.write, e.move, e.to, m.blank());
    auto dup = std::find_if(out.begin(), out.end(), [&](const Successor& s) { return s.config == next; });
    if (dup != out.end()) {
      dup->label.value = A.meet_index(dup->label.value, e.value);
      continue;
    }
    out.push_back({std::move(next), TransitionLabel{c.state, a, e.to, e.write, e.move, e.value}});
  }
  return out;
}

Element delta_star(const Machine& m, const Configuration& c1, const Configuration& c2) {
  Configuration from = c1;
  Configuration to = c2;
  canonicalize(from, m.blank());
  canonicalize(to, m.blank());
  for (const auto& s : effective_successors(m, from)) {
    if (s.config == to) return m.algebra().element(s.label.value);
  }
  return m.algebra().one();
}

bool is_halting(const Machine& m, const Configuration& c) {
  if (m.final_value(c.state) != m.algebra().one_index()) return true;
  return m.edges(c.state, scanned_symbol(c, m.blank())).empty();
}

std::vector<InitialEntry> initial_distribution(const Machine& m, const Word& input) {
  const std::vector<SymbolId> symbols = m.encode_input(input);
  std::vector<InitialEntry> out;
  for (StateId q = 0; q < m.state_count(); ++q) {
    const auto v = m.initial_value(q);
    if (v == m.algebra().one_index()) continue;
    Configuration c;
    c.state = q;
    c.right = symbols;
    out.push_back({std::move(c), m.algebra().element(v)});
  }
  return out;
}

std::vector<Configuration> reachable_ids(const Machine& m, const Word& input, std::size_t n) {
  if (n == 0) throw InvalidArgument("reachable_ids requires n >= 1");
  std::set<Configuration> level;
  for (auto& entry : initial_distribution(m, input)) level.insert(std::move(entry.config));
  for (std::size_t step = 0; step < n; ++step) {
    std::set<Configuration> next;
    for (const auto& c : level) {
      if (is_halting(m, c)) continue;
      for (auto& s : effective_successors(m, c)) next.insert(std::move(s.config));
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

ElementSet machine_range(const Machine& m) {
  const auto& A = m.algebra();
  ElementSet range(A);
  const auto& def = m.def();
  for (const auto& [q, v] : def.initial) range.insert(v);
  for (const auto& [q, v] : def.final) range.insert(v);
  for (const auto& t : def.transitions) range.insert(t.value);
  const std::size_t q = m.state_count();
  const std::size_t g = m.symbol_count();
  const bool initial_total = std::count_if(def.initial.begin(), def.initial.end(), [&](const auto& kv) {
                               return kv.second != A.one();
                             }) == static_cast<std::ptrdiff_t>(q);
  const bool final_total = std::count_if(def.final.begin(), def.final.end(), [&](const auto& kv) {
                             return kv.second != A.one();
                           }) == static_cast<std::ptrdiff_t>(q);
  const bool delta_total = m.effective_transition_count() == q * g * q * g * 3;
  if (!initial_total || !final_total || !delta_total) range.insert(A.one());
  return range;
}

}  // namespace qmvtm
