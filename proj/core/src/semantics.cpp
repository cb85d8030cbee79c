#include "qmvtm/semantics.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "qmvtm/error.hpp"

namespace qmvtm {

namespace {

using Index = FiniteAlgebra::Index;
using Counts = std::vector<std::uint32_t>;

std::vector<Index> range_basis(const Machine& m) { return machine_range(m).indices(); }

// Maps an element index to its slot in the basis.
std::vector<int> basis_slots(const FiniteAlgebra& A, const std::vector<Index>& basis) {
  std::vector<int> slot(A.size(), -1);
  for (std::size_t i = 0; i < basis.size(); ++i) slot[basis[i]] = static_cast<int>(i);
  return slot;
}

bool counts_leq(const Counts& v, const Counts& w) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > w[i]) return false;
  }
  return true;
}

bool pruning_sound(const FiniteAlgebra& A) {
  return check_axioms(A, AxiomFamily::S).pass && probe_monotone_addition(A).pass;
}

// Independent (mutually incomparable) k-vectors recorded per configuration.
class DominanceStore {
 public:
  // Returns false when `v` is dominated by a stored vector; otherwise records it
  // and drops every stored vector it dominates.
  bool admit(const Configuration& c, const Counts& v) {
    auto& list = store_[c];
    for (const auto& w : list) {
      if (counts_leq(w, v)) return false;
    }
    std::erase_if(list, [&](const Counts& w) { return counts_leq(v, w); });
    list.push_back(v);
    return true;
  }

 private:
  std::unordered_map<Configuration, std::vector<Counts>, ConfigurationHash> store_;
};

void require_input(const Budget& budget) {
  if (budget.max_steps == 0) throw InvalidArgument("budget max_steps must be >= 1");
}

}  // namespace

bool dominates(const KVector& v, const KVector& w) {
  if (v.counts.size() != w.counts.size()) throw InvalidArgument("k-vectors of different length");
  return counts_leq(v.counts, w.counts);
}

Index kvector_value(const FiniteAlgebra& A, const KVector& v) {
  Index acc = A.zero_index();
  for (std::size_t i = 0; i < v.counts.size(); ++i) {
    for (std::uint32_t n = 0; n < v.counts[i]; ++n) acc = A.plus(acc, v.basis[i]);
  }
  return acc;
}

namespace {

// Validates an explicit path and returns the sequence of values I, steps..., T.
std::vector<Index> path_labels(const Machine& m, std::span<const Configuration> path) {
  if (path.empty()) throw InvalidArgument("path must contain at least one configuration");
  const auto& A = m.algebra();
  std::vector<Index> labels;
  const Index init = m.initial_value(path.front().state);
  if (init == A.one_index() || !path.front().left.empty()) {
    throw InvalidArgument("path does not start at an initial configuration");
  }
  labels.push_back(init);
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (is_halting(m, path[i - 1])) {
      throw InvalidArgument("path continues past halting configuration " + m.to_string(path[i - 1]));
    }
    const Element step = delta_star(m, path[i - 1], path[i]);
    if (step == A.one()) {
      throw InvalidArgument("non-effective step " + m.to_string(path[i - 1]) + " -> " +
                            m.to_string(path[i]));
    }
    labels.push_back(step.index);
  }
  if (!is_halting(m, path.back())) {
    throw InvalidArgument("path ends at non-halting configuration " + m.to_string(path.back()));
  }
  labels.push_back(m.final_value(path.back().state));
  return labels;
}

}  // namespace

Element path_value(const Machine& m, std::span<const Configuration> path) {
  const auto& A = m.algebra();
  Index acc = A.zero_index();
  for (Index v : path_labels(m, path)) acc = A.plus(acc, v);
  return A.element(acc);
}

KVector path_vector(const Machine& m, std::span<const Configuration> path) {
  KVector v;
  v.basis = range_basis(m);
  v.counts.assign(v.basis.size(), 0);
  const auto slots = basis_slots(m.algebra(), v.basis);
  for (Index x : path_labels(m, path)) ++v.counts[slots[x]];
  return v;
}

EvalResult eval_depth(const Machine& m, const Word& input, const Budget& budget) {
  require_input(budget);
  const auto& A = m.algebra();
  const auto initial = initial_distribution(m, input);
  const bool prune = budget.prune && pruning_sound(A);
  const auto basis = range_basis(m);
  const auto slots = basis_slots(A, basis);

  struct Frame {
    Configuration config;
    Index value;
    Counts counts;
    std::size_t depth;
  };
  std::vector<Frame> stack;
  for (auto it = initial.rbegin(); it != initial.rend(); ++it) {
    Counts counts(basis.size(), 0);
    ++counts[slots[it->value.index]];
    stack.push_back({it->config, it->value.index, std::move(counts), 0});
  }

  EvalResult r;
  r.value = A.one();
  r.complete = true;
  DominanceStore store;
  Index acc = A.one_index();
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    r.levels = std::max(r.levels, f.depth);
    if (prune && !store.admit(f.config, f.counts)) {
      ++r.pruned;
      continue;
    }
    if (is_halting(m, f.config)) {
      acc = A.meet_index(acc, A.plus(f.value, m.final_value(f.config.state)));
      r.defined = true;
      ++r.paths;
      continue;
    }
    if (f.depth >= budget.max_steps) {
      r.complete = false;
      continue;
    }
    auto successors = effective_successors(m, f.config);
    for (auto it = successors.rbegin(); it != successors.rend(); ++it) {
      Counts counts = f.counts;
      ++counts[slots[it->label.value]];
      stack.push_back({std::move(it->config), A.plus(f.value, it->label.value), std::move(counts),
                       f.depth + 1});
    }
  }
  r.value = A.element(acc);
  return r;
}

EvalResult eval_width(const Machine& m, const Word& input, const Budget& budget) {
  require_input(budget);
  const auto& A = m.algebra();
  // Level-indexed accumulated values; ordered for reproducible traversal.
  std::map<Configuration, Index> level;
  for (const auto& entry : initial_distribution(m, input)) {
    auto [it, inserted] = level.emplace(entry.config, entry.value.index);
    if (!inserted) it->second = A.meet_index(it->second, entry.value.index);
  }

  EvalResult r;
  r.complete = true;
  Index acc = A.one_index();
  for (std::size_t n = 0; !level.empty(); ++n) {
    r.levels = n;
    std::map<Configuration, Index> next;
    for (const auto& [config, w] : level) {
      if (is_halting(m, config)) {
        acc = A.meet_index(acc, A.plus(w, m.final_value(config.state)));
        r.defined = true;
        ++r.paths;
        continue;
      }
      if (n >= budget.max_steps) {
        r.complete = false;
        continue;
      }
      for (const auto& s : effective_successors(m, config)) {
        const Index v = A.plus(w, s.label.value);
        auto [it, inserted] = next.emplace(s.config, v);
        if (!inserted) it->second = A.meet_index(it->second, v);
      }
    }
    level = std::move(next);
  }
  r.value = A.element(acc);
  return r;
}

}  // namespace qmvtm
