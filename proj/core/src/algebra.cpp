#include "qmvtm/algebra.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "qmvtm/error.hpp"

namespace qmvtm {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= 0xff;
  h *= kFnvPrime;
}

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

FiniteAlgebra::Index index_of(const std::vector<std::string>& carrier, std::string_view name,
                              std::string_view where) {
  auto it = std::find(carrier.begin(), carrier.end(), name);
  if (it == carrier.end()) {
    throw LoadError(std::string(where) + ": '" + std::string(name) + "' is not a carrier element");
  }
  return static_cast<FiniteAlgebra::Index>(it - carrier.begin());
}

}  // namespace

// ---------------------------------------------------------------- ElementSet

ElementSet::ElementSet(const FiniteAlgebra& algebra)
    : algebra_id_(algebra.id()), bits_(algebra.size(), false) {}

bool ElementSet::contains(Element e) const {
  if (e.algebra_id != algebra_id_) {
    throw AlgebraMismatch("element does not belong to this set's algebra");
  }
  return contains_index(e.index);
}

bool ElementSet::insert(Element e) {
  if (e.algebra_id != algebra_id_) {
    throw AlgebraMismatch("element does not belong to this set's algebra");
  }
  return insert_index(e.index);
}

bool ElementSet::insert_index(std::uint16_t i) {
  if (i >= bits_.size()) throw InvalidArgument("element index out of range");
  if (bits_[i]) return false;
  bits_[i] = true;
  ++count_;
  return true;
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  for (std::uint16_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back({algebra_id_, i});
  }
  return out;
}

std::vector<std::uint16_t> ElementSet::indices() const {
  std::vector<std::uint16_t> out;
  for (std::uint16_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

// ------------------------------------------------------------- FiniteAlgebra

FiniteAlgebra::FiniteAlgebra(std::string name, std::vector<std::string> carrier,
                             std::string_view zero, std::string_view one,
                             const std::vector<std::vector<std::string>>& boxplus,
                             const std::vector<std::string>& complement, AlgebraOrigin origin)
    : name_(std::move(name)), carrier_(std::move(carrier)), origin_(origin) {
  const std::size_t k = carrier_.size();
  if (boxplus.size() != k) {
    throw LoadError("boxplus: expected " + std::to_string(k) + " rows, got " +
                    std::to_string(boxplus.size()));
  }
  if (complement.size() != k) {
    throw LoadError("complement: expected " + std::to_string(k) + " entries, got " +
                    std::to_string(complement.size()));
  }
  zero_ = index_of(carrier_, zero, "zero");
  one_ = index_of(carrier_, one, "one");
  boxplus_.reserve(k * k);
  for (std::size_t r = 0; r < k; ++r) {
    if (boxplus[r].size() != k) {
      throw LoadError("boxplus row " + std::to_string(r) + ": expected " + std::to_string(k) +
                      " entries, got " + std::to_string(boxplus[r].size()));
    }
    for (const auto& cell : boxplus[r]) boxplus_.push_back(index_of(carrier_, cell, "boxplus"));
  }
  for (const auto& c : complement) complement_.push_back(index_of(carrier_, c, "complement"));
  finish();
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::vector<std::string> carrier, Index zero,
                             Index one, std::vector<Index> boxplus, std::vector<Index> complement,
                             AlgebraOrigin origin)
    : name_(std::move(name)),
      carrier_(std::move(carrier)),
      zero_(zero),
      one_(one),
      boxplus_(std::move(boxplus)),
      complement_(std::move(complement)),
      origin_(origin) {
  const std::size_t k = carrier_.size();
  if (boxplus_.size() != k * k) throw LoadError("boxplus: table is not k x k");
  if (complement_.size() != k) throw LoadError("complement: table does not have k entries");
  if (zero_ >= k || one_ >= k) throw LoadError("zero/one out of range");
  for (Index v : boxplus_) {
    if (v >= k) throw LoadError("boxplus: entry out of range");
  }
  for (Index v : complement_) {
    if (v >= k) throw LoadError("complement: entry out of range");
  }
  finish();
}

void FiniteAlgebra::finish() {
  const std::size_t k = carrier_.size();
  if (k < 2) throw LoadError("carrier must have at least two elements");
  if (k > std::numeric_limits<Index>::max()) throw LoadError("carrier too large");
  if (zero_ == one_) throw LoadError("zero and one must differ");
  std::unordered_set<std::string> seen;
  for (const auto& c : carrier_) {
    if (c.empty()) throw LoadError("carrier names must be non-empty");
    if (!seen.insert(c).second) throw LoadError("duplicate carrier name '" + c + "'");
  }

  std::uint64_t h = kFnvOffset;
  fnv_mix(h, name_);
  for (const auto& c : carrier_) fnv_mix(h, c);
  fnv_mix(h, zero_);
  fnv_mix(h, one_);
  for (Index v : boxplus_) fnv_mix(h, v);
  for (Index v : complement_) fnv_mix(h, v);
  id_ = h == 0 ? 1 : h;

  odot_.resize(k * k);
  qmeet_.resize(k * k);
  qjoin_.resize(k * k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      odot_[a * k + b] = comp(plus(comp(a), comp(b)));
    }
  }
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      qmeet_[a * k + b] = odot_index(plus(a, comp(b)), b);
      qjoin_[a * k + b] = plus(odot_index(a, comp(b)), b);
    }
  }
  leq_.assign(k * k, false);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) leq_[a * k + b] = qmeet_index(a, b) == a;
  }

  partial_order_ = true;
  for (Index a = 0; a < k && partial_order_; ++a) {
    if (!leq_index(a, a)) partial_order_ = false;
    for (Index b = 0; b < k && partial_order_; ++b) {
      if (a != b && leq_index(a, b) && leq_index(b, a)) partial_order_ = false;
      for (Index c = 0; c < k && partial_order_; ++c) {
        if (leq_index(a, b) && leq_index(b, c) && !leq_index(a, c)) partial_order_ = false;
      }
    }
  }
  lattice_ = false;
  meet_.clear();
  join_.clear();
  if (!partial_order_) return;

  meet_.resize(k * k);
  join_.resize(k * k);
  auto bound = [&](Index a, Index b, bool lower) -> std::optional<Index> {
    std::vector<Index> bounds;
    for (Index c = 0; c < k; ++c) {
      bool ok = lower ? (leq_index(c, a) && leq_index(c, b)) : (leq_index(a, c) && leq_index(b, c));
      if (ok) bounds.push_back(c);
    }
    for (Index m : bounds) {
      bool extremal = std::all_of(bounds.begin(), bounds.end(), [&](Index c) {
        return lower ? leq_index(c, m) : leq_index(m, c);
      });
      if (extremal) return m;
    }
    return std::nullopt;
  };
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      auto m = bound(a, b, true);
      auto j = bound(a, b, false);
      if (!m || !j) {
        meet_.clear();
        join_.clear();
        return;
      }
      meet_[a * k + b] = *m;
      join_[a * k + b] = *j;
    }
  }
  lattice_ = true;
}

void FiniteAlgebra::require(Element e) const {
  if (e.algebra_id != id_) {
    throw AlgebraMismatch("element belongs to a different algebra than '" + name_ + "'");
  }
  if (e.index >= size()) throw AlgebraMismatch("element index out of range for '" + name_ + "'");
}

Element FiniteAlgebra::element(Index i) const {
  if (i >= size()) throw InvalidArgument("element index out of range for '" + name_ + "'");
  return {id_, i};
}

Element FiniteAlgebra::element(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw InvalidArgument("'" + std::string(name) + "' is not an element of '" + name_ + "'");
}

std::optional<Element> FiniteAlgebra::find(std::string_view name) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), name);
  if (it == carrier_.end()) return std::nullopt;
  return Element{id_, static_cast<Index>(it - carrier_.begin())};
}

const std::string& FiniteAlgebra::name_of(Element e) const {
  require(e);
  return carrier_[e.index];
}

Element FiniteAlgebra::boxplus(Element a, Element b) const {
  require(a);
  require(b);
  return {id_, plus(a.index, b.index)};
}

Element FiniteAlgebra::complement(Element a) const {
  require(a);
  return {id_, comp(a.index)};
}

Element FiniteAlgebra::derived(DerivedOp kind, Element a, Element b) const {
  require(a);
  require(b);
  switch (kind) {
    case DerivedOp::odot:
      return {id_, odot_index(a.index, b.index)};
    case DerivedOp::qmeet:
      return {id_, qmeet_index(a.index, b.index)};
    case DerivedOp::qjoin:
      return {id_, qjoin_index(a.index, b.index)};
  }
  throw InvalidArgument("unknown derived operation");
}

bool FiniteAlgebra::leq(Element a, Element b) const {
  require(a);
  require(b);
  return leq_index(a.index, b.index);
}

Element FiniteAlgebra::lattice(LatticeOp kind, Element a, Element b) const {
  require(a);
  require(b);
  if (!lattice_) throw NotALattice("'" + name_ + "' is not lattice-ordered");
  switch (kind) {
    case LatticeOp::meet:
      return {id_, meet_index(a.index, b.index)};
    case LatticeOp::join:
      return {id_, join_index(a.index, b.index)};
  }
  throw InvalidArgument("unknown lattice operation");
}

// ------------------------------------------------------------------ closures

ElementSet subalgebra_closure(const FiniteAlgebra& algebra, const ElementSet& seed,
                              std::size_t cap) {
  if (seed.algebra_id() != algebra.id()) throw AlgebraMismatch("seed set from another algebra");
  if (cap == 0) throw InvalidArgument("closure cap must be positive");
  using Index = FiniteAlgebra::Index;
  ElementSet out(algebra);
  std::vector<Index> members;
  auto add = [&](Index i) {
    if (out.insert_index(i)) {
      members.push_back(i);
      if (members.size() > cap) {
        throw CapExceeded("subalgebra closure exceeds cap " + std::to_string(cap));
      }
    }
  };
  add(algebra.zero_index());
  add(algebra.one_index());
  for (Index i : seed.indices()) add(i);

  // Worklist fixpoint: every new element is combined with every member.
  for (std::size_t next = 0; next < members.size(); ++next) {
    const Index a = members[next];
    add(algebra.comp(a));
    for (std::size_t j = 0; j <= next; ++j) {
      const Index b = members[j];
      add(algebra.plus(a, b));
      add(algebra.plus(b, a));
      if (algebra.is_lattice()) {
        add(algebra.meet_index(a, b));
        add(algebra.join_index(a, b));
      }
    }
  }
  return out;
}

ElementSet boxplus_closure(const FiniteAlgebra& algebra, const ElementSet& seed) {
  if (seed.algebra_id() != algebra.id()) throw AlgebraMismatch("seed set from another algebra");
  using Index = FiniteAlgebra::Index;
  ElementSet out(algebra);
  std::vector<Index> members;
  for (Index i : seed.indices()) {
    if (out.insert_index(i)) members.push_back(i);
  }
  for (std::size_t next = 0; next < members.size(); ++next) {
    const Index a = members[next];
    for (std::size_t j = 0; j <= next; ++j) {
      const Index s = algebra.plus(a, members[j]);
      if (out.insert_index(s)) members.push_back(s);
    }
  }
  out.insert_index(algebra.zero_index());
  return out;
}

}  // namespace qmvtm
