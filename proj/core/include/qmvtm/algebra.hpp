#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmvtm {

class FiniteAlgebra;

/// An element of one specific FiniteAlgebra.
///
/// The algebra is identified by its content hash, so elements taken from two
/// structurally different algebras never compare equal and are rejected by
/// every operation of the other algebra.
struct Element {
  std::uint64_t algebra_id = 0;
  std::uint16_t index = 0;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Subset of the carrier of one algebra.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(const FiniteAlgebra& algebra);

  std::uint64_t algebra_id() const noexcept { return algebra_id_; }
  bool contains(Element e) const;
  bool contains_index(std::uint16_t i) const { return i < bits_.size() && bits_[i]; }
  /// Returns true when the element was not already present.
  bool insert(Element e);
  bool insert_index(std::uint16_t i);
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  /// Members in carrier order.
  std::vector<Element> elements() const;
  std::vector<std::uint16_t> indices() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::uint64_t algebra_id_ = 0;
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

enum class DerivedOp { odot, qmeet, qjoin };
enum class LatticeOp { meet, join };

/// How a table came to be; extended-effect algebras get an extra theorem check.
enum class AlgebraOrigin { table, extended_effect, lukasiewicz, product };

/// A finite S-algebra (or anything weaker) given by its boxplus and complement
/// tables. All derived tables are computed once at construction; the object is
/// immutable afterwards.
class FiniteAlgebra {
 public:
  using Index = std::uint16_t;

  /// Name-based constructor used by loaders. Throws LoadError on unknown names,
  /// duplicate carrier names, wrong table dimensions or zero == one.
  FiniteAlgebra(std::string name, std::vector<std::string> carrier, std::string_view zero,
                std::string_view one, const std::vector<std::vector<std::string>>& boxplus,
                const std::vector<std::string>& complement,
                AlgebraOrigin origin = AlgebraOrigin::table);

  /// Index-based constructor. `boxplus` is row-major k*k.
  FiniteAlgebra(std::string name, std::vector<std::string> carrier, Index zero, Index one,
                std::vector<Index> boxplus, std::vector<Index> complement,
                AlgebraOrigin origin = AlgebraOrigin::table);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  const std::vector<std::string>& carrier() const noexcept { return carrier_; }
  std::uint64_t id() const noexcept { return id_; }
  AlgebraOrigin origin() const noexcept { return origin_; }

  Element zero() const noexcept { return {id_, zero_}; }
  Element one() const noexcept { return {id_, one_}; }
  Element element(Index i) const;
  /// Throws InvalidArgument for names not in the carrier.
  Element element(std::string_view name) const;
  std::optional<Element> find(std::string_view name) const;
  const std::string& name_of(Element e) const;
  bool owns(Element e) const noexcept { return e.algebra_id == id_ && e.index < size(); }

  Element boxplus(Element a, Element b) const;
  Element complement(Element a) const;
  Element derived(DerivedOp kind, Element a, Element b) const;
  Element odot(Element a, Element b) const { return derived(DerivedOp::odot, a, b); }
  Element qmeet(Element a, Element b) const { return derived(DerivedOp::qmeet, a, b); }
  Element qjoin(Element a, Element b) const { return derived(DerivedOp::qjoin, a, b); }
  /// a <= b iff a = a qmeet b.
  bool leq(Element a, Element b) const;
  /// Throws NotALattice unless is_lattice().
  Element lattice(LatticeOp kind, Element a, Element b) const;
  Element meet(Element a, Element b) const { return lattice(LatticeOp::meet, a, b); }
  Element join(Element a, Element b) const { return lattice(LatticeOp::join, a, b); }

  /// The order relation is a partial order with all binary glbs and lubs.
  bool is_lattice() const noexcept { return lattice_; }
  bool is_partial_order() const noexcept { return partial_order_; }

  // Unchecked index-level access used by the evaluators.
  Index zero_index() const noexcept { return zero_; }
  Index one_index() const noexcept { return one_; }
  Index plus(Index a, Index b) const noexcept { return boxplus_[a * size() + b]; }
  Index comp(Index a) const noexcept { return complement_[a]; }
  Index odot_index(Index a, Index b) const noexcept { return odot_[a * size() + b]; }
  Index qmeet_index(Index a, Index b) const noexcept { return qmeet_[a * size() + b]; }
  Index qjoin_index(Index a, Index b) const noexcept { return qjoin_[a * size() + b]; }
  bool leq_index(Index a, Index b) const noexcept { return leq_[a * size() + b]; }
  /// Only meaningful when is_lattice().
  Index meet_index(Index a, Index b) const noexcept { return meet_[a * size() + b]; }
  Index join_index(Index a, Index b) const noexcept { return join_[a * size() + b]; }

  const std::vector<Index>& boxplus_table() const noexcept { return boxplus_; }
  const std::vector<Index>& complement_table() const noexcept { return complement_; }

 private:
  void require(Element e) const;
  void finish();

  std::string name_;
  std::vector<std::string> carrier_;
  Index zero_ = 0;
  Index one_ = 0;
  std::vector<Index> boxplus_;
  std::vector<Index> complement_;
  AlgebraOrigin origin_ = AlgebraOrigin::table;
  std::uint64_t id_ = 0;

  std::vector<Index> odot_, qmeet_, qjoin_;
  std::vector<bool> leq_;
  bool partial_order_ = false;
  bool lattice_ = false;
  std::vector<Index> meet_, join_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Effect algebra: partial oplus, undefined entries are std::nullopt.
struct PartialEffectTable {
  std::string name;
  std::vector<std::string> carrier;
  std::uint16_t zero = 0;
  std::uint16_t one = 1;
  std::vector<std::optional<std::uint16_t>> oplus;  // row-major k*k

  std::size_t size() const noexcept { return carrier.size(); }
  std::optional<std::uint16_t> sum(std::uint16_t a, std::uint16_t b) const {
    return oplus[a * size() + b];
  }
};

enum class AxiomFamily {
  S,
  MV,
  QMV,
  Effect,
  Lattice,
  Quasilinear,
  Linear,
  LocallyFinite,
  Distributive,
};

std::string_view to_string(AxiomFamily f);
/// Accepts the lower- or upper-case family names ("mv", "LOCALLY_FINITE", ...).
std::optional<AxiomFamily> parse_family(std::string_view text);
/// Every family that applies to a total algebra (all but Effect).
const std::vector<AxiomFamily>& algebra_families();

struct Violation {
  std::string axiom;
  std::vector<std::string> witness;
  std::string lhs;
  std::string rhs;
};

struct AxiomReport {
  std::string family;
  bool pass = true;
  std::vector<Violation> violations;

  void add(Violation v) {
    pass = false;
    violations.push_back(std::move(v));
  }
};

/// Exhaustive axiom check. Stops at the first violation unless `all_violations`.
/// Distributive requires Lattice (PrerequisiteMissing otherwise); Effect is only
/// valid on a PartialEffectTable (InvalidArgument here).
AxiomReport check_axioms(const FiniteAlgebra& algebra, AxiomFamily family,
                         bool all_violations = false);
AxiomReport check_axioms(const PartialEffectTable& table, bool all_violations = false);

/// a <= a boxplus b for all a, b. Needed for k-vector dominance pruning.
AxiomReport probe_monotone_addition(const FiniteAlgebra& algebra);

/// Least superset of seed and {0, 1} closed under boxplus, complement and, when
/// the algebra is a lattice, meet and join.
ElementSet subalgebra_closure(const FiniteAlgebra& algebra, const ElementSet& seed,
                              std::size_t cap);
/// Closure of seed under boxplus, with 0 adjoined.
ElementSet boxplus_closure(const FiniteAlgebra& algebra, const ElementSet& seed);

/// Totalizes a partial effect table: undefined sums become 1.
FiniteAlgebra extend_effect(const PartialEffectTable& table);

/// a <= b in the effect-algebra order: a oplus c = b for some c.
bool effect_leq(const PartialEffectTable& table, std::uint16_t a, std::uint16_t b);

// Built-in instances.
FiniteAlgebra lukasiewicz(int n);
PartialEffectTable diamond_effect_table();
FiniteAlgebra diamond();
FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Builds from an expression: "lukasiewicz(N)", "diamond", "product(X,Y)".
/// Returns nullptr when the text is not a builtin expression.
AlgebraPtr make_builtin(std::string_view expression);

}  // namespace qmvtm
