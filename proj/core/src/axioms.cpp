#include <algorithm>
#include <cctype>
#include <functional>

#include "qmvtm/algebra.hpp"
#include "qmvtm/error.hpp"

namespace qmvtm {

namespace {

using Index = FiniteAlgebra::Index;

// Collects violations with names rendered from the algebra's carrier.
class Checker {
 public:
  Checker(const FiniteAlgebra& algebra, AxiomFamily family, bool all)
      : algebra_(algebra), all_(all) {
    report_.family = std::string(to_string(family));
  }

  bool done() const { return !all_ && !report_.pass; }

  std::string name(Index i) const { return algebra_.carrier()[i]; }

  // Returns false when the caller should stop.
  bool expect(std::string_view axiom, std::initializer_list<Index> witness, Index lhs, Index rhs) {
    if (lhs == rhs) return true;
    Violation v;
    v.axiom = std::string(axiom);
    for (Index w : witness) v.witness.push_back(name(w));
    v.lhs = name(lhs);
    v.rhs = name(rhs);
    report_.add(std::move(v));
    return all_;
  }

  bool fail(std::string_view axiom, std::initializer_list<Index> witness, std::string lhs,
            std::string rhs) {
    Violation v;
    v.axiom = std::string(axiom);
    for (Index w : witness) v.witness.push_back(name(w));
    v.lhs = std::move(lhs);
    v.rhs = std::move(rhs);
    report_.add(std::move(v));
    return all_;
  }

  AxiomReport take() { return std::move(report_); }

 private:
  const FiniteAlgebra& algebra_;
  bool all_;
  AxiomReport report_;
};

// Runs body(a) / body(a, b) / body(a, b, c) over all tuples until it returns false.
template <typename F>
void for_all1(std::size_t k, F&& body) {
  for (Index a = 0; a < k; ++a) {
    if (!body(a)) return;
  }
}

template <typename F>
void for_all2(std::size_t k, F&& body) {
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      if (!body(a, b)) return;
    }
  }
}

template <typename F>
void for_all3(std::size_t k, F&& body) {
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      for (Index c = 0; c < k; ++c) {
        if (!body(a, b, c)) return;
      }
    }
  }
}

void check_s(const FiniteAlgebra& A, Checker& ck) {
  const auto k = A.size();
  const Index zero = A.zero_index();
  const Index one = A.one_index();
  for_all2(k, [&](Index a, Index b) { return ck.expect("S1", {a, b}, A.plus(a, b), A.plus(b, a)); });
  if (ck.done()) return;
  for_all3(k, [&](Index a, Index b, Index c) {
    return ck.expect("S2", {a, b, c}, A.plus(a, A.plus(b, c)), A.plus(A.plus(a, b), c));
  });
  if (ck.done()) return;
  for_all1(k, [&](Index a) { return ck.expect("S3", {a}, A.plus(a, A.comp(a)), one); });
  if (ck.done()) return;
  for_all1(k, [&](Index a) { return ck.expect("S4", {a}, A.plus(a, zero), a); });
  if (ck.done()) return;
  for_all1(k, [&](Index a) { return ck.expect("S5", {a}, A.comp(A.comp(a)), a); });
  if (ck.done()) return;
  for_all1(k, [&](Index a) { return ck.expect("S6", {a}, A.plus(a, one), one); });
}

void check_mv(const FiniteAlgebra& A, Checker& ck) {
  for_all2(A.size(), [&](Index a, Index b) {
    const Index lhs = A.plus(A.comp(A.plus(A.comp(a), b)), b);
    const Index rhs = A.plus(A.comp(A.plus(a, A.comp(b))), a);
    return ck.expect("MV", {a, b}, lhs, rhs);
  });
}

void check_qmv(const FiniteAlgebra& A, Checker& ck) {
  const auto k = A.size();
  auto meet = [&](Index a, Index b) { return A.qmeet_index(a, b); };
  auto join = [&](Index a, Index b) { return A.qjoin_index(a, b); };
  for_all2(k, [&](Index a, Index b) { return ck.expect("QMV1", {a, b}, join(a, meet(b, a)), a); });
  if (ck.done()) return;
  for_all3(k, [&](Index a, Index b, Index c) {
    return ck.expect("QMV2", {a, b, c}, meet(meet(a, b), c), meet(meet(a, b), meet(b, c)));
  });
  if (ck.done()) return;
  for_all3(k, [&](Index a, Index b, Index c) {
    const Index t = A.comp(A.plus(a, c));
    return ck.expect("QMV3", {a, b, c}, A.plus(a, meet(b, t)), meet(A.plus(a, b), A.plus(a, t)));
  });
  if (ck.done()) return;
  for_all2(k, [&](Index a, Index b) {
    return ck.expect("QMV4", {a, b}, A.plus(a, meet(A.comp(a), b)), A.plus(a, b));
  });
  if (ck.done()) return;
  for_all2(k, [&](Index a, Index b) {
    return ck.expect("QMV5", {a, b}, join(A.plus(A.comp(a), b), A.plus(A.comp(b), a)),
                     A.one_index());
  });
}

void check_lattice(const FiniteAlgebra& A, Checker& ck) {
  const auto k = A.size();
  auto le = [&](Index a, Index b) { return A.leq_index(a, b); };
  auto tf = [](bool b) { return std::string(b ? "true" : "false"); };
  for_all1(k, [&](Index a) { return le(a, a) || ck.fail("reflexive", {a}, "false", "true"); });
  if (ck.done()) return;
  for_all2(k, [&](Index a, Index b) {
    return a == b || !(le(a, b) && le(b, a)) ||
           ck.fail("antisymmetric", {a, b}, "a<=b and b<=a", "a=b");
  });
  if (ck.done()) return;
  for_all3(k, [&](Index a, Index b, Index c) {
    return !(le(a, b) && le(b, c)) || le(a, c) || ck.fail("transitive", {a, b, c}, tf(false), tf(true));
  });
  if (ck.done() || !A.is_partial_order()) return;
  // Existence of glb/lub; recomputed here rather than trusting the cached flag.
  auto extremal = [&](Index a, Index b, bool lower) {
    std::vector<Index> bounds;
    for (Index c = 0; c < k; ++c) {
      if (lower ? (le(c, a) && le(c, b)) : (le(a, c) && le(b, c))) bounds.push_back(c);
    }
    return std::any_of(bounds.begin(), bounds.end(), [&](Index m) {
      return std::all_of(bounds.begin(), bounds.end(),
                         [&](Index c) { return lower ? le(c, m) : le(m, c); });
    });
  };
  for_all2(k, [&](Index a, Index b) {
    return extremal(a, b, true) || ck.fail("glb", {a, b}, "no greatest lower bound", "exists");
  });
  if (ck.done()) return;
  for_all2(k, [&](Index a, Index b) {
    return extremal(a, b, false) || ck.fail("lub", {a, b}, "no least upper bound", "exists");
  });
}

void check_quasilinear(const FiniteAlgebra& A, Checker& ck) {
  for_all2(A.size(), [&](Index a, Index b) {
    if (A.leq_index(a, b)) return true;
    return ck.expect("quasilinear", {a, b}, A.qmeet_index(a, b), b);
  });
}

void check_linear(const FiniteAlgebra& A, Checker& ck) {
  for_all2(A.size(), [&](Index a, Index b) {
    return A.leq_index(a, b) || A.leq_index(b, a) ||
           ck.fail("linear", {a, b}, "incomparable", "comparable");
  });
}

void check_locally_finite(const FiniteAlgebra& A, Checker& ck) {
  for_all1(A.size(), [&](Index a) {
    if (a == A.zero_index()) return true;
    // n.a = a boxplus ... boxplus a; stop at 1 or when a value repeats.
    std::vector<bool> seen(A.size(), false);
    Index acc = a;
    while (acc != A.one_index() && !seen[acc]) {
      seen[acc] = true;
      acc = A.plus(acc, a);
    }
    return acc == A.one_index() ||
           ck.fail("locally_finite", {a}, "n.a cycles at " + ck.name(acc), ck.name(A.one_index()));
  });
}

void check_distributive(const FiniteAlgebra& A, Checker& ck) {
  for_all3(A.size(), [&](Index a, Index b, Index c) {
    const Index lhs = A.meet_index(A.plus(a, b), A.plus(a, c));
    const Index rhs = A.plus(a, A.meet_index(b, c));
    return ck.expect("distributive", {a, b, c}, lhs, rhs);
  });
}

}  // namespace

std::string_view to_string(AxiomFamily f) {
  switch (f) {
    case AxiomFamily::S: return "S";
    case AxiomFamily::MV: return "MV";
    case AxiomFamily::QMV: return "QMV";
    case AxiomFamily::Effect: return "EFFECT";
    case AxiomFamily::Lattice: return "LATTICE";
    case AxiomFamily::Quasilinear: return "QUASILINEAR";
    case AxiomFamily::Linear: return "LINEAR";
    case AxiomFamily::LocallyFinite: return "LOCALLY_FINITE";
    case AxiomFamily::Distributive: return "DISTRIBUTIVE";
  }
  return "?";
}

std::optional<AxiomFamily> parse_family(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::toupper(c));
  });
  for (AxiomFamily f : algebra_families()) {
    if (to_string(f) == upper) return f;
  }
  if (upper == "EFFECT") return AxiomFamily::Effect;
  return std::nullopt;
}

const std::vector<AxiomFamily>& algebra_families() {
  static const std::vector<AxiomFamily> families = {
      AxiomFamily::S,           AxiomFamily::MV,     AxiomFamily::QMV,
      AxiomFamily::Lattice,     AxiomFamily::Quasilinear, AxiomFamily::Linear,
      AxiomFamily::LocallyFinite, AxiomFamily::Distributive,
  };
  return families;
}

AxiomReport check_axioms(const FiniteAlgebra& algebra, AxiomFamily family, bool all_violations) {
  Checker ck(algebra, family, all_violations);
  switch (family) {
    case AxiomFamily::S: check_s(algebra, ck); break;
    case AxiomFamily::MV: check_mv(algebra, ck); break;
    case AxiomFamily::QMV: check_qmv(algebra, ck); break;
    case AxiomFamily::Lattice: check_lattice(algebra, ck); break;
    case AxiomFamily::Quasilinear: check_quasilinear(algebra, ck); break;
    case AxiomFamily::Linear: check_linear(algebra, ck); break;
    case AxiomFamily::LocallyFinite: check_locally_finite(algebra, ck); break;
    case AxiomFamily::Distributive:
      if (!algebra.is_lattice()) {
        throw PrerequisiteMissing("DISTRIBUTIVE requires LATTICE, which fails for '" +
                                  algebra.name() + "'");
      }
      check_distributive(algebra, ck);
      break;
    case AxiomFamily::Effect:
      throw InvalidArgument("EFFECT is checked on a partial effect table, not a total algebra");
  }
  return ck.take();
}

AxiomReport probe_monotone_addition(const FiniteAlgebra& algebra) {
  AxiomReport report;
  report.family = "MONOTONE";
  const auto& names = algebra.carrier();
  for (Index a = 0; a < algebra.size(); ++a) {
    for (Index b = 0; b < algebra.size(); ++b) {
      const Index s = algebra.plus(a, b);
      if (!algebra.leq_index(a, s)) {
        report.add({"a<=a+b", {names[a], names[b]}, names[a], names[s]});
        return report;
      }
    }
  }
  return report;
}

AxiomReport check_axioms(const PartialEffectTable& t, bool all_violations) {
  AxiomReport report;
  report.family = "EFFECT";
  const auto k = t.size();
  auto name = [&](std::optional<std::uint16_t> v) { return v ? t.carrier[*v] : std::string("undefined"); };
  auto add = [&](std::string axiom, std::vector<std::string> witness, std::string lhs, std::string rhs) {
    report.add({std::move(axiom), std::move(witness), std::move(lhs), std::move(rhs)});
    return all_violations;
  };
  if (t.oplus.size() != k * k) {
    add("table", {}, std::to_string(t.oplus.size()) + " entries", std::to_string(k * k) + " entries");
    return report;
  }
  if (t.zero == t.one) {
    add("0!=1", {t.carrier[t.zero]}, "0", "1");
    if (!all_violations) return report;
  }
  for (std::uint16_t a = 0; a < k; ++a) {
    for (std::uint16_t b = 0; b < k; ++b) {
      if (t.sum(a, b) != t.sum(b, a) &&
          !add("E1", {t.carrier[a], t.carrier[b]}, name(t.sum(a, b)), name(t.sum(b, a)))) {
        return report;
      }
    }
  }
  for (std::uint16_t a = 0; a < k; ++a) {
    for (std::uint16_t b = 0; b < k; ++b) {
      for (std::uint16_t c = 0; c < k; ++c) {
        auto bc = t.sum(b, c);
        if (!bc) continue;
        auto a_bc = t.sum(a, *bc);
        if (!a_bc) continue;
        auto ab = t.sum(a, b);
        auto ab_c = ab ? t.sum(*ab, c) : std::nullopt;
        if (ab_c != a_bc &&
            !add("E2", {t.carrier[a], t.carrier[b], t.carrier[c]}, name(a_bc), name(ab_c))) {
          return report;
        }
      }
    }
  }
  for (std::uint16_t a = 0; a < k; ++a) {
    int count = 0;
    for (std::uint16_t b = 0; b < k; ++b) {
      if (t.sum(a, b) == t.one) ++count;
    }
    if (count != 1 &&
        !add("E3", {t.carrier[a]}, std::to_string(count) + " complements", "1 complement")) {
      return report;
    }
  }
  for (std::uint16_t a = 0; a < k; ++a) {
    if (t.sum(t.one, a) && a != t.zero &&
        !add("E4", {t.carrier[a]}, "1+" + t.carrier[a] + " defined", "a=0")) {
      return report;
    }
  }
  return report;
}

bool effect_leq(const PartialEffectTable& t, std::uint16_t a, std::uint16_t b) {
  for (std::uint16_t c = 0; c < t.size(); ++c) {
    if (t.sum(a, c) == b) return true;
  }
  return false;
}

}  // namespace qmvtm
