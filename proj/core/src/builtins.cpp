#include <algorithm>
#include <cctype>
#include <numeric>

#include "qmvtm/algebra.hpp"
#include "qmvtm/error.hpp"

namespace qmvtm {

namespace {

using Index = FiniteAlgebra::Index;

std::string fraction_name(int num, int den) {
  if (num == 0) return "0";
  if (num == den) return "1";
  const int g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "X,Y" at the single top-level comma.
std::optional<std::pair<std::string_view, std::string_view>> split_pair(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return std::pair{trim(s.substr(0, i)), trim(s.substr(i + 1))};
  }
  return std::nullopt;
}

}  // namespace

FiniteAlgebra extend_effect(const PartialEffectTable& table) {
  const AxiomReport report = check_axioms(table);
  if (!report.pass) {
    const auto& v = report.violations.front();
    std::string witness;
    for (const auto& w : v.witness) witness += (witness.empty() ? "" : ",") + w;
    throw InvalidArgument("not an effect algebra: " + v.axiom + " fails at (" + witness + ")");
  }
  const std::size_t k = table.size();
  std::vector<Index> plus(k * k);
  std::vector<Index> comp(k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) plus[a * k + b] = table.sum(a, b).value_or(table.one);
    for (Index b = 0; b < k; ++b) {
      if (table.sum(a, b) == table.one) comp[a] = b;
    }
  }
  return FiniteAlgebra(table.name, table.carrier, table.zero, table.one, std::move(plus),
                       std::move(comp), AlgebraOrigin::extended_effect);
}

FiniteAlgebra lukasiewicz(int n) {
  if (n < 2) throw InvalidArgument("lukasiewicz(n) requires n >= 2");
  const int den = n - 1;
  std::vector<std::string> carrier;
  for (int i = 0; i < n; ++i) carrier.push_back(fraction_name(i, den));
  std::vector<Index> plus(static_cast<std::size_t>(n) * n);
  std::vector<Index> comp(n);
  for (int a = 0; a < n; ++a) {
    comp[a] = static_cast<Index>(den - a);
    for (int b = 0; b < n; ++b) plus[a * n + b] = static_cast<Index>(std::min(den, a + b));
  }
  return FiniteAlgebra("lukasiewicz(" + std::to_string(n) + ")", std::move(carrier), 0,
                       static_cast<Index>(den), std::move(plus), std::move(comp),
                       AlgebraOrigin::lukasiewicz);
}

PartialEffectTable diamond_effect_table() {
  PartialEffectTable t;
  t.name = "diamond";
  t.carrier = {"0", "p", "q", "1"};
  t.zero = 0;
  t.one = 3;
  t.oplus.assign(16, std::nullopt);
  auto set = [&](std::uint16_t a, std::uint16_t b, std::uint16_t s) {
    t.oplus[a * 4 + b] = s;
    t.oplus[b * 4 + a] = s;
  };
  for (std::uint16_t x = 0; x < 4; ++x) set(0, x, x);
  set(1, 2, 3);
  return t;
}

FiniteAlgebra diamond() { return extend_effect(diamond_effect_table()); }

FiniteAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  const std::size_t ka = a.size();
  const std::size_t kb = b.size();
  const std::size_t k = ka * kb;
  auto pair_index = [&](Index x, Index y) { return static_cast<Index>(x * kb + y); };
  std::vector<std::string> carrier;
  for (Index x = 0; x < ka; ++x) {
    for (Index y = 0; y < kb; ++y) carrier.push_back("(" + a.carrier()[x] + "," + b.carrier()[y] + ")");
  }
  std::vector<Index> plus(k * k);
  std::vector<Index> comp(k);
  for (Index x1 = 0; x1 < ka; ++x1) {
    for (Index y1 = 0; y1 < kb; ++y1) {
      const Index i = pair_index(x1, y1);
      comp[i] = pair_index(a.comp(x1), b.comp(y1));
      for (Index x2 = 0; x2 < ka; ++x2) {
        for (Index y2 = 0; y2 < kb; ++y2) {
          plus[i * k + pair_index(x2, y2)] = pair_index(a.plus(x1, x2), b.plus(y1, y2));
        }
      }
    }
  }
  return FiniteAlgebra("product(" + a.name() + "," + b.name() + ")", std::move(carrier),
                       pair_index(a.zero_index(), b.zero_index()),
                       pair_index(a.one_index(), b.one_index()), std::move(plus), std::move(comp),
                       AlgebraOrigin::product);
}

AlgebraPtr make_builtin(std::string_view expression) {
  const std::string_view e = trim(expression);
  if (e == "diamond") return std::make_shared<const FiniteAlgebra>(diamond());
  auto call = [&](std::string_view fn) -> std::optional<std::string_view> {
    if (e.size() > fn.size() + 2 && e.substr(0, fn.size()) == fn && e[fn.size()] == '(' &&
        e.back() == ')') {
      return e.substr(fn.size() + 1, e.size() - fn.size() - 2);
    }
    return std::nullopt;
  };
  if (auto arg = call("lukasiewicz")) {
    const std::string digits(trim(*arg));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 4) {
      return nullptr;
    }
    return std::make_shared<const FiniteAlgebra>(lukasiewicz(std::stoi(digits)));
  }
  if (auto arg = call("product")) {
    auto parts = split_pair(*arg);
    if (!parts) return nullptr;
    auto lhs = make_builtin(parts->first);
    auto rhs = make_builtin(parts->second);
    if (!lhs || !rhs) return nullptr;
    return std::make_shared<const FiniteAlgebra>(product(*lhs, *rhs));
  }
  return nullptr;
}

}  // namespace qmvtm
