#include "mipkit/algebra.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>

#include "mipkit/error.hpp"

namespace mipkit {

std::uint64_t brute_bound() {
  if (const char* s = std::getenv("MIPKIT_RESOURCE_BOUND")) return std::min<std::uint64_t>(std::stoull(s), 15625);
  return 729;
}

GroupAlgebra::GroupAlgebra(const PcGroup& g) : g_(g), n_(0) {
  if (g.order() > brute_bound())
    throw ResourceError(fmt::format("group algebra of dimension {} exceeds the bound {} (set MIPKIT_RESOURCE_BOUND)", g.order(), brute_bound()));
  n_ = static_cast<std::uint32_t>(g.order());
  if (n_ <= 1024) {
    std::vector<Elem> els(n_);
    for (std::uint32_t i = 0; i < n_; ++i) els[i] = g.element(i);
    table_.resize(static_cast<std::size_t>(n_) * n_);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j) table_[static_cast<std::size_t>(i) * n_ + j] = index(g.mul(els[i], els[j]));
  }
}

std::uint32_t GroupAlgebra::mul_index(std::uint32_t a, std::uint32_t b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
  return index(g_.mul(g_.element(a), g_.element(b)));
}

void GroupAlgebra::check(const AlgebraElement& a) const {
  if (!a.empty() && a.entries().back().first >= n_) throw UsageError("algebra element belongs to a different group algebra");
}

AlgebraElement GroupAlgebra::bar(const Elem& x) const {
  std::uint32_t i = index(x);
  if (i == 0) return {};
  return AlgebraElement({{0, static_cast<std::uint8_t>(prime() - 1)}, {i, 1}});
}

AlgebraElement GroupAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  check(a);
  check(b);
  const int p = prime();
  std::vector<int> acc(n_, 0);
  std::vector<std::uint32_t> touched;
  for (const auto& [i, ca] : a.entries())
    for (const auto& [j, cb] : b.entries()) {
      std::uint32_t k = mul_index(i, j);
      touched.push_back(k);
      acc[k] = (acc[k] + ca * cb) % p;
    }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  std::vector<AlgebraElement::Entry> out;
  for (auto k : touched)
    if (acc[k] % p) out.emplace_back(k, static_cast<std::uint8_t>(acc[k] % p));
  return AlgebraElement(std::move(out));
}

AlgebraElement GroupAlgebra::mul_right(const AlgebraElement& a, const Elem& x) const {
  check(a);
  std::uint32_t xi = index(x);
  std::vector<AlgebraElement::Entry> out;
  out.reserve(a.size());
  for (const auto& [i, c] : a.entries()) out.emplace_back(mul_index(i, xi), c);
  std::sort(out.begin(), out.end());
  return AlgebraElement(std::move(out));
}

AlgebraElement GroupAlgebra::mul_left(const Elem& x, const AlgebraElement& a) const {
  check(a);
  std::uint32_t xi = index(x);
  std::vector<AlgebraElement::Entry> out;
  out.reserve(a.size());
  for (const auto& [i, c] : a.entries()) out.emplace_back(mul_index(xi, i), c);
  std::sort(out.begin(), out.end());
  return AlgebraElement(std::move(out));
}

int GroupAlgebra::augmentation(const AlgebraElement& a) const {
  check(a);
  int s = 0;
  for (const auto& e : a.entries()) s = (s + e.second) % prime();
  return s;
}

AlgebraElement GroupAlgebra::lie_bracket(const AlgebraElement& a, const AlgebraElement& b) const {
  return sub(mul(a, b), mul(b, a));
}

namespace {

IdealBasis empty_ideal(const GroupAlgebra& a, std::string tag) {
  return IdealBasis{fp::EchelonBasis(a.prime(), a.dim()), 0, std::move(tag)};
}

}  // namespace

std::vector<IdealBasis> ideal_power_series(const GroupAlgebra& a) {
  const PcGroup& g = a.group();
  std::vector<IdealBasis> out;
  IdealBasis cur = empty_ideal(a, "I^1");
  cur.weight_floor = 1;
  for (std::uint32_t i = 1; i < a.dim(); ++i) cur.basis.insert(a.bar(g.element(i)));
  out.push_back(std::move(cur));
  std::vector<Elem> gens;
  for (int i = 0; i < g.ngens(); ++i) gens.push_back(g.gen(i));
  while (out.back().dim() > 0) {
    int n = static_cast<int>(out.size()) + 1;
    IdealBasis next = empty_ideal(a, fmt::format("I^{}", n));
    next.weight_floor = n;
    // I^n = sum over generators x of I^{n-1} * (x - 1).
    for (const auto& r : out.back().basis.rows())
      for (const auto& x : gens) next.basis.insert(a.sub(a.mul_right(r, x), r));
    out.push_back(std::move(next));
  }
  return out;
}

IdealBasis ideal_power_basis(const GroupAlgebra& a, int n) {
  if (n < 1) throw UsageError("ideal_power_basis: n must be positive");
  auto s = ideal_power_series(a);
  if (n <= static_cast<int>(s.size())) return s[n - 1];
  IdealBasis z = empty_ideal(a, fmt::format("I^{}", n));
  z.weight_floor = n;
  return z;
}

int brute_weight(const std::vector<IdealBasis>& powers, const AlgebraElement& x) {
  if (x.empty()) return -1;
  int w = 0;
  while (w < static_cast<int>(powers.size()) && powers[w].contains(x)) ++w;
  return w;
}

IdealBasis relative_augmentation_ideal(const GroupAlgebra& a, const Subgroup& n) {
  if (!n.is_normal()) throw PreconditionError("relative_augmentation_ideal: subgroup is not normal");
  const PcGroup& g = a.group();
  IdealBasis out = empty_ideal(a, "kG I(kN)");
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    Elem x = g.element(i);
    for (const auto& y : n.gens()) out.basis.insert(a.mul_left(x, a.bar(y)));
  }
  return out;
}

IdealBasis augmentation_product_ideal(const GroupAlgebra& a, const Subgroup& n) {
  if (!n.is_normal()) throw PreconditionError("augmentation_product_ideal: subgroup is not normal");
  const PcGroup& g = a.group();
  IdealBasis out = empty_ideal(a, "I(kG) I(kN)");
  for (std::uint32_t i = 1; i < a.dim(); ++i) {
    AlgebraElement gb = a.bar(g.element(i));
    for (const auto& y : n.gens()) out.basis.insert(a.sub(a.mul_right(gb, y), gb));
  }
  return out;
}

IdealBasis center_basis(const GroupAlgebra& a) {
  const PcGroup& g = a.group();
  IdealBasis out = empty_ideal(a, "Z(kG)");
  std::vector<bool> seen(a.dim(), false);
  for (const auto& c : conjugacy_classes(g)) {
    std::vector<Elem> orbit{c.rep};
    seen[a.index(c.rep)] = true;
    for (std::size_t at = 0; at < orbit.size(); ++at)
      for (int k = 0; k < g.ngens(); ++k) {
        Elem y = g.conj(orbit[at], g.gen(k));
        if (!seen[a.index(y)]) {
          seen[a.index(y)] = true;
          orbit.push_back(y);
        }
      }
    std::vector<AlgebraElement::Entry> sum;
    for (const auto& y : orbit) sum.emplace_back(a.index(y), 1);
    std::sort(sum.begin(), sum.end());
    out.basis.insert(AlgebraElement(std::move(sum)));
  }
  return out;
}

IdealBasis zassenhaus_ideal(const GroupAlgebra& a, const std::vector<IdealBasis>& powers, const Subgroup& dn, int n) {
  IdealBasis out = empty_ideal(a, fmt::format("H_{}", n));
  if (n < static_cast<int>(powers.size()))
    for (const auto& r : powers[n].basis.rows()) out.basis.insert(r);
  for (const auto& y : dn.gens()) out.basis.insert(a.bar(y));
  return out;
}

}  // namespace mipkit
