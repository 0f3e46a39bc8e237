#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mipkit/fp.hpp"
#include "mipkit/pcgroup.hpp"

namespace mipkit {

// Element of kG over F_p: sparse coefficients indexed by PcGroup::index.
using AlgebraElement = fp::SparseVec;

// Largest |G| for explicit group-algebra computations; default 729,
// overridable through MIPKIT_RESOURCE_BOUND. A dense pass over kG at
// |G| = 5^6 needs roughly |G|^2 bytes of scratch during echelonization.
std::uint64_t brute_bound();

class GroupAlgebra {
 public:
  explicit GroupAlgebra(const PcGroup& g);

  const PcGroup& group() const { return g_; }
  int prime() const { return g_.prime(); }
  std::uint32_t dim() const { return n_; }

  std::uint32_t index(const Elem& x) const { return static_cast<std::uint32_t>(g_.index(x)); }
  std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const;

  AlgebraElement one() const { return AlgebraElement::unit(0); }
  AlgebraElement basis(const Elem& x) const { return AlgebraElement::unit(index(x)); }
  // x - 1
  AlgebraElement bar(const Elem& x) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const { return a.add(b, prime()); }
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const { return a.add(b, prime(), -1); }
  AlgebraElement scale(const AlgebraElement& a, int c) const { return a.scaled(c, prime()); }
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  // a * x for a group element x (a permutation of the support).
  AlgebraElement mul_right(const AlgebraElement& a, const Elem& x) const;
  AlgebraElement mul_left(const Elem& x, const AlgebraElement& a) const;
  int augmentation(const AlgebraElement& a) const;
  AlgebraElement lie_bracket(const AlgebraElement& a, const AlgebraElement& b) const;

 private:
  void check(const AlgebraElement& a) const;

  PcGroup g_;
  std::uint32_t n_;
  std::vector<std::uint32_t> table_;  // full multiplication table for small groups
};

// Subspace of kG kept in semi-echelon form.
struct IdealBasis {
  fp::EchelonBasis basis;
  int weight_floor = 0;  // n when the ideal is I(kG)^n, 0 otherwise
  std::string tag;
  std::size_t dim() const { return basis.rank(); }
  bool contains(const AlgebraElement& x) const { return basis.contains(x); }
};

IdealBasis ideal_power_basis(const GroupAlgebra& a, int n);
// I^1, I^2, ..., ending with the first zero power.
std::vector<IdealBasis> ideal_power_series(const GroupAlgebra& a);
// Largest n with x in I^n; -1 encodes infinity (x = 0).
int brute_weight(const std::vector<IdealBasis>& powers, const AlgebraElement& x);
// The ideal kG * I(kN).
IdealBasis relative_augmentation_ideal(const GroupAlgebra& a, const Subgroup& n);
// I(kG) * I(kN) for a normal subgroup N.
IdealBasis augmentation_product_ideal(const GroupAlgebra& a, const Subgroup& n);
// Span of conjugacy class sums.
IdealBasis center_basis(const GroupAlgebra& a);
// D_n-part plus I^{n+1}; powers must contain I^{n+1} (or end earlier).
IdealBasis zassenhaus_ideal(const GroupAlgebra& a, const std::vector<IdealBasis>& powers, const Subgroup& dn, int n);

}  // namespace mipkit
