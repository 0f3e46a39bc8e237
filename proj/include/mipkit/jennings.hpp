#pragma once

#include <vector>

#include "mipkit/algebra.hpp"
#include "mipkit/pcgroup.hpp"

namespace mipkit {

enum class DimMethod { jennings, brute, product };

// D_1, D_2, ..., ending with the first trivial term.
std::vector<Subgroup> dimension_series(const PcGroup& g, DimMethod method = DimMethod::jennings);
Subgroup dimension_subgroup(const PcGroup& g, int n, DimMethod method = DimMethod::jennings);
// Largest w with x in D_w; 0 for the identity (weight infinite).
int group_weight(const std::vector<Subgroup>& series, const Elem& x);

struct JenningsData {
  PcGroup group;
  std::vector<Subgroup> series;  // D_1, ..., D_{t+1} = 1
  std::vector<int> dims;         // d_1, ..., d_t
  std::vector<Elem> tuple;
  std::vector<int> weights;      // weight of each tuple entry
  Reframed frame;                // G presented on the tuple

  int t() const { return static_cast<int>(dims.size()); }
  int weight_of(const Elem& x) const { return group_weight(series, x); }
};

// Blocks prefer p-th powers of earlier entries, then canonical
// representatives of D_n modulo D_{n+1}.
JenningsData jennings(const PcGroup& g);

struct JenningsMonomial {
  std::vector<int> alpha;
  int weight = 0;
};
// All p^m - 1 nonzero exponent vectors with their weights, lexicographic.
std::vector<JenningsMonomial> jennings_monomials(const JenningsData& j);
// prod (t_i - 1)^{alpha_i} as an element of kG.
AlgebraElement monomial_element(const GroupAlgebra& a, const JenningsData& j, const std::vector<int>& alpha);
// Whether (x - 1) is a factor of the monomial: some x^{p^k} equals a tuple
// entry t_i with alpha_i != 0.
bool is_factor(const JenningsData& j, const Elem& x, const std::vector<int>& alpha);
// Number of monomials of each weight 1..max.
std::vector<int> monomial_weight_counts(const JenningsData& j);

// Coordinates of an algebra element in the Jennings basis (including the
// coefficient of 1 at alpha = 0), keyed by frame index.
class JenningsCoordinates {
 public:
  JenningsCoordinates(const GroupAlgebra& a, const JenningsData& j);
  std::vector<int> coords(const AlgebraElement& x) const;
  // Largest n with x in I^n; 0 if the augmentation is nonzero, -1 for x = 0.
  int weight(const AlgebraElement& x) const;

 private:
  int p_;
  int m_;
  std::vector<std::uint32_t> to_frame_;  // group index -> frame index
  std::vector<int> frame_weight_;        // frame index -> monomial weight
};

// Restricted Lie algebra Jen(G) = sum D_n/D_{n+1} in the basis given by the
// tuple. Coordinates of degree-n vectors are over block n.
class JenLieAlgebra {
 public:
  explicit JenLieAlgebra(const JenningsData& j);

  int prime() const { return p_; }
  int top_degree() const { return static_cast<int>(dims_.size()); }
  int dim(int n) const { return n >= 1 && n <= top_degree() ? dims_[n - 1] : 0; }
  int degree_of(int basis_index) const { return degree_[basis_index]; }
  // Offset of block n within the tuple.
  int offset(int n) const { return offset_[n - 1]; }

  // Bracket of tuple entries i, j: coordinates in degree deg(i)+deg(j).
  std::vector<int> bracket(int i, int j) const;
  // Bracket of homogeneous vectors (degrees a and b).
  std::vector<int> bracket(int a, const std::vector<int>& x, int b, const std::vector<int>& y) const;
  // p-map of a homogeneous vector of degree n: coordinates in degree p*n.
  std::vector<int> pmap(int n, const std::vector<int>& x) const;

  // Presentation-independent summary of the algebra.
  struct Signature {
    std::vector<int> dims;
    std::vector<std::vector<int>> bracket_ranks;  // [a][b] = dim [L_a, L_b], a <= b
    std::vector<int> center_dims;                 // per degree
    std::vector<std::uint64_t> pmap_kernel;       // per degree: #{x : x^[p] = 0}
    std::vector<int> pmap_image_rank;             // per degree: dim span of image
    std::vector<int> derived_dims;                // dims of [L, L] per degree
    friend bool operator==(const Signature&, const Signature&) = default;
  };
  Signature signature(int max_degree = 0) const;

 private:
  Elem vector_element(int n, const std::vector<int>& x) const;
  std::vector<int> block_coords(int n, const Elem& y) const;

  int p_;
  PcGroup g_;
  Reframed frame_;
  std::vector<int> dims_;
  std::vector<int> offset_;
  std::vector<int> degree_;
  std::vector<Elem> tuple_;
  std::vector<std::vector<std::vector<int>>> bracket_;  // [i][j]
};

}  // namespace mipkit
