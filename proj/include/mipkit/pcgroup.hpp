#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace mipkit {

inline constexpr int kMaxGens = 40;

// Exponent vector of a pc normal form g_1^{e_1} ... g_m^{e_m}.
class Elem {
 public:
  Elem() = default;
  explicit Elem(int n) : n_(static_cast<std::uint8_t>(n)) {}
  Elem(int n, std::initializer_list<int> exps);

  int size() const { return n_; }
  std::uint8_t operator[](int i) const { return e_[i]; }
  std::uint8_t& operator[](int i) { return e_[i]; }
  bool is_identity() const;
  // Index of the first nonzero exponent, or size() for the identity.
  int depth() const;
  int leading() const { return depth() < n_ ? e_[depth()] : 0; }
  std::vector<int> exps() const { return {e_.begin(), e_.begin() + n_}; }
  std::string str() const;
  // Prime of the group that produced this element; 0 when built by hand.
  int tag() const { return p_; }
  void set_tag(int p) { p_ = static_cast<std::uint8_t>(p); }

  friend bool operator==(const Elem& a, const Elem& b) { return a.n_ == b.n_ && a.e_ == b.e_; }
  friend auto operator<=>(const Elem& a, const Elem& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.e_ <=> b.e_;
  }

 private:
  std::array<std::uint8_t, kMaxGens> e_{};
  std::uint8_t n_ = 0;
  std::uint8_t p_ = 0;
};

// Finite p-group given by a consistent pc presentation with all relative
// orders p. Cheap to copy: the tables are shared and immutable.
class PcGroup {
 public:
  // comms[j][i] for i < j holds [g_j, g_i]; entries with i >= j are ignored.
  PcGroup(int p, std::vector<Elem> powers, std::vector<std::vector<Elem>> comms);
  static PcGroup trivial(int p);
  // Free abelian relations: elementary abelian of rank m.
  static PcGroup elementary(int p, int m);

  int prime() const;
  int ngens() const;
  // log_p |G|.
  int log_order() const { return ngens(); }
  // |G|, saturating at UINT64_MAX.
  std::uint64_t order() const;
  bool same_as(const PcGroup& o) const { return impl_ == o.impl_; }

  Elem identity() const {
    Elem e(ngens());
    e.set_tag(prime());
    return e;
  }
  Elem gen(int i, int e = 1) const;
  const Elem& power_relation(int i) const;
  const Elem& comm_relation(int j, int i) const;

  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, long long k) const;
  Elem comm(const Elem& a, const Elem& b) const;  // a^-1 b^-1 a b
  Elem conj(const Elem& a, const Elem& b) const;  // b^-1 a b
  // Product of elements of a word given as (generator, exponent) pairs.
  Elem word(const std::vector<std::pair<int, long long>>& letters) const;
  Elem pow_p(const Elem& a) const;
  // log_p of the order of a.
  int order_log(const Elem& a) const;

  // Mixed-radix index, lexicographic in the exponent vector.
  std::uint64_t index(const Elem& a) const;
  Elem element(std::uint64_t idx) const;

  bool is_abelian() const;
  // Throws InconsistentPresentation naming the first failing overlap.
  void check_consistency() const;
  void check_parent(const Elem& a) const;

 private:
  struct Impl;
  explicit PcGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
  friend struct PcGroupBuilder;
};

// Subgroup stored as a canonical induced generating sequence: one generator
// per occupied depth, leading exponent 1, zero exponent at every other
// occupied depth. Equal subgroups have identical sequences.
class Subgroup {
 public:
  explicit Subgroup(const PcGroup& g);  // trivial subgroup
  static Subgroup whole(const PcGroup& g);

  const PcGroup& group() const { return g_; }
  const std::vector<Elem>& gens() const { return igs_; }
  std::vector<int> depths() const;
  int log_order() const { return static_cast<int>(igs_.size()); }
  std::uint64_t order() const;
  bool is_trivial() const { return igs_.empty(); }
  bool is_whole() const { return log_order() == g_.ngens(); }

  // Coset representative of H x chosen canonically (zero at occupied depths).
  Elem sift(const Elem& x) const;
  bool contains(const Elem& x) const { return sift(x).is_identity(); }
  // Exponents of x over the igs (x must lie in the subgroup).
  std::vector<int> coords(const Elem& x) const;
  Elem from_coords(const std::vector<int>& c) const;
  bool contains(const Subgroup& o) const;
  bool is_normal() const;
  bool is_abelian() const;
  // All elements, in igs-coordinate lexicographic order.
  std::vector<Elem> elements() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.g_.same_as(b.g_) && a.igs_ == b.igs_; }

 private:
  PcGroup g_;
  std::vector<Elem> igs_;
  std::vector<int> slot_;  // depth -> igs position or -1
  friend Subgroup make_subgroup(const PcGroup&, std::vector<Elem>);
};

// Smallest subgroup containing gens and closed under conjugation by the
// elements of `normalizers` (pass G's generators for the normal closure).
Subgroup closure(const PcGroup& g, const std::vector<Elem>& gens, const std::vector<Elem>& normalizers = {});
Subgroup normal_closure(const PcGroup& g, const std::vector<Elem>& gens);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
// [A, B] for subgroups normalized by each other; the result is the normal
// closure of the generator commutators inside join(A, B).
Subgroup commutator(const Subgroup& a, const Subgroup& b);
// <x^{p^k} : x in H>.
Subgroup agemo(const Subgroup& h, int k = 1);
// <x in H : x^p = 1>.
Subgroup omega(const Subgroup& h);
Subgroup frattini(const Subgroup& h);
Subgroup centralizer(const Subgroup& h, const Elem& x);
Subgroup centralizer(const Subgroup& h, const Subgroup& s);
Subgroup center(const Subgroup& h);

// gamma_1 = H, ..., ending with the trivial subgroup.
std::vector<Subgroup> lower_central_series(const Subgroup& h);
// Z_0 = 1, Z_1, ..., ending with H (H must be the whole group).
std::vector<Subgroup> upper_central_series(const PcGroup& g);
int nilpotency_class(const Subgroup& h);
// Z(G) and gamma_2(G) intersected.
Subgroup gamma_cap(const PcGroup& g);
// Minimal number of generators: log_p |H : Phi(H)|.
int rank(const Subgroup& h);
int exponent_log(const Subgroup& h);

// Exponents e_1 >= e_2 >= ... with H = sum of C_{p^{e_i}}.
std::vector<int> abelian_invariants(const Subgroup& h);

// A subgroup viewed as a group in its own right.
struct Embedding {
  PcGroup group;
  Subgroup image;
  Elem to_parent(const Elem& x) const;
  Elem from_parent(const Elem& y) const;
};
Embedding as_group(const Subgroup& h);

struct Quotient {
  PcGroup group;
  Subgroup kernel;
  std::vector<int> kept;  // depths of the parent represented by the quotient generators
  Elem project(const Elem& x) const;
  Elem lift(const Elem& y) const;
  Subgroup image(const Subgroup& s) const;
  Subgroup preimage(const Subgroup& s) const;
};
Quotient quotient(const PcGroup& g, const Subgroup& n);

struct ConjugacyClass {
  Elem rep;  // smallest index in the class
  std::uint64_t size;
};
std::vector<ConjugacyClass> conjugacy_classes(const PcGroup& g);

// New presentation on a sequence seq such that each seq[k] is central modulo
// <seq[k+1], ...> with quotient of order p. Element e of the result maps to
// prod seq[k]^{e_k}.
struct Reframed {
  PcGroup group;
  std::vector<Elem> seq;
  Elem to_parent(const Elem& x) const;
  Elem from_parent(const Elem& y) const;
  std::vector<Subgroup> tails;  // tails[k] = <seq[k], ...> in the parent
};
Reframed reframe(const PcGroup& g, const std::vector<Elem>& seq);
// Re-presentation on a random central series.
Reframed random_relabel(const PcGroup& g, std::mt19937_64& rng);

// Element-count bound for enumeration-based algorithms; overridable through
// the MIPKIT_ENUM_BOUND environment variable.
std::uint64_t enumeration_bound();

}  // namespace mipkit
