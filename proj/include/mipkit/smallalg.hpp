#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mipkit/algebra.hpp"
#include "mipkit/pcgroup.hpp"

namespace mipkit {

// gamma_2(G)^p gamma_4(G) = 1
bool small_algebra_applicable(const PcGroup& g);
void require_small_algebra(const PcGroup& g);

// Pc generators of G whose images give a direct-sum decomposition of G^ab,
// falling back to a greedy search when the pc generators do not.
std::vector<Elem> default_abelian_basis(const PcGroup& g);
// log_p of the orders of the x_i modulo gamma_2; throws when x is not a
// direct-sum basis of G^ab.
std::vector<int> abelian_basis_exponents(const PcGroup& g, const std::vector<Elem>& x);

using Delta = std::vector<int>;
std::vector<Delta> delta_index_set(const PcGroup& g, const std::vector<Elem>& x);
std::string delta_str(const Delta& d);

struct AGenerator {
  Delta delta;
  std::vector<Elem> action;   // [x_j, a] for each j
  std::vector<int> coords;    // action over an F_p basis of gamma_3, concatenated
  bool is_central() const;
};
AGenerator a_generator(const PcGroup& g, const std::vector<Elem>& x, const Delta& delta);
// Maximal subset with independent action vectors, scanned in input order.
std::vector<AGenerator> reduce_a_modulo_center(std::vector<AGenerator> gens);

// Element g * a of S = G x| A, with a given over the reduced A-generators.
struct SUnit {
  Elem g;
  std::vector<int> avec;
  friend bool operator==(const SUnit&, const SUnit&) = default;
};

// S modulo A ∩ Z(S), with an explicit pc presentation whose first
// generators are the reduced A-generators.
class SmallAlgebraModel {
 public:
  explicit SmallAlgebraModel(const PcGroup& g, std::vector<Elem> x = {});

  const PcGroup& group() const { return g_; }
  const std::vector<Elem>& x() const { return x_; }
  const std::vector<int>& lambda() const { return lambda_; }
  const std::vector<AGenerator>& generators() const { return all_; }
  const std::vector<AGenerator>& reduced() const { return reduced_; }
  int a_rank() const { return static_cast<int>(reduced_.size()); }

  // phi_u(g) = [g, a_u], an element of gamma_3(G).
  Elem action(const std::vector<int>& u, const Elem& g) const;
  SUnit unit(const Elem& g) const;
  // 1 + x-bar^delta modulo A ∩ Z(S).
  SUnit a_unit(const Delta& delta) const;
  SUnit mul(const SUnit& u, const SUnit& v) const;
  SUnit inv(const SUnit& u) const;
  SUnit pow(const SUnit& u, long long k) const;
  SUnit comm(const SUnit& u, const SUnit& v) const;
  std::string str(const SUnit& u) const;

  const PcGroup& s_group() const { return s_; }
  Elem to_s(const SUnit& u) const;
  SUnit from_s(const Elem& e) const;
  Subgroup g_in_s() const;
  Subgroup a_in_s() const;
  Subgroup embed(const Subgroup& h) const;

 private:
  std::vector<int> abelian_coords(const Elem& g) const;

  PcGroup g_;
  std::vector<Elem> x_;
  std::vector<int> lambda_;
  Subgroup gamma3_;
  std::vector<AGenerator> all_;
  std::vector<AGenerator> reduced_;
  std::map<Delta, std::vector<int>> delta_to_avec_;
  Quotient ab_;
  std::vector<std::vector<int>> ab_table_;  // G^ab index -> coordinates over x
  Reframed frame_;
  PcGroup s_;
};

struct ReportClause {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct StructureReport {
  std::vector<ReportClause> clauses;
  bool all_pass() const;
};
// Clauses are listed by content. When brute is set and |G| is within the
// brute bound, the model is cross-checked in kG/I(kG)I(k gamma_2).
StructureReport structure_report(const SmallAlgebraModel& m, bool brute = true, int random_pairs = 200,
                                 std::uint64_t seed = 1);

// kG/I(kG)I(k gamma_2(G)), elements reduced to canonical representatives.
class BruteSmallAlgebra {
 public:
  explicit BruteSmallAlgebra(const PcGroup& g);

  const GroupAlgebra& algebra() const { return a_; }
  std::size_t dim() const { return a_.dim() - ideal_.dim(); }
  AlgebraElement reduce(const AlgebraElement& x) const { return ideal_.basis.reduce(x); }
  AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement power(const AlgebraElement& x, long long k) const;
  // Inverse of a unit of augmentation 1 by the geometric series.
  AlgebraElement inverse(const AlgebraElement& u) const;
  AlgebraElement element(const Elem& g) const { return reduce(a_.basis(g)); }
  // 1 + prod (x_i - 1)^{delta_i}
  AlgebraElement a_element(const std::vector<Elem>& x, const Delta& delta) const;
  // g * prod a_k^{e_k} over the reduced generators of m, exponents taken literally.
  AlgebraElement embed(const SmallAlgebraModel& m, const Elem& g, const std::vector<int>& e) const;

 private:
  GroupAlgebra a_;
  IdealBasis ideal_;
};

struct WitnessLetter {
  bool is_a = false;
  int gen = 0;  // 1-based generator of G
  Delta delta;
  long long exp = 1;
};
using WitnessWord = std::vector<WitnessLetter>;
struct Witness {
  std::map<int, WitnessWord> images;  // 1-based generator of H -> word
};
Witness parse_witness(const std::string& text);

enum class WitnessVerdict { pass, fail, unknown };
std::string to_string(WitnessVerdict v);

struct RelationCheck {
  std::string relation;
  std::string lhs;
  std::string rhs;
  bool ok = false;
};

struct WitnessReport {
  WitnessVerdict verdict = WitnessVerdict::unknown;
  std::vector<std::string> images;
  std::vector<RelationCheck> relations;
  int image_log_order = 0;
  int expected_log_order = 0;
  bool meets_a_trivially = false;
  std::optional<bool> spans_small_algebra;  // checked below the brute bound only
  std::string reason;
};
WitnessReport verify_witness(const PcGroup& g, const PcGroup& h, const Witness& w);

}  // namespace mipkit
