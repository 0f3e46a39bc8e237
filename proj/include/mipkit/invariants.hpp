#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mipkit/iso.hpp"
#include "mipkit/jennings.hpp"
#include "mipkit/pcgroup.hpp"

namespace mipkit {

using Json = nlohmann::ordered_json;

// Fingerprint fields plus Jennings dimensions, as stable JSON.
Json fingerprint_json(const PcGroup& g);
Json signature_json(const JenLieAlgebra::Signature& s);

// G / gamma_2^p gamma_3.
Quotient sandling_quotient(const PcGroup& g);
// G / gamma_2^p gamma_4; requires at most 2 generators.
Quotient two_gen_quotient(const PcGroup& g);

struct BaginskiCentralizer {
  Subgroup centralizer;  // C_G(gamma_2 / Phi(gamma_2))
  bool abelian = false;
  std::vector<int> type;  // abelian invariants when abelian
};
// Empty unless G / C is cyclic.
std::optional<BaginskiCentralizer> baginski_centralizer(const PcGroup& g);

// Requires class 3, gamma_2 elementary abelian and |G:Phi(G)| = |G:Z_2(G)| = p^3.
Subgroup compute_K_G(const PcGroup& g);

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::vector<std::string> failed;  // conditions that do not hold
  Json details = Json::object();    // presentation-independent witnessing data
};
// gamma_2^p gamma_3 = 1: the group is its own Sandling quotient.
HypothesisCheck sandling_check(const PcGroup& g);
// p odd, gamma_2^p gamma_4 = 1, C_G(gamma_2) maximal and abelian.
HypothesisCheck maximal_abelian_centralizer_check(const PcGroup& g);
// p odd, gamma_2^p gamma_4 = 1, |G:Phi| = |G:Z_2| = p^3 and, in class 3,
// [[K_G,G],G] inside [K_G,gamma_2].
HypothesisCheck k_g_check(const PcGroup& g);
// Consequences of the previous check: the |gamma_2:Gamma| = p^3 or
// |gamma_3| = p case, and the orders p^6 and p^7.
std::vector<HypothesisCheck> corollary_checks(const PcGroup& g);
Json mip_status(const PcGroup& g);

struct LowerCentralTerm {
  int i = 0;
  bool abelian = false;
  std::vector<int> type;
  Json fingerprint;  // when non-abelian
};
struct LowerCentralTypes {
  bool applicable = false;  // p odd, 2-generated, gamma_3 central of exponent p
  int cls = 0;
  std::vector<LowerCentralTerm> terms;  // i >= 2 until trivial
};
LowerCentralTypes lower_central_types(const PcGroup& g);
// Defined only when the hypotheses hold.
std::optional<LowerCentralTypes> lower_central_invariant(const PcGroup& g);

// Sum over conjugacy classes of log_p |C_G(g) : Phi(C_G(g))|.
long long roggenkamp(const PcGroup& g);

struct TruncatedFingerprint {
  int m = 0;
  std::vector<int> dims;  // dim I^i / I^{i+1}, i = 1 .. m-1
  JenLieAlgebra::Signature jen;  // degrees below m
};
// Necessary condition only: equal values do not make the truncated
// augmentation ideals isomorphic.
TruncatedFingerprint truncated_fingerprint(const PcGroup& g, int m);

struct BatteryOptions {
  int truncation = 4;
};

struct InvariantReport {
  int prime = 0;
  Json json;
  std::optional<PcGroup> sandling;
  std::optional<PcGroup> two_gen;
  std::optional<PcGroup> baginski;
};
InvariantReport battery(const PcGroup& g, const BatteryOptions& opts = {});

enum class CompareVerdict { distinguished, indistinguishable, inconclusive };
std::string to_string(CompareVerdict v);

struct FieldComparison {
  std::string field;
  std::string outcome;  // equal, distinguished, unknown, unavailable, uncertified, not-applicable
  std::string detail;
};
struct CompareResult {
  CompareVerdict verdict = CompareVerdict::indistinguishable;
  std::vector<FieldComparison> fields;
  Json to_json() const;
};
// Only certified fields can separate; iso_search runs on non-abelian
// quotients whose fingerprints agree.
CompareResult compare(const InvariantReport& a, const InvariantReport& b, std::uint64_t iso_budget = 200000);

}  // namespace mipkit
