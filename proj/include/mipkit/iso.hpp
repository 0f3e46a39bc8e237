#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mipkit/pcgroup.hpp"

namespace mipkit {

// Cheap isomorphism invariants of a group. Equal fingerprints do not imply
// isomorphism.
struct GroupFingerprint {
  int log_order = 0;
  int nilpotency_class = 0;
  std::vector<int> lower_central_ranks;  // log_p |gamma_i : gamma_{i+1}|
  std::vector<int> upper_central_ranks;  // log_p |Z_{i+1} : Z_i|
  std::vector<int> abelianization;       // abelian invariants of G/gamma_2
  int rank = 0;                          // log_p |G : Phi(G)|
  int center_log_order = 0;
  int exponent_log = 0;
  std::vector<std::uint64_t> order_histogram;  // entry k counts elements of order p^k
  std::uint64_t class_count = 0;

  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};

GroupFingerprint fingerprint(const PcGroup& g);
// Name of the first differing fingerprint field, empty when equal.
std::string fingerprint_difference(const GroupFingerprint& a, const GroupFingerprint& b);

enum class IsoVerdict { isomorphic, non_isomorphic, unknown };
std::string to_string(IsoVerdict v);

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::unknown;
  std::vector<Elem> images;  // images of the pc generators of G in H
  std::string reason;
  std::uint64_t nodes = 0;
};

// Backtracking search for an isomorphism G -> H. Any returned map has been
// checked on every defining relation of G.
// With prefilter off the fingerprint comparison is skipped and a negative
// answer comes from exhausting the search tree.
IsoResult iso_search(const PcGroup& g, const PcGroup& h, std::uint64_t budget = 200000, bool prefilter = true);

// Checks that the images define a homomorphism G -> H onto H.
bool verify_isomorphism(const PcGroup& g, const PcGroup& h, const std::vector<Elem>& images);

}  // namespace mipkit
