#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mipkit/pcgroup.hpp"

namespace mipkit {

// Non-abelian, |G : gamma_2| = p^2 and G^p = gamma_3, with p > 3.
bool is_obelisk(const PcGroup& g);
// The same predicate without the restriction on p.
bool obelisk_predicate(const PcGroup& g);

struct RankPatternResult {
  bool pass = true;
  std::vector<int> ranks;             // rank of gamma_i/gamma_{i+1}, i = 1..c
  std::vector<std::string> failures;  // each names the offending index
};
RankPatternResult rank_pattern_check(const PcGroup& g);

// n = a p^l + b with 1 <= a <= p-1 and 0 <= b < p^l.
int m_of_n(long long n, int p);

struct DimensionRow {
  int n = 0;
  int m = 0;
  int d_log_order = 0;      // log |D_n|
  int gamma_log_order = 0;  // log |gamma_{m(n)}|
  bool match = false;
};
std::vector<DimensionRow> dimension_series_check(const PcGroup& g);

struct FramedResult {
  bool by_generators = false;  // every maximal subgroup is 2-generated
  bool by_lie_images = false;  // images of M^p and [M,M] in gamma_3/gamma_4 distinct of order p
  std::vector<int> maximal_generator_counts;
  int exceptional = 0;  // maximal subgroups that are not 2-generated
  bool agree() const { return by_generators == by_lie_images; }
};
// Requires an obelisk of class at least 3.
FramedResult framed_check(const PcGroup& g);
bool is_framed(const PcGroup& g);

struct ObeliskReport {
  bool is_obelisk = false;
  bool predicate = false;  // literal definition, any p
  int cls = 0;
  std::optional<std::string> warning;
  std::optional<RankPatternResult> ranks;
  std::vector<DimensionRow> dimension_rows;
  std::optional<FramedResult> framed;
};
ObeliskReport obelisk_report(const PcGroup& g);

// Random search over weighted presentations of 2-generated groups of order
// p^m (m = 5 or 6) shaped like obelisks; the predicate is the only filter.
std::vector<PcGroup> search_obelisks(int p, int log_order, int attempts, std::uint64_t seed, bool want_framed,
                                     int max_results = 1);

}  // namespace mipkit
