#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mipkit/pcgroup.hpp"

namespace mipkit {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Presentation {
  PcGroup group;
  Metadata meta;  // from `#@ key: value` comment lines
  std::string meta_value(const std::string& key) const;
};

// Line-oriented format:
//   p <prime>
//   gens <m>
//   pow g<i> = <word>
//   comm g<j> g<i> = <word>      (j > i)
// where <word> is `1` or g<k>^<e> tokens with increasing k > max(i, j) and
// 1 <= e < p. Omitted relations are trivial. `#` starts a comment.
Presentation parse_presentation(std::string_view text);
std::string serialize_presentation(const PcGroup& g, const Metadata& meta = {});

}  // namespace mipkit
