#include "mipkit/iso.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"

namespace mipkit {

GroupFingerprint fingerprint(const PcGroup& g) {
  GroupFingerprint f;
  Subgroup w = Subgroup::whole(g);
  f.log_order = g.log_order();
  auto lcs = lower_central_series(w);
  f.nilpotency_class = static_cast<int>(lcs.size()) - 1;
  for (std::size_t i = 0; i + 1 < lcs.size(); ++i) f.lower_central_ranks.push_back(lcs[i].log_order() - lcs[i + 1].log_order());
  auto ucs = upper_central_series(g);
  for (std::size_t i = 0; i + 1 < ucs.size(); ++i) f.upper_central_ranks.push_back(ucs[i + 1].log_order() - ucs[i].log_order());
  f.center_log_order = ucs.size() > 1 ? ucs[1].log_order() : 0;
  if (lcs.size() > 1) {
    Quotient q = quotient(g, lcs[1]);
    f.abelianization = abelian_invariants(Subgroup::whole(q.group));
  }
  f.rank = rank(w);
  f.order_histogram.assign(1, 0);
  for (std::uint64_t i = 0; i < g.order(); ++i) {
    if (g.order() > enumeration_bound()) throw ResourceError("fingerprint: group exceeds enumeration bound");
    int k = g.order_log(g.element(i));
    if (static_cast<int>(f.order_histogram.size()) <= k) f.order_histogram.resize(k + 1, 0);
    ++f.order_histogram[k];
  }
  f.exponent_log = static_cast<int>(f.order_histogram.size()) - 1;
  f.class_count = conjugacy_classes(g).size();
  return f;
}

std::string fingerprint_difference(const GroupFingerprint& a, const GroupFingerprint& b) {
  if (a.log_order != b.log_order) return "order";
  if (a.nilpotency_class != b.nilpotency_class) return "nilpotency class";
  if (a.lower_central_ranks != b.lower_central_ranks) return "lower central ranks";
  if (a.upper_central_ranks != b.upper_central_ranks) return "upper central ranks";
  if (a.abelianization != b.abelianization) return "abelianization";
  if (a.rank != b.rank) return "rank";
  if (a.center_log_order != b.center_log_order) return "center order";
  if (a.exponent_log != b.exponent_log) return "exponent";
  if (a.order_histogram != b.order_histogram) return "element order histogram";
  if (a.class_count != b.class_count) return "number of conjugacy classes";
  return {};
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::isomorphic:
      return "isomorphic";
    case IsoVerdict::non_isomorphic:
      return "non-isomorphic";
    case IsoVerdict::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

Elem eval_word(const PcGroup& h, const std::vector<Elem>& img, const Elem& w) {
  Elem x = h.identity();
  for (int k = 0; k < w.size(); ++k)
    if (w[k]) x = h.mul(x, h.pow(img[k], w[k]));
  return x;
}

// Per-element data that any isomorphism preserves.
struct ElementData {
  std::vector<int> order_log;
  std::vector<int> lcs_depth;
  std::vector<int> ucs_depth;
  std::vector<std::uint64_t> class_size;
  std::vector<bool> in_frattini;

  explicit ElementData(const PcGroup& g) {
    const std::uint64_t n = g.order();
    if (n > enumeration_bound()) throw ResourceError("iso_search: group exceeds enumeration bound");
    Subgroup w = Subgroup::whole(g);
    auto lcs = lower_central_series(w);
    auto ucs = upper_central_series(g);
    Subgroup phi = frattini(w);
    order_log.resize(n);
    lcs_depth.resize(n);
    ucs_depth.resize(n);
    class_size.resize(n);
    in_frattini.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      Elem x = g.element(i);
      order_log[i] = g.order_log(x);
      int d = 0;
      while (d + 1 < static_cast<int>(lcs.size()) && lcs[d + 1].contains(x)) ++d;
      lcs_depth[i] = d;
      int u = 0;
      while (!ucs[u].contains(x)) ++u;
      ucs_depth[i] = u;
      in_frattini[i] = phi.contains(x);
    }
    for (const auto& c : conjugacy_classes(g)) class_size[g.index(c.rep)] = c.size;
    // propagate class sizes to all members
    std::vector<bool> seen(n, false);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (seen[i] || class_size[i] == 0) continue;
      std::vector<Elem> orbit{g.element(i)};
      seen[i] = true;
      for (std::size_t at = 0; at < orbit.size(); ++at)
        for (int k = 0; k < g.ngens(); ++k) {
          Elem c = g.conj(orbit[at], g.gen(k));
          auto ci = g.index(c);
          if (!seen[ci]) {
            seen[ci] = true;
            class_size[ci] = class_size[i];
            orbit.push_back(c);
          }
        }
    }
  }

  auto key(std::uint64_t i) const {
    return std::make_tuple(order_log[i], lcs_depth[i], ucs_depth[i], class_size[i], static_cast<bool>(in_frattini[i]));
  }
};

}  // namespace

bool verify_isomorphism(const PcGroup& g, const PcGroup& h, const std::vector<Elem>& img) {
  if (static_cast<int>(img.size()) != g.ngens() || g.order() != h.order()) return false;
  for (int i = 0; i < g.ngens(); ++i) {
    if (h.pow_p(img[i]) != eval_word(h, img, g.power_relation(i))) return false;
    for (int k = 0; k < i; ++k)
      if (h.comm(img[i], img[k]) != eval_word(h, img, g.comm_relation(i, k))) return false;
  }
  return closure(h, img).is_whole();
}

IsoResult iso_search(const PcGroup& g, const PcGroup& h, std::uint64_t budget, bool prefilter) {
  if (g.prime() != h.prime() || g.order() != h.order()) throw PreconditionError("iso_search: groups of different order");
  IsoResult res;
  std::string diff = prefilter ? fingerprint_difference(fingerprint(g), fingerprint(h)) : std::string();
  if (!diff.empty()) {
    res.verdict = IsoVerdict::non_isomorphic;
    res.reason = diff + " differs";
    return res;
  }
  if (g.ngens() == 0) {
    res.verdict = IsoVerdict::isomorphic;
    return res;
  }
  Subgroup gphi = frattini(Subgroup::whole(g));
  auto phi_depths = gphi.depths();
  std::vector<int> ygen;
  for (int i = 0; i < g.ngens(); ++i)
    if (std::find(phi_depths.begin(), phi_depths.end(), i) == phi_depths.end()) ygen.push_back(i);
  const int d = static_cast<int>(ygen.size());

  // Straight-line words for every pc generator of G over the Burnside basis.
  const std::uint64_t n = g.order();
  std::vector<std::int64_t> parent(n, -2);
  std::vector<int> via(n, -1);
  std::vector<std::uint64_t> queue{g.index(g.identity())};
  parent[queue[0]] = -1;
  for (std::size_t at = 0; at < queue.size(); ++at) {
    Elem x = g.element(queue[at]);
    for (int t = 0; t < d; ++t) {
      auto yi = g.index(g.mul(x, g.gen(ygen[t])));
      if (parent[yi] == -2) {
        parent[yi] = static_cast<std::int64_t>(queue[at]);
        via[yi] = t;
        queue.push_back(yi);
      }
    }
  }
  std::vector<std::vector<int>> words(g.ngens());
  for (int i = 0; i < g.ngens(); ++i) {
    for (std::int64_t at = static_cast<std::int64_t>(g.index(g.gen(i))); parent[at] != -1; at = parent[at])
      words[i].push_back(via[at]);
    std::reverse(words[i].begin(), words[i].end());
  }

  ElementData gd(g), hd(h);
  Quotient hq = quotient(h, frattini(Subgroup::whole(h)));
  std::vector<std::vector<std::uint64_t>> cand(d);
  for (int t = 0; t < d; ++t) {
    auto key = gd.key(g.index(g.gen(ygen[t])));
    for (std::uint64_t i = 0; i < h.order(); ++i)
      if (hd.key(i) == key) cand[t].push_back(i);
  }

  std::vector<std::uint64_t> choice(d);
  std::vector<std::vector<int>> frat_coords;
  bool found = false;
  bool exhausted_budget = false;
  std::function<void(int)> dfs = [&](int t) {
    if (found || exhausted_budget) return;
    if (t == d) {
      std::vector<Elem> yimg(d);
      for (int s = 0; s < d; ++s) yimg[s] = h.element(choice[s]);
      std::vector<Elem> img(g.ngens());
      for (int i = 0; i < g.ngens(); ++i) {
        Elem x = h.identity();
        for (int s : words[i]) x = h.mul(x, yimg[s]);
        img[i] = x;
      }
      if (verify_isomorphism(g, h, img)) {
        found = true;
        res.images = img;
      }
      return;
    }
    Elem yt = g.gen(ygen[t]);
    for (auto c : cand[t]) {
      if (++res.nodes > budget) {
        exhausted_budget = true;
        return;
      }
      Elem ht = h.element(c);
      bool ok = true;
      for (int s = 0; s < t && ok; ++s) {
        Elem ys = g.gen(ygen[s]);
        Elem hs = h.element(choice[s]);
        ok = g.order_log(g.mul(ys, yt)) == h.order_log(h.mul(hs, ht)) &&
             gd.key(g.index(g.comm(yt, ys))) == hd.key(h.index(h.comm(ht, hs))) &&
             gd.key(g.index(g.mul(ys, yt))) == hd.key(h.index(h.mul(hs, ht)));
      }
      if (!ok) continue;
      auto v = hq.project(ht).exps();
      frat_coords.push_back(v);
      if (fp::rank_of(frat_coords, h.prime()) == t + 1) {
        choice[t] = c;
        dfs(t + 1);
      }
      frat_coords.pop_back();
      if (found || exhausted_budget) return;
    }
  };
  dfs(0);
  if (found) {
    res.verdict = IsoVerdict::isomorphic;
  } else if (exhausted_budget) {
    res.verdict = IsoVerdict::unknown;
    res.reason = fmt::format("node budget {} exhausted", budget);
  } else {
    res.verdict = IsoVerdict::non_isomorphic;
    res.reason = "exhaustive search found no isomorphism";
  }
  return res;
}

}  // namespace mipkit
