#include <gtest/gtest.h>

#include <random>

#include "mipkit/catalog.hpp"
#include "mipkit/error.hpp"
#include "mipkit/invariants.hpp"
#include "support.hpp"

using namespace mipkit;

namespace {

// Sum over classes of rank C_G(x), computed element by element: each x
// contributes rank(C(x)) / |class(x)| = rank(C(x)) |C(x)| / |G|.
long long roggenkamp_by_elements(const PcGroup& g) {
  auto elems = Subgroup::whole(g).elements();
  long long num = 0;
  for (const auto& x : elems) {
    std::vector<Elem> cent;
    for (const auto& y : elems)
      if (g.mul(x, y) == g.mul(y, x)) cent.push_back(y);
    num += static_cast<long long>(rank(closure(g, cent))) * static_cast<long long>(cent.size());
  }
  return num / static_cast<long long>(elems.size());
}

std::string dump(const PcGroup& g) { return battery(g).json.dump(); }

}  // namespace

TEST(Invariants, DihedralBattery) {
  auto g = catalog_group("d8");
  auto r = battery(g).json;
  EXPECT_EQ(r["log_order"], 3);
  EXPECT_EQ(r["class"], 2);
  EXPECT_EQ(r["generator_count"], 2);
  EXPECT_EQ(r["abelianization"], Json::array({1, 1}));
  EXPECT_EQ(r["gamma_type"], Json::array({1}));
  EXPECT_EQ(r["sandling_quotient"]["log_order"], 3);
  EXPECT_TRUE(r["two_generated"]["holds"].get<bool>());
  EXPECT_EQ(r["roggenkamp"], 9);
  Quotient q = sandling_quotient(g);
  EXPECT_EQ(q.group.order(), 8u);
  EXPECT_EQ(iso_search(q.group, g).verdict, IsoVerdict::isomorphic);
}

TEST(Invariants, ElementaryAbelianBattery) {
  auto r = battery(catalog_group("c3_3")).json;
  EXPECT_EQ(r["class"], 1);
  EXPECT_EQ(r["dimension_ranks"]["group"], Json::array({3}));
  EXPECT_EQ(r["dimension_ranks"]["derived_subgroup"], Json::array());
  EXPECT_TRUE(r["mip_status"]["settled"].get<bool>());
}

TEST(Invariants, SandlingQuotient) {
  for (const char* name : {"heis3", "heis5", "c5_2", "c27"}) {
    auto g = catalog_group(name);
    EXPECT_EQ(sandling_quotient(g).group.log_order(), g.log_order()) << name;
    EXPECT_TRUE(sandling_check(g).holds) << name;
  }
  EXPECT_EQ(sandling_quotient(catalog_group("ext3_exp32")).group.log_order(), 3);
  auto tg = catalog_group("tg243");
  EXPECT_LT(sandling_quotient(tg).group.log_order(), tg.log_order());
}

TEST(Invariants, TwoGeneratedQuotient) {
  auto g = catalog_group("tg243");
  Quotient q = two_gen_quotient(g);
  EXPECT_EQ(q.kernel.log_order(), 0);
  EXPECT_THROW(two_gen_quotient(catalog_group("c2_3")), PreconditionError);
  EXPECT_THROW(two_gen_quotient(catalog_group("5_6_553")), PreconditionError);
}

TEST(Invariants, BaginskiCentralizer) {
  for (const char* name : {"c3xc3", "c9xc9", "d8", "heis3"}) {
    auto g = catalog_group(name);
    auto b = baginski_centralizer(g);
    ASSERT_TRUE(b.has_value()) << name;
    EXPECT_TRUE(b->centralizer.is_whole()) << name;
  }
  auto b = baginski_centralizer(catalog_group("c9xc3"));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->type, (std::vector<int>{2, 1}));
  // Any value returned satisfies the cyclicity hypothesis.
  for (const auto& e : catalog()) {
    auto g = catalog_group(e.name);
    auto c = baginski_centralizer(g);
    if (!c) continue;
    EXPECT_LE(rank(Subgroup::whole(quotient(g, c->centralizer).group)), 1) << e.name;
    EXPECT_TRUE(c->centralizer.is_normal()) << e.name;
  }
}

TEST(Invariants, KGConstruction) {
  auto full = catalog_group("kg5_full");
  auto z2 = upper_central_series(full)[2];
  EXPECT_EQ(compute_K_G(full), z2);
  for (const char* name : {"kg5_maximal", "kg5_wide"}) {
    auto g = catalog_group(name);
    Subgroup k = compute_K_G(g);
    Subgroup z = upper_central_series(g)[2];
    EXPECT_TRUE(k.contains(z)) << name;
    EXPECT_EQ(g.log_order() - k.log_order(), 1) << name;
    // dim wedge^2 W = dim wedge^2 U - dim gamma_2/Gamma
    const int w = k.log_order() - z.log_order();
    auto lcs = lower_central_series(Subgroup::whole(g));
    const int e = lcs[1].log_order() - gamma_cap(g).log_order();
    EXPECT_EQ(w * (w - 1) / 2, 3 - e) << name;
    EXPECT_EQ(k, compute_K_G(g)) << name;
  }
  EXPECT_THROW(compute_K_G(catalog_group("heis3")), PreconditionError);
  EXPECT_THROW(compute_K_G(catalog_group("5_6_553")), PreconditionError);
  EXPECT_THROW(compute_K_G(catalog_group("c5xc5")), PreconditionError);
}

TEST(Invariants, KGIsCanonical) {
  std::mt19937_64 rng(5);
  for (const char* name : {"kg5_maximal", "kg5_wide"}) {
    auto g = catalog_group(name);
    Subgroup k = compute_K_G(g);
    for (int t = 0; t < 3; ++t) {
      Reframed r = random_relabel(g, rng);
      Subgroup k2 = compute_K_G(r.group);
      std::vector<Elem> back;
      for (const auto& x : k2.gens()) back.push_back(r.to_parent(x));
      EXPECT_EQ(closure(g, back), k) << name;
    }
  }
}

TEST(Invariants, HypothesisChecks) {
  auto heis = catalog_group("heis3");
  EXPECT_FALSE(maximal_abelian_centralizer_check(heis).holds);
  EXPECT_TRUE(sandling_check(heis).holds);
  EXPECT_TRUE(mip_status(heis)["settled"].get<bool>());

  auto g553 = catalog_group("5_6_553");
  auto kc = k_g_check(g553);
  EXPECT_FALSE(kc.holds);
  EXPECT_NE(std::find(kc.failed.begin(), kc.failed.end(), "|G:Phi(G)| is not p^3"), kc.failed.end());
  EXPECT_FALSE(mip_status(g553)["settled"].get<bool>());
  for (const auto& c : corollary_checks(g553)) EXPECT_FALSE(c.holds) << c.name;

  EXPECT_TRUE(k_g_check(catalog_group("kg5_full")).holds);
  auto cors = corollary_checks(catalog_group("kg5_maximal"));
  ASSERT_EQ(cors.size(), 3u);
  EXPECT_TRUE(cors[0].holds);
  EXPECT_FALSE(cors[1].holds);
  EXPECT_TRUE(cors[2].holds);
  auto wide = catalog_group("kg5_wide");
  EXPECT_TRUE(k_g_check(wide).holds);
  EXPECT_FALSE(corollary_checks(wide)[0].holds);

  auto c9xc3 = catalog_group("c9xc3");
  EXPECT_TRUE(mip_status(c9xc3)["settled"].get<bool>());
  EXPECT_FALSE(maximal_abelian_centralizer_check(catalog_group("d8")).holds);
  // p = 2 never satisfies the odd-prime checks
  for (const char* name : {"d16", "q16", "sd16"}) EXPECT_FALSE(mip_status(catalog_group(name))["settled"].get<bool>());
}

TEST(Invariants, MaximalAbelianCentralizer) {
  // The base group of C3 wr C3 is abelian of index 3 and contains gamma_2.
  auto c = maximal_abelian_centralizer_check(catalog_group("c3wrc3"));
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.details["centralizer_log_index"], 1);
  EXPECT_TRUE(c.details["centralizer_abelian"].get<bool>());
  // Extraspecial: gamma_2 is central, so the centralizer is all of G.
  auto e = maximal_abelian_centralizer_check(catalog_group("ext5_exp52"));
  EXPECT_FALSE(e.holds);
  EXPECT_EQ(e.details["centralizer_log_index"], 0);
}

TEST(Invariants, LowerCentralTypes) {
  auto h = lower_central_invariant(catalog_group("heis3"));
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(h->cls, 2);
  ASSERT_EQ(h->terms.size(), 1u);
  EXPECT_EQ(h->terms[0].type, (std::vector<int>{1}));

  auto c9 = lower_central_invariant(catalog_group("c3_2"));
  ASSERT_TRUE(c9.has_value());
  EXPECT_EQ(c9->cls, 1);
  EXPECT_TRUE(c9->terms.empty());

  auto tg = lower_central_invariant(catalog_group("tg243"));
  ASSERT_TRUE(tg.has_value());
  EXPECT_EQ(tg->cls, 3);
  ASSERT_EQ(tg->terms.size(), 2u);
  EXPECT_EQ(tg->terms[0].type, (std::vector<int>{1, 1}));
  EXPECT_EQ(tg->terms[1].type, (std::vector<int>{1}));

  EXPECT_FALSE(lower_central_invariant(catalog_group("c3_3")).has_value());
  EXPECT_FALSE(lower_central_invariant(catalog_group("d8")).has_value());
  EXPECT_FALSE(lower_central_invariant(catalog_group("5_6_553")).has_value());
}

TEST(Invariants, Roggenkamp) {
  EXPECT_EQ(roggenkamp(catalog_group("c3_2")), 9);
  EXPECT_EQ(roggenkamp(catalog_group("c3xc3")), 18);
  EXPECT_EQ(roggenkamp(catalog_group("d8")), 9);
  EXPECT_EQ(roggenkamp(catalog_group("heis3")), 22);
  for (const auto& e : catalog()) {
    auto g = catalog_group(e.name);
    if (g.is_abelian())
      EXPECT_EQ(roggenkamp(g), static_cast<long long>(g.order()) * rank(Subgroup::whole(g))) << e.name;
    else if (g.order() <= 729)
      EXPECT_EQ(roggenkamp(g), roggenkamp_by_elements(g)) << e.name;
  }
}

TEST(Invariants, TruncatedFingerprint) {
  EXPECT_EQ(truncated_fingerprint(catalog_group("c2_2"), 4).dims, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(truncated_fingerprint(catalog_group("c3xc3"), 3).dims, (std::vector<int>{2, 3}));
  for (const auto& name : testing_support::small_catalog()) {
    auto g = catalog_group(name);
    EXPECT_EQ(truncated_fingerprint(g, 2).dims, (std::vector<int>{rank(Subgroup::whole(g))})) << name;
  }
  // dims of I/I^m add up to |G| - 1 once m passes the top weight
  auto d8 = catalog_group("d8");
  auto t = truncated_fingerprint(d8, 20);
  int sum = 0;
  for (int d : t.dims) sum += d;
  EXPECT_EQ(sum, 7);
  EXPECT_THROW(truncated_fingerprint(d8, 1), UsageError);
}

TEST(Invariants, RelabelingInvariance) {
  std::mt19937_64 rng(2024);
  for (const auto& e : catalog()) {
    auto g = catalog_group(e.name);
    const std::string ref = dump(g);
    for (int t = 0; t < 5; ++t) {
      Reframed r = random_relabel(g, rng);
      EXPECT_EQ(dump(r.group), ref) << e.name << " relabeling " << t;
    }
  }
}

TEST(Invariants, CompareSeparatesKnownPairs) {
  auto d8 = battery(catalog_group("d8"));
  auto q8 = battery(catalog_group("q8"));
  EXPECT_EQ(compare(d8, q8).verdict, CompareVerdict::distinguished);

  auto c4 = battery(catalog_group("c2_2"));
  auto v4 = battery(catalog_group("c2xc2"));
  auto r = compare(c4, v4);
  EXPECT_EQ(r.verdict, CompareVerdict::distinguished);
  bool abel = false;
  for (const auto& f : r.fields) abel |= f.field == "abelianization" && f.outcome == "distinguished";
  EXPECT_TRUE(abel);

  auto fr = battery(catalog_group("ob5_6_framed"));
  auto nf = battery(catalog_group("ob5_6_nonframed"));
  EXPECT_EQ(compare(fr, nf).verdict, CompareVerdict::distinguished);
}

TEST(Invariants, CompareKeepsIsomorphicPairsTogether) {
  std::mt19937_64 rng(9);
  for (const char* name : {"d8", "heis3", "tg243", "ob5_5_framed", "kg5_maximal"}) {
    auto g = catalog_group(name);
    auto r = compare(battery(g), battery(random_relabel(g, rng).group));
    EXPECT_EQ(r.verdict, CompareVerdict::indistinguishable) << name;
  }
  for (const char* name : {"5_6_553", "5_6_554"}) {
    auto r = compare(battery(catalog_group(name)), battery(catalog_group(std::string(name) + "_sg")));
    EXPECT_EQ(r.verdict, CompareVerdict::indistinguishable) << name;
  }
}

TEST(Invariants, Pair553And554IsIndistinguishable) {
  auto r = compare(battery(catalog_group("5_6_553")), battery(catalog_group("5_6_554")));
  EXPECT_EQ(r.verdict, CompareVerdict::indistinguishable);
  for (const auto& f : r.fields) EXPECT_NE(f.outcome, "distinguished") << f.field;
  EXPECT_EQ(r.to_json()["distinguished_fields"], 0);
}

TEST(Invariants, ClassOnlyCertifiedWhereKnown) {
  // Class 3 versus class 4 of the same order: neither side is covered, so a
  // class mismatch alone is not a separation.
  InvariantReport a = battery(catalog_group("ob5_6_framed"));
  InvariantReport b = a;
  b.json["class"] = 3;
  auto r = compare(a, b);
  for (const auto& f : r.fields)
    if (f.field == "class") EXPECT_EQ(f.outcome, "uncertified");
  EXPECT_EQ(r.verdict, CompareVerdict::indistinguishable);
  b.json["roggenkamp"] = Json{{"unavailable", "bound"}};
  EXPECT_EQ(compare(a, b).verdict, CompareVerdict::inconclusive);
}
