#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <array>
#include <random>
#include <set>

#include "mipkit/catalog.hpp"
#include "mipkit/error.hpp"
#include "mipkit/pcgroup.hpp"
#include "support.hpp"

using namespace mipkit;
using testing_support::E;

namespace {

// D8 as signed permutations of the square: a = rotation, b = reflection.
// Element b^i a^j is stored as (i, j mod 4); products by the rule
// a^j b = b a^{-j}.
struct D8Model {
  static std::pair<int, int> mul(std::pair<int, int> x, std::pair<int, int> y) {
    int j = x.second;
    if (y.first) j = (4 - j) % 4;
    return {(x.first + y.first) % 2, (j + y.second) % 4};
  }
  // pc exps (b, a, a^2) -> (i, j)
  static std::pair<int, int> from_pc(const Elem& e) { return {e[0], (e[1] + 2 * e[2]) % 4}; }
};

// Upper unitriangular 3x3 matrices over Z/3 with x = E12, y = E23, z = E13.
struct HeisModel {
  std::array<int, 3> v;  // (a, c, b) for [[1,a,b],[0,1,c],[0,0,1]]
  static HeisModel mul(HeisModel x, HeisModel y) {
    return {{(x.v[0] + y.v[0]) % 3, (x.v[1] + y.v[1]) % 3, (x.v[2] + y.v[2] + x.v[0] * y.v[1]) % 3}};
  }
};

}  // namespace

TEST(PcGroup, D8MultiplicationMatchesModel) {
  auto g = catalog_group("d8");
  EXPECT_EQ(g.mul(E(g, {1, 1, 0}), E(g, {1, 0, 0})), E(g, {0, 1, 1}));
  for (std::uint64_t i = 0; i < 8; ++i)
    for (std::uint64_t j = 0; j < 8; ++j) {
      Elem x = g.element(i), y = g.element(j);
      EXPECT_EQ(D8Model::from_pc(g.mul(x, y)), D8Model::mul(D8Model::from_pc(x), D8Model::from_pc(y)));
    }
}

TEST(PcGroup, CyclicNineIsIntegersModNine) {
  auto g = catalog_group("c3_2");
  EXPECT_EQ(g.mul(E(g, {2, 0}), E(g, {2, 0})), E(g, {1, 1}));
  auto val = [](const Elem& e) { return e[0] + 3 * e[1]; };
  for (std::uint64_t i = 0; i < 9; ++i)
    for (std::uint64_t j = 0; j < 9; ++j)
      EXPECT_EQ(val(g.mul(g.element(i), g.element(j))), (val(g.element(i)) + val(g.element(j))) % 9);
}

TEST(PcGroup, HeisenbergMatchesMatrices) {
  auto g = catalog_group("heis3");
  // x = g1 -> E12, y = g2 -> E23, z = g3; [y,x] = z forces z -> E13^-1.
  auto model = [](const Elem& e) {
    HeisModel r{{0, 0, 0}};
    for (int t = 0; t < e[0]; ++t) r = HeisModel::mul(r, {{1, 0, 0}});
    for (int t = 0; t < e[1]; ++t) r = HeisModel::mul(r, {{0, 1, 0}});
    for (int t = 0; t < e[2]; ++t) r = HeisModel::mul(r, {{0, 0, 2}});
    return r.v;
  };
  for (std::uint64_t i = 0; i < 27; ++i)
    for (std::uint64_t j = 0; j < 27; ++j) {
      Elem x = g.element(i), y = g.element(j);
      EXPECT_EQ(model(g.mul(x, y)), HeisModel::mul({model(x)}, {model(y)}).v);
    }
  EXPECT_EQ(g.comm(E(g, {0, 1, 0}), E(g, {1, 0, 0})), E(g, {0, 0, 1}));
}

TEST(PcGroup, PowersAndInverses) {
  auto d8 = catalog_group("d8");
  EXPECT_EQ(d8.pow(d8.gen(1), -1), E(d8, {0, 1, 1}));
  EXPECT_EQ(d8.comm(d8.gen(1), d8.gen(0)), d8.gen(2));
  auto c9 = catalog_group("c3_2");
  EXPECT_EQ(c9.pow(c9.gen(0), 3), c9.gen(1));
  EXPECT_TRUE(c9.pow(c9.gen(0), 0).is_identity());
  for (const auto& name : {"d16", "heis5", "5_6_553", "tg243"}) {
    auto g = catalog_group(name);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
      Elem x = g.element(rng() % g.order());
      EXPECT_TRUE(g.mul(x, g.inv(x)).is_identity());
      EXPECT_TRUE(g.pow(x, std::llround(std::pow(g.prime(), g.order_log(x)))).is_identity());
    }
  }
}

TEST(PcGroup, AssociativityAndCommutatorIdentities) {
  for (const auto& name : {"d8", "q8", "heis3", "c3wrc3", "d16", "ext5_exp52"}) {
    auto g = catalog_group(name);
    std::vector<Elem> all;
    for (std::uint64_t i = 0; i < g.order(); ++i) all.push_back(g.element(i));
    std::mt19937_64 rng(1);
    bool exhaustive = g.order() <= 81;
    std::size_t trials = exhaustive ? all.size() * all.size() * all.size() : 20000;
    for (std::size_t t = 0; t < trials; ++t) {
      const Elem& a = exhaustive ? all[t % all.size()] : all[rng() % all.size()];
      const Elem& b = exhaustive ? all[(t / all.size()) % all.size()] : all[rng() % all.size()];
      const Elem& c = exhaustive ? all[t / all.size() / all.size()] : all[rng() % all.size()];
      ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))) << name;
      ASSERT_EQ(g.comm(a, g.mul(b, c)), g.mul(g.comm(a, c), g.conj(g.comm(a, b), c))) << name;
      ASSERT_EQ(g.comm(g.mul(a, b), c), g.mul(g.conj(g.comm(a, c), b), g.comm(b, c))) << name;
    }
  }
}

TEST(PcGroup, RejectsInconsistentPresentation) {
  // C2 x C2 with g1^2 = g2 and [g2,g1] = g2 is not a group of order 4.
  std::vector<Elem> pw{Elem(2, {0, 1}), Elem(2)};
  std::vector<std::vector<Elem>> cm(2, std::vector<Elem>(2, Elem(2)));
  cm[1][0] = Elem(2, {0, 0});
  EXPECT_NO_THROW(PcGroup(2, pw, cm));
  std::vector<Elem> pw3{Elem(3), Elem(3, {0, 0, 1}), Elem(3)};
  std::vector<std::vector<Elem>> cm3(3, std::vector<Elem>(3, Elem(3)));
  cm3[1][0] = Elem(3, {0, 0, 1});
  EXPECT_NO_THROW(PcGroup(2, pw3, cm3));  // D8
  std::vector<Elem> bad{Elem(3, {0, 1, 0}), Elem(3), Elem(3)};
  std::vector<std::vector<Elem>> cmb(3, std::vector<Elem>(3, Elem(3)));
  cmb[1][0] = Elem(3, {0, 0, 1});
  // g1^2 = g2 but g1 does not commute with g2.
  EXPECT_THROW(PcGroup(2, bad, cmb), InconsistentPresentation);
}

TEST(PcGroup, MismatchedParentIsUsageError) {
  auto a = catalog_group("d8");
  auto b = catalog_group("heis3");
  EXPECT_THROW(a.mul(a.gen(0), b.gen(0)), UsageError);
}

TEST(Subgroup, ClosureOracles) {
  auto d8 = catalog_group("d8");
  EXPECT_EQ(closure(d8, {d8.gen(2)}).order(), 2u);
  EXPECT_TRUE(closure(d8, {d8.gen(0), d8.gen(1), d8.gen(2)}).is_whole());
  auto h = catalog_group("heis3");
  auto n = normal_closure(h, {h.gen(0)});
  EXPECT_EQ(n.order(), 9u);
  EXPECT_TRUE(n.contains(h.gen(2)));
  // brute force: the normal closure of x is the set of products of conjugates
  std::set<Elem> brute{h.identity()};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur(brute.begin(), brute.end());
    for (const auto& s : cur)
      for (std::uint64_t i = 0; i < 27; ++i) {
        Elem c = h.mul(s, h.conj(h.gen(0), h.element(i)));
        if (brute.insert(c).second) grew = true;
      }
  }
  EXPECT_EQ(brute.size(), 9u);
  for (const auto& x : brute) EXPECT_TRUE(n.contains(x));
}

TEST(Subgroup, SeriesOracles) {
  auto d8 = catalog_group("d8");
  auto lcs = lower_central_series(Subgroup::whole(d8));
  ASSERT_EQ(lcs.size(), 3u);
  EXPECT_EQ(lcs[1], closure(d8, {d8.gen(2)}));
  EXPECT_EQ(nilpotency_class(Subgroup::whole(d8)), 2);
  EXPECT_EQ(center(Subgroup::whole(d8)), closure(d8, {d8.gen(2)}));
  EXPECT_EQ(frattini(Subgroup::whole(d8)), closure(d8, {d8.gen(2)}));
  EXPECT_EQ(gamma_cap(d8), closure(d8, {d8.gen(2)}));
  auto el = catalog_group("c3_3");
  EXPECT_EQ(lower_central_series(Subgroup::whole(el)).size(), 2u);
  EXPECT_TRUE(frattini(Subgroup::whole(el)).is_trivial());
  auto c9 = catalog_group("c3_2");
  EXPECT_EQ(agemo(Subgroup::whole(c9)).order(), 3u);
  auto h = catalog_group("heis3");
  auto hl = lower_central_series(Subgroup::whole(h));
  ASSERT_EQ(hl.size(), 3u);
  EXPECT_EQ(hl[1], closure(h, {h.gen(2)}));
  EXPECT_TRUE(centralizer(Subgroup::whole(h), h.gen(2)).is_whole());
  auto ucs = upper_central_series(catalog_group("d16"));
  EXPECT_EQ(ucs.size(), 4u);
  EXPECT_TRUE(ucs.back().is_whole());
}

TEST(Subgroup, CenterMatchesBruteForce) {
  for (const auto& name : {"d8", "q8", "heis3", "c3wrc3", "d16", "sd16", "tg243", "c4sc4"}) {
    auto g = catalog_group(name);
    auto z = center(Subgroup::whole(g));
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < g.order(); ++i) {
      Elem x = g.element(i);
      bool central = true;
      for (int k = 0; k < g.ngens() && central; ++k) central = g.comm(x, g.gen(k)).is_identity();
      if (central) {
        ++count;
        EXPECT_TRUE(z.contains(x)) << name;
      }
    }
    EXPECT_EQ(count, z.order()) << name;
  }
}

TEST(Subgroup, QuotientIsHomomorphism) {
  auto d8 = catalog_group("d8");
  auto q = quotient(d8, closure(d8, {d8.gen(2)}));
  EXPECT_EQ(q.group.order(), 4u);
  EXPECT_TRUE(q.group.is_abelian());
  EXPECT_TRUE(q.group.pow_p(q.group.gen(0)).is_identity());
  EXPECT_TRUE(q.group.pow_p(q.group.gen(1)).is_identity());
  auto h = catalog_group("heis3");
  auto qh = quotient(h, closure(h, {h.gen(2)}));
  EXPECT_EQ(qh.group.order(), 9u);
  EXPECT_TRUE(qh.group.is_abelian());
  for (const auto& name : {"d8", "heis3", "c3wrc3", "q16"}) {
    auto g = catalog_group(name);
    auto w = Subgroup::whole(g);
    auto n = lower_central_series(w)[1];
    auto qq = quotient(g, n);
    for (std::uint64_t i = 0; i < g.order(); ++i)
      for (std::uint64_t j = 0; j < g.order(); ++j) {
        Elem x = g.element(i), y = g.element(j);
        ASSERT_EQ(qq.group.mul(qq.project(x), qq.project(y)), qq.project(g.mul(x, y)));
      }
  }
  auto t = quotient(d8, Subgroup(d8));
  for (std::uint64_t i = 0; i < 8; ++i)
    for (std::uint64_t j = 0; j < 8; ++j)
      EXPECT_EQ(t.group.mul(d8.element(i), d8.element(j)), d8.mul(d8.element(i), d8.element(j)));
  EXPECT_THROW(quotient(d8, closure(d8, {d8.gen(0)})), PreconditionError);
}

TEST(Subgroup, ConjugacyClasses) {
  auto sizes = [](const PcGroup& g) {
    std::vector<std::uint64_t> s;
    for (const auto& c : conjugacy_classes(g)) s.push_back(c.size);
    std::sort(s.begin(), s.end());
    return s;
  };
  EXPECT_EQ(sizes(catalog_group("d8")), (std::vector<std::uint64_t>{1, 1, 2, 2, 2}));
  auto hs = sizes(catalog_group("heis3"));
  EXPECT_EQ(hs.size(), 11u);
  EXPECT_EQ(std::count(hs.begin(), hs.end(), 1u), 3);
  EXPECT_EQ(std::count(hs.begin(), hs.end(), 3u), 8);
  EXPECT_EQ(sizes(catalog_group("c9xc3")).size(), 27u);
}

TEST(Subgroup, AbelianInvariants) {
  EXPECT_EQ(abelian_invariants(Subgroup::whole(catalog_group("c4xc2"))), (std::vector<int>{2, 1}));
  EXPECT_EQ(abelian_invariants(Subgroup::whole(catalog_group("c3_3"))), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(abelian_invariants(Subgroup::whole(catalog_group("c3_2"))), (std::vector<int>{2}));
  EXPECT_EQ(abelian_invariants(Subgroup::whole(catalog_group("c8xc8"))), (std::vector<int>{3, 3}));
  EXPECT_THROW(abelian_invariants(Subgroup::whole(catalog_group("d8"))), PreconditionError);
}

TEST(Subgroup, SubgroupsOfAsGroupAndRelabel) {
  auto g = catalog_group("c3wrc3");
  auto w = Subgroup::whole(g);
  auto gamma2 = lower_central_series(w)[1];
  auto e = as_group(gamma2);
  EXPECT_EQ(e.group.order(), gamma2.order());
  for (const auto& x : gamma2.elements()) EXPECT_EQ(e.to_parent(e.from_parent(x)), x);
  std::mt19937_64 rng(3);
  for (const auto& entry : catalog()) {
    auto h = catalog_group(entry.name);
    auto r = random_relabel(h, rng);
    EXPECT_EQ(r.group.order(), h.order());
    for (int t = 0; t < 100; ++t) {
      Elem x = r.group.element(rng() % h.order()), y = r.group.element(rng() % h.order());
      ASSERT_EQ(r.to_parent(r.group.mul(x, y)), h.mul(r.to_parent(x), r.to_parent(y)));
    }
  }
}

TEST(Subgroup, SeriesProperties) {
  for (const auto& name : testing_support::small_catalog(4, 4, 3)) {
    auto g = catalog_group(name);
    auto w = Subgroup::whole(g);
    auto lcs = lower_central_series(w);
    int sum = 0;
    for (std::size_t i = 0; i + 1 < lcs.size(); ++i) sum += lcs[i].log_order() - lcs[i + 1].log_order();
    EXPECT_EQ(sum, g.log_order());
    EXPECT_LE(static_cast<int>(lcs.size()), g.ngens() + 2);
    EXPECT_LE(static_cast<int>(upper_central_series(g).size()), g.ngens() + 1);
    for (const auto& s : lcs) EXPECT_TRUE(s.is_normal()) << name;
    EXPECT_TRUE(normal_closure(g, {g.gen(g.ngens() > 1 ? 1 : 0)}).is_normal());
  }
}

TEST(Subgroup, AgemoMatchesPowerEnumeration) {
  for (const auto& e : catalog()) {
    auto g = catalog_group(e.name);
    if (g.order() > 20000) continue;
    const Subgroup w = Subgroup::whole(g);
    for (const Subgroup& h : {w, commutator(w, w), centralizer(w, g.gen(0))}) {
      for (int k = 0; k <= 2; ++k) {
        std::vector<Elem> powers;
        for (const auto& x : h.elements()) powers.push_back(g.pow(x, static_cast<long long>(std::pow(g.prime(), k))));
        EXPECT_EQ(agemo(h, k), closure(g, powers)) << e.name << " k=" << k;
      }
    }
  }
}
