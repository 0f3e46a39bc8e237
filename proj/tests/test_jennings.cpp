#include <gtest/gtest.h>

#include <random>

#include "mipkit/algebra.hpp"
#include "mipkit/catalog.hpp"
#include "mipkit/jennings.hpp"
#include "support.hpp"

using namespace mipkit;
using testing_support::E;

namespace {

std::vector<Subgroup> pad(std::vector<Subgroup> s, std::size_t n) {
  while (s.size() < n) s.push_back(s.back());
  return s;
}

}  // namespace

TEST(Jennings, CyclicOfOrderNine) {
  auto g = catalog_group("c3_2");
  auto d = dimension_series(g);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_TRUE(d[0].is_whole());
  EXPECT_EQ(d[1].log_order(), 1);
  EXPECT_EQ(d[2], d[1]);
  EXPECT_TRUE(d[3].is_trivial());
  auto j = jennings(g);
  EXPECT_EQ(j.weights, (std::vector<int>{1, 3}));
  EXPECT_EQ(j.tuple[1], g.pow_p(j.tuple[0]));
  EXPECT_EQ(jennings_monomials(j).size(), 8u);
  EXPECT_EQ(j.weight_of(g.gen(0)), 1);
  EXPECT_EQ(j.weight_of(g.gen(1)), 3);
}

TEST(Jennings, Heisenberg) {
  auto g = catalog_group("heis3");
  auto d = dimension_series(g);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[1], closure(g, {E(g, {0, 0, 1})}));
  EXPECT_TRUE(d[2].is_trivial());
  auto j = jennings(g);
  EXPECT_EQ(j.weights, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(j.dims, (std::vector<int>{2, 1}));
  JenLieAlgebra lie(j);
  // [x, y] = z^-1 since [y, x] = z
  EXPECT_EQ(lie.bracket(0, 1), (std::vector<int>{2}));
  EXPECT_EQ(lie.bracket(1, 0), (std::vector<int>{1}));
  auto s = lie.signature();
  EXPECT_EQ(s.pmap_kernel, (std::vector<std::uint64_t>{9, 3}));
}

TEST(Jennings, ElementaryAbelian) {
  auto g = catalog_group("c2_3");
  auto j = jennings(g);
  EXPECT_EQ(j.dims, (std::vector<int>{g.ngens()}));
  JenLieAlgebra lie(j);
  for (int a = 0; a < g.ngens(); ++a)
    for (int b = 0; b < g.ngens(); ++b) EXPECT_TRUE(lie.bracket(a, b).empty());
}

TEST(Jennings, CyclicPowerMap) {
  auto g = catalog_group("c5_2");
  auto j = jennings(g);
  JenLieAlgebra lie(j);
  EXPECT_EQ(lie.top_degree(), 5);
  EXPECT_EQ(lie.pmap(1, {1}), (std::vector<int>{1}));
  EXPECT_EQ(lie.dim(2), 0);
}

TEST(Jennings, OracleEquivalence) {
  for (const auto& name : testing_support::small_catalog()) {
    auto g = catalog_group(name);
    auto rec = dimension_series(g, DimMethod::jennings);
    auto brute = dimension_series(g, DimMethod::brute);
    auto prod = dimension_series(g, DimMethod::product);
    std::size_t n = std::max({rec.size(), brute.size(), prod.size()});
    EXPECT_EQ(rec.size(), brute.size()) << name;
    EXPECT_EQ(pad(rec, n), pad(brute, n)) << name;
    EXPECT_EQ(pad(rec, n), pad(prod, n)) << name;
    for (std::size_t i = 0; i + 1 < rec.size(); ++i) {
      EXPECT_TRUE(rec[i].contains(rec[i + 1])) << name;
      auto q = quotient(g, rec[i + 1]);
      EXPECT_TRUE(q.image(rec[i]).is_abelian()) << name;
      EXPECT_TRUE(agemo(rec[i]).is_trivial() || rec[i + 1].contains(agemo(rec[i]))) << name;
    }
  }
}

TEST(Jennings, SeriesMultiplicativity) {
  for (const auto& name : {"d16", "tg243", "c3wrc3", "q8xq8", "heis5"}) {
    auto g = catalog_group(name);
    auto d = dimension_series(g);
    const int p = g.prime();
    auto at = [&](std::size_t k) { return k <= d.size() ? d[k - 1] : d.back(); };
    for (std::size_t m = 1; m <= d.size(); ++m) {
      EXPECT_TRUE(at(m * p).contains(agemo(at(m)))) << name;
      for (std::size_t n = 1; n <= d.size(); ++n) EXPECT_TRUE(at(m + n).contains(commutator(at(m), at(n)))) << name;
    }
  }
}

TEST(Jennings, MonomialsFormBasis) {
  for (const auto& name : testing_support::small_catalog(6, 5, 3)) {
    auto g = catalog_group(name);
    auto j = jennings(g);
    int total = 0;
    for (int d : j.dims) total += d;
    EXPECT_EQ(total, g.log_order()) << name;
    EXPECT_TRUE(std::is_sorted(j.weights.begin(), j.weights.end())) << name;
    GroupAlgebra a(g);
    auto mons = jennings_monomials(j);
    EXPECT_EQ(mons.size() + 1, a.dim()) << name;
    fp::EchelonBasis e(g.prime(), a.dim());
    for (const auto& m : mons) e.insert(monomial_element(a, j, m.alpha));
    EXPECT_EQ(e.rank() + 1, a.dim()) << name;
  }
}

TEST(Jennings, WeightGradingMatchesPowers) {
  for (const auto& name : testing_support::small_catalog(6, 5, 3)) {
    auto g = catalog_group(name);
    auto j = jennings(g);
    GroupAlgebra a(g);
    auto powers = ideal_power_series(a);
    auto counts = monomial_weight_counts(j);
    for (std::size_t n = 1; n <= counts.size(); ++n) {
      std::size_t hi = powers[n - 1].dim();
      std::size_t lo = n < powers.size() ? powers[n].dim() : 0;
      EXPECT_EQ(static_cast<int>(hi - lo), counts[n - 1]) << name << " n=" << n;
    }
    EXPECT_EQ(powers.size(), counts.size() + 1) << name;
  }
}

TEST(Jennings, WeightMethodsAgree) {
  std::mt19937_64 rng(17);
  for (const auto& name : {"d8", "q16", "heis3", "c9xc3", "tg243", "c4xc4", "ext5_exp52"}) {
    auto g = catalog_group(name);
    auto j = jennings(g);
    GroupAlgebra a(g);
    auto powers = ideal_power_series(a);
    JenningsCoordinates jc(a, j);
    for (int t = 0; t < 200; ++t) {
      std::vector<AlgebraElement::Entry> entries;
      int support = 1 + static_cast<int>(rng() % 4);
      for (int s = 0; s < support; ++s) {
        // sparse combinations of monomials to hit high weights
        auto mons = jennings_monomials(j);
        const auto& m = mons[rng() % mons.size()];
        auto v = monomial_element(a, j, m.alpha);
        entries.clear();
        AlgebraElement x = v;
        EXPECT_EQ(jc.weight(x), brute_weight(powers, x)) << name;
      }
      auto y = g.element(rng() % a.dim());
      EXPECT_EQ(jc.weight(a.bar(y)), y.is_identity() ? -1 : j.weight_of(y)) << name;
      EXPECT_EQ(brute_weight(powers, a.bar(y)), y.is_identity() ? -1 : j.weight_of(y)) << name;
    }
    auto x = a.bar(g.element(1));
    auto z = a.add(x, a.bar(g.element(a.dim() - 1)));
    EXPECT_EQ(jc.weight(z), brute_weight(powers, z)) << name;
    EXPECT_EQ(jc.weight(AlgebraElement()), -1);
  }
}

TEST(Jennings, GroupWeightInequalities) {
  std::mt19937_64 rng(23);
  for (const auto& name : testing_support::small_catalog(6, 5, 3)) {
    auto g = catalog_group(name);
    auto d = dimension_series(g);
    auto inf = [](int w) { return w == 0 ? 1 << 20 : w; };
    for (int t = 0; t < 1000; ++t) {
      auto x = g.element(rng() % g.order());
      auto y = g.element(rng() % g.order());
      int wx = inf(group_weight(d, x)), wy = inf(group_weight(d, y));
      EXPECT_GE(inf(group_weight(d, g.comm(x, y))), std::min(wx + wy, 1 << 20)) << name;
      EXPECT_GE(inf(group_weight(d, g.pow_p(x))), std::min(g.prime() * wx, 1 << 20)) << name;
    }
  }
}

TEST(Jennings, IsFactor) {
  auto g = catalog_group("c3_2");
  auto j = jennings(g);
  EXPECT_TRUE(is_factor(j, g.gen(0), {1, 0}));
  EXPECT_TRUE(is_factor(j, g.gen(0), {0, 1}));
  EXPECT_FALSE(is_factor(j, g.gen(1), {1, 0}));
  EXPECT_TRUE(is_factor(j, g.gen(1), {0, 2}));
}

TEST(Jennings, ZassenhausDecomposition) {
  for (const auto& name : {"c3_2", "d8", "q8", "heis3", "c9xc3", "tg243", "c2_3", "d16"}) {
    auto g = catalog_group(name);
    GroupAlgebra a(g);
    auto powers = ideal_power_series(a);
    auto j = jennings(g);
    auto mons = jennings_monomials(j);
    for (int n = 1; n <= j.t(); ++n) {
      auto h = zassenhaus_ideal(a, powers, j.series[n - 1], n);
      std::size_t next = static_cast<std::size_t>(n) < powers.size() ? powers[n].dim() : 0;
      if (n == 1) EXPECT_EQ(h.dim(), powers[0].dim()) << name;
      // H_n / I^{n+1} has dimension d_n
      EXPECT_EQ(h.dim() - next, static_cast<std::size_t>(j.dims[n - 1])) << name << " n=" << n;
      // together with weight-n monomials outside G-bar it spans I^n
      fp::EchelonBasis e = h.basis;
      for (const auto& m : mons) {
        if (m.weight != n) continue;
        int nz = 0;
        for (int v : m.alpha) nz += v != 0;
        bool single = nz == 1 && std::count(m.alpha.begin(), m.alpha.end(), 1) == 1;
        if (!single) e.insert(monomial_element(a, j, m.alpha));
      }
      EXPECT_EQ(e.rank(), powers[n - 1].dim()) << name << " n=" << n;
    }
  }
  GroupAlgebra c9(catalog_group("c3_2"));
  auto p9 = ideal_power_series(c9);
  auto d = dimension_series(c9.group());
  EXPECT_EQ(zassenhaus_ideal(c9, p9, d[1], 2).dim() - p9[2].dim(), 0u);
  GroupAlgebra el(catalog_group("c3xc3"));
  auto pe = ideal_power_series(el);
  // D_2 = 1, so H_2 collapses to I^3
  EXPECT_EQ(zassenhaus_ideal(el, pe, dimension_series(el.group())[1], 2).dim(), pe[2].dim());
}
