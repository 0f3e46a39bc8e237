#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mipkit/catalog.hpp"
#include "mipkit/error.hpp"
#include "mipkit/smallalg.hpp"
#include "support.hpp"

using namespace mipkit;
using testing_support::E;

namespace {

std::vector<std::string> applicable_catalog() {
  std::vector<std::string> out;
  for (const auto& name : testing_support::small_catalog(6, 5, 3))
    if (small_algebra_applicable(catalog_group(name))) out.push_back(name);
  return out;
}

std::string identity_witness(int m) {
  std::string s;
  for (int i = 1; i <= m; ++i) s += "htilde" + std::to_string(i) + " = g" + std::to_string(i) + "\n";
  return s;
}

const RelationCheck* find_relation(const WitnessReport& r, const std::string& name) {
  for (const auto& c : r.relations)
    if (c.relation == name) return &c;
  return nullptr;
}

}  // namespace

TEST(SmallAlgebra, DeltaIndexSet) {
  auto g = catalog_group("c3xc3");
  auto d = delta_index_set(g, {g.gen(0), g.gen(1)});
  EXPECT_EQ(d, (std::vector<Delta>{{0, 2}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}));
  auto c2 = catalog_group("c2");
  EXPECT_TRUE(delta_index_set(c2, {c2.gen(0)}).empty());
  // C9: delta < 9, not divisible by 3, at least 2
  auto c9 = catalog_group("c3_2");
  EXPECT_EQ(delta_index_set(c9, {c9.gen(0)}), (std::vector<Delta>{{2}, {4}, {5}, {7}, {8}}));
}

TEST(SmallAlgebra, Group553IndexSet) {
  auto g = catalog_group("5_6_553");
  SmallAlgebraModel m(g);
  EXPECT_EQ(m.x(), (std::vector<Elem>{g.gen(0), g.gen(1), g.gen(2), g.gen(3)}));
  EXPECT_EQ(m.lambda(), (std::vector<int>{1, 1, 1, 1}));
  auto d = delta_index_set(g, m.x());
  EXPECT_NE(std::find(d.begin(), d.end(), Delta{0, 0, 1, 1}), d.end());
  EXPECT_NE(std::find(d.begin(), d.end(), Delta{0, 0, 0, 2}), d.end());
  EXPECT_TRUE(std::is_sorted(d.begin(), d.end()));
  EXPECT_EQ(d.size(), 620u);
}

TEST(SmallAlgebra, Preconditions) {
  auto d16 = catalog_group("d16");
  EXPECT_FALSE(small_algebra_applicable(d16));
  EXPECT_THROW(SmallAlgebraModel{d16}, PreconditionError);
  auto g = catalog_group("c3xc3");
  EXPECT_THROW(delta_index_set(g, {g.gen(0)}), PreconditionError);
  EXPECT_THROW(delta_index_set(g, {g.gen(0), g.gen(0)}), PreconditionError);
}

TEST(SmallAlgebra, ActionOnGroup553Generator) {
  auto g = catalog_group("5_6_553");
  SmallAlgebraModel m(g);
  auto b = a_generator(g, m.x(), {0, 0, 0, 2});
  EXPECT_EQ(b.action[2], E(g, {0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(m.comm(m.unit(g.gen(2)), m.a_unit({0, 0, 0, 2})), m.unit(E(g, {0, 0, 0, 0, 0, 1})));
  EXPECT_EQ(m.a_rank(), 2);
}

TEST(SmallAlgebra, HighDegreeGeneratorsAreCentral) {
  for (const auto& name : applicable_catalog()) {
    auto g = catalog_group(name);
    SmallAlgebraModel m(g);
    int cls = nilpotency_class(Subgroup::whole(g));
    for (const auto& a : m.generators()) {
      int sum = 0;
      for (int v : a.delta) sum += v;
      if (sum >= 3 && cls <= 3) EXPECT_TRUE(a.is_central()) << name;
    }
    if (cls <= 2) EXPECT_EQ(m.a_rank(), 0) << name;
  }
}

TEST(SmallAlgebra, ReductionIndependentOfOrder) {
  std::mt19937_64 rng(4);
  for (const auto& name : {"c3wrc3", "tg243", "5_6_553", "ext3_5"}) {
    auto g = catalog_group(name);
    if (!small_algebra_applicable(g)) continue;
    SmallAlgebraModel m(g);
    auto gens = m.generators();
    std::shuffle(gens.begin(), gens.end(), rng);
    auto red = reduce_a_modulo_center(gens);
    EXPECT_EQ(red.size(), m.reduced().size()) << name;
    std::vector<std::vector<int>> all;
    for (const auto& a : red) all.push_back(a.coords);
    for (const auto& a : m.reduced()) all.push_back(a.coords);
    if (!all.empty()) EXPECT_EQ(static_cast<std::size_t>(fp::rank_of(all, g.prime())), red.size()) << name;
  }
}

TEST(SmallAlgebra, UnitArithmetic) {
  auto g = catalog_group("5_6_553");
  SmallAlgebraModel m(g);
  std::mt19937_64 rng(8);
  auto b = m.a_unit({0, 0, 0, 2});
  auto a = m.a_unit({0, 0, 1, 1});
  EXPECT_EQ(m.mul(a, b).avec, (std::vector<int>{(a.avec[0] + b.avec[0]) % 5, (a.avec[1] + b.avec[1]) % 5}));
  EXPECT_EQ(m.comm(a, b), m.unit(g.identity()));
  for (int t = 0; t < 200; ++t) {
    auto x = g.element(rng() % g.order()), y = g.element(rng() % g.order());
    EXPECT_EQ(m.mul(m.unit(x), m.unit(y)), m.unit(g.mul(x, y)));
    EXPECT_EQ(m.comm(m.unit(x), m.unit(y)), m.unit(g.comm(x, y)));
    SUnit u{x, {static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)}};
    SUnit v{y, {static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)}};
    EXPECT_EQ(m.mul(u, m.inv(u)), m.unit(g.identity()));
    EXPECT_EQ(m.to_s(m.mul(u, v)), m.s_group().mul(m.to_s(u), m.to_s(v)));
    EXPECT_EQ(m.from_s(m.to_s(u)), u);
    // [g a, h b] = [g, b][g, h][a, h]
    SUnit ga = m.unit(x), hb = m.unit(y);
    SUnit aa{g.identity(), u.avec}, bb{g.identity(), v.avec};
    auto lhs = m.comm(m.mul(ga, aa), m.mul(hb, bb));
    auto rhs = m.mul(m.mul(m.comm(ga, bb), m.comm(ga, hb)), m.comm(aa, hb));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(SmallAlgebra, BruteQuotientDimensions) {
  EXPECT_EQ(BruteSmallAlgebra(catalog_group("heis3")).dim(), 10u);
  EXPECT_EQ(BruteSmallAlgebra(catalog_group("d8")).dim(), 5u);
  EXPECT_EQ(BruteSmallAlgebra(catalog_group("c9xc3")).dim(), 27u);
  BruteSmallAlgebra b(catalog_group("heis3"));
  auto u = b.a_element({b.algebra().group().gen(0), b.algebra().group().gen(1)}, {1, 1});
  EXPECT_EQ(b.mul(u, b.inverse(u)), b.reduce(b.algebra().one()));
}

TEST(SmallAlgebra, StructureReportOnCatalog) {
  auto names = applicable_catalog();
  EXPECT_GE(names.size(), 20u);
  for (const auto& name : names) {
    SmallAlgebraModel m(catalog_group(name));
    auto rep = structure_report(m, true, 1000, 7);
    for (const auto& c : rep.clauses) EXPECT_TRUE(c.pass) << name << ": " << c.name << " " << c.detail;
    EXPECT_GE(rep.clauses.size(), 11u) << name;
  }
}

TEST(SmallAlgebra, StructureReportOnGroup553) {
  auto g = catalog_group("5_6_553");
  SmallAlgebraModel m(g);
  auto rep = structure_report(m);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(rep.clauses.size(), 5u);
}

TEST(Witness, ShippedWitnessPasses) {
  auto r = verify_witness(catalog_group("5_6_553"), catalog_group("5_6_554"),
                          parse_witness(*embedded_fixture("553_554.wit")));
  EXPECT_EQ(r.verdict, WitnessVerdict::pass) << r.reason;
  ASSERT_EQ(r.images.size(), 6u);
  EXPECT_EQ(r.images[4], "htilde5 = g5^3 (derived)");
  EXPECT_EQ(r.images[5], "htilde6 = g6 (derived)");
  EXPECT_EQ(r.relations.size(), 6u + 15u);
  for (const auto& c : r.relations) EXPECT_TRUE(c.ok) << c.relation;
  const auto* c = find_relation(r, "[htilde2,htilde1] = htilde6^2");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->lhs, "g6^2");
  EXPECT_NE(find_relation(r, "[htilde5,htilde4] = htilde6^2"), nullptr);
  EXPECT_NE(find_relation(r, "htilde3^5 = htilde6"), nullptr);
  EXPECT_EQ(r.image_log_order, 6);
  EXPECT_TRUE(r.meets_a_trivially);
  EXPECT_FALSE(r.spans_small_algebra.has_value());
}

TEST(Witness, CorruptedWitnessFails) {
  auto w = parse_witness(
      "htilde1 = g1 A[0,0,0,2]^-2\nhtilde2 = g2\nhtilde3 = g2^-2 g3^-2\nhtilde4 = g4\n");
  auto r = verify_witness(catalog_group("5_6_553"), catalog_group("5_6_554"), w);
  EXPECT_EQ(r.verdict, WitnessVerdict::fail);
  const auto* c = find_relation(r, "[htilde2,htilde1] = htilde6^2");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->ok);
}

TEST(Witness, MissingImagesAreUnknown) {
  auto r = verify_witness(catalog_group("5_6_553"), catalog_group("5_6_554"), parse_witness("htilde2 = g2\n"));
  EXPECT_EQ(r.verdict, WitnessVerdict::unknown);
}

TEST(Witness, IdentityWitnessOnCatalog) {
  for (const auto& name : applicable_catalog()) {
    auto g = catalog_group(name);
    auto r = verify_witness(g, g, parse_witness(identity_witness(g.ngens())));
    EXPECT_EQ(r.verdict, WitnessVerdict::pass) << name << " " << r.reason;
    EXPECT_EQ(r.spans_small_algebra, std::optional<bool>(true)) << name;
  }
  auto g = catalog_group("5_6_554");
  EXPECT_EQ(verify_witness(g, g, parse_witness(identity_witness(6))).verdict, WitnessVerdict::pass);
}

TEST(Witness, ParseErrors) {
  EXPECT_THROW(parse_witness("htilde1 = x2\n"), ParseError);
  EXPECT_THROW(parse_witness("htilde1 g2\n"), ParseError);
  EXPECT_THROW(parse_witness("htilde1 = A[0,1\n"), ParseError);
  EXPECT_THROW(parse_witness("htilde1 = g1\nhtilde1 = g2\n"), ParseError);
  EXPECT_THROW(parse_witness("htilde1 =\n"), ParseError);
  auto w = parse_witness("# comment\n\nhtilde3 = g1^-2 * A[1,2]^4 g2\n");
  ASSERT_EQ(w.images.count(3), 1u);
  const auto& word = w.images.at(3);
  ASSERT_EQ(word.size(), 3u);
  EXPECT_EQ(word[0].exp, -2);
  EXPECT_TRUE(word[1].is_a);
  EXPECT_EQ(word[1].delta, (Delta{1, 2}));
  EXPECT_EQ(word[1].exp, 4);
  auto g = catalog_group("5_6_553");
  EXPECT_THROW(verify_witness(g, g, parse_witness("htilde1 = A[0,0,0,1]\n")), UsageError);
  EXPECT_THROW(verify_witness(g, g, parse_witness("htilde7 = g1\n")), UsageError);
}
