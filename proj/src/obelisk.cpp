#include "mipkit/obelisk.hpp"

#include <fmt/format.h>

#include <random>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"
#include "mipkit/jennings.hpp"

namespace mipkit {

namespace {

std::vector<Subgroup> lcs_of(const PcGroup& g) { return lower_central_series(Subgroup::whole(g)); }

const Subgroup& term(const std::vector<Subgroup>& lcs, std::size_t i) {
  return i <= lcs.size() ? lcs[i - 1] : lcs.back();
}

void require_obelisk(const PcGroup& g) {
  if (!is_obelisk(g)) throw PreconditionError("not a p-obelisk");
}

}  // namespace

bool obelisk_predicate(const PcGroup& g) {
  if (g.is_abelian()) return false;
  auto lcs = lcs_of(g);
  if (g.log_order() - lcs[1].log_order() != 2) return false;
  return agemo(lcs[0]) == term(lcs, 3);
}

bool is_obelisk(const PcGroup& g) { return g.prime() > 3 && obelisk_predicate(g); }

RankPatternResult rank_pattern_check(const PcGroup& g) {
  require_obelisk(g);
  auto lcs = lcs_of(g);
  const int c = static_cast<int>(lcs.size()) - 1;
  RankPatternResult r;
  for (int i = 1; i <= c; ++i) {
    const Subgroup& gi = term(lcs, i);
    const Subgroup& next = term(lcs, i + 1);
    int rk = gi.log_order() - next.log_order();
    r.ranks.push_back(rk);
    if (!next.contains(agemo(gi))) {
      r.pass = false;
      r.failures.push_back(fmt::format("i = {}: gamma_i/gamma_(i+1) is not elementary abelian", i));
    }
    int want = 0;
    if (i % 2 == 1 && i <= c - 1) want = 2;
    if (i % 2 == 0) want = 1;
    if (want && rk != want) {
      r.pass = false;
      r.failures.push_back(fmt::format("i = {}: rank {} where {} is required", i, rk, want));
    }
  }
  for (int i = 1; i <= c; ++i)
    if (!(agemo(term(lcs, i)) == term(lcs, i + 2))) {
      r.pass = false;
      r.failures.push_back(fmt::format("i = {}: gamma_i^p differs from gamma_(i+2)", i));
    }
  return r;
}

int m_of_n(long long n, int p) {
  if (p <= 3 || !fp::is_prime(p)) throw UsageError(fmt::format("m(n) needs a prime p > 3, got {}", p));
  if (n < 1) throw UsageError("m(n) needs n >= 1");
  int l = 0;
  long long pl = 1;
  while (pl * p <= n) {
    pl *= p;
    ++l;
  }
  long long a = n / pl;
  long long b = n % pl;
  if (a == 1 && b == 0) return 2 * l + 1;
  if (a > 2 || (a == 2 && b >= 1)) return 2 * l + 3;
  return 2 * l + 2;
}

std::vector<DimensionRow> dimension_series_check(const PcGroup& g) {
  require_obelisk(g);
  auto lcs = lcs_of(g);
  auto d = dimension_series(g);
  std::vector<DimensionRow> rows;
  for (std::size_t n = 1; n <= d.size(); ++n) {
    DimensionRow r;
    r.n = static_cast<int>(n);
    r.m = m_of_n(static_cast<long long>(n), g.prime());
    r.d_log_order = d[n - 1].log_order();
    const Subgroup& gm = term(lcs, static_cast<std::size_t>(r.m));
    r.gamma_log_order = gm.log_order();
    r.match = d[n - 1] == gm;
    rows.push_back(r);
  }
  return rows;
}

FramedResult framed_check(const PcGroup& g) {
  require_obelisk(g);
  auto lcs = lcs_of(g);
  if (lcs.size() < 4) throw PreconditionError("framed criterion needs class at least 3");
  const int p = g.prime();
  const Subgroup whole = Subgroup::whole(g);
  const Subgroup phi = frattini(whole);
  Quotient q = quotient(g, phi);
  const Subgroup& g3 = lcs[2];
  const Subgroup& g4 = lcs[3];
  FramedResult r;
  r.by_generators = true;
  r.by_lie_images = true;
  // hyperplanes of the 2-dimensional G/Phi(G): the p+1 lines
  std::vector<std::vector<int>> lines{{0, 1}};
  for (int t = 0; t < p; ++t) lines.push_back({1, t});
  for (const auto& v : lines) {
    Elem y = q.group.identity();
    y[0] = static_cast<std::uint8_t>(v[0]);
    y[1] = static_cast<std::uint8_t>(v[1]);
    std::vector<Elem> gens = phi.gens();
    gens.push_back(q.lift(y));
    Subgroup m = closure(g, gens);
    int d = rank(m);
    r.maximal_generator_counts.push_back(d);
    if (d != 2) {
      r.by_generators = false;
      ++r.exceptional;
    }
    Subgroup mp = join(agemo(m), g4);
    Subgroup mm = join(commutator(m, m), g4);
    bool ok = mp.log_order() == g4.log_order() + 1 && mm.log_order() == g4.log_order() + 1 && !(mp == mm) &&
              g3.contains(mp) && g3.contains(mm);
    if (!ok) r.by_lie_images = false;
  }
  return r;
}

bool is_framed(const PcGroup& g) {
  auto r = framed_check(g);
  if (!r.agree()) throw InternalError("framed criteria disagree");
  return r.by_generators;
}

ObeliskReport obelisk_report(const PcGroup& g) {
  ObeliskReport r;
  r.predicate = obelisk_predicate(g);
  r.is_obelisk = is_obelisk(g);
  r.cls = nilpotency_class(Subgroup::whole(g));
  if (g.prime() <= 3) r.warning = "p-obelisks are only considered for p > 3";
  if (!r.is_obelisk) return r;
  if (r.cls <= 2) r.warning = "degenerate case: gamma_3 = G^p = 1";
  r.ranks = rank_pattern_check(g);
  r.dimension_rows = dimension_series_check(g);
  if (r.cls >= 3) r.framed = framed_check(g);
  return r;
}

std::vector<PcGroup> search_obelisks(int p, int log_order, int attempts, std::uint64_t seed, bool want_framed,
                                     int max_results) {
  if (log_order != 5 && log_order != 6) throw UsageError("obelisk search covers orders p^5 and p^6");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(0, p - 1);
  const int m = log_order;
  auto word = [&](std::initializer_list<std::pair<int, int>> parts) {
    Elem e(m);
    for (auto [k, v] : parts)
      if (k < m) e[k] = static_cast<std::uint8_t>(v);
    return e;
  };
  std::vector<PcGroup> found;
  for (int t = 0; t < attempts && static_cast<int>(found.size()) < max_results; ++t) {
    // a = g1, b = g2, g3 = [b,a], gamma_3 = <g4, g5>, gamma_4 = <g6>
    std::vector<Elem> powers(m, Elem(m));
    std::vector<std::vector<Elem>> comms(m, std::vector<Elem>(m, Elem(m)));
    int x = coef(rng), y = coef(rng), u = coef(rng), v = coef(rng);
    if ((x * v - y * u) % p == 0) continue;
    int z6 = coef(rng), w6 = coef(rng);
    powers[0] = word({{3, x}, {4, y}, {5, z6}});
    powers[1] = word({{3, u}, {4, v}, {5, w6}});
    comms[1][0] = word({{2, 1}});
    comms[2][0] = word({{3, 1}});
    comms[2][1] = word({{4, 1}});
    if (m == 6) {
      powers[2] = word({{5, 1 + coef(rng) % (p - 1)}});
      int s = coef(rng);
      comms[3][0] = word({{5, coef(rng)}});
      comms[3][1] = word({{5, s}});
      comms[4][0] = word({{5, s}});
      comms[4][1] = word({{5, coef(rng)}});
    }
    try {
      PcGroup g(p, powers, comms);
      g.check_consistency();
      if (g.log_order() != m || !is_obelisk(g)) continue;
      if (!rank_pattern_check(g).pass) continue;
      auto fr = framed_check(g);
      if (fr.by_generators != want_framed) continue;
      found.push_back(g);
    } catch (const InconsistentPresentation&) {
    } catch (const UsageError&) {
    }
  }
  return found;
}

}  // namespace mipkit
