#include "mipkit/smallalg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"

namespace mipkit {

namespace {

Subgroup gamma(const PcGroup& g, int i) {
  auto lcs = lower_central_series(Subgroup::whole(g));
  return i <= static_cast<int>(lcs.size()) ? lcs[i - 1] : lcs.back();
}

// Refinement of the lower exponent-p central series.
std::vector<Elem> p_central_sequence(const PcGroup& g) {
  std::vector<Subgroup> p{Subgroup::whole(g)};
  while (!p.back().is_trivial()) p.push_back(join(commutator(p.front(), p.back()), agemo(p.back())));
  std::vector<Elem> seq;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Subgroup span = p[i + 1];
    for (const auto& y : p[i].gens()) {
      if (span.contains(y)) continue;
      seq.push_back(y);
      std::vector<Elem> gens = span.gens();
      gens.push_back(y);
      span = closure(g, gens);
    }
  }
  return seq;
}

int min_order_log_mod(const PcGroup& q, const Subgroup& h, const Elem& y) {
  int e = 0;
  Elem z = y;
  while (!h.contains(z)) {
    z = q.pow_p(z);
    ++e;
  }
  return e;
}

long long inverse_mod_power(long long e, int p, int k) {
  long long m = fp::ipow(p, k);
  e = ((e % m) + m) % m;
  for (long long t = 1; t < m; ++t)
    if (e * t % m == 1) return t;
  return m == 1 ? 0 : -1;
}

}  // namespace

bool small_algebra_applicable(const PcGroup& g) {
  return join(agemo(gamma(g, 2)), gamma(g, 4)).is_trivial();
}

void require_small_algebra(const PcGroup& g) {
  if (!small_algebra_applicable(g)) throw PreconditionError("small group algebra model requires gamma_2^p gamma_4 = 1");
}

std::vector<int> abelian_basis_exponents(const PcGroup& g, const std::vector<Elem>& x) {
  Quotient q = quotient(g, gamma(g, 2));
  std::vector<Elem> imgs;
  std::vector<int> lambda;
  int total = 0;
  for (const auto& xi : x) {
    g.check_parent(xi);
    imgs.push_back(q.project(xi));
    lambda.push_back(q.group.order_log(imgs.back()));
    total += lambda.back();
  }
  if (total != q.group.log_order() || closure(q.group, imgs).log_order() != q.group.log_order())
    throw PreconditionError("x does not project to a direct-sum basis of G^ab");
  for (int l : lambda)
    if (l == 0) throw PreconditionError("x contains an element of gamma_2");
  return lambda;
}

std::vector<Elem> default_abelian_basis(const PcGroup& g) {
  Subgroup span = frattini(Subgroup::whole(g));
  std::vector<Elem> x;
  for (int i = 0; i < g.ngens(); ++i) {
    Elem gi = g.gen(i);
    if (span.contains(gi)) continue;
    x.push_back(gi);
    std::vector<Elem> gens = span.gens();
    gens.push_back(gi);
    span = closure(g, gens);
  }
  try {
    abelian_basis_exponents(g, x);
    return x;
  } catch (const PreconditionError&) {
  }
  // greedy: an element of maximal order modulo the part already chosen,
  // lifted to one of the same order
  Quotient q = quotient(g, gamma(g, 2));
  const PcGroup& a = q.group;
  Subgroup h(a);
  x.clear();
  while (!h.is_whole()) {
    int best = -1;
    Elem pick;
    for (std::uint64_t i = 0; i < a.order(); ++i) {
      Elem y = a.element(i);
      int e = min_order_log_mod(a, h, y);
      if (e > best && a.order_log(y) == e) {
        best = e;
        pick = y;
      } else if (e > best) {
        best = e;
        pick = Elem();
      }
    }
    if (pick.size() == 0) {
      // some element of maximal relative order has a lift of the same order
      for (std::uint64_t i = 0; i < a.order(); ++i) {
        Elem y = a.element(i);
        if (min_order_log_mod(a, h, y) == best && a.order_log(y) == best) {
          pick = y;
          break;
        }
      }
    }
    x.push_back(q.lift(pick));
    std::vector<Elem> gens = h.gens();
    gens.push_back(pick);
    h = closure(a, gens);
  }
  abelian_basis_exponents(g, x);
  return x;
}

std::vector<Delta> delta_index_set(const PcGroup& g, const std::vector<Elem>& x) {
  require_small_algebra(g);
  auto lambda = abelian_basis_exponents(g, x);
  const int p = g.prime();
  const int n = static_cast<int>(x.size());
  std::vector<Delta> out;
  Delta d(n, 0);
  while (true) {
    int sum = 0;
    bool unit = false;
    for (int v : d) {
      sum += v;
      unit = unit || v % p != 0;
    }
    if (unit && sum >= 2) out.push_back(d);
    int i = n - 1;
    while (i >= 0 && d[i] + 1 == fp::ipow(p, lambda[i])) d[i--] = 0;
    if (i < 0) break;
    ++d[i];
  }
  return out;
}

std::string delta_str(const Delta& d) {
  std::string s = "A[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

bool AGenerator::is_central() const {
  return std::all_of(coords.begin(), coords.end(), [](int v) { return v == 0; });
}

namespace {

AGenerator make_a_generator(const PcGroup& g, const std::vector<Elem>& x, const Delta& delta, const Subgroup& g3) {
  AGenerator a{delta, {}, {}};
  for (const auto& xj : x) {
    Elem c = xj;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int r = 0; r < delta[i]; ++r) c = g.comm(c, x[i]);
    if (!g3.contains(c)) throw InternalError("A-generator action leaves gamma_3");
    a.action.push_back(c);
    auto v = g3.coords(c);
    a.coords.insert(a.coords.end(), v.begin(), v.end());
  }
  return a;
}

}  // namespace

AGenerator a_generator(const PcGroup& g, const std::vector<Elem>& x, const Delta& delta) {
  require_small_algebra(g);
  return make_a_generator(g, x, delta, gamma(g, 3));
}

std::vector<AGenerator> reduce_a_modulo_center(std::vector<AGenerator> gens) {
  std::vector<AGenerator> out;
  if (gens.empty()) return out;
  const std::size_t dim = gens.front().coords.size();
  if (dim == 0) return out;
  // prime is recovered from the action elements
  const int p = gens.front().action.front().tag() ? gens.front().action.front().tag() : 2;
  fp::EchelonBasis e(p, dim);
  for (auto& a : gens) {
    std::vector<fp::SparseVec::Entry> entries;
    for (std::size_t i = 0; i < dim; ++i)
      if (a.coords[i]) entries.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint8_t>(a.coords[i]));
    if (e.insert(fp::SparseVec(entries))) out.push_back(std::move(a));
  }
  return out;
}

SmallAlgebraModel::SmallAlgebraModel(const PcGroup& g, std::vector<Elem> x)
    : g_(g),
      x_(x.empty() ? default_abelian_basis(g) : std::move(x)),
      lambda_(abelian_basis_exponents(g, x_)),
      gamma3_(gamma(g, 3)),
      ab_(quotient(g, gamma(g, 2))),
      frame_(reframe(g, p_central_sequence(g))),
      s_(PcGroup::trivial(g.prime())) {
  require_small_algebra(g);
  const int p = g.prime();
  for (const auto& d : delta_index_set(g, x_)) all_.push_back(make_a_generator(g, x_, d, gamma3_));
  reduced_ = reduce_a_modulo_center(all_);

  // G^ab coordinates over x
  const int n = static_cast<int>(x_.size());
  ab_table_.assign(ab_.group.order(), {});
  std::vector<int> e(n, 0);
  while (true) {
    Elem q = ab_.group.identity();
    for (int j = 0; j < n; ++j) q = ab_.group.mul(q, ab_.group.pow(ab_.project(x_[j]), e[j]));
    ab_table_[ab_.group.index(q)] = e;
    int j = n - 1;
    while (j >= 0 && e[j] + 1 == fp::ipow(p, lambda_[j])) e[j--] = 0;
    if (j < 0) break;
    ++e[j];
  }

  // coordinates of every A-generator over the reduced ones
  const int r = a_rank();
  const std::size_t dim = all_.empty() ? 0 : all_.front().coords.size();
  fp::Matrix basis(p, 0, static_cast<int>(dim));
  for (const auto& a : reduced_) basis.append_row(a.coords);
  for (const auto& a : all_) {
    std::vector<int> avec(r, 0);
    if (r > 0 && !a.is_central()) {
      // solve avec * basis = coords through the left nullspace of [basis; coords]
      fp::Matrix aug = basis;
      aug.append_row(a.coords);
      auto ns = aug.nullspace(true);
      bool solved = false;
      for (const auto& v : ns)
        if (v[r] != 0) {
          int s = fp::inv(v[r], p);
          for (int k = 0; k < r; ++k) avec[k] = fp::mod(-static_cast<long long>(v[k]) * s, p);
          solved = true;
          break;
        }
      if (!solved) throw InternalError("A-generator outside the reduced span");
    }
    delta_to_avec_[a.delta] = avec;
  }

  // pc presentation of S-bar: a_1..a_r, then G on the frame
  const PcGroup& f = frame_.group;
  const int m = f.ngens();
  const int total = r + m;
  if (total > kMaxGens) throw ResourceError("small group algebra model exceeds the generator limit");
  auto lift = [&](const Elem& y) {
    Elem z(total);
    for (int j = 0; j < m; ++j) z[r + j] = y[j];
    return z;
  };
  std::vector<Elem> powers(total, Elem(total));
  std::vector<std::vector<Elem>> comms(total, std::vector<Elem>(total, Elem(total)));
  for (int j = 0; j < m; ++j) {
    powers[r + j] = lift(f.power_relation(j));
    for (int i = 0; i < j; ++i) comms[r + j][r + i] = lift(f.comm_relation(j, i));
    Elem gj = frame_.to_parent(f.gen(j));
    for (int k = 0; k < r; ++k) {
      std::vector<int> u(r, 0);
      u[k] = 1;
      comms[r + j][k] = lift(frame_.from_parent(action(u, gj)));
    }
  }
  s_ = PcGroup(p, std::move(powers), std::move(comms));
  s_.check_consistency();
}

std::vector<int> SmallAlgebraModel::abelian_coords(const Elem& g) const {
  return ab_table_[ab_.group.index(ab_.project(g))];
}

Elem SmallAlgebraModel::action(const std::vector<int>& u, const Elem& g) const {
  const int p = g_.prime();
  std::vector<int> c(gamma3_.log_order(), 0);
  if (c.empty()) return g_.identity();
  auto e = abelian_coords(g);
  const int k3 = gamma3_.log_order();
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] % p == 0) continue;
    for (int k = 0; k < a_rank(); ++k) {
      if (!u[k]) continue;
      long long s = static_cast<long long>(e[j]) * u[k];
      for (int t = 0; t < k3; ++t) c[t] = fp::mod(c[t] + s * reduced_[k].coords[j * k3 + t], p);
    }
  }
  Elem out = gamma3_.from_coords(c);
  return out;
}

SUnit SmallAlgebraModel::unit(const Elem& g) const {
  g_.check_parent(g);
  return {g, std::vector<int>(a_rank(), 0)};
}

SUnit SmallAlgebraModel::a_unit(const Delta& delta) const {
  auto it = delta_to_avec_.find(delta);
  if (it == delta_to_avec_.end()) throw UsageError(fmt::format("{} is not in the index set", delta_str(delta)));
  return {g_.identity(), it->second};
}

SUnit SmallAlgebraModel::mul(const SUnit& u, const SUnit& v) const {
  if (u.avec.size() != v.avec.size() || static_cast<int>(u.avec.size()) != a_rank())
    throw UsageError("S-unit from a different model");
  // (g a)(h b) = g h phi_a(h)^-1 a b
  Elem g = g_.mul(g_.mul(u.g, v.g), g_.inv(action(u.avec, v.g)));
  std::vector<int> a(a_rank());
  for (int k = 0; k < a_rank(); ++k) a[k] = (u.avec[k] + v.avec[k]) % g_.prime();
  return {g, a};
}

SUnit SmallAlgebraModel::inv(const SUnit& u) const {
  Elem gi = g_.inv(u.g);
  Elem g = g_.mul(gi, g_.inv(action(u.avec, u.g)));
  std::vector<int> a(a_rank());
  for (int k = 0; k < a_rank(); ++k) a[k] = fp::mod(-u.avec[k], g_.prime());
  return {g, a};
}

SUnit SmallAlgebraModel::pow(const SUnit& u, long long k) const {
  SUnit base = k < 0 ? inv(u) : u;
  if (k < 0) k = -k;
  SUnit acc = unit(g_.identity());
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

SUnit SmallAlgebraModel::comm(const SUnit& u, const SUnit& v) const {
  return mul(mul(inv(u), inv(v)), mul(u, v));
}

std::string SmallAlgebraModel::str(const SUnit& u) const {
  std::string s = u.g.str();
  for (int k = 0; k < a_rank(); ++k) {
    if (!u.avec[k]) continue;
    std::string f = delta_str(reduced_[k].delta);
    if (u.avec[k] != 1) f += "^" + std::to_string(u.avec[k]);
    s = s == "1" ? f : s + "*" + f;
  }
  return s;
}

Elem SmallAlgebraModel::to_s(const SUnit& u) const {
  // S-bar normal form a_u g' with g' = a_u^-1 g a_u = g phi_u(g)
  Elem gp = frame_.from_parent(g_.mul(u.g, action(u.avec, u.g)));
  Elem e(s_.ngens());
  for (int k = 0; k < a_rank(); ++k) e[k] = static_cast<std::uint8_t>(u.avec[k]);
  for (int j = 0; j < gp.size(); ++j) e[a_rank() + j] = gp[j];
  e.set_tag(g_.prime());
  return e;
}

SUnit SmallAlgebraModel::from_s(const Elem& e) const {
  std::vector<int> u(a_rank());
  for (int k = 0; k < a_rank(); ++k) u[k] = e[k];
  Elem y(frame_.group.ngens());
  for (int j = 0; j < y.size(); ++j) y[j] = e[a_rank() + j];
  Elem gp = frame_.to_parent(y);
  return {g_.mul(gp, g_.inv(action(u, gp))), u};
}

Subgroup SmallAlgebraModel::g_in_s() const {
  std::vector<Elem> gens;
  for (int j = a_rank(); j < s_.ngens(); ++j) gens.push_back(s_.gen(j));
  return closure(s_, gens);
}

Subgroup SmallAlgebraModel::a_in_s() const {
  std::vector<Elem> gens;
  for (int k = 0; k < a_rank(); ++k) gens.push_back(s_.gen(k));
  return closure(s_, gens);
}

Subgroup SmallAlgebraModel::embed(const Subgroup& h) const {
  std::vector<Elem> gens;
  for (const auto& y : h.gens()) gens.push_back(to_s(unit(y)));
  return closure(s_, gens);
}

bool StructureReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ReportClause& c) { return c.pass; });
}

BruteSmallAlgebra::BruteSmallAlgebra(const PcGroup& g)
    : a_(g), ideal_(augmentation_product_ideal(a_, gamma(g, 2))) {}

AlgebraElement BruteSmallAlgebra::mul(const AlgebraElement& x, const AlgebraElement& y) const {
  return reduce(a_.mul(x, y));
}

AlgebraElement BruteSmallAlgebra::power(const AlgebraElement& x, long long k) const {
  if (k < 0) return power(inverse(x), -k);
  AlgebraElement acc = a_.one(), base = x;
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

AlgebraElement BruteSmallAlgebra::inverse(const AlgebraElement& u) const {
  if (a_.augmentation(u) != 1) throw UsageError("inverse: augmentation must be 1");
  // u = 1 + n with n nilpotent: u^-1 = sum (-n)^k
  AlgebraElement mn = reduce(a_.scale(a_.sub(u, a_.one()), -1));
  AlgebraElement acc = a_.one(), term = a_.one();
  while (true) {
    term = mul(term, mn);
    if (term.empty()) break;
    acc = a_.add(acc, term);
  }
  return reduce(acc);
}

AlgebraElement BruteSmallAlgebra::a_element(const std::vector<Elem>& x, const Delta& delta) const {
  AlgebraElement m = a_.one();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int r = 0; r < delta[i]; ++r) m = mul(m, a_.bar(x[i]));
  return reduce(a_.add(a_.one(), m));
}

AlgebraElement BruteSmallAlgebra::embed(const SmallAlgebraModel& m, const Elem& g, const std::vector<int>& e) const {
  AlgebraElement acc = element(g);
  for (int k = 0; k < m.a_rank(); ++k)
    if (e[k]) acc = mul(acc, power(a_element(m.x(), m.reduced()[k].delta), e[k]));
  return acc;
}

StructureReport structure_report(const SmallAlgebraModel& m, bool brute, int random_pairs, std::uint64_t seed) {
  StructureReport rep;
  const PcGroup& g = m.group();
  const PcGroup& s = m.s_group();
  Subgroup gw = Subgroup::whole(g);
  Subgroup sw = Subgroup::whole(s);
  Subgroup a = m.a_in_s();
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.clauses.push_back({std::move(name), ok, std::move(detail)});
  };

  auto lg = lower_central_series(gw);
  auto ls = lower_central_series(sw);
  std::size_t len = std::max(lg.size(), ls.size());
  bool ok = true;
  std::string detail;
  for (std::size_t i = 1; i < len; ++i) {
    Subgroup gi = m.embed(i < lg.size() ? lg[i] : lg.back());
    const Subgroup& si = i < ls.size() ? ls[i] : ls.back();
    if (!(gi == si)) {
      ok = false;
      detail = fmt::format("differs at i = {}", i + 1);
      break;
    }
  }
  if (ok) detail = fmt::format("|gamma_2| = {}^{}", g.prime(), lg.size() > 1 ? lg[1].log_order() : 0);
  add("gamma_i(S) = gamma_i(G) for i >= 2", ok, detail);

  Subgroup zs = center(sw);
  Subgroup gs2 = ls.size() > 1 ? ls[1] : Subgroup(s);
  add("Gamma(S) = Gamma(G)", intersection(zs, gs2) == m.embed(gamma_cap(g)));

  add("[A^p, S] = 1", commutator(agemo(a), sw).is_trivial());

  add("G ∩ Z(S) = Z(G)", intersection(m.g_in_s(), zs) == m.embed(center(gw)));

  auto ug = upper_central_series(g);
  auto us = upper_central_series(s);
  Subgroup z2g = m.embed(ug.size() > 2 ? ug[2] : ug.back());
  Subgroup z2s = us.size() > 2 ? us[2] : us.back();
  bool z2 = z2s == join(z2g, a) && intersection(z2g, a).is_trivial();
  add("Z_2(S) = Z_2(G) x A", z2, fmt::format("|A| = {}^{}", g.prime(), m.a_rank()));

  if (!brute || g.order() > brute_bound()) return rep;

  BruteSmallAlgebra b(g);
  const auto& alg = b.algebra();
  Subgroup g2 = lg.size() > 1 ? lg[1] : Subgroup(g);
  std::uint64_t ab_order = g.order() / g2.order();
  add("brute: dim kG/I(kG)I(k gamma_2) = |G^ab| + log |gamma_2|", b.dim() == ab_order + g2.log_order(),
      fmt::format("{}", b.dim()));

  // action formula, [A, A] = 1, [A, gamma_2] = 1 and a^p central for every delta
  bool action_ok = true, abelian_ok = true, g2_ok = true, ap_ok = true;
  std::vector<AlgebraElement> as;
  for (const auto& gen : m.generators()) as.push_back(b.a_element(m.x(), gen.delta));
  for (std::size_t k = 0; k < as.size(); ++k) {
    const AlgebraElement& ak = as[k];
    AlgebraElement aki = b.inverse(ak);
    for (std::size_t j = 0; j < m.x().size(); ++j) {
      const Elem& xj = m.x()[j];
      auto c = b.mul(b.mul(b.element(g.inv(xj)), aki), b.mul(b.element(xj), ak));
      if (!(c == b.element(m.generators()[k].action[j]))) action_ok = false;
    }
    for (const auto& y : g2.gens())
      if (!(b.mul(ak, b.element(y)) == b.mul(b.element(y), ak))) g2_ok = false;
    auto ap = b.power(ak, g.prime());
    for (int i = 0; i < g.ngens(); ++i)
      if (!(b.mul(ap, b.element(g.gen(i))) == b.mul(b.element(g.gen(i)), ap))) ap_ok = false;
  }
  for (std::size_t k = 0; k < as.size() && k < 40; ++k)
    for (std::size_t l = k + 1; l < as.size() && l < 40; ++l)
      if (!(b.mul(as[k], as[l]) == b.mul(as[l], as[k]))) abelian_ok = false;
  add("brute: [x, 1 + x-bar^delta] is the iterated commutator", action_ok,
      fmt::format("{} generators", as.size()));
  add("brute: A is abelian", abelian_ok);
  add("brute: [A, gamma_2] = 1", g2_ok);
  add("brute: a^p central", ap_ok);

  // s_mul against the algebra, exponents of the A-part kept as integers
  std::mt19937_64 rng(seed);
  bool mul_ok = true;
  for (int t = 0; t < random_pairs && mul_ok; ++t) {
    auto rnd = [&]() {
      SUnit u{g.element(rng() % g.order()), std::vector<int>(m.a_rank())};
      for (auto& v : u.avec) v = static_cast<int>(rng() % g.prime());
      return u;
    };
    SUnit u = rnd(), v = rnd();
    SUnit w = m.mul(u, v);
    std::vector<int> sum(m.a_rank());
    for (int k = 0; k < m.a_rank(); ++k) sum[k] = u.avec[k] + v.avec[k];
    auto lhs = b.mul(b.embed(m, u.g, u.avec), b.embed(m, v.g, v.avec));
    if (!(lhs == b.embed(m, w.g, sum))) mul_ok = false;
  }
  add("brute: S-unit products agree with the algebra", mul_ok, fmt::format("{} random pairs", random_pairs));
  return rep;
}

namespace {

[[noreturn]] void bad(int line, const std::string& msg) { throw ParseError(line, msg); }

}  // namespace

Witness parse_witness(const std::string& text) {
  Witness w;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t pos = 0;
    auto skip = [&]() {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    auto number = [&](bool allow_sign) {
      skip();
      std::size_t start = pos;
      if (allow_sign && pos < line.size() && (line[pos] == '-' || line[pos] == '+')) ++pos;
      while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
      std::string tok = line.substr(start, pos - start);
      if (tok.empty() || tok == "-" || tok == "+") bad(lineno, "expected an integer");
      return std::stoll(tok);
    };
    skip();
    if (pos == line.size()) continue;
    if (line.compare(pos, 6, "htilde") != 0) bad(lineno, "expected htilde<i> = <word>");
    pos += 6;
    long long idx = number(false);
    skip();
    if (pos >= line.size() || line[pos] != '=') bad(lineno, "expected '='");
    ++pos;
    if (idx < 1) bad(lineno, "generator index must be positive");
    if (w.images.count(static_cast<int>(idx))) bad(lineno, fmt::format("duplicate image for htilde{}", idx));
    WitnessWord word;
    bool any = false;
    while (true) {
      skip();
      if (pos == line.size()) break;
      if (line[pos] == '*') {
        ++pos;
        continue;
      }
      WitnessLetter l;
      if (line[pos] == '1' && !any) {
        ++pos;
        any = true;
        continue;
      }
      if (line[pos] == 'g') {
        ++pos;
        l.gen = static_cast<int>(number(false));
        if (l.gen < 1) bad(lineno, "generator index must be positive");
      } else if (line.compare(pos, 2, "A[") == 0) {
        pos += 2;
        l.is_a = true;
        while (true) {
          l.delta.push_back(static_cast<int>(number(false)));
          skip();
          if (pos < line.size() && line[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < line.size() && line[pos] == ']') {
            ++pos;
            break;
          }
          bad(lineno, "unterminated A[...]");
        }
      } else {
        bad(lineno, fmt::format("unexpected '{}'", line[pos]));
      }
      skip();
      if (pos < line.size() && line[pos] == '^') {
        ++pos;
        l.exp = number(true);
      }
      word.push_back(l);
      any = true;
    }
    if (!any) bad(lineno, "empty word");
    w.images[static_cast<int>(idx)] = word;
  }
  return w;
}

std::string to_string(WitnessVerdict v) {
  switch (v) {
    case WitnessVerdict::pass:
      return "PASS";
    case WitnessVerdict::fail:
      return "FAIL";
    case WitnessVerdict::unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

WitnessReport verify_witness(const PcGroup& g, const PcGroup& h, const Witness& w) {
  if (g.prime() != h.prime()) throw PreconditionError("groups over different primes");
  require_small_algebra(g);
  require_small_algebra(h);
  SmallAlgebraModel m(g);
  const PcGroup& s = m.s_group();
  const int n = h.ngens();
  WitnessReport rep;
  rep.expected_log_order = h.log_order();

  std::vector<std::optional<Elem>> img(n);
  std::vector<bool> derived(n, false);
  for (const auto& [i, word] : w.images) {
    if (i > n) throw UsageError(fmt::format("htilde{} exceeds the generator count of H", i));
    Elem acc = s.identity();
    for (const auto& l : word) {
      SUnit u;
      if (l.is_a) {
        if (static_cast<int>(l.delta.size()) != static_cast<int>(m.x().size()))
          throw UsageError(fmt::format("{} has the wrong length", delta_str(l.delta)));
        u = m.a_unit(l.delta);
      } else {
        if (l.gen > g.ngens()) throw UsageError(fmt::format("g{} exceeds the generator count of G", l.gen));
        u = m.unit(g.gen(l.gen - 1));
      }
      acc = s.mul(acc, s.pow(m.to_s(u), l.exp));
    }
    img[i - 1] = acc;
  }

  // fill missing images from relations whose right side is a single generator
  auto single = [&](const Elem& word, int& k, int& e) {
    k = -1;
    for (int t = 0; t < word.size(); ++t)
      if (word[t]) {
        if (k >= 0) return false;
        k = t;
        e = word[t];
      }
    return k >= 0;
  };
  auto settle = [&](const Elem& value, int k, int e) {
    int ol = s.order_log(value);
    long long inv = inverse_mod_power(e, s.prime(), ol);
    if (inv < 0) return;
    img[k] = s.pow(value, inv);
    derived[k] = true;
  };
  // power relations first, commutator relations only when those are exhausted
  auto derive = [&](bool use_comms) {
    bool progress = false;
    for (int i = 0; i < n; ++i) {
      int k, e;
      if (!use_comms && img[i] && single(h.power_relation(i), k, e) && !img[k]) {
        settle(s.pow_p(*img[i]), k, e);
        progress = progress || img[k].has_value();
      }
      for (int j = i + 1; use_comms && j < n; ++j)
        if (img[i] && img[j] && single(h.comm_relation(j, i), k, e) && !img[k]) {
          settle(s.comm(*img[j], *img[i]), k, e);
          if (img[k]) return true;
        }
    }
    return progress;
  };
  while (derive(false) || derive(true)) {
  }
  for (int i = 0; i < n; ++i) {
    if (!img[i]) {
      rep.reason = fmt::format("no image for htilde{} and none derivable", i + 1);
      return rep;
    }
    rep.images.push_back(fmt::format("htilde{} = {}{}", i + 1, m.str(m.from_s(*img[i])), derived[i] ? " (derived)" : ""));
  }

  auto eval = [&](const Elem& word) {
    Elem acc = s.identity();
    for (int t = 0; t < word.size(); ++t)
      if (word[t]) acc = s.mul(acc, s.pow(*img[t], word[t]));
    return acc;
  };
  auto hword = [&](const Elem& word) {
    std::string out;
    for (int t = 0; t < word.size(); ++t)
      if (word[t]) {
        if (!out.empty()) out += "*";
        out += fmt::format("htilde{}", t + 1);
        if (word[t] != 1) out += fmt::format("^{}", word[t]);
      }
    return out.empty() ? std::string("1") : out;
  };
  bool all_ok = true;
  auto check = [&](std::string name, const Elem& lhs, const Elem& rhs) {
    bool ok = lhs == rhs;
    all_ok = all_ok && ok;
    rep.relations.push_back({std::move(name), m.str(m.from_s(lhs)), m.str(m.from_s(rhs)), ok});
  };
  for (int i = 0; i < n; ++i)
    check(fmt::format("htilde{}^{} = {}", i + 1, h.prime(), hword(h.power_relation(i))), s.pow_p(*img[i]),
          eval(h.power_relation(i)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      check(fmt::format("[htilde{},htilde{}] = {}", j + 1, i + 1, hword(h.comm_relation(j, i))),
            s.comm(*img[j], *img[i]), eval(h.comm_relation(j, i)));

  std::vector<Elem> gens;
  for (const auto& e : img) gens.push_back(*e);
  Subgroup ht = closure(s, gens);
  rep.image_log_order = ht.log_order();
  rep.meets_a_trivially = intersection(ht, m.a_in_s()).is_trivial();

  bool ok = all_ok && rep.image_log_order == rep.expected_log_order && rep.meets_a_trivially;
  if (ok && g.order() <= brute_bound() && ht.order() <= enumeration_bound()) {
    BruteSmallAlgebra b(g);
    fp::EchelonBasis span(g.prime(), b.algebra().dim());
    for (const auto& e : ht.elements()) {
      SUnit u = m.from_s(e);
      span.insert(b.embed(m, u.g, u.avec));
      if (span.rank() == b.dim()) break;
    }
    rep.spans_small_algebra = span.rank() == b.dim();
    ok = *rep.spans_small_algebra;
  }
  if (ok) {
    rep.verdict = WitnessVerdict::pass;
  } else {
    rep.verdict = WitnessVerdict::fail;
    if (!all_ok) rep.reason = "relation mismatch";
    else if (rep.image_log_order != rep.expected_log_order) rep.reason = "image subgroup has the wrong order";
    else if (!rep.meets_a_trivially) rep.reason = "image subgroup meets A";
    else rep.reason = "images do not span the small group algebra";
  }
  return rep;
}

}  // namespace mipkit
