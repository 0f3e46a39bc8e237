#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <unordered_map>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"
#include "mipkit/pcgroup.hpp"

namespace mipkit {

Subgroup make_subgroup(const PcGroup& g, std::vector<Elem> igs) {
  Subgroup s(g);
  s.igs_ = std::move(igs);
  for (std::size_t k = 0; k < s.igs_.size(); ++k) s.slot_[s.igs_[k].depth()] = static_cast<int>(k);
  return s;
}

Subgroup::Subgroup(const PcGroup& g) : g_(g), slot_(g.ngens(), -1) {}

Subgroup Subgroup::whole(const PcGroup& g) {
  std::vector<Elem> igs;
  for (int i = 0; i < g.ngens(); ++i) {
    Elem x = g.identity();
    x[i] = 1;
    igs.push_back(x);
  }
  return make_subgroup(g, std::move(igs));
}

std::vector<int> Subgroup::depths() const {
  std::vector<int> d;
  for (const auto& y : igs_) d.push_back(y.depth());
  return d;
}

std::uint64_t Subgroup::order() const {
  return static_cast<std::uint64_t>(fp::ipow(g_.prime(), log_order()));
}

Elem Subgroup::sift(const Elem& x0) const {
  g_.check_parent(x0);
  Elem x = x0;
  for (std::size_t k = 0; k < igs_.size(); ++k) {
    int d = igs_[k].depth();
    if (x[d]) x = g_.mul(g_.pow(igs_[k], -static_cast<long long>(x[d])), x);
  }
  return x;
}

std::vector<int> Subgroup::coords(const Elem& x0) const {
  g_.check_parent(x0);
  Elem x = x0;
  std::vector<int> c;
  for (const auto& y : igs_) {
    int e = x[y.depth()];
    c.push_back(e);
    if (e) x = g_.mul(g_.pow(y, -e), x);
  }
  if (!x.is_identity()) throw UsageError("element is not in the subgroup");
  return c;
}

Elem Subgroup::from_coords(const std::vector<int>& c) const {
  Elem x = g_.identity();
  for (std::size_t k = 0; k < igs_.size(); ++k)
    if (c[k]) x = g_.mul(x, g_.pow(igs_[k], c[k]));
  return x;
}

bool Subgroup::contains(const Subgroup& o) const {
  for (const auto& y : o.igs_)
    if (!contains(y)) return false;
  return true;
}

bool Subgroup::is_normal() const {
  for (const auto& y : igs_)
    for (int i = 0; i < g_.ngens(); ++i)
      if (!contains(g_.comm(y, g_.gen(i)))) return false;
  return true;
}

bool Subgroup::is_abelian() const {
  for (std::size_t a = 0; a < igs_.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (!g_.comm(igs_[a], igs_[b]).is_identity()) return false;
  return true;
}

std::vector<Elem> Subgroup::elements() const {
  if (order() > enumeration_bound()) throw ResourceError(fmt::format("subgroup of order {} exceeds enumeration bound", order()));
  std::vector<Elem> out{g_.identity()};
  for (auto it = igs_.rbegin(); it != igs_.rend(); ++it) {
    std::vector<Elem> next;
    next.reserve(out.size() * g_.prime());
    Elem pw = g_.identity();
    std::vector<Elem> pows;
    for (int e = 0; e < g_.prime(); ++e) {
      pows.push_back(pw);
      pw = g_.mul(pw, *it);
    }
    for (const auto& q : pows)
      for (const auto& x : out) next.push_back(g_.mul(q, x));
    out = std::move(next);
  }
  return out;
}

Subgroup closure(const PcGroup& g, const std::vector<Elem>& gens, const std::vector<Elem>& normalizers) {
  const int m = g.ngens();
  const int p = g.prime();
  std::vector<std::optional<Elem>> at(m);
  std::vector<int> order;
  std::vector<Elem> todo(gens.rbegin(), gens.rend());
  while (!todo.empty()) {
    Elem x = todo.back();
    todo.pop_back();
    g.check_parent(x);
    int d;
    while ((d = x.depth()) < m && at[d]) x = g.mul(g.pow(*at[d], -static_cast<long long>(x[d])), x);
    if (d == m) continue;
    x = g.pow(x, fp::inv(x[d], p));
    at[d] = x;
    order.push_back(d);
    todo.push_back(g.pow_p(x));
    for (int e : order) todo.push_back(g.comm(x, *at[e]));
    for (const auto& n : normalizers) todo.push_back(g.comm(x, n));
  }
  std::vector<Elem> igs;
  for (int d = 0; d < m; ++d)
    if (at[d]) igs.push_back(*at[d]);
  for (std::size_t k = 0; k < igs.size(); ++k)
    for (std::size_t l = k + 1; l < igs.size(); ++l) {
      int e = igs[k][igs[l].depth()];
      if (e) igs[k] = g.mul(igs[k], g.pow(igs[l], -e));
    }
  return make_subgroup(g, std::move(igs));
}

Subgroup normal_closure(const PcGroup& g, const std::vector<Elem>& gens) {
  std::vector<Elem> n;
  for (int i = 0; i < g.ngens(); ++i) n.push_back(g.gen(i));
  return closure(g, gens, n);
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (!a.group().same_as(b.group())) throw UsageError("subgroups of different groups");
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  std::vector<Elem> gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return closure(a.group(), gens);
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  if (!a.group().same_as(b.group())) throw UsageError("subgroups of different groups");
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  const Subgroup& small = a.log_order() <= b.log_order() ? a : b;
  const Subgroup& big = a.log_order() <= b.log_order() ? b : a;
  Subgroup cur(a.group());
  std::vector<Elem> found;
  for (const auto& x : small.elements()) {
    if (big.contains(x) && !cur.contains(x)) {
      found.push_back(x);
      cur = closure(a.group(), found);
    }
  }
  return cur;
}

Subgroup commutator(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> cs;
  const PcGroup& g = a.group();
  for (const auto& x : a.gens())
    for (const auto& y : b.gens()) cs.push_back(g.comm(x, y));
  std::vector<Elem> norm = a.gens();
  norm.insert(norm.end(), b.gens().begin(), b.gens().end());
  return closure(g, cs, norm);
}

Subgroup agemo(const Subgroup& h, int k) {
  const PcGroup& g = h.group();
  auto pk = [&](Elem x) {
    for (int t = 0; t < k; ++t) x = g.pow_p(x);
    return x;
  };
  if (k == 0) return h;
  if (h.is_abelian()) {
    std::vector<Elem> gens;
    for (const auto& y : h.gens()) gens.push_back(pk(y));
    return closure(g, gens);
  }
  if (nilpotency_class(h) < g.prime()) {
    // Regular: agemo_k is agemo_1 iterated, and by Hall-Petrescu agemo_1(H)
    // is the normal closure of the generators' p-th powers and agemo_1(H').
    if (k > 1) return agemo(agemo(h, k - 1), 1);
    std::vector<Elem> gens = agemo(commutator(h, h), 1).gens();
    for (const auto& y : h.gens()) gens.push_back(g.pow_p(y));
    return closure(g, gens, h.gens());
  }
  Subgroup cur(g);
  std::vector<Elem> found;
  for (const auto& x : h.elements()) {
    Elem y = pk(x);
    if (!cur.contains(y)) {
      found.push_back(y);
      cur = closure(g, found);
    }
  }
  return cur;
}

Subgroup omega(const Subgroup& h) {
  const PcGroup& g = h.group();
  Subgroup cur(g);
  std::vector<Elem> found;
  for (const auto& x : h.elements()) {
    if (g.pow_p(x).is_identity() && !cur.contains(x)) {
      found.push_back(x);
      cur = closure(g, found);
    }
  }
  return cur;
}

Subgroup frattini(const Subgroup& h) {
  const PcGroup& g = h.group();
  std::vector<Elem> gens;
  const auto& y = h.gens();
  for (std::size_t a = 0; a < y.size(); ++a) {
    gens.push_back(g.pow_p(y[a]));
    for (std::size_t b = 0; b < a; ++b) gens.push_back(g.comm(y[a], y[b]));
  }
  return closure(g, gens, y);
}

Subgroup centralizer(const Subgroup& h, const Elem& x) {
  const PcGroup& g = h.group();
  std::vector<Elem> orbit{x};
  std::vector<Elem> trans{g.identity()};
  std::unordered_map<std::uint64_t, std::size_t> where{{g.index(x), 0}};
  Subgroup c(g);
  std::vector<Elem> schreier;
  for (std::size_t at = 0; at < orbit.size(); ++at) {
    for (const auto& y : h.gens()) {
      Elem img = g.conj(orbit[at], y);
      Elem t = g.mul(trans[at], y);
      auto [it, fresh] = where.try_emplace(g.index(img), orbit.size());
      if (fresh) {
        orbit.push_back(img);
        trans.push_back(t);
        continue;
      }
      Elem s = g.mul(t, g.inv(trans[it->second]));
      if (c.contains(s)) continue;
      schreier.push_back(s);
      c = closure(g, schreier);
    }
  }
  return c;
}

Subgroup centralizer(const Subgroup& h, const Subgroup& s) {
  Subgroup c = h;
  for (const auto& x : s.gens()) c = centralizer(c, x);
  return c;
}

Subgroup center(const Subgroup& h) { return centralizer(h, h); }

std::vector<Subgroup> lower_central_series(const Subgroup& h) {
  std::vector<Subgroup> out{h};
  while (!out.back().is_trivial()) {
    Subgroup next = commutator(h, out.back());
    if (next == out.back()) throw InternalError("lower central series does not terminate");
    out.push_back(next);
  }
  return out;
}

std::vector<Subgroup> upper_central_series(const PcGroup& g) {
  std::vector<Subgroup> out{Subgroup(g)};
  while (!out.back().is_whole()) {
    Quotient q = quotient(g, out.back());
    // central of order p modulo the tail
    Subgroup z = q.preimage(omega(center(Subgroup::whole(q.group))));
    if (z == out.back()) throw InternalError("upper central series does not terminate");
    out.push_back(z);
  }
  return out;
}

int nilpotency_class(const Subgroup& h) { return static_cast<int>(lower_central_series(h).size()) - 1; }

Subgroup gamma_cap(const PcGroup& g) {
  Subgroup w = Subgroup::whole(g);
  return intersection(center(w), commutator(w, w));
}

int rank(const Subgroup& h) { return h.log_order() - frattini(h).log_order(); }

int exponent_log(const Subgroup& h) {
  if (h.is_abelian()) {
    auto inv = abelian_invariants(h);
    return inv.empty() ? 0 : inv.front();
  }
  int e = 0;
  for (const auto& x : h.elements()) e = std::max(e, h.group().order_log(x));
  return e;
}

std::vector<int> abelian_invariants(const Subgroup& h) {
  if (!h.is_abelian()) throw PreconditionError("abelian_invariants: subgroup is not abelian");
  std::vector<int> a{h.log_order()};
  Subgroup cur = h;
  while (!cur.is_trivial()) {
    cur = agemo(cur, 1);
    a.push_back(cur.log_order());
  }
  a.push_back(0);
  std::vector<int> out;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    int ge = a[k] - a[k + 1];
    int ge_next = k + 2 < a.size() ? a[k + 1] - a[k + 2] : 0;
    for (int t = 0; t < ge - ge_next; ++t) out.push_back(static_cast<int>(k) + 1);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

Elem Embedding::to_parent(const Elem& x) const { return image.from_coords(x.exps()); }

Elem Embedding::from_parent(const Elem& y) const {
  auto c = image.coords(y);
  Elem x(static_cast<int>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) x[static_cast<int>(k)] = static_cast<std::uint8_t>(c[k]);
  return x;
}

Embedding as_group(const Subgroup& h) {
  const PcGroup& g = h.group();
  const int r = h.log_order();
  auto to_elem = [&](const Elem& y) {
    auto c = h.coords(y);
    Elem x(r);
    for (int k = 0; k < r; ++k) x[k] = static_cast<std::uint8_t>(c[k]);
    return x;
  };
  std::vector<Elem> powers;
  std::vector<std::vector<Elem>> comms(r, std::vector<Elem>(r, Elem(r)));
  for (int k = 0; k < r; ++k) {
    powers.push_back(to_elem(g.pow_p(h.gens()[k])));
    for (int i = 0; i < k; ++i) comms[k][i] = to_elem(g.comm(h.gens()[k], h.gens()[i]));
  }
  return Embedding{PcGroup(g.prime(), std::move(powers), std::move(comms)), h};
}

Elem Quotient::project(const Elem& x) const {
  Elem r = kernel.sift(x);
  Elem y(static_cast<int>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) y[static_cast<int>(k)] = r[kept[k]];
  return y;
}

Elem Quotient::lift(const Elem& y) const {
  Elem x = kernel.group().identity();
  for (std::size_t k = 0; k < kept.size(); ++k) x[kept[k]] = y[static_cast<int>(k)];
  return x;
}

Subgroup Quotient::image(const Subgroup& s) const {
  std::vector<Elem> gens;
  for (const auto& y : s.gens()) gens.push_back(project(y));
  return closure(group, gens);
}

Subgroup Quotient::preimage(const Subgroup& s) const {
  std::vector<Elem> gens = kernel.gens();
  for (const auto& y : s.gens()) gens.push_back(lift(y));
  return closure(kernel.group(), gens);
}

Quotient quotient(const PcGroup& g, const Subgroup& n) {
  if (!n.group().same_as(g)) throw UsageError("subgroup of a different group");
  if (!n.is_normal()) throw PreconditionError("quotient: subgroup is not normal");
  std::vector<int> kept;
  auto nd = n.depths();
  for (int i = 0; i < g.ngens(); ++i)
    if (std::find(nd.begin(), nd.end(), i) == nd.end()) kept.push_back(i);
  Quotient q{PcGroup::trivial(g.prime()), n, kept};
  const int r = static_cast<int>(kept.size());
  std::vector<Elem> powers;
  std::vector<std::vector<Elem>> comms(r, std::vector<Elem>(r, Elem(r)));
  for (int k = 0; k < r; ++k) {
    powers.push_back(q.project(g.pow_p(g.gen(kept[k]))));
    for (int i = 0; i < k; ++i) comms[k][i] = q.project(g.comm(g.gen(kept[k]), g.gen(kept[i])));
  }
  q.group = PcGroup(g.prime(), std::move(powers), std::move(comms));
  return q;
}

std::vector<ConjugacyClass> conjugacy_classes(const PcGroup& g) {
  const std::uint64_t n = g.order();
  if (n > enumeration_bound()) throw ResourceError(fmt::format("conjugacy classes: |G| = {} exceeds enumeration bound", n));
  std::vector<bool> seen(n, false);
  std::vector<ConjugacyClass> out;
  std::vector<Elem> gens, gens_inv;
  for (int i = 0; i < g.ngens(); ++i) gens.push_back(g.gen(i));
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    if (seen[idx]) continue;
    Elem rep = g.element(idx);
    seen[idx] = true;
    std::vector<Elem> orbit{rep};
    for (std::size_t at = 0; at < orbit.size(); ++at)
      for (const auto& y : gens) {
        Elem c = g.conj(orbit[at], y);
        auto ci = g.index(c);
        if (!seen[ci]) {
          seen[ci] = true;
          orbit.push_back(c);
        }
      }
    out.push_back({rep, orbit.size()});
  }
  return out;
}

Elem Reframed::to_parent(const Elem& x) const {
  const PcGroup& g = tails.front().group();
  Elem y = g.identity();
  for (std::size_t k = 0; k < seq.size(); ++k)
    if (x[static_cast<int>(k)]) y = g.mul(y, g.pow(seq[k], x[static_cast<int>(k)]));
  return y;
}

Elem Reframed::from_parent(const Elem& y0) const {
  const PcGroup& g = tails.front().group();
  const int m = static_cast<int>(seq.size());
  Elem y = y0;
  Elem x(m);
  for (int k = 0; k < m; ++k) {
    int found = -1;
    for (int e = 0; e < g.prime(); ++e) {
      Elem z = g.mul(g.pow(seq[k], -e), y);
      if (tails[k + 1].contains(z)) {
        found = e;
        y = z;
        break;
      }
    }
    if (found < 0) throw UsageError("element not expressible over the sequence");
    x[k] = static_cast<std::uint8_t>(found);
  }
  return x;
}

Reframed reframe(const PcGroup& g, const std::vector<Elem>& seq) {
  const int m = static_cast<int>(seq.size());
  if (m != g.ngens()) throw PreconditionError("reframe: sequence length differs from composition length");
  Reframed r{PcGroup::trivial(g.prime()), seq, {}};
  r.tails.assign(m + 1, Subgroup(g));
  for (int k = m - 1; k >= 0; --k) {
    std::vector<Elem> gens(seq.begin() + k, seq.end());
    r.tails[k] = closure(g, gens);
    if (r.tails[k].log_order() != m - k) throw PreconditionError("reframe: sequence is not a polycyclic sequence");
  }
  std::vector<Elem> powers;
  std::vector<std::vector<Elem>> comms(m, std::vector<Elem>(m, Elem(m)));
  for (int k = 0; k < m; ++k) {
    powers.push_back(r.from_parent(g.pow_p(seq[k])));
    for (int i = 0; i < k; ++i) comms[k][i] = r.from_parent(g.comm(seq[k], seq[i]));
  }
  try {
    r.group = PcGroup(g.prime(), std::move(powers), std::move(comms));
  } catch (const UsageError& e) {
    throw PreconditionError(fmt::format("reframe: sequence does not refine a central series ({})", e.what()));
  }
  return r;
}

Reframed random_relabel(const PcGroup& g, std::mt19937_64& rng) {
  const int m = g.ngens();
  std::vector<Elem> seq(m, g.identity());
  Subgroup tail(g);
  std::uniform_int_distribution<int> d(0, g.prime() - 1);
  for (int k = m - 1; k >= 0; --k) {
    Quotient q = quotient(g, tail);
    // central of order p modulo the tail
    Subgroup z = q.preimage(omega(center(Subgroup::whole(q.group))));
    Elem x;
    do {
      std::vector<int> c(z.log_order());
      for (auto& v : c) v = d(rng);
      x = z.from_coords(c);
    } while (tail.contains(x));
    seq[k] = x;
    std::vector<Elem> gens = tail.gens();
    gens.push_back(x);
    tail = closure(g, gens);
  }
  return reframe(g, seq);
}

}  // namespace mipkit
