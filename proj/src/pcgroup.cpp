#include "mipkit/pcgroup.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <limits>
#include <random>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"

namespace mipkit {

Elem::Elem(int n, std::initializer_list<int> exps) : n_(static_cast<std::uint8_t>(n)) {
  int i = 0;
  for (int v : exps) e_[i++] = static_cast<std::uint8_t>(v);
}

bool Elem::is_identity() const {
  for (int i = 0; i < n_; ++i)
    if (e_[i]) return false;
  return true;
}

int Elem::depth() const {
  for (int i = 0; i < n_; ++i)
    if (e_[i]) return i;
  return n_;
}

std::string Elem::str() const {
  std::string s;
  for (int i = 0; i < n_; ++i) {
    if (!e_[i]) continue;
    if (!s.empty()) s += '*';
    s += fmt::format("g{}", i + 1);
    if (e_[i] != 1) s += fmt::format("^{}", e_[i]);
  }
  return s.empty() ? "1" : s;
}

struct PcGroup::Impl {
  int p = 2;
  int m = 0;
  std::vector<Elem> power;
  std::vector<std::vector<Elem>> comm;
  std::vector<Elem> cj;      // conjugate of g_j^s by g_i^e
  std::vector<Elem> invgen;  // inverse of g_i^e
  bool abelian = true;

  const Elem& conj_table(int i, int e, int j, int s) const {
    return cj[((static_cast<std::size_t>(i) * p + e) * m + j) * p + s];
  }
  Elem& conj_table(int i, int e, int j, int s) {
    return cj[((static_cast<std::size_t>(i) * p + e) * m + j) * p + s];
  }

  void collect(Elem& x, int i, int e) const {
    int last = m - 1;
    while (last > i && !x[last]) --last;
    int v = x[i] + e;
    if (last == i) {
      if (v < p) {
        x[i] = static_cast<std::uint8_t>(v);
      } else {
        x[i] = static_cast<std::uint8_t>(v - p);
        const Elem& w = power[i];
        for (int k = i + 1; k < m; ++k) x[k] = w[k];
      }
      return;
    }
    std::array<std::uint8_t, kMaxGens> s{};
    for (int k = i + 1; k <= last; ++k) {
      s[k] = x[k];
      x[k] = 0;
    }
    if (v < p) {
      x[i] = static_cast<std::uint8_t>(v);
    } else {
      x[i] = static_cast<std::uint8_t>(v - p);
      const Elem& w = power[i];
      for (int k = i + 1; k < m; ++k) x[k] = w[k];
    }
    for (int j = i + 1; j <= last; ++j)
      if (s[j]) mul_into(x, conj_table(i, e, j, s[j]), j);
  }

  void mul_into(Elem& x, const Elem& y, int from = 0) const {
    for (int k = from; k < m; ++k)
      if (y[k]) collect(x, k, y[k]);
  }

  Elem inverse(const Elem& a) const {
    Elem x(m);
    for (int k = m - 1; k >= 0; --k)
      if (a[k]) mul_into(x, invgen[static_cast<std::size_t>(k) * p + a[k]]);
    return x;
  }

  void build() {
    cj.assign(static_cast<std::size_t>(m) * p * m * p, Elem(m));
    invgen.assign(static_cast<std::size_t>(m) * p, Elem(m));
    for (int i = m - 1; i >= 0; --i) {
      for (int j = i + 1; j < m; ++j) {
        Elem c(m);
        c[j] = 1;
        mul_into(c, comm[j][i]);
        conj_table(i, 1, j, 1) = c;
        for (int s = 2; s < p; ++s) {
          Elem y = conj_table(i, 1, j, s - 1);
          mul_into(y, c);
          conj_table(i, 1, j, s) = y;
        }
      }
      for (int e = 2; e < p; ++e)
        for (int j = i + 1; j < m; ++j)
          for (int s = 1; s < p; ++s) {
            const Elem& y = conj_table(i, e - 1, j, s);
            Elem z(m);
            for (int k = i + 1; k < m; ++k)
              if (y[k]) mul_into(z, conj_table(i, 1, k, y[k]));
            conj_table(i, e, j, s) = z;
          }
      Elem pinv = inverse(power[i]);
      for (int e = 1; e < p; ++e) {
        Elem x(m);
        x[i] = static_cast<std::uint8_t>(p - e);
        mul_into(x, pinv);
        invgen[static_cast<std::size_t>(i) * p + e] = x;
      }
    }
    abelian = true;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < j; ++i)
        if (!comm[j][i].is_identity()) abelian = false;
  }
};

PcGroup::PcGroup(int p, std::vector<Elem> powers, std::vector<std::vector<Elem>> comms) {
  if (!fp::is_prime(p) || p > 127) throw UsageError(fmt::format("unsupported prime {}", p));
  int m = static_cast<int>(powers.size());
  if (m > kMaxGens) throw ResourceError(fmt::format("at most {} generators supported", kMaxGens));
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->m = m;
  comms.resize(m);
  for (int j = 0; j < m; ++j) {
    comms[j].resize(m, Elem(m));
    for (int i = 0; i < m; ++i) {
      if (i >= j) {
        comms[j][i] = Elem(m);
        continue;
      }
      const Elem& w = comms[j][i];
      if (w.size() != m) throw UsageError("commutator word has wrong length");
      for (int k = 0; k < m; ++k)
        if (w[k] >= p) throw UsageError("exponent out of range");
      if (w.depth() <= j)
        throw UsageError(fmt::format("non-weighted presentation: [g{},g{}] involves g{}", j + 1, i + 1, w.depth() + 1));
    }
  }
  for (int i = 0; i < m; ++i) {
    const Elem& w = powers[i];
    if (w.size() != m) throw UsageError("power word has wrong length");
    for (int k = 0; k < m; ++k)
      if (w[k] >= p) throw UsageError("exponent out of range");
    if (w.depth() <= i)
      throw UsageError(fmt::format("non-weighted presentation: g{}^p involves g{}", i + 1, w.depth() + 1));
  }
  impl->power = std::move(powers);
  impl->comm = std::move(comms);
  impl->build();
  impl_ = impl;
  check_consistency();
}

PcGroup PcGroup::trivial(int p) { return PcGroup(p, {}, {}); }

PcGroup PcGroup::elementary(int p, int m) { return PcGroup(p, std::vector<Elem>(m, Elem(m)), {}); }

int PcGroup::prime() const { return impl_->p; }
int PcGroup::ngens() const { return impl_->m; }

std::uint64_t PcGroup::order() const {
  std::uint64_t r = 1;
  for (int i = 0; i < impl_->m; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / impl_->p) return std::numeric_limits<std::uint64_t>::max();
    r *= impl_->p;
  }
  return r;
}

Elem PcGroup::gen(int i, int e) const {
  if (i < 0 || i >= impl_->m) throw UsageError(fmt::format("generator index {} out of range", i + 1));
  Elem g(impl_->m);
  g[i] = 1;
  return pow(g, e);
}

const Elem& PcGroup::power_relation(int i) const { return impl_->power.at(i); }
const Elem& PcGroup::comm_relation(int j, int i) const { return impl_->comm.at(j).at(i); }

void PcGroup::check_parent(const Elem& a) const {
  if (a.size() != impl_->m || (a.tag() && a.tag() != impl_->p)) throw UsageError("element belongs to a different group");
  for (int i = 0; i < impl_->m; ++i)
    if (a[i] >= impl_->p) throw UsageError("element belongs to a different group");
}

Elem PcGroup::mul(const Elem& a, const Elem& b) const {
  check_parent(a);
  check_parent(b);
  Elem x = a;
  x.set_tag(impl_->p);
  impl_->mul_into(x, b);
  return x;
}

Elem PcGroup::inv(const Elem& a) const {
  check_parent(a);
  Elem x = impl_->inverse(a);
  x.set_tag(impl_->p);
  return x;
}

Elem PcGroup::pow(const Elem& a, long long k) const {
  check_parent(a);
  if (k < 0) return pow(inv(a), -k);
  if (a.is_identity() || k == 0) return identity();
  long long ord = fp::ipow(impl_->p, std::min(order_log(a), 62));
  if (ord > 0) k %= ord;
  Elem r = identity();
  Elem b = a;
  while (k > 0) {
    if (k & 1) impl_->mul_into(r, b);
    k >>= 1;
    if (k) {
      Elem c = b;
      impl_->mul_into(c, b);
      b = c;
    }
  }
  return r;
}

Elem PcGroup::comm(const Elem& a, const Elem& b) const {
  check_parent(a);
  check_parent(b);
  Elem x = impl_->inverse(a);
  impl_->mul_into(x, impl_->inverse(b));
  impl_->mul_into(x, a);
  impl_->mul_into(x, b);
  x.set_tag(impl_->p);
  return x;
}

Elem PcGroup::conj(const Elem& a, const Elem& b) const {
  check_parent(a);
  check_parent(b);
  Elem x = impl_->inverse(b);
  impl_->mul_into(x, a);
  impl_->mul_into(x, b);
  x.set_tag(impl_->p);
  return x;
}

Elem PcGroup::word(const std::vector<std::pair<int, long long>>& letters) const {
  Elem x = identity();
  for (auto [i, e] : letters) {
    Elem g = identity();
    if (i < 0 || i >= impl_->m) throw UsageError(fmt::format("generator index {} out of range", i + 1));
    g[i] = 1;
    impl_->mul_into(x, pow(g, e));
  }
  return x;
}

int PcGroup::order_log(const Elem& a) const {
  check_parent(a);
  int k = 0;
  Elem x = a;
  while (!x.is_identity()) {
    x = pow_p(x);
    ++k;
  }
  return k;
}

std::uint64_t PcGroup::index(const Elem& a) const {
  if (order() == std::numeric_limits<std::uint64_t>::max()) throw ResourceError("group too large to index");
  std::uint64_t r = 0;
  for (int i = 0; i < impl_->m; ++i) r = r * impl_->p + a[i];
  return r;
}

Elem PcGroup::element(std::uint64_t idx) const {
  Elem x = identity();
  for (int i = impl_->m - 1; i >= 0; --i) {
    x[i] = static_cast<std::uint8_t>(idx % impl_->p);
    idx /= impl_->p;
  }
  return x;
}

bool PcGroup::is_abelian() const { return impl_->abelian; }

void PcGroup::check_consistency() const {
  const int m = impl_->m;
  const int p = impl_->p;
  auto g = [&](int i, int e = 1) {
    Elem x(m);
    x[i] = static_cast<std::uint8_t>(e);
    return x;
  };
  auto prod = [&](Elem x, const Elem& y) {
    impl_->mul_into(x, y);
    return x;
  };
  auto fail = [&](const std::string& what) {
    throw InconsistentPresentation(fmt::format("inconsistent presentation: overlap {} fails", what));
  };
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i)
        if (prod(prod(g(k), g(j)), g(i)) != prod(g(k), prod(g(j), g(i))))
          fail(fmt::format("(g{} g{}) g{}", k + 1, j + 1, i + 1));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i) {
      if (prod(impl_->power[j], g(i)) != prod(g(j, p - 1), prod(g(j), g(i))))
        fail(fmt::format("g{}^p g{}", j + 1, i + 1));
      Elem r = g(j);
      for (int t = 0; t < p; ++t) r = prod(r, g(i));
      if (prod(g(j), impl_->power[i]) != r) fail(fmt::format("g{} g{}^p", j + 1, i + 1));
    }
  for (int i = 0; i < m; ++i)
    if (prod(g(i), impl_->power[i]) != prod(impl_->power[i], g(i))) fail(fmt::format("g{}^(p+1)", i + 1));
  if (m > 8) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> d(0, p - 1);
    auto rnd = [&] {
      Elem x(m);
      for (int i = 0; i < m; ++i) x[i] = static_cast<std::uint8_t>(d(rng));
      return x;
    };
    for (int t = 0; t < 200; ++t) {
      Elem a = rnd(), b = rnd(), c = rnd();
      if (prod(prod(a, b), c) != prod(a, prod(b, c))) fail("random triple (associativity)");
    }
  }
}

Elem PcGroup::pow_p(const Elem& a) const {
  check_parent(a);
  Elem x = identity();
  for (int t = 0; t < impl_->p; ++t) impl_->mul_into(x, a);
  return x;
}

std::uint64_t enumeration_bound() {
  static const std::uint64_t bound = [] {
    if (const char* s = std::getenv("MIPKIT_ENUM_BOUND")) return static_cast<std::uint64_t>(std::stoull(s));
    return static_cast<std::uint64_t>(2000000);
  }();
  return bound;
}

}  // namespace mipkit
