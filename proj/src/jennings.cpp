#include "mipkit/jennings.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <optional>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"

namespace mipkit {

namespace {

std::vector<Subgroup> series_by_recursion(const PcGroup& g) {
  const int p = g.prime();
  Subgroup w = Subgroup::whole(g);
  std::vector<Subgroup> d{w};
  std::vector<std::optional<Subgroup>> powers;  // agemo of D_k, computed once
  while (!d.back().is_trivial()) {
    int n = static_cast<int>(d.size()) + 1;
    Subgroup c = commutator(w, d.back());
    std::size_t k = static_cast<std::size_t>((n + p - 1) / p - 1);
    if (powers.size() <= k) powers.resize(k + 1);
    if (!powers[k]) powers[k] = agemo(d[k]);
    d.push_back(join(c, *powers[k]));
  }
  return d;
}

std::vector<Subgroup> series_by_product(const PcGroup& g) {
  const int p = g.prime();
  auto lcs = lower_central_series(Subgroup::whole(g));
  const int c = static_cast<int>(lcs.size()) - 1;
  std::vector<Subgroup> d;
  for (int n = 1;; ++n) {
    Subgroup acc(g);
    for (int i = 1; i <= c; ++i) {
      int j = 0;
      long long ip = i;
      while (ip < n) {
        ip *= p;
        ++j;
      }
      acc = join(acc, agemo(lcs[i - 1], j));
    }
    d.push_back(acc);
    if (acc.is_trivial()) break;
  }
  return d;
}

std::vector<Subgroup> series_by_brute(const PcGroup& g) {
  GroupAlgebra a(g);
  auto powers = ideal_power_series(a);
  std::vector<Subgroup> d;
  for (const auto& ip : powers) {
    std::vector<Elem> members;
    for (std::uint32_t i = 0; i < a.dim(); ++i) {
      Elem x = g.element(i);
      if (ip.contains(a.bar(x))) members.push_back(x);
    }
    d.push_back(closure(g, members));
    if (d.back().is_trivial()) break;
  }
  return d;
}

}  // namespace

std::vector<Subgroup> dimension_series(const PcGroup& g, DimMethod method) {
  switch (method) {
    case DimMethod::jennings:
      return series_by_recursion(g);
    case DimMethod::product:
      return series_by_product(g);
    case DimMethod::brute:
      return series_by_brute(g);
  }
  throw UsageError("unknown method");
}

Subgroup dimension_subgroup(const PcGroup& g, int n, DimMethod method) {
  if (n < 1) throw UsageError("dimension_subgroup: n must be positive");
  auto s = dimension_series(g, method);
  return n <= static_cast<int>(s.size()) ? s[n - 1] : Subgroup(g);
}

int group_weight(const std::vector<Subgroup>& series, const Elem& x) {
  if (x.is_identity()) return 0;
  int w = 0;
  while (w < static_cast<int>(series.size()) && series[w].contains(x)) ++w;
  return w;
}

JenningsData jennings(const PcGroup& g) {
  auto series = series_by_recursion(g);
  std::vector<int> dims;
  std::vector<Elem> tuple;
  std::vector<int> weights;
  for (std::size_t n = 0; n + 1 < series.size(); ++n) {
    const Subgroup& dn = series[n];
    const Subgroup& dn1 = series[n + 1];
    int need = dn.log_order() - dn1.log_order();
    dims.push_back(need);
    Subgroup span = dn1;
    std::vector<Elem> block;
    auto take = [&](const Elem& x) {
      if (static_cast<int>(block.size()) == need || !dn.contains(x) || span.contains(x)) return;
      block.push_back(x);
      std::vector<Elem> gens = span.gens();
      gens.push_back(x);
      span = closure(g, gens);
    };
    for (const auto& e : tuple) take(g.pow_p(e));
    for (const auto& y : dn.gens()) take(dn1.sift(y));
    if (static_cast<int>(block.size()) != need) throw InternalError("jennings: block does not span D_n/D_{n+1}");
    for (const auto& x : block) {
      tuple.push_back(x);
      weights.push_back(static_cast<int>(n) + 1);
    }
  }
  Reframed frame = reframe(g, tuple);
  return JenningsData{g, std::move(series), std::move(dims), std::move(tuple), std::move(weights), std::move(frame)};
}

std::vector<JenningsMonomial> jennings_monomials(const JenningsData& j) {
  const int m = static_cast<int>(j.tuple.size());
  const int p = j.group.prime();
  std::vector<JenningsMonomial> out;
  std::vector<int> alpha(m, 0);
  const long long total = fp::ipow(p, m);
  for (long long idx = 1; idx < total; ++idx) {
    long long r = idx;
    int w = 0;
    for (int i = m - 1; i >= 0; --i) {
      alpha[i] = static_cast<int>(r % p);
      r /= p;
      w += alpha[i] * j.weights[i];
    }
    out.push_back({alpha, w});
  }
  return out;
}

std::vector<int> monomial_weight_counts(const JenningsData& j) {
  // Generating function prod_i (1 + x^{w_i} + ... + x^{(p-1) w_i}).
  const int p = j.group.prime();
  std::vector<long long> poly{1};
  for (int w : j.weights) {
    std::vector<long long> next(poly.size() + static_cast<std::size_t>((p - 1) * w), 0);
    for (std::size_t k = 0; k < poly.size(); ++k)
      for (int a = 0; a < p; ++a) next[k + static_cast<std::size_t>(a * w)] += poly[k];
    poly = std::move(next);
  }
  std::vector<int> out;
  for (std::size_t k = 1; k < poly.size(); ++k) out.push_back(static_cast<int>(poly[k]));
  return out;
}

AlgebraElement monomial_element(const GroupAlgebra& a, const JenningsData& j, const std::vector<int>& alpha) {
  const int p = a.prime();
  const int m = static_cast<int>(alpha.size());
  // binomial(n, k) mod p for n < p
  auto binom = [&](int n, int k) {
    long long r = 1;
    for (int t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
    return static_cast<int>(r % p);
  };
  std::vector<AlgebraElement::Entry> acc;
  std::vector<int> b(m, 0);
  while (true) {
    int c = 1;
    for (int i = 0; i < m; ++i) {
      c = c * binom(alpha[i], b[i]) % p;
      if ((alpha[i] - b[i]) % 2) c = (p - c) % p;
    }
    if (c) {
      Elem y(m);
      for (int i = 0; i < m; ++i) y[i] = static_cast<std::uint8_t>(b[i]);
      acc.emplace_back(a.index(j.frame.to_parent(y)), static_cast<std::uint8_t>(c));
    }
    int i = m - 1;
    while (i >= 0 && b[i] == alpha[i]) b[i--] = 0;
    if (i < 0) break;
    ++b[i];
  }
  std::sort(acc.begin(), acc.end());
  return AlgebraElement(std::move(acc));
}

bool is_factor(const JenningsData& j, const Elem& x, const std::vector<int>& alpha) {
  const PcGroup& g = j.group;
  Elem y = x;
  while (!y.is_identity()) {
    for (std::size_t i = 0; i < j.tuple.size(); ++i)
      if (alpha[i] && j.tuple[i] == y) return true;
    y = g.pow_p(y);
  }
  return false;
}

JenningsCoordinates::JenningsCoordinates(const GroupAlgebra& a, const JenningsData& j)
    : p_(a.prime()), m_(static_cast<int>(j.tuple.size())) {
  const std::uint32_t n = a.dim();
  to_frame_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i)
    to_frame_[i] = static_cast<std::uint32_t>(j.frame.group.index(j.frame.from_parent(a.group().element(i))));
  frame_weight_.resize(n);
  for (std::uint32_t f = 0; f < n; ++f) {
    Elem e = j.frame.group.element(f);
    int w = 0;
    for (int i = 0; i < m_; ++i) w += e[i] * j.weights[i];
    frame_weight_[f] = w;
  }
}

std::vector<int> JenningsCoordinates::coords(const AlgebraElement& x) const {
  std::vector<int> c(to_frame_.size(), 0);
  for (const auto& [i, v] : x.entries()) c[to_frame_[i]] = (c[to_frame_[i]] + v) % p_;
  // coefficient of monomial alpha = sum over beta >= alpha of C(beta, alpha) c_beta,
  // applied one coordinate at a time.
  std::vector<std::vector<int>> binom(p_, std::vector<int>(p_, 0));
  for (int a = 0; a < p_; ++a) {
    binom[a][0] = 1;
    for (int b = 1; b <= a; ++b) binom[a][b] = (binom[a - 1][b - 1] + (b <= a - 1 ? binom[a - 1][b] : 0)) % p_;
  }
  std::size_t stride = 1;
  for (int i = m_ - 1; i >= 0; --i) {
    std::size_t block = stride * p_;
    for (std::size_t base = 0; base < c.size(); base += block)
      for (std::size_t off = 0; off < stride; ++off) {
        std::vector<int> v(p_);
        for (int a = 0; a < p_; ++a) v[a] = c[base + a * stride + off];
        for (int a = 0; a < p_; ++a) {
          int s = 0;
          for (int b = a; b < p_; ++b) s = (s + binom[b][a] * v[b]) % p_;
          c[base + a * stride + off] = s;
        }
      }
    stride = block;
  }
  return c;
}

int JenningsCoordinates::weight(const AlgebraElement& x) const {
  if (x.empty()) return -1;
  auto c = coords(x);
  int best = -1;
  for (std::size_t f = 0; f < c.size(); ++f)
    if (c[f] && (best < 0 || frame_weight_[f] < best)) best = frame_weight_[f];
  return best;
}

JenLieAlgebra::JenLieAlgebra(const JenningsData& j)
    : p_(j.group.prime()), g_(j.group), frame_(j.frame), dims_(j.dims), degree_(j.weights), tuple_(j.tuple) {
  int off = 0;
  for (int d : dims_) {
    offset_.push_back(off);
    off += d;
  }
  const int m = static_cast<int>(tuple_.size());
  bracket_.assign(m, std::vector<std::vector<int>>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int n = degree_[a] + degree_[b];
      if (n > top_degree()) continue;
      bracket_[a][b] = block_coords(n, g_.comm(tuple_[a], tuple_[b]));
    }
}

std::vector<int> JenLieAlgebra::block_coords(int n, const Elem& y) const {
  Elem f = frame_.from_parent(y);
  if (n > top_degree()) return {};
  for (int i = 0; i < offset(n); ++i)
    if (f[i]) throw InternalError("Jen: element lies below the expected degree");
  std::vector<int> out(dim(n));
  for (int k = 0; k < dim(n); ++k) out[k] = f[offset(n) + k];
  return out;
}

Elem JenLieAlgebra::vector_element(int n, const std::vector<int>& x) const {
  Elem y = g_.identity();
  for (int k = 0; k < dim(n); ++k)
    if (x[k]) y = g_.mul(y, g_.pow(tuple_[offset(n) + k], x[k]));
  return y;
}

std::vector<int> JenLieAlgebra::bracket(int i, int j) const {
  int n = degree_[i] + degree_[j];
  if (n > top_degree()) return {};
  return bracket_[i][j];
}

std::vector<int> JenLieAlgebra::bracket(int a, const std::vector<int>& x, int b, const std::vector<int>& y) const {
  int n = a + b;
  if (n > top_degree()) return {};
  std::vector<int> out(dim(n), 0);
  for (int s = 0; s < dim(a); ++s)
    for (int t = 0; t < dim(b); ++t) {
      int c = x[s] * y[t] % p_;
      if (!c) continue;
      const auto& v = bracket_[offset(a) + s][offset(b) + t];
      for (int k = 0; k < dim(n); ++k) out[k] = (out[k] + c * v[k]) % p_;
    }
  return out;
}

std::vector<int> JenLieAlgebra::pmap(int n, const std::vector<int>& x) const {
  int target = n * p_;
  if (target > top_degree()) return {};
  return block_coords(target, g_.pow_p(vector_element(n, x)));
}

JenLieAlgebra::Signature JenLieAlgebra::signature(int max_degree) const {
  const int top = max_degree > 0 ? std::min(max_degree, top_degree()) : top_degree();
  Signature s;
  for (int n = 1; n <= top; ++n) s.dims.push_back(dim(n));
  s.bracket_ranks.assign(top, {});
  s.derived_dims.assign(top, 0);
  std::vector<std::vector<std::vector<int>>> derived(top);
  for (int a = 1; a <= top; ++a)
    for (int b = a; a + b <= top; ++b) {
      std::vector<std::vector<int>> span;
      for (int i = 0; i < dim(a); ++i)
        for (int j = 0; j < dim(b); ++j) span.push_back(bracket_[offset(a) + i][offset(b) + j]);
      s.bracket_ranks[a - 1].push_back(fp::rank_of(span, p_));
      derived[a + b - 1].insert(derived[a + b - 1].end(), span.begin(), span.end());
    }
  for (int n = 1; n <= top; ++n) s.derived_dims[n - 1] = fp::rank_of(derived[n - 1], p_);
  // center: x in L_n with [x, L_b] = 0 for all b
  for (int n = 1; n <= top; ++n) {
    int cols = 0;
    std::vector<std::vector<int>> rows(dim(n));
    for (int b = 1; n + b <= top_degree(); ++b)
      for (int j = 0; j < dim(b); ++j) {
        for (int i = 0; i < dim(n); ++i) {
          const auto& v = bracket_[offset(n) + i][offset(b) + j];
          rows[i].insert(rows[i].end(), v.begin(), v.end());
        }
        cols += dim(n + b);
      }
    int r = cols == 0 ? 0 : fp::rank_of(rows, p_);
    s.center_dims.push_back(dim(n) - r);
  }
  for (int n = 1; n <= top; ++n) {
    std::uint64_t kernel = 0;
    std::vector<std::vector<int>> image;
    std::vector<int> x(dim(n), 0);
    const long long total = fp::ipow(p_, dim(n));
    for (long long idx = 0; idx < total; ++idx) {
      long long r = idx;
      for (int k = 0; k < dim(n); ++k) {
        x[k] = static_cast<int>(r % p_);
        r /= p_;
      }
      auto y = pmap(n, x);
      bool zero = std::all_of(y.begin(), y.end(), [](int v) { return v == 0; });
      if (zero) ++kernel;
      else image.push_back(y);
    }
    s.pmap_kernel.push_back(kernel);
    s.pmap_image_rank.push_back(image.empty() ? 0 : fp::rank_of(image, p_));
  }
  return s;
}

}  // namespace mipkit
