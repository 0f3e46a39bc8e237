#include "mipkit/fp.hpp"

#include <algorithm>

#include "mipkit/error.hpp"

namespace mipkit::fp {

int inv(int a, int p) {
  a = mod(a, p);
  if (a == 0) throw UsageError("inverse of zero in F_p");
  int r = 1;
  int b = a;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = static_cast<int>(static_cast<long long>(r) * b % p);
    b = static_cast<int>(static_cast<long long>(b) * b % p);
  }
  return r;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long long ipow(long long base, int e) {
  long long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

int ilog(long long n, int p) {
  int e = 0;
  for (long long q = p; q <= n; q *= p) ++e;
  return e;
}

int SparseVec::at(std::uint32_t idx) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{idx, 0},
                             [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return it != entries_.end() && it->first == idx ? it->second : 0;
}

SparseVec SparseVec::scaled(int c, int p) const {
  c = mod(c, p);
  if (c == 0) return {};
  std::vector<Entry> out(entries_);
  for (auto& e : out) e.second = static_cast<std::uint8_t>(e.second * c % p);
  return SparseVec(std::move(out));
}

SparseVec SparseVec::add(const SparseVec& o, int p, int c) const {
  c = mod(c, p);
  if (c == 0) return *this;
  std::vector<Entry> out;
  out.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, static_cast<std::uint8_t>(b->second * c % p));
      ++b;
    } else {
      int v = (a->second + b->second * c) % p;
      if (v) out.emplace_back(a->first, static_cast<std::uint8_t>(v));
      ++a;
      ++b;
    }
  }
  return SparseVec(std::move(out));
}

EchelonBasis::EchelonBasis(int p, std::size_t dim) : p_(p), dim_(dim), pivot_row_(dim, -1) {}

void EchelonBasis::reduce_dense(std::vector<std::uint8_t>& d, std::uint32_t from) const {
  for (std::size_t i = from; i < dim_; ++i) {
    if (!d[i] || pivot_row_[i] < 0) continue;
    int c = p_ - d[i];
    for (const auto& [j, v] : rows_[pivot_row_[i]].entries()) d[j] = static_cast<std::uint8_t>((d[j] + c * v) % p_);
  }
}

SparseVec EchelonBasis::reduce(const SparseVec& v) const {
  if (v.empty() || rows_.empty()) return v;
  std::vector<std::uint8_t> d(dim_, 0);
  for (const auto& [j, c] : v.entries()) d[j] = c;
  reduce_dense(d, v.lead());
  std::vector<SparseVec::Entry> out;
  for (std::size_t i = v.lead(); i < dim_; ++i)
    if (d[i]) out.emplace_back(static_cast<std::uint32_t>(i), d[i]);
  return SparseVec(std::move(out));
}

bool EchelonBasis::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  r = r.scaled(inv(r.entries().front().second, p_), p_);
  pivot_row_[r.lead()] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

std::vector<SparseVec> EchelonBasis::rows() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (std::size_t i = 0; i < dim_; ++i)
    if (pivot_row_[i] >= 0) out.push_back(rows_[pivot_row_[i]]);
  return out;
}

std::vector<std::uint32_t> EchelonBasis::pivots() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < dim_; ++i)
    if (pivot_row_[i] >= 0) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

void Matrix::append_row(const std::vector<int>& row) {
  if (static_cast<int>(row.size()) != c_) throw UsageError("row length mismatch");
  for (int v : row) a_.push_back(mod(v, p_));
  ++r_;
}

std::vector<int> Matrix::row(int i) const {
  return {a_.begin() + static_cast<std::ptrdiff_t>(i) * c_, a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * c_};
}

std::vector<int> Matrix::rref() {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < c_ && r < r_; ++c) {
    int s = r;
    while (s < r_ && (*this)(s, c) == 0) ++s;
    if (s == r_) continue;
    for (int j = 0; j < c_; ++j) std::swap((*this)(r, j), (*this)(s, j));
    int iv = inv((*this)(r, c), p_);
    for (int j = 0; j < c_; ++j) (*this)(r, j) = (*this)(r, j) * iv % p_;
    for (int i = 0; i < r_; ++i) {
      if (i == r || (*this)(i, c) == 0) continue;
      int f = (*this)(i, c);
      for (int j = 0; j < c_; ++j) (*this)(i, j) = mod((*this)(i, j) - f * (*this)(r, j), p_);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int Matrix::rank() const {
  Matrix m = *this;
  return static_cast<int>(m.rref().size());
}

Matrix Matrix::transposed() const {
  Matrix t(p_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::vector<int>> Matrix::nullspace(bool left) const {
  Matrix m = left ? transposed() : *this;
  auto piv = m.rref();
  std::vector<bool> is_piv(m.c_, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<int>> out;
  for (int f = 0; f < m.c_; ++f) {
    if (is_piv[f]) continue;
    std::vector<int> x(m.c_, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = mod(-m(static_cast<int>(i), f), p_);
    out.push_back(std::move(x));
  }
  return out;
}

int rank_of(const std::vector<std::vector<int>>& vs, int p) {
  if (vs.empty()) return 0;
  Matrix m(p, 0, static_cast<int>(vs.front().size()));
  for (const auto& v : vs) m.append_row(v);
  return m.rank();
}

}  // namespace mipkit::fp
