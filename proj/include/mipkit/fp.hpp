#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mipkit::fp {

inline int mod(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv(int a, int p);
bool is_prime(long long n);
long long ipow(long long base, int e);
// Largest e with p^e <= n (n >= 1).
int ilog(long long n, int p);

// Sparse vector over F_p, entries sorted by index, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::uint32_t, std::uint8_t>;

  SparseVec() = default;
  explicit SparseVec(std::vector<Entry> entries) : entries_(std::move(entries)) {}
  static SparseVec unit(std::uint32_t idx, int c = 1) {
    return c ? SparseVec({{idx, static_cast<std::uint8_t>(c)}}) : SparseVec();
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int at(std::uint32_t idx) const;
  std::uint32_t lead() const { return entries_.front().first; }

  SparseVec scaled(int c, int p) const;
  SparseVec add(const SparseVec& o, int p, int c = 1) const;  // this + c*o
  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  std::vector<Entry> entries_;
};

// Semi-echelon basis of a subspace of F_p^dim. Each row has leading
// coefficient 1 at a pivot that no other row has; all entries of a row lie
// at or after its pivot.
class EchelonBasis {
 public:
  EchelonBasis(int p, std::size_t dim);

  int prime() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  bool insert(const SparseVec& v);
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  // Rows sorted by pivot.
  std::vector<SparseVec> rows() const;
  std::vector<std::uint32_t> pivots() const;

 private:
  void reduce_dense(std::vector<std::uint8_t>& d, std::uint32_t from) const;

  int p_;
  std::size_t dim_;
  std::vector<SparseVec> rows_;
  std::vector<std::int32_t> pivot_row_;
};

// Dense matrix over F_p for small linear-algebra tasks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int p, int rows, int cols) : p_(p), r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  int prime() const { return p_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  int& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  void append_row(const std::vector<int>& row);
  std::vector<int> row(int i) const;

  int rank() const;
  // Reduced row echelon form; returns pivot columns.
  std::vector<int> rref();
  // Basis of {x : x * M = 0} when left, else {x : M * x = 0}.
  std::vector<std::vector<int>> nullspace(bool left = false) const;
  Matrix transposed() const;

 private:
  int p_ = 2;
  int r_ = 0;
  int c_ = 0;
  std::vector<int> a_;
};

// Rank of a list of vectors of equal length.
int rank_of(const std::vector<std::vector<int>>& vs, int p);

}  // namespace mipkit::fp
