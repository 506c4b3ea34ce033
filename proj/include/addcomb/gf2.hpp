#pragma once

// Bit-packed points, sets and functions over F_2^n.
//
// Encoding is little-endian throughout: bit j of a point's integer code is
// coordinate j. Addition of points is XOR.

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "addcomb/rational.hpp"

namespace addcomb {

using Code = std::uint32_t;

inline constexpr unsigned kMaxDim = 24;
// Sets may live in F_2^{2n} (graphs {(y, l(y))} for n <= 13).
inline constexpr unsigned kMaxSetDim = 26;

inline unsigned parity(std::uint64_t v) { return static_cast<unsigned>(std::popcount(v) & 1); }

class PointF2 {
 public:
  PointF2(unsigned dim, Code code);

  unsigned dim() const { return dim_; }
  Code code() const { return code_; }
  bool coord(unsigned j) const { return (code_ >> j) & 1u; }

  friend PointF2 operator+(PointF2 a, PointF2 b);
  friend bool operator==(const PointF2&, const PointF2&) = default;

 private:
  unsigned dim_;
  Code code_;
};

// Unit vector e_j (0-based coordinate j).
PointF2 unit(unsigned dim, unsigned j);

class SubsetF2n {
 public:
  explicit SubsetF2n(unsigned dim);
  SubsetF2n(unsigned dim, std::span<const Code> members);

  unsigned dim() const { return dim_; }
  std::uint64_t universe() const { return std::uint64_t{1} << dim_; }
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(Code c) const { return (words_[c >> 6] >> (c & 63)) & 1u; }
  void insert(Code c);
  void erase(Code c);

  // Members in ascending code order.
  std::vector<Code> elements() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
        fn(static_cast<Code>((w << 6) | b));
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const SubsetF2n& other) const;
  // Translate S + t.
  SubsetF2n translate(Code t) const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const SubsetF2n& a, const SubsetF2n& b) {
    return a.dim_ == b.dim_ && a.words_ == b.words_;
  }

 private:
  unsigned dim_;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// A function F_2^n -> F_2^m stored as its full truth table.
class FnTable {
 public:
  FnTable(unsigned dom_dim, unsigned codom_dim);
  FnTable(unsigned dom_dim, unsigned codom_dim, std::vector<Code> table);

  unsigned dom_dim() const { return dom_dim_; }
  unsigned codom_dim() const { return codom_dim_; }
  std::uint64_t domain_size() const { return std::uint64_t{1} << dom_dim_; }

  Code operator()(Code x) const { return table_[x]; }
  Code at(Code x) const { return table_[x]; }
  void set(Code x, Code value);

  std::span<const Code> table() const { return table_; }

  friend bool operator==(const FnTable&, const FnTable&) = default;

 private:
  unsigned dom_dim_;
  unsigned codom_dim_;
  std::vector<Code> table_;
};

// Echelon XOR basis over F_2 keyed by leading bit; reduce() yields a
// canonical representative of v modulo the span.
class Gf2Basis {
 public:
  explicit Gf2Basis(unsigned dim) : rows_(dim, 0) {}

  // Returns true if v was independent and has been added.
  bool insert(Code v);
  Code reduce(Code v) const;
  bool in_span(Code v) const { return reduce(v) == 0; }
  unsigned rank() const { return rank_; }
  std::vector<Code> vectors() const;

 private:
  std::vector<Code> rows_;
  unsigned rank_ = 0;
};

struct SetStats {
  std::uint64_t size = 0;
  std::uint64_t sumset_size = 0;
  Rational doubling;
  std::uint64_t span_size = 0;
  // K^2 * 2^ceil(K^4) * |S|; absent when ceil(K^4) is too large to expand.
  std::optional<BigInt> ruzsa_bound;
  double ruzsa_bound_log2 = 0.0;
  // 2K, the exponent of 2^{(2+o(1))K}|S| with o(1) dropped.
  Rational greentao_exponent;
};

struct DiffSet {
  unsigned codom_dim = 0;
  std::vector<Code> values;  // ascending
  std::uint64_t size() const { return values.size(); }
  bool contains(Code c) const;
};

// S + S. Throws EmptySetError on empty input.
SubsetF2n sumset(const SubsetF2n& s);

// Linear span over F_2; span of the empty set is {0}.
SubsetF2n span(const SubsetF2n& s);

// Rank of the span of the given vectors.
unsigned rank_of(std::span<const Code> vectors);

SetStats set_stats(const SubsetF2n& s);

// True iff S is a coset of a linear subspace.
bool is_affine_subspace(const SubsetF2n& s);

// Delta f = { f(x+y) + f(x) + f(y) }. Exhaustive over 2^{2n} pairs.
DiffSet difference_set(const FnTable& f);

// f_y(x) = f(x+y) + f(x)
FnTable derivative(const FnTable& f, PointF2 y);

// f_{y_1..y_d}, computed as the direct sum over I of f(x + sum_{i in I} y_i).
FnTable iterated_derivative(const FnTable& f, std::span<const PointF2> ys);

}  // namespace addcomb
