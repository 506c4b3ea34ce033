#pragma once

#include <cstdint>
#include <vector>

#include "addcomb/gf2.hpp"

namespace addcomb {

// Dense GF(2) matrix, row-major, one 64-bit word per row (cols <= 64).
class BitMatrix {
 public:
  BitMatrix(unsigned rows, unsigned cols);

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }

  bool get(unsigned r, unsigned c) const { return (data_[r] >> c) & 1u; }
  void set(unsigned r, unsigned c, bool v);
  std::uint64_t row(unsigned r) const { return data_[r]; }
  void set_row(unsigned r, std::uint64_t bits);

  // M * v: bit r of the result is <row r, v>.
  std::uint64_t apply(std::uint64_t v) const;
  // v^T * M: XOR of the rows selected by v.
  std::uint64_t left_apply(std::uint64_t v) const;

  BitMatrix transpose() const;
  BitMatrix operator+(const BitMatrix& other) const;
  unsigned rank() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  unsigned rows_;
  unsigned cols_;
  std::vector<std::uint64_t> data_;
};

}  // namespace addcomb
