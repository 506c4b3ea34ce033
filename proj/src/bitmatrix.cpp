#include "addcomb/bitmatrix.hpp"

#include "addcomb/error.hpp"

namespace addcomb {

namespace {
std::uint64_t col_mask(unsigned cols) { return cols == 64 ? ~0ULL : ((1ULL << cols) - 1); }
}  // namespace

BitMatrix::BitMatrix(unsigned rows, unsigned cols) : rows_(rows), cols_(cols), data_(rows, 0) {
  if (rows == 0 || cols == 0 || rows > 64 || cols > 64)
    throw DimensionError("bit matrix dimensions must lie in [1, 64]");
}

void BitMatrix::set(unsigned r, unsigned c, bool v) {
  if (r >= rows_ || c >= cols_) throw DimensionError("bit matrix index out of range");
  if (v)
    data_[r] |= 1ULL << c;
  else
    data_[r] &= ~(1ULL << c);
}

void BitMatrix::set_row(unsigned r, std::uint64_t bits) {
  if (r >= rows_) throw DimensionError("bit matrix row out of range");
  if (bits & ~col_mask(cols_)) throw DimensionError("row has bits beyond the column count");
  data_[r] = bits;
}

std::uint64_t BitMatrix::apply(std::uint64_t v) const {
  std::uint64_t out = 0;
  for (unsigned r = 0; r < rows_; ++r) out |= std::uint64_t{parity(data_[r] & v)} << r;
  return out;
}

std::uint64_t BitMatrix::left_apply(std::uint64_t v) const {
  std::uint64_t out = 0;
  for (unsigned r = 0; r < rows_; ++r)
    if ((v >> r) & 1u) out ^= data_[r];
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (unsigned r = 0; r < rows_; ++r)
    for (unsigned c = 0; c < cols_; ++c)
      if (get(r, c)) t.data_[c] |= 1ULL << r;
  return t;
}

BitMatrix BitMatrix::operator+(const BitMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionError("adding bit matrices of different shapes");
  BitMatrix out(rows_, cols_);
  for (unsigned r = 0; r < rows_; ++r) out.data_[r] = data_[r] ^ other.data_[r];
  return out;
}

unsigned BitMatrix::rank() const {
  std::vector<std::uint64_t> m = data_;
  unsigned rank = 0;
  for (unsigned c = 0; c < cols_ && rank < rows_; ++c) {
    unsigned pivot = rank;
    while (pivot < rows_ && !((m[pivot] >> c) & 1u)) ++pivot;
    if (pivot == rows_) continue;
    std::swap(m[pivot], m[rank]);
    for (unsigned r = 0; r < rows_; ++r)
      if (r != rank && ((m[r] >> c) & 1u)) m[r] ^= m[rank];
    ++rank;
  }
  return rank;
}

}  // namespace addcomb
