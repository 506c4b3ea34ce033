#include "addcomb/gf2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "addcomb/error.hpp"

namespace addcomb {

namespace {

void check_dim(unsigned dim, unsigned cap, const char* what) {
  if (dim > cap) {
    throw DimensionError(std::string(what) + " dimension " + std::to_string(dim) +
                         " exceeds cap " + std::to_string(cap));
  }
}

// In-place unnormalized Walsh-Hadamard transform.
void fwht(std::vector<double>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j];
        const double v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

}  // namespace

bool Gf2Basis::insert(Code v) {
  for (int b = static_cast<int>(rows_.size()) - 1; b >= 0 && v; --b) {
    if (!((v >> b) & 1u)) continue;
    if (!rows_[b]) {
      rows_[b] = v;
      ++rank_;
      return true;
    }
    v ^= rows_[b];
  }
  return false;
}

Code Gf2Basis::reduce(Code v) const {
  for (int b = static_cast<int>(rows_.size()) - 1; b >= 0 && v; --b)
    if ((v >> b) & 1u && rows_[b]) v ^= rows_[b];
  return v;
}

std::vector<Code> Gf2Basis::vectors() const {
  std::vector<Code> out;
  for (Code r : rows_)
    if (r) out.push_back(r);
  return out;
}

PointF2::PointF2(unsigned dim, Code code) : dim_(dim), code_(code) {
  check_dim(dim, kMaxSetDim, "point");
  if (dim < 32 && (static_cast<std::uint64_t>(code) >> dim) != 0) {
    throw DimensionError("point code " + std::to_string(code) + " does not fit in dimension " +
                         std::to_string(dim));
  }
}

PointF2 operator+(PointF2 a, PointF2 b) {
  if (a.dim_ != b.dim_) throw DimensionError("adding points of different dimensions");
  return PointF2(a.dim_, a.code_ ^ b.code_);
}

PointF2 unit(unsigned dim, unsigned j) {
  if (j >= dim) throw DimensionError("unit vector index out of range");
  return PointF2(dim, Code{1} << j);
}

SubsetF2n::SubsetF2n(unsigned dim) : dim_(dim) {
  check_dim(dim, kMaxSetDim, "set");
  words_.assign(std::max<std::uint64_t>(1, universe() / 64), 0);
}

SubsetF2n::SubsetF2n(unsigned dim, std::span<const Code> members) : SubsetF2n(dim) {
  for (Code c : members) insert(c);
}

void SubsetF2n::insert(Code c) {
  if (c >= universe()) throw DimensionError("set member out of range");
  std::uint64_t& w = words_[c >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  if (!(w & bit)) {
    w |= bit;
    ++size_;
  }
}

void SubsetF2n::erase(Code c) {
  if (c >= universe()) return;
  std::uint64_t& w = words_[c >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  if (w & bit) {
    w &= ~bit;
    --size_;
  }
}

std::vector<Code> SubsetF2n::elements() const {
  std::vector<Code> out;
  out.reserve(size_);
  for_each([&](Code c) { out.push_back(c); });
  return out;
}

bool SubsetF2n::is_subset_of(const SubsetF2n& other) const {
  if (dim_ != other.dim_) throw DimensionError("subset test across dimensions");
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

SubsetF2n SubsetF2n::translate(Code t) const {
  SubsetF2n out(dim_);
  for_each([&](Code c) { out.insert(c ^ t); });
  return out;
}

FnTable::FnTable(unsigned dom_dim, unsigned codom_dim) : dom_dim_(dom_dim), codom_dim_(codom_dim) {
  check_dim(dom_dim, kMaxDim, "domain");
  check_dim(codom_dim, kMaxDim, "codomain");
  if (codom_dim == 0) throw DimensionError("codomain dimension must be at least 1");
  table_.assign(domain_size(), 0);
}

FnTable::FnTable(unsigned dom_dim, unsigned codom_dim, std::vector<Code> table)
    : FnTable(dom_dim, codom_dim) {
  if (table.size() != domain_size()) {
    throw DimensionError("truth table has " + std::to_string(table.size()) + " entries, expected " +
                         std::to_string(domain_size()));
  }
  for (Code v : table)
    if ((static_cast<std::uint64_t>(v) >> codom_dim_) != 0)
      throw DimensionError("table entry exceeds codomain");
  table_ = std::move(table);
}

void FnTable::set(Code x, Code value) {
  if (x >= domain_size()) throw DimensionError("domain point out of range");
  if ((static_cast<std::uint64_t>(value) >> codom_dim_) != 0)
    throw DimensionError("value exceeds codomain");
  table_[x] = value;
}

bool DiffSet::contains(Code c) const { return std::binary_search(values.begin(), values.end(), c); }

SubsetF2n sumset(const SubsetF2n& s) {
  if (s.empty()) throw EmptySetError("sumset of an empty set");
  SubsetF2n out(s.dim());
  const std::uint64_t n = s.size();
  const double pair_cost = static_cast<double>(n) * static_cast<double>(n) / 2.0;
  const double wht_cost = static_cast<double>(s.dim() + 2) * static_cast<double>(s.universe());
  if (s.dim() <= 22 && pair_cost > 4.0 * wht_cost) {
    // Indicator self-convolution; counts are integers below 2^53 so the
    // doubles are exact.
    std::vector<double> a(s.universe(), 0.0);
    s.for_each([&](Code c) { a[c] = 1.0; });
    fwht(a);
    for (double& v : a) v *= v;
    fwht(a);
    for (std::uint64_t c = 0; c < a.size(); ++c)
      if (a[c] > 0.5) out.insert(static_cast<Code>(c));
    return out;
  }
  const auto elems = s.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j) out.insert(elems[i] ^ elems[j]);
  return out;
}

unsigned rank_of(std::span<const Code> vectors) {
  Gf2Basis basis(32);
  for (Code v : vectors) basis.insert(v);
  return basis.rank();
}

SubsetF2n span(const SubsetF2n& s) {
  Gf2Basis basis(s.dim());
  s.for_each([&](Code c) { basis.insert(c); });
  const auto vecs = basis.vectors();
  SubsetF2n out(s.dim());
  // Gray-code walk over all combinations of the basis.
  Code cur = 0;
  out.insert(0);
  const std::uint64_t total = std::uint64_t{1} << vecs.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= vecs[static_cast<unsigned>(std::countr_zero(i))];
    out.insert(cur);
  }
  return out;
}

bool is_affine_subspace(const SubsetF2n& s) {
  if (s.empty()) return false;
  if (!std::has_single_bit(s.size())) return false;
  const Code s0 = s.elements().front();
  Gf2Basis basis(s.dim());
  s.for_each([&](Code c) { basis.insert(c ^ s0); });
  return (std::uint64_t{1} << basis.rank()) == s.size();
}

SetStats set_stats(const SubsetF2n& s) {
  if (s.empty()) throw EmptySetError("set_stats of an empty set");
  SetStats st;
  st.size = s.size();
  st.sumset_size = sumset(s).size();
  st.doubling = Rational(BigInt(st.sumset_size), BigInt(st.size));
  Gf2Basis basis(s.dim());
  s.for_each([&](Code c) { basis.insert(c); });
  st.span_size = std::uint64_t{1} << basis.rank();
  st.greentao_exponent = 2 * st.doubling;

  const Rational k4 = pow(st.doubling, 4);
  const BigInt num4 = boost::multiprecision::numerator(k4);
  const BigInt den4 = boost::multiprecision::denominator(k4);
  const BigInt exp_ceil = (num4 + den4 - 1) / den4;
  const double k = to_double(st.doubling);
  st.ruzsa_bound_log2 = 2.0 * std::log2(k) + exp_ceil.convert_to<double>() +
                        std::log2(static_cast<double>(st.size));
  constexpr unsigned kMaxExpandedExponent = 1u << 16;
  if (exp_ceil <= kMaxExpandedExponent) {
    const Rational k2 = pow(st.doubling, 2);
    const BigInt num = boost::multiprecision::numerator(k2) * BigInt(st.size)
                       << exp_ceil.convert_to<unsigned>();
    const BigInt den = boost::multiprecision::denominator(k2);
    st.ruzsa_bound = (num + den - 1) / den;
  }
  return st;
}

DiffSet difference_set(const FnTable& f) {
  const std::uint64_t size = f.domain_size();
  SubsetF2n seen(f.codom_dim());
  for (std::uint64_t x = 0; x < size; ++x) {
    const Code fx = f(static_cast<Code>(x));
    for (std::uint64_t y = x; y < size; ++y) {
      seen.insert(f(static_cast<Code>(x ^ y)) ^ fx ^ f(static_cast<Code>(y)));
    }
  }
  DiffSet out;
  out.codom_dim = f.codom_dim();
  out.values = seen.elements();
  return out;
}

FnTable derivative(const FnTable& f, PointF2 y) {
  if (y.dim() != f.dom_dim()) throw DimensionError("derivative direction has wrong dimension");
  std::vector<Code> table(f.domain_size());
  const auto src = f.table();
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = src[x ^ y.code()] ^ src[x];
  return FnTable(f.dom_dim(), f.codom_dim(), std::move(table));
}

FnTable iterated_derivative(const FnTable& f, std::span<const PointF2> ys) {
  if (ys.empty()) throw DimensionError("iterated derivative needs at least one direction");
  if (ys.size() > 30) throw DimensionError("too many derivative directions");
  for (const auto& y : ys)
    if (y.dim() != f.dom_dim()) throw DimensionError("derivative direction has wrong dimension");
  const std::size_t terms = std::size_t{1} << ys.size();
  std::vector<Code> offsets(terms, 0);
  for (std::size_t mask = 1; mask < terms; ++mask) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(mask));
    offsets[mask] = offsets[mask & (mask - 1)] ^ ys[low].code();
  }
  std::vector<Code> table(f.domain_size());
  const auto src = f.table();
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    Code acc = 0;
    for (Code off : offsets) acc ^= src[x ^ off];
    table[x] = acc;
  }
  return FnTable(f.dom_dim(), f.codom_dim(), std::move(table));
}

}  // namespace addcomb
