#pragma once

// From a function f: F_2^n -> F_2^m with small difference set to a linear map
// l and shift c with a small error image {f(x) + l(x)}.
//
//   lift_inner_product -> best_quadratic_exhaustive -> extract_bilinear
//     -> linear_shift_agreement -> covering_decomposition
//
// The exhaustive order-2 Reed-Muller search stands in for an inverse theorem
// for U^3; an externally supplied QuadraticForm can replace it.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "addcomb/bitmatrix.hpp"
#include "addcomb/gf2.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/parallel.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

// q(v) = sum_{i<j} quad_ij v_i v_j + <lin, v> + const_bit over F_2.
class QuadraticForm {
 public:
  // quad[i] holds the bits j > i of row i.
  QuadraticForm(unsigned dim, std::vector<Code> quad, Code lin, unsigned const_bit);
  explicit QuadraticForm(unsigned dim) : QuadraticForm(dim, std::vector<Code>(dim, 0), 0, 0) {}

  unsigned dim() const { return dim_; }
  const std::vector<Code>& quad() const { return quad_; }
  Code lin() const { return lin_; }
  unsigned const_bit() const { return const_bit_; }

  bool quad_bit(unsigned i, unsigned j) const { return (quad_[i] >> j) & 1u; }
  unsigned evaluate(Code v) const;
  FnTable table() const;

  // Packed quad bits, pair (i,j) i<j at position index(i,j) in row-major
  // order; the search enumerates forms in ascending (quad_code, lin, const).
  std::uint64_t quad_code() const;
  static QuadraticForm from_codes(unsigned dim, std::uint64_t quad_code, Code lin,
                                  unsigned const_bit);

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  unsigned dim_;
  std::vector<Code> quad_;
  Code lin_;
  unsigned const_bit_;
};

struct QuadraticFit {
  QuadraticForm form;
  Rational agreement;  // Pr_v[g(v) = q(v)]
};

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string lhs_exact;
  std::string rhs_exact;
  bool holds = false;
};

// holds iff lhs >= rhs (exact).
BoundCheck check_at_least(std::string name, const Rational& lhs, const Rational& rhs);
// holds iff lhs <= rhs (exact).
BoundCheck check_at_most(std::string name, const Rational& lhs, const Rational& rhs);

struct LevelStep {
  unsigned level = 0;          // the level produced (k)
  Code shift = 0;              // c_k
  Rational previous_density;   // |S_{k-1}| / 2^{nk}
  Rational doubled_density;    // |S'| / 2^{n(k+1)}
  Rational density;            // |S_k| / 2^{n(k+1)}
};

// S_k = {(x, y_1..y_k) : f(x + sum_I y_i) = f(x) + sum_I f(y_i) + sum_I c_i for all I}.
// Never materialized: membership is evaluated on demand.
class LevelChain {
 public:
  LevelChain(FnTable f, std::vector<Code> shifts, std::vector<LevelStep> steps, BigInt count);

  unsigned k() const { return static_cast<unsigned>(shifts_.size()); }
  const std::vector<Code>& shifts() const { return shifts_; }
  const std::vector<LevelStep>& steps() const { return steps_; }
  const BigInt& count() const { return count_; }
  Rational density() const;

  bool contains(Code x, std::span<const Code> ys) const;

 private:
  FnTable f_;
  std::vector<Code> shifts_;
  std::vector<LevelStep> steps_;
  BigInt count_;
};

struct ShiftAgreement {
  Code shift = 0;
  std::uint64_t count = 0;
  Rational agreement;  // Pr_x[f(x) = l(x) + shift]
};

struct DecompositionReport {
  BitMatrix ell{1, 1};  // m x n, l(x) = ell * x
  Code shift_c = 0;
  Rational agreement_eps;
  std::vector<Code> error_image;  // {f(x) + l(x)}, ascending
  std::uint64_t error_image_size = 0;
  std::uint64_t k_delta = 0;
  std::vector<Code> cover;        // B, ascending
  std::uint64_t cover_size = 0;
  std::vector<Code> cover_image;  // B' = {f(b) + l(b)}
  Rational bound;                 // K_delta^2 / eps
  bool translates_disjoint = false;
  bool cover_maximal = false;     // every x lies in T + T + B
  bool image_contained = false;   // error image within Delta f + Delta f + B'
  std::vector<BoundCheck> checks;

  bool all_hold() const;
};

struct PfrReport {
  std::uint64_t k_delta = 0;
  GowersResult lifted_u3;
  std::optional<QuadraticFit> oracle;  // absent when a form was supplied
  QuadraticForm quadratic{1};
  Rational oracle_agreement;
  Rational oracle_bias;  // 2 * agreement - 1
  BitMatrix bilinear{1, 1};  // A, n x m
  DecompositionReport decomposition;
  std::vector<BoundCheck> checks;  // every step's bound, decomposition checks included

  bool all_hold() const;
};

// F(x, z) = <f(x), z> on F_2^{n+m}, x in the low n bits.
FnTable lift_inner_product(const FnTable& f);

// A_0..A_3 of the lifting identity, all zero?
bool a_system_vanishes(const FnTable& f, Code x, Code y1, Code y2, Code y3);

// Pr_{x,y1,y2,y3}[A_0 = A_1 = A_2 = A_3 = 0], exact; requires 4n <= 28.
Rational a_system_probability(const FnTable& f, Exec exec = {});

// Greedy chain c_1..c_k, each c the most frequent value (smallest code on
// ties) of f(x + y_{k}) + f(x) + f(y_{k}) over the doubled set. Requires n(k+1) <= 28.
LevelChain build_level_chain(const FnTable& f, unsigned k, Exec exec = {});

inline constexpr unsigned kMaxOracleDim = 6;

// Maximizes Pr_v[g(v) = q(v)] over all quadratics on N <= 6 variables.
QuadraticFit best_quadratic_exhaustive(const FnTable& g, Exec exec = {});

// A (n x m) with A_ij = Q(e_i, e_j) + Q(e_i, 0) + Q(0, e_j) + Q(0, 0).
BitMatrix extract_bilinear(const QuadraticForm& q, unsigned n, unsigned m);

// Most frequent value c of f(x) + x^T A (smallest code on ties).
ShiftAgreement linear_shift_agreement(const FnTable& f, const BitMatrix& a);

DecompositionReport covering_decomposition(const FnTable& f, const BitMatrix& a, Code shift_c);

// The whole chain. Without a supplied form, n + m must not exceed 6.
PfrReport pfr_decompose(const FnTable& f, const std::optional<QuadraticForm>& supplied = {},
                        Exec exec = {});

}  // namespace addcomb
