#pragma once

// Seeded instance generators. Every generator draws from a single
// SplitMix64 stream seeded with the given seed, so equal arguments give
// bit-identical outputs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/bitmatrix.hpp"
#include "addcomb/gf2.hpp"

namespace addcomb {

enum class GenKind {
  kNoisyPolynomial,
  kStructuredHom,
  kSmallDoublingSet,
  kRandomFunction,
  kQuadraticPhase,
};

std::string to_string(GenKind kind);
std::optional<GenKind> parse_gen_kind(const std::string& name);

struct GenSpec {
  GenKind kind = GenKind::kRandomFunction;
  unsigned n = 4;
  unsigned m = 1;
  unsigned degree = 2;
  double noise = 0.0;
  std::uint64_t image_bound = 1;
  unsigned coset_count = 1;
  unsigned subspace_dim = 0;
  std::uint64_t seed = 0;
};

struct StructuredHom {
  FnTable f;
  BitMatrix ell;                 // m x n, l(x) = ell * x
  std::vector<Code> error_values;  // the K values e may take
  std::uint64_t achieved_k_delta = 0;
};

struct SmallDoublingSet {
  SubsetF2n set;
  std::vector<Code> subspace_basis;  // V
  std::vector<Code> shifts;          // v_1..v_r
};

struct NoisyPolynomial {
  FnTable f;
  FnTable planted;
  std::vector<Code> monomials;  // ANF support of the plant, ascending masks
  std::uint64_t flips = 0;
};

struct QuadraticPhase {
  FnTable f;
  std::vector<Code> quad;  // strictly upper triangular rows
  Code lin = 0;
  unsigned const_bit = 0;
};

// f = l + e with e taking one of K distinct random values at each point.
StructuredHom gen_structured_hom(unsigned n, unsigned m, std::uint64_t image_bound,
                                 std::uint64_t seed);

// V + {v_1..v_r} with dim V = v and the v_i independent modulo V.
SmallDoublingSet gen_small_doubling_set(unsigned n, unsigned subspace_dim, unsigned coset_count,
                                        std::uint64_t seed);

// Random ANF of degree <= d (each monomial with probability 1/2), then each
// table bit flipped with probability noise.
NoisyPolynomial gen_noisy_polynomial(unsigned n, unsigned degree, double noise,
                                     std::uint64_t seed);

FnTable gen_random_function(unsigned n, unsigned m, std::uint64_t seed);

// x^T M x + <b, x> + c with uniformly random strictly upper M, b and c.
QuadraticPhase gen_quadratic_phase(unsigned n, std::uint64_t seed);

}  // namespace addcomb
