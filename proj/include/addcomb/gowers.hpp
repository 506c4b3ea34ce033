#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "addcomb/gf2.hpp"
#include "addcomb/parallel.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

enum class GowersMode { kExact, kSampled };

struct GowersResult {
  unsigned d = 0;
  double value = 0.0;
  GowersMode mode = GowersMode::kExact;
  std::uint64_t samples = 0;
  double std_error = 0.0;
  // Signed pre-root average E[(-1)^{f_{y_1..y_d}(x)}]; may be negative when sampled.
  double mean = 0.0;
  // Exact pre-root value ||F||^{2^d}, exact mode only.
  std::optional<Rational> pre_root;
  unsigned workers = 1;
};

// Work estimate for the recursive exact evaluation (WHT base case).
double gowers_exact_cost(unsigned n, unsigned d);
// Largest n for which gowers_norm_exact(., d) stays within budget.
unsigned gowers_exact_max_n(unsigned d);

// ||(-1)^f||_{U^d} by exact integer accumulation:
// U^d(f)^{2^d} = E_y[U^{d-1}(f_y)^{2^{d-1}}], with the d = 2 base case taken
// from the L4 norm of the Walsh spectrum.
GowersResult gowers_norm_exact(const FnTable& f, unsigned d, Exec exec = {});

// Monte-Carlo estimate drawing (x, y_1..y_d) uniformly per sample. Worker w
// draws from SplitMix64(seed + w).
GowersResult gowers_norm_sampled(const FnTable& f, unsigned d, std::uint64_t samples,
                                 std::uint64_t seed, Exec exec = {});

// Degree of the algebraic normal form (0 for the zero function).
unsigned polynomial_degree(const FnTable& f);

// Binary Moebius transform, in place; maps a truth table to its ANF
// coefficients and back.
void moebius_transform(std::vector<std::uint8_t>& bits);

}  // namespace addcomb
