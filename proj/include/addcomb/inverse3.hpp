#pragma once

// Instrumented U^3 inverse pipeline: derivative U^2 profile, linearity energy
// of {(y, l^(y))}, pruning toward small doubling, span trimming, global linear
// fit and integration back to a quadratic. Every stage is a heuristic whose
// statistics are measured and reported, not certified.

#include <cstdint>
#include <optional>
#include <vector>

#include "addcomb/bitmatrix.hpp"
#include "addcomb/fourier.hpp"
#include "addcomb/gf2.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/parallel.hpp"
#include "addcomb/rational.hpp"
#include "addcomb/reduction.hpp"

namespace addcomb {

inline constexpr unsigned kMaxProfileDim = 13;

struct DerivativeEntry {
  double u2_value = 0.0;
  Code alpha = 0;  // linear part of the best affine approximation of f_y
  unsigned shift_bit = 0;
  Rational agreement;
};

struct DerivativeProfile {
  unsigned dim = 0;
  std::vector<DerivativeEntry> entries;  // indexed by y

  double good_fraction(double tau) const;
};

struct LinearityGraphStats {
  SubsetF2n set{0};  // {(y, alpha_y)}, code y | alpha_y << n
  Rational energy;   // Pr_{a,b in S}[a + b in S]
  std::uint64_t closed_pairs = 0;
};

struct BsgResult {
  SubsetF2n subset{0};
  Rational doubling;
  unsigned rounds_run = 0;
  bool low_quality = false;
};

struct SpanTrimResult {
  SubsetF2n subset{0};
  std::uint64_t span_size = 0;
  unsigned rank = 0;
};

struct LinearFit {
  BitMatrix map{1, 1};  // n x n, alpha_y ~ L * y
  Rational coverage;    // fraction of y in F_2^n with (y, L y) among the pairs
  std::uint64_t accepted_pairs = 0;
};

struct Integration {
  QuadraticForm form{1};
  double correlation = 0.0;  // 2 Pr[f = q] - 1
  Rational agreement;
};

struct InversePipelineOptions {
  double tau = 0.5;
  unsigned bsg_rounds = 4;
  std::uint64_t span_budget = 2;
  Exec exec{};
};

struct InverseReport {
  unsigned n = 0;
  double tau = 0.5;
  // step 1
  double good_fraction = 0.0;
  double mean_u2 = 0.0;
  // step 2
  double mean_agreement = 0.0;
  // step 3: Pr_{y,z}[alpha_{y+z} = alpha_y + alpha_z]
  Rational additivity;
  // step 4
  std::uint64_t s_size = 0;
  bool tau_fallback = false;
  Rational energy;
  // step 5
  std::uint64_t bsg_size = 0;
  Rational bsg_doubling;
  unsigned bsg_rounds = 0;
  bool bsg_low_quality = false;
  // step 6
  std::uint64_t trimmed_size = 0;
  std::uint64_t trimmed_span = 0;
  // step 7
  BitMatrix linear_map{1, 1};
  Rational coverage;
  // step 8
  Integration integration;
  GowersResult u3;
};

DerivativeProfile derivative_profile(const FnTable& f, Exec exec = {});

// S = {(y, alpha_y)} over all y (or those with u2_value >= tau).
SubsetF2n linearity_set(const DerivativeProfile& profile, std::optional<double> tau = {});
LinearityGraphStats linearity_energy(const DerivativeProfile& profile,
                                     std::optional<double> tau = {});
// |{(a,b) in S^2 : a + b in S}| / |S|^2
LinearityGraphStats linearity_energy(const SubsetF2n& s);

// Repeatedly drops elements whose additive-quadruple participation
// #{(a,b) in S^2 : a + b + x in S} is below the mean, while doubling improves.
BsgResult bsg_extract(const SubsetF2n& s, unsigned rounds);

// Greedy basis growth; returns the largest S cap span(basis) seen along the
// way whose span is at most budget times its size.
SpanTrimResult span_trim(const SubsetF2n& s, std::uint64_t budget);

// Consistent-subsystem elimination over pairs (y, alpha) packed as
// y | alpha << n in a set of dimension 2n.
LinearFit fit_global_linear_map(const SubsetF2n& pairs);

// q0 = sum_{i<j} L_ij x_i x_j (strict upper triangle of L), then the best
// affine correction of f + q0.
Integration integrate_to_quadratic(const BitMatrix& map, const FnTable& f);

InverseReport u3_inverse_pipeline(const FnTable& f, const InversePipelineOptions& options = {});

}  // namespace addcomb
