#pragma once

#include <cstdint>
#include <vector>

#include "addcomb/gf2.hpp"
#include "addcomb/rational.hpp"

namespace addcomb {

// coeff(alpha) = E_x[(-1)^{f(x) + <alpha, x>}]
struct FourierSpectrum {
  unsigned dim = 0;
  std::vector<double> coeffs;

  double operator[](Code alpha) const { return coeffs[alpha]; }
};

// Best affine approximation <alpha, x> + shift_bit of a Boolean function.
struct AffineApprox {
  PointF2 alpha{0, 0};
  unsigned shift_bit = 0;
  Rational agreement;  // Pr_x[f(x) = <alpha,x> + shift_bit]
};

struct SpectrumEntry {
  Code alpha;
  double coeff;
};

// Unnormalized integer transform W(alpha) = sum_x (-1)^{f(x) + <alpha,x>}.
// Requires a Boolean function (codomain dimension 1).
std::vector<std::int64_t> walsh_counts(const FnTable& f);

// In-place fast transform over a signed integer buffer of length 2^k.
void fwht_inplace(std::vector<std::int64_t>& values);

FourierSpectrum wht_spectrum(const FnTable& f);

// argmax |coeff|, ties to the smallest alpha; shift_bit = 1 iff coeff < 0.
AffineApprox best_affine_approx(const FnTable& f);
AffineApprox best_affine_approx(const std::vector<std::int64_t>& walsh, unsigned dim);

// (sum_alpha coeff^4)^{1/4}
double u2_via_spectrum(const FnTable& f);
double u2_from_walsh(const std::vector<std::int64_t>& walsh, unsigned dim);

// The k largest coefficients by |coeff| (desc), ties by alpha (asc).
std::vector<SpectrumEntry> top_coefficients(const FourierSpectrum& spectrum, std::size_t k);

}  // namespace addcomb
