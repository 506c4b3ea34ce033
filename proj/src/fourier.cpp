#include "addcomb/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "addcomb/error.hpp"

namespace addcomb {

namespace {

void require_boolean(const FnTable& f) {
  if (f.codom_dim() != 1) throw DimensionError("expected a Boolean function (m = 1)");
}

}  // namespace

void fwht_inplace(std::vector<std::int64_t>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t u = a[j];
        const std::int64_t v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

std::vector<std::int64_t> walsh_counts(const FnTable& f) {
  require_boolean(f);
  std::vector<std::int64_t> w(f.domain_size());
  const auto t = f.table();
  for (std::size_t x = 0; x < w.size(); ++x) w[x] = t[x] ? -1 : 1;
  fwht_inplace(w);
  return w;
}

FourierSpectrum wht_spectrum(const FnTable& f) {
  const auto w = walsh_counts(f);
  FourierSpectrum s;
  s.dim = f.dom_dim();
  s.coeffs.resize(w.size());
  const double scale = std::ldexp(1.0, -static_cast<int>(f.dom_dim()));
  for (std::size_t a = 0; a < w.size(); ++a) s.coeffs[a] = static_cast<double>(w[a]) * scale;
  return s;
}

AffineApprox best_affine_approx(const std::vector<std::int64_t>& walsh, unsigned dim) {
  std::size_t best = 0;
  std::int64_t best_abs = -1;
  for (std::size_t a = 0; a < walsh.size(); ++a) {
    const std::int64_t v = std::llabs(walsh[a]);
    if (v > best_abs) {
      best_abs = v;
      best = a;
    }
  }
  AffineApprox out;
  out.alpha = PointF2(dim, static_cast<Code>(best));
  out.shift_bit = walsh[best] < 0 ? 1 : 0;
  // agreement = (1 + |W|/2^n) / 2 = (2^n + |W|) / 2^{n+1}
  out.agreement = dyadic(BigInt((std::int64_t{1} << dim) + best_abs), dim + 1);
  return out;
}

AffineApprox best_affine_approx(const FnTable& f) {
  return best_affine_approx(walsh_counts(f), f.dom_dim());
}

double u2_from_walsh(const std::vector<std::int64_t>& walsh, unsigned dim) {
  // sum W^4 <= 2^{5n}; n <= 24 keeps it within 128 bits.
  unsigned __int128 acc = 0;
  for (std::int64_t w : walsh) {
    const unsigned __int128 sq = static_cast<unsigned __int128>(w * w);
    acc += sq * sq;
  }
  // U2^4 = acc / 2^{4n}
  const double value = std::ldexp(static_cast<double>(acc), -4 * static_cast<int>(dim));
  return std::pow(value, 0.25);
}

double u2_via_spectrum(const FnTable& f) {
  require_boolean(f);
  return u2_from_walsh(walsh_counts(f), f.dom_dim());
}

std::vector<SpectrumEntry> top_coefficients(const FourierSpectrum& spectrum, std::size_t k) {
  std::vector<SpectrumEntry> all;
  all.reserve(spectrum.coeffs.size());
  for (std::size_t a = 0; a < spectrum.coeffs.size(); ++a)
    all.push_back({static_cast<Code>(a), spectrum.coeffs[a]});
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    [](const SpectrumEntry& a, const SpectrumEntry& b) {
                      const double aa = std::fabs(a.coeff);
                      const double bb = std::fabs(b.coeff);
                      if (aa != bb) return aa > bb;
                      return a.alpha < b.alpha;
                    });
  all.resize(k);
  return all;
}

}  // namespace addcomb
