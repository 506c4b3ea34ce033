#include "addcomb/gowers.hpp"

#include <cmath>
#include <string>

#include "addcomb/error.hpp"
#include "addcomb/fourier.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

namespace {

using Wide = unsigned __int128;

constexpr double kExactBudget = 4294967296.0;  // 2^32 elementary steps

BigInt to_bigint(Wide v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

void require_boolean(const FnTable& f) {
  if (f.codom_dim() != 1) throw DimensionError("Gowers norms need a Boolean function (m = 1)");
}

// 2^{n(d+1)} * ||(-1)^f||_{U^d}^{2^d}: the signed count over all (x, y_1..y_d),
// which is a sum of squares for d >= 1.
Wide accumulate(const std::vector<Code>& table, unsigned n, unsigned d) {
  if (d <= 2) {
    std::vector<std::int64_t> w(table.size());
    for (std::size_t x = 0; x < w.size(); ++x) w[x] = table[x] ? -1 : 1;
    fwht_inplace(w);
    if (d == 1) {
      const Wide w0 = static_cast<Wide>(w[0] < 0 ? -w[0] : w[0]);
      return w0 * w0;
    }
    Wide acc = 0;
    for (std::int64_t v : w) {
      const Wide sq = static_cast<Wide>(v * v);
      acc += sq * sq;
    }
    return acc >> n;  // sum W^4 = 2^n * count
  }
  Wide acc = 0;
  std::vector<Code> deriv(table.size());
  for (std::size_t y = 0; y < table.size(); ++y) {
    for (std::size_t x = 0; x < table.size(); ++x) deriv[x] = table[x ^ y] ^ table[x];
    acc += accumulate(deriv, n, d - 1);
  }
  return acc;
}

}  // namespace

double gowers_exact_cost(unsigned n, unsigned d) {
  const double size = std::ldexp(1.0, static_cast<int>(n));
  if (d <= 1) return size;
  return std::ldexp(1.0, static_cast<int>(n * (d - 2))) * (n + 1) * size;
}

unsigned gowers_exact_max_n(unsigned d) {
  unsigned n = 0;
  while (n < kMaxDim && gowers_exact_cost(n + 1, d) <= kExactBudget) ++n;
  return n;
}

GowersResult gowers_norm_exact(const FnTable& f, unsigned d, Exec exec) {
  require_boolean(f);
  if (d == 0) throw DimensionError("Gowers order must be at least 1");
  const unsigned n = f.dom_dim();
  if (gowers_exact_cost(n, d) > kExactBudget || n * (d + 1) > 120) {
    throw ResourceLimitError("exact U^" + std::to_string(d) + " at n=" + std::to_string(n) +
                             " exceeds the budget; feasible max n is " +
                             std::to_string(gowers_exact_max_n(d)));
  }
  const std::vector<Code> table(f.table().begin(), f.table().end());
  Wide total = 0;
  if (d <= 2) {
    total = accumulate(table, n, d);
  } else {
    const auto parts = parallel_chunks<Wide>(
        table.size(), exec, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
          Wide acc = 0;
          std::vector<Code> deriv(table.size());
          for (std::uint64_t y = begin; y < end; ++y) {
            for (std::size_t x = 0; x < table.size(); ++x) deriv[x] = table[x ^ y] ^ table[x];
            acc += accumulate(deriv, n, d - 1);
          }
          return acc;
        });
    for (Wide p : parts) total += p;
  }
  GowersResult r;
  r.d = d;
  r.mode = GowersMode::kExact;
  r.workers = exec.workers;
  r.pre_root = dyadic(to_bigint(total), n * (d + 1));
  r.mean = to_double(*r.pre_root);
  r.value = std::pow(r.mean, 1.0 / std::ldexp(1.0, static_cast<int>(d)));
  return r;
}

GowersResult gowers_norm_sampled(const FnTable& f, unsigned d, std::uint64_t samples,
                                 std::uint64_t seed, Exec exec) {
  require_boolean(f);
  if (d == 0) throw DimensionError("Gowers order must be at least 1");
  if (d > 20) throw DimensionError("Gowers order too large for sampling");
  if (samples == 0) throw DimensionError("at least one sample is required");
  const unsigned n = f.dom_dim();
  const auto table = f.table();
  const unsigned workers = exec.workers == 0 ? 1 : exec.workers;
  const std::size_t terms = std::size_t{1} << d;

  const auto plus_counts = parallel_chunks<std::uint64_t>(
      workers, exec, [&](std::uint64_t, std::uint64_t, unsigned w) {
        const std::uint64_t begin = samples * w / workers;
        const std::uint64_t end = samples * (w + 1) / workers;
        SplitMix64 rng(seed + w);
        std::vector<Code> offsets(terms, 0);
        std::vector<Code> ys(d);
        std::uint64_t plus = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
          const Code x = static_cast<Code>(rng.bits(n));
          for (unsigned i = 0; i < d; ++i) ys[i] = static_cast<Code>(rng.bits(n));
          unsigned acc = 0;
          for (std::size_t mask = 0; mask < terms; ++mask) {
            if (mask) {
              const unsigned low = static_cast<unsigned>(std::countr_zero(mask));
              offsets[mask] = offsets[mask & (mask - 1)] ^ ys[low];
            }
            acc ^= table[x ^ offsets[mask]];
          }
          plus += acc ? 0 : 1;
        }
        return plus;
      });

  std::uint64_t plus = 0;
  for (auto p : plus_counts) plus += p;
  const double N = static_cast<double>(samples);
  const double mean = (2.0 * static_cast<double>(plus) - N) / N;
  GowersResult r;
  r.d = d;
  r.mode = GowersMode::kSampled;
  r.samples = samples;
  r.workers = workers;
  r.mean = mean;
  if (samples > 1) {
    const double var = std::max(0.0, (1.0 - mean * mean) * N / (N - 1.0));
    r.std_error = std::sqrt(var / N);
  }
  r.value = std::pow(std::max(mean, 0.0), 1.0 / std::ldexp(1.0, static_cast<int>(d)));
  return r;
}

void moebius_transform(std::vector<std::uint8_t>& bits) {
  for (std::size_t h = 1; h < bits.size(); h <<= 1)
    for (std::size_t x = 0; x < bits.size(); ++x)
      if (x & h) bits[x] ^= bits[x ^ h];
}

unsigned polynomial_degree(const FnTable& f) {
  require_boolean(f);
  std::vector<std::uint8_t> anf(f.table().begin(), f.table().end());
  moebius_transform(anf);
  unsigned degree = 0;
  for (std::size_t x = 0; x < anf.size(); ++x)
    if (anf[x]) degree = std::max(degree, static_cast<unsigned>(std::popcount(x)));
  return degree;
}

}  // namespace addcomb
