#include "addcomb/inverse3.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "addcomb/error.hpp"

namespace addcomb {

namespace {

// |S'| below |S|/16 or doubling above 4 marks a pruning result as low quality.
constexpr std::uint64_t kLowQualityShrink = 4;
constexpr unsigned kLowQualityDoubling = 4;

Rational doubling_of(const SubsetF2n& s) {
  return Rational(BigInt(sumset(s).size()), BigInt(s.size()));
}

}  // namespace

double DerivativeProfile::good_fraction(double tau) const {
  if (entries.empty()) return 0.0;
  const auto good = std::count_if(entries.begin(), entries.end(),
                                  [tau](const DerivativeEntry& e) { return e.u2_value >= tau; });
  return static_cast<double>(good) / static_cast<double>(entries.size());
}

DerivativeProfile derivative_profile(const FnTable& f, Exec exec) {
  if (f.codom_dim() != 1) throw DimensionError("derivative_profile needs a Boolean function");
  const unsigned n = f.dom_dim();
  if (n > kMaxProfileDim) {
    throw ResourceLimitError("derivative_profile supports n <= " + std::to_string(kMaxProfileDim));
  }
  DerivativeProfile profile;
  profile.dim = n;
  profile.entries.resize(f.domain_size());
  const auto table = f.table();
  parallel_chunks<int>(f.domain_size(), exec,
                       [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                         std::vector<std::int64_t> w(table.size());
                         for (std::uint64_t y = begin; y < end; ++y) {
                           for (std::size_t x = 0; x < w.size(); ++x)
                             w[x] = (table[x ^ y] ^ table[x]) ? -1 : 1;
                           fwht_inplace(w);
                           const AffineApprox best = best_affine_approx(w, n);
                           DerivativeEntry& e = profile.entries[y];
                           e.u2_value = u2_from_walsh(w, n);
                           e.alpha = best.alpha.code();
                           e.shift_bit = best.shift_bit;
                           e.agreement = best.agreement;
                         }
                         return 0;
                       });
  return profile;
}

SubsetF2n linearity_set(const DerivativeProfile& profile, std::optional<double> tau) {
  const unsigned n = profile.dim;
  if (2 * n > kMaxSetDim) throw DimensionError("pair set dimension exceeds cap");
  SubsetF2n s(2 * n);
  for (std::size_t y = 0; y < profile.entries.size(); ++y) {
    const auto& e = profile.entries[y];
    if (tau && e.u2_value < *tau) continue;
    s.insert(static_cast<Code>(y) | (e.alpha << n));
  }
  return s;
}

LinearityGraphStats linearity_energy(const SubsetF2n& s) {
  LinearityGraphStats st;
  st.set = s;
  if (s.empty()) {
    st.energy = 0;
    return st;
  }
  const auto elems = s.elements();
  std::uint64_t closed = 0;
  for (Code a : elems)
    for (Code b : elems) closed += s.contains(a ^ b);
  st.closed_pairs = closed;
  st.energy = Rational(BigInt(closed), BigInt(elems.size()) * elems.size());
  return st;
}

LinearityGraphStats linearity_energy(const DerivativeProfile& profile, std::optional<double> tau) {
  return linearity_energy(linearity_set(profile, tau));
}

BsgResult bsg_extract(const SubsetF2n& s, unsigned rounds) {
  if (s.empty()) throw EmptySetError("bsg_extract of an empty set");
  BsgResult out;
  out.subset = s;
  out.doubling = doubling_of(s);
  std::vector<std::uint32_t> reps(s.universe(), 0);
  for (unsigned round = 0; round < rounds; ++round) {
    const auto elems = out.subset.elements();
    std::fill(reps.begin(), reps.end(), 0);
    for (Code a : elems)
      for (Code b : elems) ++reps[a ^ b];
    // participation(x) = #{(a,b) : a + b + x in S} = sum_{c in S} reps[x + c]
    std::vector<std::uint64_t> weight(elems.size(), 0);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (Code c : elems) weight[i] += reps[elems[i] ^ c];
      total += weight[i];
    }
    SubsetF2n kept(s.dim());
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (weight[i] * elems.size() >= total) kept.insert(elems[i]);
    if (kept.empty() || kept.size() == out.subset.size()) break;
    const Rational k = doubling_of(kept);
    if (k >= out.doubling) break;
    out.subset = std::move(kept);
    out.doubling = k;
    out.rounds_run = round + 1;
  }
  out.low_quality = out.doubling > kLowQualityDoubling ||
                    out.subset.size() * kLowQualityShrink < s.size();
  return out;
}

SpanTrimResult span_trim(const SubsetF2n& s, std::uint64_t budget) {
  if (s.empty()) throw EmptySetError("span_trim of an empty set");
  const auto elems = s.elements();
  Gf2Basis basis(s.dim());
  std::vector<Code> chosen;
  std::uint64_t inside = s.contains(0) ? 1 : 0;

  std::uint64_t best_size = 0;
  std::size_t best_rank = 0;
  auto consider = [&] {
    const std::uint64_t span_size = std::uint64_t{1} << chosen.size();
    if (inside > best_size && span_size <= budget * inside) {
      best_size = inside;
      best_rank = chosen.size();
    }
  };
  consider();

  while (inside < elems.size()) {
    std::unordered_map<Code, std::uint64_t> coset_counts;
    for (Code c : elems) {
      const Code key = basis.reduce(c);
      if (key) ++coset_counts[key];
    }
    Code pick = 0;
    std::uint64_t pick_count = 0;
    for (Code c : elems) {  // ascending, so ties keep the smallest code
      const Code key = basis.reduce(c);
      if (!key) continue;
      const std::uint64_t cnt = coset_counts[key];
      if (cnt > pick_count) {
        pick_count = cnt;
        pick = c;
      }
    }
    basis.insert(pick);
    chosen.push_back(pick);
    inside += pick_count;
    consider();
  }

  SpanTrimResult out;
  out.subset = SubsetF2n(s.dim());
  if (best_size == 0) {
    out.subset.insert(elems.front());
    out.rank = elems.front() ? 1 : 0;
  } else {
    Gf2Basis prefix(s.dim());
    for (std::size_t i = 0; i < best_rank; ++i) prefix.insert(chosen[i]);
    for (Code c : elems)
      if (prefix.in_span(c)) out.subset.insert(c);
    out.rank = static_cast<unsigned>(best_rank);
  }
  out.span_size = span(out.subset).size();
  return out;
}

namespace {

Rational coverage_of(const BitMatrix& map, const SubsetF2n& pairs, unsigned n) {
  std::uint64_t covered = 0;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t y = 0; y < size; ++y)
    covered += pairs.contains(static_cast<Code>(y | (map.apply(y) << n)));
  return dyadic(BigInt(covered), n);
}

}  // namespace

LinearFit fit_global_linear_map(const SubsetF2n& pairs) {
  if (pairs.empty()) throw EmptySetError("fit_global_linear_map needs at least one pair");
  if (pairs.dim() % 2 != 0 || pairs.dim() == 0)
    throw DimensionError("pair set must have even dimension 2n");
  const unsigned n = pairs.dim() / 2;
  const Code low_mask = (Code{1} << n) - 1;

  // Pairs that are sums of many other pairs come first.
  auto elems = pairs.elements();
  std::vector<std::uint64_t> support(elems.size(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Code a : elems) support[i] += pairs.contains(a ^ elems[i]);
  std::vector<std::size_t> order(elems.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return support[a] > support[b]; });

  // Echelon rows on the y part, each carrying its alpha.
  std::vector<Code> row_y(n, 0);
  std::vector<Code> row_alpha(n, 0);
  auto reduce = [&](Code& y, Code& alpha) {
    for (int b = static_cast<int>(n) - 1; b >= 0 && y; --b) {
      if ((y >> b) & 1u && row_y[b]) {
        y ^= row_y[b];
        alpha ^= row_alpha[b];
      }
    }
  };
  for (std::size_t idx : order) {
    Code y = elems[idx] & low_mask;
    Code alpha = elems[idx] >> n;
    reduce(y, alpha);
    if (!y) continue;  // dependent: either consistent already or rejected
    const unsigned lead = 31u - static_cast<unsigned>(std::countl_zero(y));
    row_y[lead] = y;
    row_alpha[lead] = alpha;
  }
  // Directions never constrained map to zero.
  for (unsigned b = 0; b < n; ++b) {
    if (!row_y[b]) {
      row_y[b] = Code{1} << b;
      row_alpha[b] = 0;
    }
  }
  LinearFit fit;
  fit.map = BitMatrix(n, n);
  for (unsigned j = 0; j < n; ++j) {
    Code y = Code{1} << j;
    Code alpha = 0;
    reduce(y, alpha);
    for (unsigned r = 0; r < n; ++r)
      if ((alpha >> r) & 1u) fit.map.set(r, j, true);
  }
  fit.coverage = coverage_of(fit.map, pairs, n);
  for (Code p : elems)
    fit.accepted_pairs += (fit.map.apply(p & low_mask) == (p >> n));
  return fit;
}

Integration integrate_to_quadratic(const BitMatrix& map, const FnTable& f) {
  const unsigned n = f.dom_dim();
  if (f.codom_dim() != 1) throw DimensionError("integration needs a Boolean function");
  if (map.rows() != n || map.cols() != n) throw DimensionError("linear map must be n x n");
  std::vector<Code> quad(n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      if (map.get(i, j)) quad[i] |= Code{1} << j;
  const QuadraticForm q0(n, quad, 0, 0);
  FnTable residual(n, 1);
  for (std::uint64_t x = 0; x < f.domain_size(); ++x)
    residual.set(static_cast<Code>(x), f(static_cast<Code>(x)) ^ q0.evaluate(static_cast<Code>(x)));
  const AffineApprox affine = best_affine_approx(residual);
  Integration out;
  out.form = QuadraticForm(n, quad, affine.alpha.code(), affine.shift_bit);
  out.agreement = affine.agreement;
  out.correlation = to_double(2 * affine.agreement - 1);
  return out;
}

InverseReport u3_inverse_pipeline(const FnTable& f, const InversePipelineOptions& options) {
  InverseReport r;
  r.n = f.dom_dim();
  r.tau = options.tau;
  const unsigned n = r.n;

  const DerivativeProfile profile = derivative_profile(f, options.exec);
  r.good_fraction = profile.good_fraction(options.tau);
  double u2_sum = 0.0;
  double agree_sum = 0.0;
  for (const auto& e : profile.entries) {
    u2_sum += e.u2_value;
    agree_sum += to_double(e.agreement);
  }
  r.mean_u2 = u2_sum / static_cast<double>(profile.entries.size());
  r.mean_agreement = agree_sum / static_cast<double>(profile.entries.size());

  std::uint64_t additive = 0;
  const std::uint64_t size = profile.entries.size();
  for (std::uint64_t y = 0; y < size; ++y)
    for (std::uint64_t z = 0; z < size; ++z)
      additive += profile.entries[y ^ z].alpha ==
                  (profile.entries[y].alpha ^ profile.entries[z].alpha);
  r.additivity = dyadic(BigInt(additive), 2 * n);

  // y = 0 always passes the filter; with no other good direction there is
  // nothing to fit, so the statistics fall back to the unfiltered set.
  SubsetF2n s = linearity_set(profile, options.tau);
  if (s.size() <= 1) {
    s = linearity_set(profile);
    r.tau_fallback = true;
  }
  r.s_size = s.size();
  r.energy = linearity_energy(s).energy;

  const BsgResult bsg = bsg_extract(s, options.bsg_rounds);
  r.bsg_size = bsg.subset.size();
  r.bsg_doubling = bsg.doubling;
  r.bsg_rounds = bsg.rounds_run;
  r.bsg_low_quality = bsg.low_quality;

  const SpanTrimResult trim = span_trim(bsg.subset, options.span_budget);
  r.trimmed_size = trim.subset.size();
  r.trimmed_span = trim.span_size;

  const LinearFit fit = fit_global_linear_map(trim.subset);
  r.linear_map = fit.map;
  r.coverage = coverage_of(fit.map, linearity_set(profile), n);

  r.integration = integrate_to_quadratic(fit.map, f);
  r.u3 = gowers_norm_exact(f, 3, options.exec);
  return r;
}

}  // namespace addcomb
