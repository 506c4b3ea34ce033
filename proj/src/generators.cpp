#include "addcomb/generators.hpp"

#include <algorithm>

#include "addcomb/error.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

std::string to_string(GenKind kind) {
  switch (kind) {
    case GenKind::kNoisyPolynomial: return "noisy_polynomial";
    case GenKind::kStructuredHom: return "structured_hom";
    case GenKind::kSmallDoublingSet: return "small_doubling_set";
    case GenKind::kRandomFunction: return "random_function";
    case GenKind::kQuadraticPhase: return "quadratic_phase";
  }
  return "unknown";
}

std::optional<GenKind> parse_gen_kind(const std::string& name) {
  for (GenKind k : {GenKind::kNoisyPolynomial, GenKind::kStructuredHom, GenKind::kSmallDoublingSet,
                    GenKind::kRandomFunction, GenKind::kQuadraticPhase})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

StructuredHom gen_structured_hom(unsigned n, unsigned m, std::uint64_t image_bound,
                                 std::uint64_t seed) {
  if (m == 0 || m > kMaxDim || n > kMaxDim) throw DimensionError("dimension out of range");
  if (image_bound == 0 || image_bound > (std::uint64_t{1} << m))
    throw DimensionError("image bound K must lie in [1, 2^m]");
  SplitMix64 rng(seed);
  BitMatrix ell(m, std::max(n, 1u));
  for (unsigned r = 0; r < m; ++r) ell.set_row(r, rng.bits(std::max(n, 1u)));

  std::vector<Code> values;
  SubsetF2n used(m);
  while (values.size() < image_bound) {
    const Code v = static_cast<Code>(rng.bits(m));
    if (used.contains(v)) continue;
    used.insert(v);
    values.push_back(v);
  }
  FnTable f(n, m);
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
    const Code e = values[rng.below(values.size())];
    f.set(static_cast<Code>(x), static_cast<Code>(ell.apply(x)) ^ e);
  }
  StructuredHom out{f, ell, values, difference_set(f).size()};
  return out;
}

SmallDoublingSet gen_small_doubling_set(unsigned n, unsigned subspace_dim, unsigned coset_count,
                                        std::uint64_t seed) {
  if (n == 0 || n > kMaxDim) throw DimensionError("dimension out of range");
  if (coset_count == 0) throw DimensionError("need at least one shift (r >= 1)");
  if (subspace_dim + coset_count > n)
    throw DimensionError("subspace dimension plus coset count exceeds n");
  SplitMix64 rng(seed);
  Gf2Basis basis(n);
  std::vector<Code> v_basis;
  while (v_basis.size() < subspace_dim) {
    const Code c = static_cast<Code>(rng.bits(n));
    if (basis.insert(c)) v_basis.push_back(c);
  }
  std::vector<Code> shifts;
  while (shifts.size() < coset_count) {
    const Code c = static_cast<Code>(rng.bits(n));
    if (basis.insert(c)) shifts.push_back(c);
  }
  std::vector<Code> v_elems{0};
  for (Code b : v_basis) {
    const std::size_t cur = v_elems.size();
    for (std::size_t i = 0; i < cur; ++i) v_elems.push_back(v_elems[i] ^ b);
  }
  SubsetF2n s(n);
  for (Code shift : shifts)
    for (Code e : v_elems) s.insert(e ^ shift);
  return SmallDoublingSet{s, v_basis, shifts};
}

NoisyPolynomial gen_noisy_polynomial(unsigned n, unsigned degree, double noise,
                                     std::uint64_t seed) {
  if (n > kMaxDim) throw DimensionError("dimension out of range");
  if (noise < 0.0 || noise >= 0.5) throw DimensionError("noise rate must lie in [0, 1/2)");
  SplitMix64 rng(seed);
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> anf(size, 0);
  std::vector<Code> monomials;
  for (std::size_t mask = 0; mask < size; ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) > degree) continue;
    if (rng.bits(1)) {
      anf[mask] = 1;
      monomials.push_back(static_cast<Code>(mask));
    }
  }
  std::vector<std::uint8_t> table = anf;
  moebius_transform(table);
  FnTable planted(n, 1);
  FnTable f(n, 1);
  std::uint64_t flips = 0;
  for (std::size_t x = 0; x < size; ++x) {
    planted.set(static_cast<Code>(x), table[x]);
    const bool flip = rng.bernoulli(noise);
    flips += flip;
    f.set(static_cast<Code>(x), table[x] ^ (flip ? 1u : 0u));
  }
  return NoisyPolynomial{f, planted, monomials, flips};
}

FnTable gen_random_function(unsigned n, unsigned m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  FnTable f(n, m);
  for (std::uint64_t x = 0; x < f.domain_size(); ++x)
    f.set(static_cast<Code>(x), static_cast<Code>(rng.bits(m)));
  return f;
}

QuadraticPhase gen_quadratic_phase(unsigned n, std::uint64_t seed) {
  if (n == 0 || n > kMaxDim) throw DimensionError("dimension out of range");
  SplitMix64 rng(seed);
  QuadraticPhase out{FnTable(n, 1), std::vector<Code>(n, 0), 0, 0};
  for (unsigned i = 0; i < n; ++i) {
    const Code upper = static_cast<Code>(((std::uint64_t{1} << n) - 1) & ~((std::uint64_t{2} << i) - 1));
    out.quad[i] = static_cast<Code>(rng.bits(n)) & upper;
  }
  out.lin = static_cast<Code>(rng.bits(n));
  out.const_bit = static_cast<unsigned>(rng.bits(1));
  for (std::uint64_t x = 0; x < out.f.domain_size(); ++x) {
    unsigned v = out.const_bit ^ parity(out.lin & x);
    for (unsigned i = 0; i < n; ++i)
      if ((x >> i) & 1u) v ^= parity(out.quad[i] & x);
    out.f.set(static_cast<Code>(x), v);
  }
  return out;
}

}  // namespace addcomb
