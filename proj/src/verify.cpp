#include "addcomb/verify.hpp"

#include <algorithm>
#include <cmath>

#include "addcomb/fourier.hpp"
#include "addcomb/generators.hpp"
#include "addcomb/gf2.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/inverse3.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

namespace {

struct Sizes {
  unsigned trials;
  unsigned set_dim;
  unsigned fn_dim;
  unsigned u2_dim;
  unsigned lift_n;
  unsigned chain_n;
  unsigned profile_n;
};

Sizes sizes_for(VerifyLevel level) {
  if (level == VerifyLevel::kFull) return {20, 10, 8, 8, 4, 4, 8};
  return {4, 6, 5, 6, 3, 3, 6};
}

BoundCheck flag(std::string name, bool ok) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = ok ? 1.0 : 0.0;
  c.rhs = 1.0;
  c.lhs_exact = ok ? "1" : "0";
  c.rhs_exact = "1";
  c.holds = ok;
  return c;
}

SubsetF2n random_set(unsigned dim, std::uint64_t size, SplitMix64& rng) {
  SubsetF2n s(dim);
  while (s.size() < size) s.insert(static_cast<Code>(rng.bits(dim)));
  return s;
}

FnTable random_affine(unsigned n, unsigned m, SplitMix64& rng) {
  FnTable f(n, m);
  std::vector<Code> cols(n);
  for (auto& c : cols) c = static_cast<Code>(rng.bits(m));
  const Code c0 = static_cast<Code>(rng.bits(m));
  for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
    Code v = c0;
    for (unsigned i = 0; i < n; ++i)
      if ((x >> i) & 1u) v ^= cols[i];
    f.set(static_cast<Code>(x), v);
  }
  return f;
}

}  // namespace

std::optional<VerifyLevel> parse_verify_level(const std::string& name) {
  if (name == "quick") return VerifyLevel::kQuick;
  if (name == "full") return VerifyLevel::kFull;
  return std::nullopt;
}

std::vector<BoundCheck> run_invariant_suite(VerifyLevel level, std::uint64_t seed, Exec exec) {
  const Sizes sz = sizes_for(level);
  SplitMix64 rng(seed);
  std::vector<BoundCheck> out;

  // gf2core
  {
    bool zero_in = true, in_span = true, idempotent = true, affine_iff = true;
    for (unsigned t = 0; t < sz.trials; ++t) {
      const SubsetF2n s = random_set(sz.set_dim, 1 + rng.below(20), rng);
      const SubsetF2n ss = sumset(s);
      const SubsetF2n sp = span(s);
      zero_in = zero_in && ss.contains(0);
      in_span = in_span && ss.is_subset_of(sp);
      idempotent = idempotent && span(sp) == sp;
      affine_iff = affine_iff && ((set_stats(s).doubling == 1) == is_affine_subspace(s));
      const auto coset = gen_small_doubling_set(sz.set_dim, 2, 1, rng.next());
      affine_iff = affine_iff && set_stats(coset.set).doubling == 1 &&
                   is_affine_subspace(coset.set);
    }
    out.push_back(flag("0 in S+S", zero_in));
    out.push_back(flag("S+S within Span(S)", in_span));
    out.push_back(flag("Span idempotent", idempotent));
    out.push_back(flag("doubling 1 iff affine subspace", affine_iff));
  }
  {
    bool f0_in = true, affine_iff = true, order_free = true;
    for (unsigned t = 0; t < sz.trials; ++t) {
      const FnTable f = gen_random_function(sz.fn_dim - 1, 3, rng.next());
      const DiffSet d = difference_set(f);
      f0_in = f0_in && d.contains(f(0));
      const FnTable a = random_affine(sz.fn_dim - 1, 3, rng);
      affine_iff = affine_iff && difference_set(a).size() == 1 && d.size() > 1;
      const unsigned n = f.dom_dim();
      const std::vector<PointF2> ys{PointF2(n, static_cast<Code>(rng.bits(n))),
                                    PointF2(n, static_cast<Code>(rng.bits(n))),
                                    PointF2(n, static_cast<Code>(rng.bits(n)))};
      const std::vector<PointF2> rev(ys.rbegin(), ys.rend());
      order_free = order_free && iterated_derivative(f, ys) == iterated_derivative(f, rev);
    }
    out.push_back(flag("f(0) in Delta f", f0_in));
    out.push_back(flag("|Delta f| = 1 iff affine", affine_iff));
    out.push_back(flag("iterated derivative order-independent", order_free));
  }

  // fourier
  {
    bool parseval = true, u2_match = true, u2_bound = true;
    for (unsigned t = 0; t < sz.trials; ++t) {
      const FnTable f = gen_random_function(sz.u2_dim, 1, rng.next());
      const auto spec = wht_spectrum(f);
      double sum = 0.0;
      for (double c : spec.coeffs) sum += c * c;
      parseval = parseval && std::fabs(sum - 1.0) <= 1e-12;
      const double u2 = u2_via_spectrum(f);
      u2_match = u2_match && std::fabs(u2 - gowers_norm_exact(f, 2, exec).value) <= 1e-10;
      u2_bound = u2_bound && u2 + 1e-12 >= to_double(2 * best_affine_approx(f).agreement - 1);
    }
    out.push_back(flag("Parseval", parseval));
    out.push_back(flag("U2 = L4 norm of spectrum", u2_match));
    out.push_back(flag("U2 >= 2 * affine agreement - 1", u2_bound));
  }

  // gowers
  {
    bool degree_iff = true, item5 = true, nonneg = true, in_unit = true;
    for (unsigned t = 0; t < sz.trials; ++t) {
      const unsigned d = 2 + static_cast<unsigned>(rng.below(2));
      const auto poly = gen_noisy_polynomial(sz.u2_dim, d - 1, 0.0, rng.next());
      const auto exact = gen_noisy_polynomial(sz.u2_dim, d, 0.0, rng.next());
      const auto g_low = gowers_norm_exact(poly.f, d, exec);
      const auto g_top = gowers_norm_exact(exact.f, d, exec);
      degree_iff = degree_iff && (*g_low.pre_root == 1) &&
                   ((*g_top.pre_root == 1) == (polynomial_degree(exact.f) <= d - 1));
      const auto noisy = gen_noisy_polynomial(sz.u2_dim, d - 1, 0.1, rng.next());
      std::uint64_t agree = 0;
      for (std::uint64_t x = 0; x < noisy.f.domain_size(); ++x)
        agree += noisy.f(static_cast<Code>(x)) == noisy.planted(static_cast<Code>(x));
      const Rational eps = 2 * dyadic(BigInt(agree), sz.u2_dim) - 1;
      const auto g_noisy = gowers_norm_exact(noisy.f, d, exec);
      item5 = item5 && (eps <= 0 || *g_noisy.pre_root >= pow(eps, 1u << d));
      for (const auto* g : {&g_low, &g_top, &g_noisy}) {
        nonneg = nonneg && *g->pre_root >= 0;
        in_unit = in_unit && g->value >= 0.0 && g->value <= 1.0;
      }
    }
    out.push_back(flag("U^d = 1 iff degree <= d-1", degree_iff));
    out.push_back(flag("U^d >= eps for (1+eps)/2 agreement with degree d-1", item5));
    out.push_back(flag("exact accumulator nonnegative", nonneg));
    out.push_back(flag("0 <= U^d <= 1", in_unit));
  }

  // reduction
  {
    bool identity = true, f_u3 = true, chain = true, cs_step = true, bilinear = true,
         covering = true;
    for (unsigned t = 0; t < sz.trials; ++t) {
      const unsigned m = 2 + static_cast<unsigned>(rng.below(2));
      const FnTable f = gen_random_function(sz.lift_n, m, rng.next());
      const Rational p = a_system_probability(f, exec);
      const auto g = gowers_norm_exact(lift_inner_product(f), 3, exec);
      identity = identity && std::fabs(to_double(p) - std::pow(g.value, 8)) <= 1e-12 &&
                 p == *g.pre_root;
      const Rational k(BigInt(difference_set(f).size()));
      f_u3 = f_u3 && p >= 1 / pow(k, 7);

      const auto hom = gen_structured_hom(sz.chain_n, 3, 2, rng.next());
      const Rational kh(BigInt(hom.achieved_k_delta));
      const LevelChain lc = build_level_chain(hom.f, 3, exec);
      for (const auto& step : lc.steps()) {
        chain = chain && step.density >= 1 / pow(kh, (1u << step.level) - 1);
        cs_step = cs_step && step.doubled_density >= step.previous_density * step.previous_density;
      }

      const unsigned qn = 2 + static_cast<unsigned>(rng.below(2));
      const unsigned qm = 2;
      const auto phase = gen_quadratic_phase(qn + qm, rng.next());
      const QuadraticForm q(qn + qm, phase.quad, phase.lin, phase.const_bit);
      const BitMatrix a = extract_bilinear(q, qn, qm);
      // residual r(x,z) = q(x,z) + x^T A z must have no cross terms
      auto residual = [&](Code x, Code z) {
        return q.evaluate(x | (z << qn)) ^ parity(a.left_apply(x) & z);
      };
      for (Code x = 0; x < (1u << qn); ++x)
        for (Code x2 = 0; x2 < (1u << qn); ++x2)
          for (Code z = 0; z < (1u << qm); ++z)
            for (Code z2 = 0; z2 < (1u << qm); ++z2)
              bilinear = bilinear && (residual(x, z) ^ residual(x2, z) ^ residual(x, z2) ^
                                      residual(x2, z2)) == 0;

      const auto small = gen_structured_hom(3, 3, 2, rng.next());
      const PfrReport rep = pfr_decompose(small.f, std::nullopt, exec);
      covering = covering && rep.decomposition.all_hold() &&
                 rep.decomposition.cover_size * rep.decomposition.agreement_eps <= 1;
    }
    out.push_back(flag("Pr[A=0] = ||F||_U3^8", identity));
    out.push_back(flag("Pr[A=0] >= |Delta f|^-7", f_u3));
    out.push_back(flag("level density >= K^-(2^k-1)", chain));
    out.push_back(flag("density(S') >= density(S_k)^2", cs_step));
    out.push_back(flag("bilinear residual has no cross second differences", bilinear));
    out.push_back(flag("covering: |B| <= 1/eps, disjoint, maximal, contained", covering));
  }

  // inverse3
  {
    bool derivative_linear = true, energy_match = true, self_audit = true, coverage_ok = true;
    for (unsigned t = 0; t < sz.trials; ++t) {
      const unsigned n = sz.profile_n;
      const auto phase = gen_quadratic_phase(n, rng.next());
      BitMatrix sym(n, n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
          if ((phase.quad[i] >> j) & 1u) {
            sym.set(i, j, true);
            sym.set(j, i, true);
          }
      const DerivativeProfile prof = derivative_profile(phase.f, exec);
      for (std::uint64_t y = 0; y < prof.entries.size(); ++y) {
        const auto& e = prof.entries[y];
        derivative_linear = derivative_linear && e.u2_value == 1.0 && e.agreement == 1 &&
                            e.alpha == sym.apply(y);
      }

      const auto noisy = gen_noisy_polynomial(n, 2, 0.1, rng.next());
      const DerivativeProfile np = derivative_profile(noisy.f, exec);
      const SubsetF2n s = linearity_set(np);
      const auto stats = linearity_energy(s);
      // Second route: representation counts r(u) = #{(a,b) : a+b = u}.
      std::vector<std::uint64_t> reps(s.universe(), 0);
      const auto elems = s.elements();
      for (Code a : elems)
        for (Code b : elems) ++reps[a ^ b];
      std::uint64_t closed = 0;
      for (Code c : elems) closed += reps[c];
      energy_match = energy_match &&
                     stats.energy == Rational(BigInt(closed), BigInt(elems.size()) * elems.size());

      const BsgResult bsg = bsg_extract(s, 4);
      const SpanTrimResult trim = span_trim(bsg.subset, 2);
      self_audit = self_audit && bsg.subset.is_subset_of(s) &&
                   Rational(BigInt(sumset(bsg.subset).size()), BigInt(bsg.subset.size())) ==
                       bsg.doubling &&
                   trim.subset.is_subset_of(bsg.subset) && span(trim.subset).size() == trim.span_size;

      const LinearFit fit = fit_global_linear_map(s);
      std::uint64_t covered = 0;
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y)
        covered += s.contains(static_cast<Code>(y | (fit.map.apply(y) << n)));
      coverage_ok = coverage_ok && fit.coverage == dyadic(BigInt(covered), n);
    }
    out.push_back(flag("quadratic f: f_y affine with linear part (M+M^T)y", derivative_linear));
    out.push_back(flag("energy by pairs = energy by representation counts", energy_match));
    out.push_back(flag("bsg/span_trim statistics self-audit", self_audit));
    out.push_back(flag("linear fit coverage reproducible", coverage_ok));
  }

  // generators
  {
    bool deterministic = true, plants = true;
    for (unsigned t = 0; t < sz.trials; ++t) {
      const std::uint64_t s = rng.next();
      deterministic = deterministic && gen_random_function(6, 3, s) == gen_random_function(6, 3, s) &&
                      gen_noisy_polynomial(6, 2, 0.1, s).f == gen_noisy_polynomial(6, 2, 0.1, s).f &&
                      gen_structured_hom(5, 3, 3, s).f == gen_structured_hom(5, 3, 3, s).f &&
                      gen_small_doubling_set(8, 3, 2, s).set == gen_small_doubling_set(8, 3, 2, s).set;
      const auto poly = gen_noisy_polynomial(6, 2, 0.0, s);
      std::vector<std::uint8_t> anf(64, 0);
      for (Code mono : poly.monomials) anf[mono] = 1;
      moebius_transform(anf);
      for (std::size_t x = 0; x < anf.size(); ++x)
        plants = plants && poly.planted(static_cast<Code>(x)) == anf[x];
      const auto hom = gen_structured_hom(5, 3, 3, s);
      for (std::uint64_t x = 0; x < hom.f.domain_size(); ++x) {
        const Code e = hom.f(static_cast<Code>(x)) ^ static_cast<Code>(hom.ell.apply(x));
        plants = plants && std::find(hom.error_values.begin(), hom.error_values.end(), e) !=
                               hom.error_values.end();
      }
    }
    out.push_back(flag("generators deterministic per seed", deterministic));
    out.push_back(flag("planted metadata reproduces instance", plants));
  }
  return out;
}

}  // namespace addcomb
