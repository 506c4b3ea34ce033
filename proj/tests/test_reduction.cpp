#include "doctest.h"

#include <cmath>
#include <set>

#include "addcomb/error.hpp"
#include "addcomb/generators.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/reduction.hpp"
#include "addcomb/rng.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

BitMatrix random_matrix(unsigned rows, unsigned cols, SplitMix64& rng) {
  BitMatrix a(rows, cols);
  for (unsigned r = 0; r < rows; ++r) a.set_row(r, rng.bits(cols));
  return a;
}

FnTable linear_plus(const BitMatrix& a, Code c) {
  FnTable f(a.rows(), a.cols());
  for (Code x = 0; x < f.domain_size(); ++x) f.set(x, static_cast<Code>(a.left_apply(x)) ^ c);
  return f;
}

// Membership straight from the definition, over every I of [k].
bool in_chain(const FnTable& f, const std::vector<Code>& shifts, Code x, const std::vector<Code>& ys) {
  const unsigned k = static_cast<unsigned>(ys.size());
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Code pt = x, rhs = f(x);
    for (unsigned i = 0; i < k; ++i)
      if ((mask >> i) & 1u) {
        pt ^= ys[i];
        rhs ^= f(ys[i]) ^ shifts[i];
      }
    if (f(pt) != rhs) return false;
  }
  return true;
}

std::uint64_t chain_count(const FnTable& f, const std::vector<Code>& shifts) {
  const unsigned n = f.dom_dim(), k = static_cast<unsigned>(shifts.size());
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << (n * (k + 1))); ++t) {
    std::vector<Code> ys(k);
    for (unsigned i = 0; i < k; ++i) ys[i] = static_cast<Code>((t >> (n * (i + 1))) & ((1u << n) - 1));
    hits += in_chain(f, shifts, static_cast<Code>(t & ((1u << n) - 1)), ys);
  }
  return hits;
}

QuadraticFit brute_quadratic(const FnTable& g) {
  const unsigned n = g.dom_dim();
  const unsigned pairs = n * (n - 1) / 2;
  QuadraticFit best{QuadraticForm(n), Rational(-1)};
  for (std::uint64_t q = 0; q < (std::uint64_t{1} << pairs); ++q)
    for (Code lin = 0; lin < (1u << n); ++lin)
      for (unsigned c = 0; c < 2; ++c) {
        const QuadraticForm form = QuadraticForm::from_codes(n, q, lin, c);
        unsigned agree = 0;
        for (Code v = 0; v < (1u << n); ++v) agree += g(v) == form.evaluate(v);
        const Rational a(agree, 1u << n);
        if (a > best.agreement) best = {form, a};
      }
  return best;
}

std::set<Code> diff_set(const FnTable& f) {
  std::set<Code> d;
  for (Code x = 0; x < f.domain_size(); ++x)
    for (Code y = 0; y < f.domain_size(); ++y) d.insert(f(x ^ y) ^ f(x) ^ f(y));
  return d;
}

}  // namespace

TEST_CASE("quadratic form evaluation") {
  // x0 x2 + x1 + 1 on three variables
  const QuadraticForm q(3, {0b100, 0, 0}, 0b010, 1);
  for (Code v = 0; v < 8; ++v) {
    const unsigned expect = ((v & 1u) & ((v >> 2) & 1u)) ^ ((v >> 1) & 1u) ^ 1u;
    CHECK(q.evaluate(v) == expect);
    CHECK(q.table()(v) == expect);
  }
  CHECK(QuadraticForm::from_codes(3, q.quad_code(), q.lin(), 1) == q);
  CHECK_THROWS_AS(QuadraticForm(3, {0b001, 0, 0}, 0, 0), DimensionError);
}

TEST_CASE("lift of the identity is AND") {
  FnTable id(1, 1);
  id.set(1, 1);
  const FnTable lifted = lift_inner_product(id);
  CHECK(lifted.dom_dim() == 2);
  for (Code v = 0; v < 4; ++v) CHECK(lifted(v) == ((v & 1u) & (v >> 1)));
}

TEST_CASE("lift of a linear map has U3 one") {
  SplitMix64 rng(4);
  const FnTable f = linear_plus(random_matrix(3, 2, rng), 0);
  CHECK(gowers_norm_exact(lift_inner_product(f), 3).value == 1.0);
  CHECK(a_system_probability(f) == 1);
}

TEST_CASE("A-system probability equals the lifted U3 to the eighth") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const unsigned n = 2 + static_cast<unsigned>(seed % 3);
    const unsigned m = 1 + static_cast<unsigned>(seed % 3);
    const FnTable f = gen_random_function(n, m, seed);
    const Rational p = a_system_probability(f);
    const GowersResult r = gowers_norm_exact(lift_inner_product(f), 3);
    CHECK(p == *r.pre_root);
    CHECK(std::abs(to_double(p) - std::pow(r.value, 8)) <= 1e-12);
    const Rational k(BigInt(difference_set(f).size()));
    CHECK(p >= 1 / pow(k, 7));
  }
}

TEST_CASE("level chain on an affine map") {
  SplitMix64 rng(12);
  const FnTable f = linear_plus(random_matrix(4, 3, rng), 5);
  const LevelChain chain = build_level_chain(f, 1);
  REQUIRE(chain.shifts().size() == 1);
  CHECK(chain.shifts()[0] == 5);
  CHECK(chain.density() == 1);
}

TEST_CASE("level chain matches the definition") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const FnTable f = gen_random_function(3, 2, seed);
    const LevelChain chain = build_level_chain(f, 3);
    const auto& shifts = chain.shifts();
    CHECK(chain.count() == chain_count(f, shifts));
    // Each c_k is the most frequent choice, smallest code on ties.
    for (unsigned level = 0; level < 3; ++level) {
      std::vector<Code> prefix(shifts.begin(), shifts.begin() + level);
      prefix.push_back(0);
      std::uint64_t best = 0;
      Code best_c = 0;
      for (Code c = 0; c < 4; ++c) {
        prefix.back() = c;
        const std::uint64_t cnt = chain_count(f, prefix);
        if (cnt > best) best = cnt, best_c = c;
      }
      CHECK(shifts[level] == best_c);
    }
    SplitMix64 rng(seed);
    for (int t = 0; t < 200; ++t) {
      const Code x = static_cast<Code>(rng.bits(3));
      const std::vector<Code> ys{static_cast<Code>(rng.bits(3)), static_cast<Code>(rng.bits(3)),
                                 static_cast<Code>(rng.bits(3))};
      CHECK(chain.contains(x, ys) == in_chain(f, shifts, x, ys));
    }
  }
}

TEST_CASE("level chain density bounds") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = gen_structured_hom(4, 3, 4, seed);
    const Rational k(BigInt(difference_set(g.f).size()));
    const LevelChain chain = build_level_chain(g.f, 3);
    for (const LevelStep& s : chain.steps()) {
      CHECK(s.density >= 1 / pow(k, (1u << s.level) - 1));
      CHECK(s.doubled_density >= s.previous_density * s.previous_density);
    }
    CHECK(chain.density() >= 1 / pow(k, 7));
    // S_3 lies in the kernel of the A-system.
    for (Code x = 0; x < 16; ++x)
      for (Code y = 0; y < 16; ++y) {
        const std::vector<Code> ys{y, static_cast<Code>((y * 7) & 15), static_cast<Code>(x ^ 9)};
        if (chain.contains(x, ys)) CHECK(a_system_vanishes(g.f, x, ys[0], ys[1], ys[2]));
      }
  }
}

TEST_CASE("exhaustive quadratic search agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const unsigned n = 2 + static_cast<unsigned>(seed % 3);
    const FnTable g = gen_random_function(n, 1, seed + 40);
    const QuadraticFit fit = best_quadratic_exhaustive(g);
    const QuadraticFit brute = brute_quadratic(g);
    CHECK(fit.agreement == brute.agreement);
    CHECK(fit.form == brute.form);
  }
}

TEST_CASE("exhaustive quadratic search examples") {
  SUBCASE("quadratic input") {
    const auto q = gen_quadratic_phase(5, 3);
    const QuadraticFit fit = best_quadratic_exhaustive(q.f);
    CHECK(fit.agreement == 1);
    CHECK(fit.form == QuadraticForm(5, q.quad, q.lin, q.const_bit));
  }
  SUBCASE("planted quadratic with noise") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto p = gen_noisy_polynomial(5, 2, 0.1, seed);
      const QuadraticFit fit = best_quadratic_exhaustive(p.f);
      CHECK(fit.agreement >= Rational(32 - static_cast<long>(p.flips), 32));
      // Order-2 Reed-Muller codes on 5 variables decode up to 3 errors.
      if (p.flips <= 3) CHECK(fit.form.table() == p.planted);
    }
  }
  SUBCASE("degree three") {
    FnTable g(6, 1);
    for (Code v = 0; v < 64; ++v) g.set(v, ((v & 7u) == 7u) ^ ((v >> 3) == 7u));
    const QuadraticFit fit = best_quadratic_exhaustive(g);
    CHECK(fit.agreement < 1);
    CHECK(fit.agreement > Rational(1, 2));
    unsigned agree = 0;
    for (Code v = 0; v < 64; ++v) agree += g(v) == fit.form.evaluate(v);
    CHECK(fit.agreement == Rational(agree, 64));
  }
  CHECK_THROWS_AS(best_quadratic_exhaustive(FnTable(7, 1)), ResourceLimitError);
}

TEST_CASE("extract bilinear") {
  SUBCASE("x1 z1") {
    // n = 2, m = 2, variables x0 x1 z0 z1
    const QuadraticForm q(4, {0b0100, 0, 0, 0}, 0, 0);
    const BitMatrix a = extract_bilinear(q, 2, 2);
    BitMatrix expect(2, 2);
    expect.set(0, 0, true);
    CHECK(a == expect);
  }
  SUBCASE("x only") {
    const QuadraticForm q(4, {0b0010, 0, 0, 0}, 0b0011, 1);
    CHECK(extract_bilinear(q, 2, 2) == BitMatrix(2, 2));
  }
  SUBCASE("residual has no cross terms") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto qp = gen_quadratic_phase(5, seed);
      const QuadraticForm q(5, qp.quad, qp.lin, qp.const_bit);
      const BitMatrix a = extract_bilinear(q, 3, 2);
      auto residual = [&](Code x, Code z) {
        return q.evaluate(x | (z << 3)) ^ parity(a.left_apply(x) & z);
      };
      for (Code x = 0; x < 8; ++x)
        for (Code z = 0; z < 4; ++z)
          CHECK((residual(x, z) ^ residual(x, 0) ^ residual(0, z) ^ residual(0, 0)) == 0);
    }
  }
}

TEST_CASE("linear shift agreement") {
  SplitMix64 rng(2);
  const BitMatrix a = random_matrix(5, 3, rng);
  const ShiftAgreement exact = linear_shift_agreement(linear_plus(a, 6), a);
  CHECK(exact.shift == 6);
  CHECK(exact.agreement == 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FnTable f = gen_random_function(6, 3, seed);
    const BitMatrix b = random_matrix(6, 3, rng);
    const ShiftAgreement s = linear_shift_agreement(f, b);
    CHECK(s.agreement >= Rational(1, 8));
    std::vector<unsigned> hist(8);
    for (Code x = 0; x < 64; ++x) ++hist[f(x) ^ b.left_apply(x)];
    const auto top = std::max_element(hist.begin(), hist.end());
    CHECK(s.shift == static_cast<Code>(top - hist.begin()));
    CHECK(s.agreement == Rational(*top, 64));
  }
}

TEST_CASE("covering decomposition") {
  SUBCASE("affine") {
    SplitMix64 rng(7);
    const BitMatrix a = random_matrix(4, 2, rng);
    const DecompositionReport r = covering_decomposition(linear_plus(a, 3), a, 3);
    CHECK(r.cover == std::vector<Code>{0});
    CHECK(r.error_image == std::vector<Code>{3});
    CHECK(r.error_image_size == 1);
    CHECK(r.all_hold());
  }
  SUBCASE("bound arithmetic with K = 2 and eps = 1/4") {
    FnTable f(2, 2);
    f.set(3, 1);  // x1 x2 times u = 1, difference set {0, 1}
    bool seen = false;
    for (std::uint64_t rows = 0; rows < 16 && !seen; ++rows)
      for (Code c = 0; c < 4 && !seen; ++c) {
        BitMatrix a(2, 2);
        a.set_row(0, rows & 3);
        a.set_row(1, rows >> 2);
        unsigned agree = 0;
        for (Code x = 0; x < 4; ++x) agree += f(x) == (a.left_apply(x) ^ c);
        if (agree != 1) continue;
        seen = true;
        const DecompositionReport r = covering_decomposition(f, a, c);
        CHECK(r.k_delta == 2);
        CHECK(r.agreement_eps == Rational(1, 4));
        CHECK(r.bound == 16);
      }
    CHECK(seen);
  }
  SUBCASE("zero agreement") {
    SplitMix64 rng(1);
    const BitMatrix a = random_matrix(3, 2, rng);
    CHECK_THROWS_AS(covering_decomposition(linear_plus(a, 0), a, 1), DegenerateAgreementError);
  }
  SUBCASE("planted instances checked by enumeration") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto g = gen_structured_hom(5, 3, 2 + seed % 3, seed);
      const BitMatrix a = g.ell.transpose();
      const ShiftAgreement s = linear_shift_agreement(g.f, a);
      const DecompositionReport r = covering_decomposition(g.f, a, s.shift);
      const std::set<Code> delta = diff_set(g.f);
      CHECK(r.k_delta == delta.size());
      std::set<Code> t, image, bprime, reach, sums;
      for (Code x = 0; x < 32; ++x) {
        const Code e = g.f(x) ^ static_cast<Code>(a.left_apply(x));
        image.insert(e);
        if (e == s.shift) t.insert(x);
      }
      CHECK(r.error_image == std::vector<Code>(image.begin(), image.end()));
      CHECK(r.cover.size() <= static_cast<std::size_t>(std::ceil(1.0 / to_double(r.agreement_eps))));
      std::vector<unsigned> hit(32, 0);
      for (Code b : r.cover) {
        bprime.insert(g.f(b) ^ static_cast<Code>(a.left_apply(b)));
        for (Code x : t) ++hit[x ^ b];
        for (Code x : t)
          for (Code y : t) reach.insert(x ^ y ^ b);
      }
      CHECK(*std::max_element(hit.begin(), hit.end()) <= 1);
      CHECK(reach.size() == 32);
      for (Code u : delta)
        for (Code v : delta)
          for (Code w : bprime) sums.insert(u ^ v ^ w);
      for (Code e : image) CHECK(sums.count(e) == 1);
      CHECK(Rational(BigInt(image.size())) <= Rational(BigInt(delta.size() * delta.size())) / r.agreement_eps);
      CHECK(r.all_hold());
    }
  }
}

TEST_CASE("pfr decomposition examples") {
  SUBCASE("linear") {
    SplitMix64 rng(21);
    const PfrReport r = pfr_decompose(linear_plus(random_matrix(3, 2, rng), 0));
    CHECK(r.decomposition.agreement_eps == 1);
    CHECK(r.decomposition.error_image_size == 1);
    CHECK(r.all_hold());
  }
  SUBCASE("two error values") {
    const auto g = gen_structured_hom(3, 3, 2, 7);
    const PfrReport r = pfr_decompose(g.f);
    const auto& d = r.decomposition;
    CHECK(Rational(BigInt(d.error_image_size)) <= d.bound);
    CHECK(r.all_hold());
    CHECK(r.checks.size() >= 4);
  }
  SUBCASE("random functions") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const PfrReport r = pfr_decompose(gen_random_function(3, 3, seed));
      CHECK(r.all_hold());
    }
  }
  SUBCASE("supplied form") {
    const auto g = gen_structured_hom(4, 3, 2, 3);
    const PfrReport r = pfr_decompose(g.f, QuadraticForm(7));
    CHECK_FALSE(r.oracle.has_value());
    CHECK_THROWS_AS(pfr_decompose(g.f), ResourceLimitError);
    CHECK_THROWS_AS(pfr_decompose(g.f, QuadraticForm(6)), DimensionError);
  }
}

TEST_CASE("bound checks are exact") {
  CHECK(check_at_least("x", Rational(1, 3), Rational(1, 3)).holds);
  CHECK_FALSE(check_at_most("x", Rational(1, 3) + Rational(1, 1000000000), Rational(1, 3)).holds);
  CHECK(check_at_most("x", Rational(2), Rational(16, 8)).rhs_exact == "2");
}
