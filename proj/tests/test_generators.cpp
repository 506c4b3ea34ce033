#include "doctest.h"

#include <bit>
#include <cmath>

#include "addcomb/error.hpp"
#include "addcomb/fourier.hpp"
#include "addcomb/generators.hpp"
#include "addcomb/gf2.hpp"
#include "addcomb/gowers.hpp"
#include "oracles.hpp"

using namespace addcomb;

TEST_CASE("structured homomorphisms") {
  SUBCASE("single error value gives an affine map") {
    const auto g = gen_structured_hom(5, 3, 1, 4);
    REQUIRE(g.error_values.size() == 1);
    for (Code x = 0; x < 32; ++x)
      CHECK(g.f(x) == (static_cast<Code>(g.ell.apply(x)) ^ g.error_values[0]));
    CHECK(difference_set(g.f).values == g.error_values);
  }
  SUBCASE("two error values") {
    const auto g = gen_structured_hom(4, 3, 2, 7);
    CHECK(g.error_values.size() == 2);
    CHECK(g.achieved_k_delta == difference_set(g.f).size());
    CHECK(g.achieved_k_delta <= 8);
    for (Code x = 0; x < 16; ++x) {
      const Code e = g.f(x) ^ static_cast<Code>(g.ell.apply(x));
      CHECK((e == g.error_values[0] || e == g.error_values[1]));
    }
  }
  SUBCASE("full image") {
    const auto g = gen_structured_hom(6, 3, 8, 1);
    CHECK(g.achieved_k_delta >= 7);
  }
  CHECK_THROWS_AS(gen_structured_hom(4, 2, 5, 0), DimensionError);
}

TEST_CASE("small doubling sets") {
  SUBCASE("one coset") {
    const auto g = gen_small_doubling_set(8, 4, 1, 2);
    CHECK(g.set.size() == 16);
    CHECK(set_stats(g.set).doubling == 1);
  }
  SUBCASE("union of cosets") {
    const auto g = gen_small_doubling_set(10, 3, 4, 6);
    const SetStats st = set_stats(g.set);
    CHECK(st.size == 32);
    CHECK(st.span_size == 128);
    // V+{v_i}: sums are V + v_i + v_j, giving 1 + C(4,2) cosets of V.
    CHECK(st.sumset_size == 7 * 8);
    CHECK(st.doubling == Rational(7, 4));
  }
  SUBCASE("independent points") {
    const auto g = gen_small_doubling_set(6, 0, 4, 8);
    CHECK(g.set.size() == 4);
    CHECK(oracle::sumset(g.set.elements()).size() == 7);
  }
  CHECK_THROWS_AS(gen_small_doubling_set(5, 3, 3, 0), DimensionError);
}

TEST_CASE("noisy polynomials") {
  SUBCASE("noise free quadratic") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = gen_noisy_polynomial(6, 2, 0.0, seed);
      CHECK(p.f == p.planted);
      CHECK(p.flips == 0);
      CHECK(polynomial_degree(p.f) <= 2);
      CHECK(gowers_norm_exact(p.f, 3).value == 1.0);
      for (Code mono : p.monomials) CHECK(std::popcount(mono) <= 2);
    }
  }
  SUBCASE("ten percent noise") {
    const auto p = gen_noisy_polynomial(8, 2, 0.1, 3);
    unsigned agree = 0;
    for (Code x = 0; x < 256; ++x) agree += p.f(x) == p.planted(x);
    CHECK(agree + p.flips == 256);
    CHECK(agree / 256.0 == doctest::Approx(0.9).epsilon(0.05));
    CHECK(gowers_norm_exact(p.f, 3).value >= 2.0 * agree / 256.0 - 1.0);
  }
}

TEST_CASE("random functions") {
  CHECK(gen_random_function(6, 3, 12) == gen_random_function(6, 3, 12));
  CHECK_FALSE(gen_random_function(6, 3, 12) == gen_random_function(6, 3, 13));
  const FnTable tiny = gen_random_function(1, 1, 5);
  CHECK(tiny == gen_random_function(1, 1, 5));
  // E[sum W^4] = 2^n (3 N^2 - 2 N) for N = 2^n, so U2 concentrates at (3/N)^(1/4).
  const double centre = std::pow(3.0 / 1024.0, 0.25);
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    CHECK(std::abs(u2_via_spectrum(gen_random_function(10, 1, seed)) - centre) <= 0.02);
}

TEST_CASE("quadratic phases") {
  const auto q = gen_quadratic_phase(7, 3);
  CHECK(polynomial_degree(q.f) <= 2);
  for (unsigned i = 0; i < 7; ++i) CHECK((q.quad[i] & ((Code{2} << i) - 1)) == 0);
}

TEST_CASE("generator kinds parse") {
  for (GenKind k : {GenKind::kNoisyPolynomial, GenKind::kStructuredHom, GenKind::kSmallDoublingSet,
                    GenKind::kRandomFunction, GenKind::kQuadraticPhase})
    CHECK(parse_gen_kind(to_string(k)) == k);
  CHECK_FALSE(parse_gen_kind("cubic").has_value());
}
