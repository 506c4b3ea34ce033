// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "addcomb/fourier.hpp"
#include "addcomb/generators.hpp"
#include "addcomb/gf2.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/inverse3.hpp"
#include "addcomb/io.hpp"
#include "addcomb/reduction.hpp"
#include "cli.hpp"

using namespace addcomb;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Rational k_delta(const FnTable& f) { return Rational(BigInt(difference_set(f).size())); }

void u2_identity() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const FnTable f = gen_random_function(8, 1, seed);
    worst = std::max(worst, std::abs(gowers_norm_exact(f, 2).value - u2_via_spectrum(f)));
  }
  report(1, "U2 spectrum identity", worst <= 1e-10, fmt("100 functions, max |diff| %.3g", worst));
}

void lifting_identity_and_bound() {
  double worst = 0.0;
  bool exact = true;
  int bound_ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FnTable f = gen_random_function(3, 2 + static_cast<unsigned>(seed % 2), 1000 + seed);
    const Rational p = a_system_probability(f);
    const GowersResult u3 = gowers_norm_exact(lift_inner_product(f), 3);
    worst = std::max(worst, std::abs(to_double(p) - std::pow(u3.value, 8)));
    exact = exact && p == *u3.pre_root;
    // ||F||_{U3} >= K^(-7/8)  <=>  ||F||^8 >= K^-7
    bound_ok += *u3.pre_root >= 1 / pow(k_delta(f), 7);
  }
  report(2, "U3 lifting identity", worst <= 1e-12 && exact,
         fmt("20 functions, max |diff| %.3g, exact rationals %s", worst, exact ? "equal" : "differ"));
  report(3, "lifted U3 >= K^(-7/8)", bound_ok == 20, fmt("%d/20 instances", bound_ok));
}

void level_chain() {
  int ok = 0;
  Rational tightest(1000000);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_structured_hom(4, 3, 2 + seed % 3, 2000 + seed);
    const Rational k = k_delta(g.f);
    const LevelChain chain = build_level_chain(g.f, 3);
    bool good = true;
    for (const LevelStep& s : chain.steps()) {
      const Rational floor = 1 / pow(k, (1u << s.level) - 1);
      good = good && s.density >= floor && s.doubled_density >= s.previous_density * s.previous_density;
      tightest = std::min(tightest, Rational(s.density / floor));
    }
    ok += good;
  }
  report(4, "level chain densities", ok == 10,
         fmt("%d/10 instances, k=1..3, smallest density/bound %.3f", ok, to_double(tightest)));
}

void degree_characterization() {
  int low_ok = 0, exact_ok = 0;
  std::uint64_t seed = 3000;
  for (int i = 0; i < 50; ++i) {
    const unsigned d = 1 + static_cast<unsigned>(i % 4);
    const unsigned n = 5 + static_cast<unsigned>(i % 4);
    const auto p = gen_noisy_polynomial(n, d - 1, 0.0, seed++);
    low_ok += std::abs(gowers_norm_exact(p.f, d).value - 1.0) <= 1e-12;
  }
  for (int i = 0; i < 50; ++i) {
    const unsigned d = 1 + static_cast<unsigned>(i % 4);
    const unsigned n = 5 + static_cast<unsigned>(i % 4);
    FnTable f(n, 1);
    do {
      f = gen_noisy_polynomial(n, d, 0.0, seed++).f;
    } while (polynomial_degree(f) != d);
    exact_ok += gowers_norm_exact(f, d).value < 1.0;
  }
  report(5, "degree characterization", low_ok == 50 && exact_ok == 50,
         fmt("degree d-1: %d/50 have U^d = 1; degree d: %d/50 have U^d < 1", low_ok, exact_ok));
}

void correlation_bound() {
  int ok = 0, trials = 0;
  double slack = 1.0;
  const double rhos[] = {0.02, 0.05, 0.1, 0.2};
  for (unsigned d = 2; d <= 4; ++d)
    for (double rho : rhos)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = gen_noisy_polynomial(7, d - 1, rho, 4000 + 100 * d + seed);
        unsigned agree = 0;
        for (Code x = 0; x < 128; ++x) agree += p.f(x) == p.planted(x);
        const double eps = 2.0 * agree / 128.0 - 1.0;
        const double u = gowers_norm_exact(p.f, d).value;
        ++trials;
        ok += u >= eps;
        slack = std::min(slack, u - eps);
      }
  report(6, "U^d >= eps for planted correlation", ok == trials,
         fmt("%d/%d trials, smallest U^d - eps %.4f", ok, trials, slack));
}

void pfr_pipeline() {
  const unsigned dims[][2] = {{3, 3}, {4, 2}, {3, 2}, {2, 3}, {2, 4}};
  int ok = 0;
  std::string worst;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const unsigned n = dims[i % 5][0], m = dims[i % 5][1];
    const auto g = gen_structured_hom(n, m, 1 + i % 3, 5000 + i);
    const PfrReport r = pfr_decompose(g.f);
    const DecompositionReport& d = r.decomposition;
    const Rational eps = d.agreement_eps;
    const Rational k(BigInt(d.k_delta));
    const BigInt cover_cap = (numerator(eps) + denominator(eps) - 1) / numerator(eps);  // ceil(1/eps)
    const Rational bias = r.oracle_bias > 0 ? r.oracle_bias : Rational(0);
    const bool good = Rational(BigInt(d.error_image_size)) <= k * k / eps &&
                      BigInt(d.cover_size) <= cover_cap && d.image_contained &&
                      eps >= pow(bias, 4) / k && r.all_hold();
    ok += good;
    if (!good) worst += fmt(" n=%u,m=%u", n, m);
  }
  report(7, "PFR pipeline end to end", ok == 10, fmt("%d/10 instances%s", ok, worst.c_str()));
}

void monte_carlo() {
  const FnTable f = gen_random_function(8, 1, 6000);
  const double exact = to_double(*gowers_norm_exact(f, 3).pre_root);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GowersResult s = gowers_norm_sampled(f, 3, 100000, 7000 + seed);
    inside += std::abs(s.mean - exact) <= 3.0 * s.std_error;
  }
  report(8, "Monte-Carlo soundness", inside >= 97, fmt("%d/100 seeds within 3 SE", inside));
}

void u3_pipeline() {
  double noisy_min = 1.0, random_max = -1.0;
  int random_over = 0, monotone = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_noisy_polynomial(8, 2, 0.1, 8000 + seed);
    const InverseReport planted = u3_inverse_pipeline(p.f);
    const InverseReport random = u3_inverse_pipeline(gen_random_function(8, 1, 9000 + seed));
    noisy_min = std::min(noisy_min, planted.integration.correlation);
    random_max = std::max(random_max, random.integration.correlation);
    random_over += random.integration.correlation > 0.2;
    monotone += planted.good_fraction >= random.good_fraction && planted.energy >= random.energy &&
                planted.bsg_doubling <= random.bsg_doubling;
  }
  const bool ok = noisy_min >= 0.6 && random_over == 0 && monotone == 10;
  report(9, "U3 inverse pipeline recovery", ok,
         fmt("planted min correlation %.3f (>= 0.6); random max correlation %.3f, %d/10 above 0.2; "
             "statistics monotone in %d/10 pairs",
             noisy_min, random_max, random_over, monotone));
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

void determinism() {
  const fs::path dir = fs::temp_directory_path() / "addcomb_acceptance";
  fs::create_directories(dir);
  auto path = [&](const char* name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> gens{
      {"gen", "--kind", "noisy_polynomial", "--n", "8", "--degree", "2", "--rho", "0.1", "--seed", "1", "--out", path("p.fn")},
      {"gen", "--kind", "structured_hom", "--n", "3", "--m", "3", "--K", "2", "--seed", "7", "--out", path("h.fn")},
      {"gen", "--kind", "small_doubling_set", "--n", "10", "--v", "3", "--r", "4", "--seed", "2", "--out", path("s.set")},
      {"gen", "--kind", "random_function", "--n", "6", "--m", "2", "--seed", "3", "--out", path("r.fn")},
      {"gen", "--kind", "quadratic_phase", "--n", "6", "--seed", "4", "--out", path("q.fn")},
  };
  const std::vector<std::vector<std::string>> analyses{
      {"setstats", "--in", path("s.set")},
      {"delta", "--in", path("r.fn")},
      {"spectrum", "--in", path("p.fn"), "--top", "8"},
      {"norms", "--in", path("p.fn"), "--d", "3", "--exact", "--workers", "2"},
      {"norms", "--in", path("p.fn"), "--d", "3", "--samples", "50000", "--seed", "9", "--workers", "3"},
      {"pfr-pipeline", "--in", path("h.fn")},
      {"u3-pipeline", "--in", path("p.fn")},
      {"verify", "--level", "quick", "--seed", "5"},
  };
  int same = 0, total = 0;
  for (const auto& g : gens) {
    int c1 = 0, c2 = 0;
    const std::string r1 = run_cli(g, c1);
    const std::string inst1 = read_text_file(g.back());
    const std::string r2 = run_cli(g, c2);
    const std::string inst2 = read_text_file(g.back());
    ++total;
    same += c1 == 0 && c1 == c2 && r1 == r2 && inst1 == inst2;
  }
  for (const auto& a : analyses) {
    int c1 = 0, c2 = 0;
    const std::string r1 = run_cli(a, c1);
    const std::string r2 = run_cli(a, c2);
    ++total;
    same += c1 == 0 && c1 == c2 && r1 == r2 && !r1.empty();
  }
  report(10, "CLI determinism", same == total, fmt("%d/%d commands byte-identical", same, total));
}

}  // namespace

int main() {
  u2_identity();
  lifting_identity_and_bound();
  level_chain();
  degree_characterization();
  correlation_bound();
  pfr_pipeline();
  monte_carlo();
  u3_pipeline();
  determinism();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
