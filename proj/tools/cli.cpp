#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "addcomb/error.hpp"
#include "addcomb/fourier.hpp"
#include "addcomb/generators.hpp"
#include "addcomb/gf2.hpp"
#include "addcomb/gowers.hpp"
#include "addcomb/inverse3.hpp"
#include "addcomb/io.hpp"
#include "addcomb/reduction.hpp"
#include "addcomb/report.hpp"
#include "addcomb/verify.hpp"

namespace addcomb::cli {

namespace {

struct Options {
  std::string in;
  std::string out;
  std::string quad;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  bool exact = false;
  unsigned workers = 1;
  double tau = 0.5;
  unsigned d = 2;
  std::string kind;
  std::string level = "quick";
  unsigned n = 4;
  unsigned m = 1;
  unsigned degree = 2;
  double rho = 0.0;
  std::uint64_t image_bound = 1;
  unsigned subspace_dim = 0;
  unsigned coset_count = 1;
  std::size_t top = 16;
  unsigned rounds = 4;
  std::uint64_t budget = 2;
  bool timing = false;
};

struct Outcome {
  Json results;
  std::vector<BoundCheck> bounds;
  Json flags = Json::object();
  Json files = Json::object();
};

class UsageError : public Error {
 public:
  using Error::Error;
};

FnTable load_fn(const std::string& path, Outcome& o) {
  if (path.empty()) throw UsageError("--in is required");
  const std::string text = read_text_file(path);
  o.files[path] = fnv1a_hex(text);
  try {
    return parse_fn(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SubsetF2n load_set(const std::string& path, Outcome& o) {
  if (path.empty()) throw UsageError("--in is required");
  const std::string text = read_text_file(path);
  o.files[path] = fnv1a_hex(text);
  try {
    return parse_set(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

BoundCheck truth(std::string name, bool ok) {
  return check_at_least(std::move(name), Rational(ok ? 1 : 0), Rational(1));
}

std::string sidecar_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".meta.json");
  return p.string();
}

Json hex_json(const std::vector<Code>& codes) {
  Json a = Json::array();
  for (Code c : codes) a.push_back(hex(c));
  return a;
}

Outcome cmd_gen(const Options& opt) {
  Outcome o;
  o.flags = {{"kind", opt.kind}, {"n", opt.n},       {"m", opt.m},   {"seed", opt.seed},
             {"degree", opt.degree}, {"rho", opt.rho}, {"K", opt.image_bound},
             {"v", opt.subspace_dim}, {"r", opt.coset_count}, {"out", opt.out}};
  const auto kind = parse_gen_kind(opt.kind);
  if (!kind) throw UsageError("unknown --kind '" + opt.kind + "'");
  if (opt.out.empty()) throw UsageError("--out is required for gen");
  Json meta{{"kind", opt.kind}, {"seed", opt.seed}, {"n", opt.n}};
  std::string body;
  switch (*kind) {
    case GenKind::kRandomFunction: {
      const FnTable f = gen_random_function(opt.n, opt.m, opt.seed);
      meta["m"] = opt.m;
      body = format_fn(f);
      break;
    }
    case GenKind::kNoisyPolynomial: {
      const auto p = gen_noisy_polynomial(opt.n, opt.degree, opt.rho, opt.seed);
      meta["m"] = 1;
      meta["degree"] = opt.degree;
      meta["rho"] = opt.rho;
      meta["monomials"] = hex_json(p.monomials);
      meta["flips"] = p.flips;
      body = format_fn(p.f);
      break;
    }
    case GenKind::kStructuredHom: {
      const auto h = gen_structured_hom(opt.n, opt.m, opt.image_bound, opt.seed);
      Json rows = Json::array();
      for (unsigned r = 0; r < h.ell.rows(); ++r) rows.push_back(hex(h.ell.row(r)));
      meta["m"] = opt.m;
      meta["K"] = opt.image_bound;
      meta["ell"] = rows;
      meta["error_values"] = hex_json(h.error_values);
      meta["k_delta"] = h.achieved_k_delta;
      body = format_fn(h.f);
      break;
    }
    case GenKind::kSmallDoublingSet: {
      const auto s = gen_small_doubling_set(opt.n, opt.subspace_dim, opt.coset_count, opt.seed);
      meta["v"] = opt.subspace_dim;
      meta["r"] = opt.coset_count;
      meta["subspace_basis"] = hex_json(s.subspace_basis);
      meta["shifts"] = hex_json(s.shifts);
      body = format_set(s.set);
      break;
    }
    case GenKind::kQuadraticPhase: {
      const auto q = gen_quadratic_phase(opt.n, opt.seed);
      meta["m"] = 1;
      meta["quadratic"] = to_json(QuadraticForm(opt.n, q.quad, q.lin, q.const_bit));
      body = format_fn(q.f);
      break;
    }
  }
  write_text_file(opt.out, body);
  const std::string meta_path = sidecar_path(opt.out);
  write_text_file(meta_path, meta.dump(2) + "\n");
  o.results = {{"out", opt.out}, {"meta", meta_path}, {"hash", fnv1a_hex(body)}, {"plant", meta}};
  return o;
}

Outcome cmd_setstats(const Options& opt) {
  Outcome o;
  o.flags = {{"in", opt.in}};
  const SubsetF2n s = load_set(opt.in, o);
  const SetStats st = set_stats(s);
  o.results = to_json(st);
  const std::uint64_t cap = std::min<std::uint64_t>(s.universe(), st.size * st.size);
  o.bounds.push_back(truth("size <= |S+S| <= min(2^n, |S|^2)",
                           st.size <= st.sumset_size && st.sumset_size <= cap));
  if (st.ruzsa_bound) {
    o.bounds.push_back(check_at_most("|Span(S)| <= K^2 2^{K^4} |S|", Rational(BigInt(st.span_size)),
                                     Rational(*st.ruzsa_bound)));
  }
  return o;
}

Outcome cmd_delta(const Options& opt) {
  Outcome o;
  o.flags = {{"in", opt.in}};
  const FnTable f = load_fn(opt.in, o);
  const DiffSet d = difference_set(f);
  o.results = to_json(d);
  o.bounds.push_back(truth("f(0) in Delta f", d.contains(f(0))));
  return o;
}

Outcome cmd_spectrum(const Options& opt) {
  Outcome o;
  o.flags = {{"in", opt.in}, {"top", opt.top}};
  const FnTable f = load_fn(opt.in, o);
  const FourierSpectrum s = wht_spectrum(f);
  double sum = 0.0;
  for (double c : s.coeffs) sum += c * c;
  o.results = {{"dim", s.dim}, {"top", to_json(top_coefficients(s, opt.top))},
               {"u2", u2_via_spectrum(f)}};
  BoundCheck parseval{"Parseval: sum coeff^2 = 1", sum, 1.0, "", "", std::fabs(sum - 1.0) <= 1e-12};
  o.bounds.push_back(parseval);
  return o;
}

Outcome cmd_norms(const Options& opt) {
  Outcome o;
  o.flags = {{"in", opt.in}, {"d", opt.d}, {"exact", opt.exact}, {"samples", opt.samples},
             {"seed", opt.seed}};
  const FnTable f = load_fn(opt.in, o);
  const Exec exec{opt.workers};
  const bool exact = opt.exact || opt.samples == 0;
  const GowersResult g =
      exact ? gowers_norm_exact(f, opt.d, exec) : gowers_norm_sampled(f, opt.d, opt.samples, opt.seed, exec);
  o.results = to_json(g);
  o.bounds.push_back(BoundCheck{"0 <= value <= 1", g.value, 1.0, "", "", g.value >= 0.0 && g.value <= 1.0});
  return o;
}

Outcome cmd_pfr(const Options& opt) {
  Outcome o;
  o.flags = {{"in", opt.in}, {"quad", opt.quad}};
  const FnTable f = load_fn(opt.in, o);
  std::optional<QuadraticForm> supplied;
  if (!opt.quad.empty()) {
    const std::string text = read_text_file(opt.quad);
    o.files[opt.quad] = fnv1a_hex(text);
    try {
      supplied = quadratic_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
      throw ParseError(opt.quad + ": " + e.what());
    }
  }
  const PfrReport r = pfr_decompose(f, supplied, Exec{opt.workers});
  o.results = to_json(r);
  o.results.erase("bounds");
  o.bounds = r.checks;
  return o;
}

Outcome cmd_u3(const Options& opt) {
  Outcome o;
  o.flags = {{"in", opt.in}, {"tau", opt.tau}, {"rounds", opt.rounds}, {"budget", opt.budget}};
  const FnTable f = load_fn(opt.in, o);
  InversePipelineOptions p;
  p.tau = opt.tau;
  p.bsg_rounds = opt.rounds;
  p.span_budget = opt.budget;
  p.exec = Exec{opt.workers};
  o.results = to_json(u3_inverse_pipeline(f, p));
  return o;
}

Outcome cmd_verify(const Options& opt) {
  Outcome o;
  o.flags = {{"level", opt.level}, {"seed", opt.seed}};
  const auto level = parse_verify_level(opt.level);
  if (!level) throw UsageError("--level must be quick or full");
  o.bounds = run_invariant_suite(*level, opt.seed, Exec{opt.workers});
  std::size_t passed = 0;
  for (const auto& c : o.bounds) passed += c.holds;
  o.results = {{"level", opt.level}, {"checks", o.bounds.size()}, {"passed", passed}};
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Additive combinatorics over F_2^n: norms, spectra, and reduction pipelines",
               "addcomb"};
  app.require_subcommand(1);
  Options opt;
  std::string json_path;
  app.add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out, "output path");
  app.add_option("--json", json_path, "write the report to this path");
  app.add_flag("--timing", opt.timing, "record wall-clock time in timing_ms");
  app.set_version_flag("--version", kVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--json", json_path, "write the report to this path");
    sub->add_flag("--timing", opt.timing, "record wall-clock time in timing_ms");
  };

  std::map<std::string, std::function<Outcome(const Options&)>> handlers;

  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--kind", opt.kind, "noisy_polynomial|structured_hom|small_doubling_set|random_function|quadratic_phase")
      ->required();
  gen->add_option("--n", opt.n, "domain dimension");
  gen->add_option("--m", opt.m, "codomain dimension");
  gen->add_option("--seed", opt.seed, "seed");
  gen->add_option("--out", opt.out, "output file (.fn or .set)");
  gen->add_option("--degree", opt.degree, "polynomial degree");
  gen->add_option("--rho", opt.rho, "noise rate");
  gen->add_option("--K", opt.image_bound, "error image bound");
  gen->add_option("--v", opt.subspace_dim, "subspace dimension");
  gen->add_option("--r", opt.coset_count, "number of cosets");
  add_common(gen);
  handlers["gen"] = cmd_gen;

  auto* setstats = app.add_subcommand("setstats", "sumset, doubling and span of a .set file");
  setstats->add_option("--in", opt.in, "input .set")->required();
  setstats->add_option("--out", opt.out, "report path");
  add_common(setstats);
  handlers["setstats"] = cmd_setstats;

  auto* delta = app.add_subcommand("delta", "difference set of a .fn file");
  delta->add_option("--in", opt.in, "input .fn")->required();
  delta->add_option("--out", opt.out, "report path");
  add_common(delta);
  handlers["delta"] = cmd_delta;

  auto* spectrum = app.add_subcommand("spectrum", "top Walsh coefficients");
  spectrum->add_option("--in", opt.in, "input .fn")->required();
  spectrum->add_option("--top", opt.top, "number of coefficients");
  spectrum->add_option("--out", opt.out, "report path");
  add_common(spectrum);
  handlers["spectrum"] = cmd_spectrum;

  auto* norms = app.add_subcommand("norms", "Gowers U^d norm");
  norms->add_option("--in", opt.in, "input .fn")->required();
  norms->add_option("--d", opt.d, "order")->check(CLI::PositiveNumber);
  auto* exact_flag = norms->add_flag("--exact", opt.exact, "exact evaluation");
  norms->add_option("--samples", opt.samples, "Monte-Carlo samples")->excludes(exact_flag);
  norms->add_option("--seed", opt.seed, "seed");
  norms->add_option("--out", opt.out, "report path");
  add_common(norms);
  handlers["norms"] = cmd_norms;

  auto* pfr = app.add_subcommand("pfr-pipeline", "linear map with small error image");
  pfr->add_option("--in", opt.in, "input .fn")->required();
  pfr->add_option("--quad", opt.quad, "quadratic form JSON replacing the exhaustive search");
  pfr->add_option("--out", opt.out, "report path");
  add_common(pfr);
  handlers["pfr-pipeline"] = cmd_pfr;

  auto* u3 = app.add_subcommand("u3-pipeline", "instrumented U^3 inverse pipeline");
  u3->add_option("--in", opt.in, "input .fn")->required();
  u3->add_option("--tau", opt.tau, "U^2 threshold for good directions");
  u3->add_option("--rounds", opt.rounds, "pruning rounds");
  u3->add_option("--budget", opt.budget, "span budget");
  u3->add_option("--out", opt.out, "report path");
  add_common(u3);
  handlers["u3-pipeline"] = cmd_u3;

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--level", opt.level, "quick|full");
  verify->add_option("--seed", opt.seed, "seed");
  verify->add_option("--out", opt.out, "report path");
  add_common(verify);
  handlers["verify"] = cmd_verify;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = handlers.at(command)(opt);
  } catch (const std::exception& e) {
    err << "addcomb " << command << ": " << e.what() << "\n";
    return 1;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  Json report;
  report["command"] = command;
  report["version"] = kVersion;
  report["inputs"] = Json{{"flags", outcome.flags}, {"files", outcome.files}};
  report["results"] = outcome.results;
  report["bounds"] = checks_json(outcome.bounds);
  report["timing_ms"] = opt.timing ? elapsed.count() : 0;
  report["worker_count"] = opt.workers;
  const std::string text = report.dump(2) + "\n";

  // gen uses --out for the instance itself.
  std::string report_path = json_path;
  if (report_path.empty() && command != "gen") report_path = opt.out;
  try {
    if (report_path.empty())
      out << text;
    else
      write_text_file(report_path, text);
  } catch (const std::exception& e) {
    err << "addcomb " << command << ": " << e.what() << "\n";
    return 1;
  }
  const bool all_hold = std::all_of(outcome.bounds.begin(), outcome.bounds.end(),
                                    [](const BoundCheck& c) { return c.holds; });
  return all_hold ? 0 : 2;
}

}  // namespace addcomb::cli
