#include "addcomb/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "addcomb/error.hpp"
#include "addcomb/fourier.hpp"

namespace addcomb {

namespace {

constexpr unsigned kCountBudgetBits = 28;

// Histogram over codomain values; dense for small codomains.
class Histogram {
 public:
  explicit Histogram(unsigned codom_dim) : dense_(codom_dim <= 16) {
    if (dense_) counts_.assign(std::size_t{1} << codom_dim, 0);
  }

  void add(Code v, std::uint64_t times = 1) {
    if (dense_)
      counts_[v] += times;
    else
      sparse_[v] += times;
  }

  void merge(const Histogram& other) {
    if (dense_) {
      for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    } else {
      for (const auto& [k, v] : other.sparse_) sparse_[k] += v;
    }
  }

  // (value, count) of the most frequent value, ties to the smallest code.
  std::pair<Code, std::uint64_t> argmax() const {
    Code best = 0;
    std::uint64_t best_count = 0;
    if (dense_) {
      for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] > best_count) {
          best_count = counts_[i];
          best = static_cast<Code>(i);
        }
      }
    } else {
      for (const auto& [k, v] : sparse_) {
        if (v > best_count || (v == best_count && k < best)) {
          best_count = v;
          best = k;
        }
      }
    }
    return {best, best_count};
  }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    if (dense_)
      for (auto c : counts_) t += c;
    else
      for (const auto& [k, v] : sparse_) t += v;
    return t;
  }

 private:
  bool dense_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<Code, std::uint64_t> sparse_;
};

unsigned pair_index(unsigned dim, unsigned i, unsigned j) {
  // row-major over i < j
  return i * (2 * dim - i - 1) / 2 + (j - i - 1);
}

BoundCheck boolean_check(std::string name, bool value) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = value ? 1.0 : 0.0;
  c.rhs = 1.0;
  c.lhs_exact = value ? "1" : "0";
  c.rhs_exact = "1";
  c.holds = value;
  return c;
}

// Offsets sum_{i in I} y_i and constants sum_{i in I} (f(y_i) + c_i), indexed by I.
struct LevelPredicate {
  std::vector<Code> offsets;
  std::vector<Code> rhs;

  LevelPredicate(const FnTable& f, std::span<const Code> ys, std::span<const Code> shifts) {
    const std::size_t terms = std::size_t{1} << ys.size();
    offsets.assign(terms, 0);
    rhs.assign(terms, 0);
    for (std::size_t mask = 1; mask < terms; ++mask) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(mask));
      offsets[mask] = offsets[mask & (mask - 1)] ^ ys[low];
      rhs[mask] = rhs[mask & (mask - 1)] ^ f(ys[low]) ^ shifts[low];
    }
  }

  bool holds(const FnTable& f, Code x) const {
    const Code fx = f(x);
    for (std::size_t mask = 1; mask < offsets.size(); ++mask)
      if (f(x ^ offsets[mask]) != (fx ^ rhs[mask])) return false;
    return true;
  }
};

void check_budget(unsigned bits, const char* what, unsigned max_n) {
  if (bits > kCountBudgetBits) {
    throw ResourceLimitError(std::string(what) + " needs 2^" + std::to_string(bits) +
                             " tuples; feasible max n is " + std::to_string(max_n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(unsigned dim, std::vector<Code> quad, Code lin, unsigned const_bit)
    : dim_(dim), quad_(std::move(quad)), lin_(lin), const_bit_(const_bit) {
  if (dim == 0 || dim > kMaxDim) throw DimensionError("quadratic form dimension out of range");
  if (quad_.size() != dim) throw DimensionError("quadratic form needs one row per variable");
  const std::uint64_t full = (std::uint64_t{1} << dim) - 1;
  for (unsigned i = 0; i < dim; ++i) {
    const std::uint64_t upper = full & ~((std::uint64_t{2} << i) - 1);
    if (quad_[i] & ~upper) throw DimensionError("quadratic part must be strictly upper triangular");
  }
  if (lin_ & ~full) throw DimensionError("linear part exceeds dimension");
  if (const_bit_ > 1) throw DimensionError("constant must be 0 or 1");
}

unsigned QuadraticForm::evaluate(Code v) const {
  unsigned acc = const_bit_ ^ parity(lin_ & v);
  for (unsigned i = 0; i < dim_; ++i)
    if ((v >> i) & 1u) acc ^= parity(quad_[i] & v);
  return acc;
}

FnTable QuadraticForm::table() const {
  FnTable t(dim_, 1);
  for (std::uint64_t v = 0; v < t.domain_size(); ++v)
    t.set(static_cast<Code>(v), evaluate(static_cast<Code>(v)));
  return t;
}

std::uint64_t QuadraticForm::quad_code() const {
  std::uint64_t code = 0;
  for (unsigned i = 0; i < dim_; ++i)
    for (unsigned j = i + 1; j < dim_; ++j)
      if (quad_bit(i, j)) code |= std::uint64_t{1} << pair_index(dim_, i, j);
  return code;
}

QuadraticForm QuadraticForm::from_codes(unsigned dim, std::uint64_t quad_code, Code lin,
                                        unsigned const_bit) {
  std::vector<Code> quad(dim, 0);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = i + 1; j < dim; ++j)
      if ((quad_code >> pair_index(dim, i, j)) & 1u) quad[i] |= Code{1} << j;
  return QuadraticForm(dim, std::move(quad), lin, const_bit);
}

// ---------------------------------------------------------------------------
// Bound checks

BoundCheck check_at_least(std::string name, const Rational& lhs, const Rational& rhs) {
  return BoundCheck{std::move(name), to_double(lhs), to_double(rhs), to_string(lhs),
                    to_string(rhs), lhs >= rhs};
}

BoundCheck check_at_most(std::string name, const Rational& lhs, const Rational& rhs) {
  return BoundCheck{std::move(name), to_double(lhs), to_double(rhs), to_string(lhs),
                    to_string(rhs), lhs <= rhs};
}

bool DecompositionReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds; });
}

bool PfrReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.holds; });
}

// ---------------------------------------------------------------------------
// LevelChain

LevelChain::LevelChain(FnTable f, std::vector<Code> shifts, std::vector<LevelStep> steps,
                       BigInt count)
    : f_(std::move(f)), shifts_(std::move(shifts)), steps_(std::move(steps)), count_(count) {}

Rational LevelChain::density() const { return dyadic(count_, f_.dom_dim() * (k() + 1)); }

bool LevelChain::contains(Code x, std::span<const Code> ys) const {
  if (ys.size() != shifts_.size()) throw DimensionError("tuple length must equal the chain level");
  return LevelPredicate(f_, ys, shifts_).holds(f_, x);
}

// ---------------------------------------------------------------------------
// Pipeline steps

FnTable lift_inner_product(const FnTable& f) {
  const unsigned n = f.dom_dim();
  const unsigned m = f.codom_dim();
  if (n + m > kMaxDim) throw DimensionError("lifted dimension n + m exceeds 24");
  FnTable lifted(n + m, 1);
  const std::uint64_t zs = std::uint64_t{1} << m;
  for (std::uint64_t z = 0; z < zs; ++z)
    for (std::uint64_t x = 0; x < f.domain_size(); ++x)
      lifted.set(static_cast<Code>(x | (z << n)),
                 parity(f(static_cast<Code>(x)) & static_cast<Code>(z)));
  return lifted;
}

bool a_system_vanishes(const FnTable& f, Code x, Code y1, Code y2, Code y3) {
  // A_0 = sum over I of {1,2,3}; A_i = sum over I of the other two, shifted by y_i.
  const Code a0 = f(x) ^ f(x ^ y1) ^ f(x ^ y2) ^ f(x ^ y3) ^ f(x ^ y1 ^ y2) ^ f(x ^ y1 ^ y3) ^
                  f(x ^ y2 ^ y3) ^ f(x ^ y1 ^ y2 ^ y3);
  if (a0) return false;
  const Code a1 = f(x ^ y1) ^ f(x ^ y1 ^ y2) ^ f(x ^ y1 ^ y3) ^ f(x ^ y1 ^ y2 ^ y3);
  if (a1) return false;
  const Code a2 = f(x ^ y2) ^ f(x ^ y2 ^ y1) ^ f(x ^ y2 ^ y3) ^ f(x ^ y2 ^ y1 ^ y3);
  if (a2) return false;
  const Code a3 = f(x ^ y3) ^ f(x ^ y3 ^ y1) ^ f(x ^ y3 ^ y2) ^ f(x ^ y3 ^ y1 ^ y2);
  return a3 == 0;
}

Rational a_system_probability(const FnTable& f, Exec exec) {
  const unsigned n = f.dom_dim();
  check_budget(4 * n, "a_system_probability", kCountBudgetBits / 4);
  const std::uint64_t size = f.domain_size();
  const auto parts = parallel_chunks<std::uint64_t>(
      size, exec, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        std::uint64_t hits = 0;
        for (std::uint64_t x = begin; x < end; ++x)
          for (std::uint64_t y1 = 0; y1 < size; ++y1)
            for (std::uint64_t y2 = 0; y2 < size; ++y2)
              for (std::uint64_t y3 = 0; y3 < size; ++y3)
                hits += a_system_vanishes(f, static_cast<Code>(x), static_cast<Code>(y1),
                                          static_cast<Code>(y2), static_cast<Code>(y3));
        return hits;
      });
  std::uint64_t hits = 0;
  for (auto p : parts) hits += p;
  return dyadic(BigInt(hits), 4 * n);
}

LevelChain build_level_chain(const FnTable& f, unsigned k, Exec exec) {
  const unsigned n = f.dom_dim();
  if (k == 0) throw DimensionError("level chain needs k >= 1");
  check_budget(n * (k + 1), "build_level_chain", kCountBudgetBits / (k + 1));
  const std::uint64_t size = f.domain_size();

  std::vector<Code> shifts;
  std::vector<LevelStep> steps;
  BigInt count = BigInt(size);  // |S_0| = 2^n

  for (unsigned level = 0; level < k; ++level) {
    // Enumerate (y_1..y_level); for each, the fibre M = {x : (x, ys) in S_level},
    // then all pairs (x, z) in M^2 with y_{level+1} = x + z.
    const std::uint64_t tuples = std::uint64_t{1} << (n * level);
    struct Partial {
      Histogram hist{1};
      std::uint64_t doubled = 0;
    };
    const auto parts = parallel_chunks<Partial>(
        tuples, exec, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
          Partial p;
          p.hist = Histogram(f.codom_dim());
          std::vector<Code> ys(level);
          std::vector<Code> fibre;
          fibre.reserve(size);
          for (std::uint64_t t = begin; t < end; ++t) {
            for (unsigned i = 0; i < level; ++i)
              ys[i] = static_cast<Code>((t >> (n * i)) & (size - 1));
            const LevelPredicate pred(f, ys, shifts);
            fibre.clear();
            for (std::uint64_t x = 0; x < size; ++x)
              if (pred.holds(f, static_cast<Code>(x))) fibre.push_back(static_cast<Code>(x));
            p.doubled += static_cast<std::uint64_t>(fibre.size()) * fibre.size();
            for (Code x : fibre) {
              const Code fx = f(x);
              for (Code z : fibre) p.hist.add(f(z) ^ fx ^ f(x ^ z));
            }
          }
          return p;
        });
    Histogram hist(f.codom_dim());
    std::uint64_t doubled = 0;
    for (const auto& p : parts) {
      hist.merge(p.hist);
      doubled += p.doubled;
    }
    const auto [shift, hits] = hist.argmax();
    LevelStep step;
    step.level = level + 1;
    step.shift = shift;
    step.previous_density = dyadic(count, n * (level + 1));
    step.doubled_density = dyadic(BigInt(doubled), n * (level + 2));
    step.density = dyadic(BigInt(hits), n * (level + 2));
    steps.push_back(step);
    shifts.push_back(shift);
    count = BigInt(hits);
  }
  return LevelChain(f, std::move(shifts), std::move(steps), count);
}

QuadraticFit best_quadratic_exhaustive(const FnTable& g, Exec exec) {
  const unsigned dim = g.dom_dim();
  if (g.codom_dim() != 1) throw DimensionError("quadratic search needs a Boolean function");
  if (dim > kMaxOracleDim) {
    throw ResourceLimitError("exhaustive quadratic search supports N <= " +
                             std::to_string(kMaxOracleDim) + ", got N = " + std::to_string(dim));
  }
  if (dim == 0) throw DimensionError("quadratic search needs at least one variable");
  const unsigned pairs = dim * (dim - 1) / 2;
  const std::uint64_t quads = std::uint64_t{1} << pairs;
  const std::size_t size = g.domain_size();

  struct Best {
    std::uint64_t quad = 0;
    std::int64_t abs_walsh = -1;
    Code alpha = 0;
    unsigned shift = 0;
  };
  const auto parts = parallel_chunks<Best>(
      quads, exec, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        Best best;
        std::vector<std::int64_t> w(size);
        for (std::uint64_t q = begin; q < end; ++q) {
          const QuadraticForm form = QuadraticForm::from_codes(dim, q, 0, 0);
          for (std::size_t v = 0; v < size; ++v)
            w[v] = (g(static_cast<Code>(v)) ^ form.evaluate(static_cast<Code>(v))) ? -1 : 1;
          fwht_inplace(w);
          for (std::size_t a = 0; a < size; ++a) {
            const std::int64_t v = w[a] < 0 ? -w[a] : w[a];
            if (v > best.abs_walsh) {
              best = {q, v, static_cast<Code>(a), w[a] < 0 ? 1u : 0u};
            }
          }
        }
        return best;
      });
  // Chunks are ascending in q, so a strict comparison keeps the smallest encoding.
  Best best;
  for (const auto& p : parts)
    if (p.abs_walsh > best.abs_walsh) best = p;
  QuadraticFit fit{QuadraticForm::from_codes(dim, best.quad, best.alpha, best.shift),
                   dyadic(BigInt(static_cast<std::int64_t>(size) + best.abs_walsh), dim + 1)};
  return fit;
}

BitMatrix extract_bilinear(const QuadraticForm& q, unsigned n, unsigned m) {
  if (n == 0 || m == 0 || n + m != q.dim())
    throw DimensionError("extract_bilinear: n + m must equal the form's dimension");
  BitMatrix a(n, m);
  const unsigned q00 = q.evaluate(0);
  for (unsigned i = 0; i < n; ++i) {
    const Code ei = Code{1} << i;
    for (unsigned j = 0; j < m; ++j) {
      const Code ej = Code{1} << (n + j);
      a.set(i, j, (q.evaluate(ei | ej) ^ q.evaluate(ei) ^ q.evaluate(ej) ^ q00) != 0);
    }
  }
  return a;
}

ShiftAgreement linear_shift_agreement(const FnTable& f, const BitMatrix& a) {
  if (a.rows() != f.dom_dim() || a.cols() != f.codom_dim())
    throw DimensionError("linear map must be n x m");
  Histogram hist(f.codom_dim());
  for (std::uint64_t x = 0; x < f.domain_size(); ++x)
    hist.add(f(static_cast<Code>(x)) ^ static_cast<Code>(a.left_apply(x)));
  const auto [shift, count] = hist.argmax();
  return ShiftAgreement{shift, count, dyadic(BigInt(count), f.dom_dim())};
}

DecompositionReport covering_decomposition(const FnTable& f, const BitMatrix& a, Code shift_c) {
  const unsigned n = f.dom_dim();
  const unsigned m = f.codom_dim();
  if (a.rows() != n || a.cols() != m) throw DimensionError("linear map must be n x m");
  const std::uint64_t size = f.domain_size();
  auto ell = [&](Code x) { return static_cast<Code>(a.left_apply(x)); };

  SubsetF2n t_set(n);
  SubsetF2n image(m);
  for (std::uint64_t x = 0; x < size; ++x) {
    const Code err = f(static_cast<Code>(x)) ^ ell(static_cast<Code>(x));
    image.insert(err);
    if (err == shift_c) t_set.insert(static_cast<Code>(x));
  }
  if (t_set.empty()) throw DegenerateAgreementError("no x satisfies f(x) = l(x) + c");

  DecompositionReport r;
  r.ell = a.transpose();
  r.shift_c = shift_c;
  r.agreement_eps = dyadic(BigInt(t_set.size()), n);
  r.error_image = image.elements();
  r.error_image_size = image.size();

  // T+b and T+b' meet iff b + b' lies in T + T.
  const SubsetF2n tt = sumset(t_set);
  for (std::uint64_t b = 0; b < size; ++b) {
    const bool fits = std::none_of(r.cover.begin(), r.cover.end(), [&](Code prev) {
      return tt.contains(static_cast<Code>(b) ^ prev);
    });
    if (fits) r.cover.push_back(static_cast<Code>(b));
  }
  r.cover_size = r.cover.size();

  // Independent audits of the cover.
  SubsetF2n covered(n);
  std::uint64_t total = 0;
  for (Code b : r.cover) {
    t_set.for_each([&](Code t) { covered.insert(t ^ b); });
    total += t_set.size();
  }
  r.translates_disjoint = covered.size() == total;
  r.cover_maximal = true;
  for (std::uint64_t x = 0; x < size && r.cover_maximal; ++x) {
    r.cover_maximal = std::any_of(r.cover.begin(), r.cover.end(), [&](Code b) {
      return tt.contains(static_cast<Code>(x) ^ b);
    });
  }

  const DiffSet delta = difference_set(f);
  r.k_delta = delta.size();
  SubsetF2n cover_image(m);
  for (Code b : r.cover) cover_image.insert(f(b) ^ ell(b));
  r.cover_image = cover_image.elements();
  SubsetF2n reachable(m);
  for (Code d1 : delta.values)
    for (Code d2 : delta.values)
      for (Code bp : r.cover_image) reachable.insert(d1 ^ d2 ^ bp);
  r.image_contained = image.is_subset_of(reachable);

  const Rational k(BigInt(r.k_delta));
  r.bound = k * k / r.agreement_eps;
  r.checks.push_back(
      check_at_most("cover_size <= 1/eps", Rational(BigInt(r.cover_size)), 1 / r.agreement_eps));
  r.checks.push_back(boolean_check("cover translates pairwise disjoint", r.translates_disjoint));
  r.checks.push_back(boolean_check("F_2^n within T+T+B", r.cover_maximal));
  r.checks.push_back(boolean_check("error image within Delta f + Delta f + B'", r.image_contained));
  r.checks.push_back(
      check_at_most("error_image_size <= K^2/eps", Rational(BigInt(r.error_image_size)), r.bound));
  return r;
}

PfrReport pfr_decompose(const FnTable& f, const std::optional<QuadraticForm>& supplied,
                        Exec exec) {
  const unsigned n = f.dom_dim();
  const unsigned m = f.codom_dim();
  if (!supplied && n + m > kMaxOracleDim) {
    throw ResourceLimitError("pfr_decompose without a supplied form needs n + m <= " +
                             std::to_string(kMaxOracleDim));
  }
  if (supplied && supplied->dim() != n + m)
    throw DimensionError("supplied quadratic form must have dimension n + m");

  PfrReport r;
  r.k_delta = difference_set(f).size();
  const Rational k(BigInt(r.k_delta));
  const FnTable lifted = lift_inner_product(f);
  r.lifted_u3 = gowers_norm_exact(lifted, 3, exec);
  {
    BoundCheck c = check_at_least("lifted U3^8 >= K^-7", *r.lifted_u3.pre_root, 1 / pow(k, 7));
    c.name = "lifted U3 >= K^(-7/8)";
    c.lhs = r.lifted_u3.value;
    c.rhs = std::pow(to_double(k), -7.0 / 8.0);
    r.checks.push_back(c);
  }

  if (supplied) {
    r.quadratic = *supplied;
    std::uint64_t hits = 0;
    for (std::uint64_t v = 0; v < lifted.domain_size(); ++v)
      hits += lifted(static_cast<Code>(v)) == supplied->evaluate(static_cast<Code>(v));
    r.oracle_agreement = dyadic(BigInt(hits), n + m);
  } else {
    r.oracle = best_quadratic_exhaustive(lifted, exec);
    r.quadratic = r.oracle->form;
    r.oracle_agreement = r.oracle->agreement;
  }
  r.oracle_bias = 2 * r.oracle_agreement - 1;
  r.checks.push_back(check_at_least("oracle agreement >= 1/2", r.oracle_agreement, Rational(1, 2)));

  r.bilinear = extract_bilinear(r.quadratic, n, m);
  const ShiftAgreement shift = linear_shift_agreement(f, r.bilinear);
  const Rational bias = r.oracle_bias > 0 ? r.oracle_bias : Rational(0);
  r.checks.push_back(check_at_least("Pr[f = l + c] >= eps^4/K", shift.agreement, pow(bias, 4) / k));

  r.decomposition = covering_decomposition(f, r.bilinear, shift.shift);
  for (const auto& c : r.decomposition.checks) r.checks.push_back(c);
  return r;
}

}  // namespace addcomb
