#include "l1sieve/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "l1sieve/errors.hpp"

namespace l1sieve {

std::string_view to_string(Support s) {
  switch (s) {
    case Support::all: return "all";
    case Support::squarefree: return "squarefree";
    case Support::primes: return "primes";
  }
  return "?";
}

namespace {

struct KindName {
  SequenceKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {SequenceKind::mobius, "mobius"},
    {SequenceKind::mangoldt, "mangoldt"},
    {SequenceKind::prime_indicator, "prime_indicator"},
    {SequenceKind::theta, "theta"},
    {SequenceKind::chi3, "chi3"},
    {SequenceKind::chi3_on_primes, "chi3_on_primes"},
    {SequenceKind::ones, "ones"},
    {SequenceKind::random_complex, "random_complex"},
    {SequenceKind::squarefree_random, "squarefree_random"},
    {SequenceKind::prime_random, "prime_random"},
};

}  // namespace

std::string_view to_string(SequenceKind k) {
  for (const auto& entry : kKindNames)
    if (entry.kind == k) return entry.name;
  return "?";
}

std::optional<SequenceKind> parse_sequence_kind(std::string_view name) {
  for (const auto& entry : kKindNames)
    if (entry.name == name) return entry.kind;
  return std::nullopt;
}

std::size_t ArithmeticTables::check(std::int64_t n) const {
  if (n < 1 || n > n_max_)
    throw RangeError("argument " + std::to_string(n) + " outside table range [1, " +
                     std::to_string(n_max_) + "]");
  return static_cast<std::size_t>(n);
}

std::span<const std::uint32_t> ArithmeticTables::primes_up_to(std::int64_t bound) const {
  const auto end = std::upper_bound(primes_.begin(), primes_.end(),
                                    static_cast<std::uint32_t>(std::clamp<std::int64_t>(bound, 0, n_max_)));
  return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

ArithmeticTables build_tables(std::int64_t n_max, const Budget& budget) {
  if (n_max < 2) throw RangeError("build_tables requires n_max >= 2");
  if (n_max > budget.max_table_entries)
    throw CapacityError("n_max " + std::to_string(n_max) + " exceeds table budget " +
                        std::to_string(budget.max_table_entries));

  ArithmeticTables t;
  t.n_max_ = n_max;
  const auto size = static_cast<std::size_t>(n_max) + 1;
  t.mobius_.assign(size, 0);
  t.mangoldt_.assign(size, 0.0);
  t.spf_.assign(size, 0);
  t.phi_.assign(size, 0);
  t.primes_.reserve(static_cast<std::size_t>(1.3 * n_max / std::log(double(n_max)) + 16));

  t.mobius_[1] = 1;
  t.phi_[1] = 1;
  t.spf_[1] = 1;
  for (std::uint32_t i = 2; i <= n_max; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = i;
      t.primes_.push_back(i);
      t.mobius_[i] = -1;
      t.phi_[i] = i - 1;
      t.mangoldt_[i] = std::log(double(i));
    }
    for (const std::uint32_t p : t.primes_) {
      const std::uint64_t m = std::uint64_t{p} * i;
      if (p > t.spf_[i] || m > static_cast<std::uint64_t>(n_max)) break;
      t.spf_[m] = p;
      if (p == t.spf_[i]) {
        t.mobius_[m] = 0;
        t.phi_[m] = t.phi_[i] * p;
        // m = p^k exactly when i is a power of p.
        if (t.mangoldt_[i] != 0.0 && t.spf_[i] == p) t.mangoldt_[m] = t.mangoldt_[i];
      } else {
        t.mobius_[m] = static_cast<std::int8_t>(-t.mobius_[i]);
        t.phi_[m] = t.phi_[i] * (p - 1);
      }
    }
  }
  return t;
}

std::int64_t prime_count(const ArithmeticTables& tables, double x) {
  if (!(x >= 2.0) || x > double(tables.n_max()))
    throw RangeError("prime_count: x must lie in [2, n_max]");
  return static_cast<std::int64_t>(tables.primes_up_to(static_cast<std::int64_t>(std::floor(x))).size());
}

std::int64_t ramanujan_sum(const ArithmeticTables& tables, std::int64_t q, std::int64_t n) {
  if (q < 1 || q > tables.n_max()) throw RangeError("ramanujan_sum: q outside [1, n_max]");
  const std::int64_t g = std::gcd(q, n < 0 ? -n : n);  // gcd(q, 0) = q
  const std::int64_t r = q / g;
  return tables.mobius(r) * (tables.phi(q) / tables.phi(r));
}

std::complex<double> ramanujan_sum_direct_complex(std::int64_t q, std::int64_t n) {
  if (q < 1) throw RangeError("ramanujan_sum_direct: q must be positive");
  const std::int64_t nr = ((n % q) + q) % q;
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const std::int64_t residue = (a * nr) % q;
    const double angle = 2.0 * std::numbers::pi * double(residue) / double(q);
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

double ramanujan_sum_direct(std::int64_t q, std::int64_t n) {
  return ramanujan_sum_direct_complex(q, n).real();
}

std::int64_t squarefree_count(const ArithmeticTables& tables, std::int64_t Q) {
  if (Q < 1 || Q > tables.n_max()) throw RangeError("squarefree_count: Q outside [1, n_max]");
  std::int64_t count = 0;
  for (std::int64_t q = 1; q <= Q; ++q) count += tables.mobius(q) != 0;
  return count;
}

CoefficientSequence coefficient_sequence(const ArithmeticTables& tables,
                                         const SequenceSpec& spec, std::int64_t N) {
  if (N < 1) throw RangeError("coefficient_sequence: N must be positive");
  if (N > tables.n_max())
    throw RangeError("coefficient_sequence: N=" + std::to_string(N) + " exceeds n_max=" +
                     std::to_string(tables.n_max()));

  CoefficientSequence seq;
  seq.coeffs = Eigen::VectorXcd::Zero(N);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> magnitude(0.5, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  auto draw = [&] { return std::polar(magnitude(rng), phase(rng)); };

  for (std::int64_t n = 1; n <= N; ++n) {
    std::complex<double> a{};
    switch (spec.kind) {
      case SequenceKind::mobius: a = tables.mobius(n); break;
      case SequenceKind::mangoldt: a = tables.mangoldt(n); break;
      case SequenceKind::prime_indicator: a = tables.is_prime(n) ? 1.0 : 0.0; break;
      case SequenceKind::theta: a = tables.is_prime(n) ? std::log(double(n)) : 0.0; break;
      case SequenceKind::chi3: a = chi3(n); break;
      case SequenceKind::chi3_on_primes: a = tables.is_prime(n) ? chi3(n) : 0; break;
      case SequenceKind::ones: a = 1.0; break;
      case SequenceKind::random_complex: a = draw(); break;
      case SequenceKind::squarefree_random: {
        // Draw for every n so the stream does not depend on the support.
        const auto z = draw();
        a = tables.is_squarefree(n) ? z : 0.0;
        break;
      }
      case SequenceKind::prime_random: {
        const auto z = draw();
        a = tables.is_prime(n) ? z : 0.0;
        break;
      }
    }
    seq.coeffs(n - 1) = a;
  }

  switch (spec.kind) {
    case SequenceKind::mobius:
    case SequenceKind::squarefree_random: seq.support = Support::squarefree; break;
    case SequenceKind::prime_indicator:
    case SequenceKind::theta:
    case SequenceKind::chi3_on_primes:
    case SequenceKind::prime_random: seq.support = Support::primes; break;
    default: seq.support = Support::all; break;
  }
  return seq;
}

bool support_consistent(const ArithmeticTables& tables, const CoefficientSequence& seq) {
  if (seq.support == Support::all) return true;
  if (seq.size() > tables.n_max()) throw RangeError("support_consistent: sequence longer than tables");
  for (std::int64_t n = 1; n <= seq.size(); ++n) {
    const bool inside = seq.support == Support::squarefree ? tables.is_squarefree(n) : tables.is_prime(n);
    if (!inside && seq[n] != std::complex<double>{}) return false;
  }
  return true;
}

}  // namespace l1sieve
