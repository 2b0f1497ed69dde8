#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "l1sieve/config.hpp"
#include "l1sieve/sequence.hpp"

namespace l1sieve {

// Sieved arithmetic functions on 1..n_max. Immutable once built, so a single
// instance can be shared by any number of readers.
class ArithmeticTables {
 public:
  std::int64_t n_max() const { return n_max_; }

  int mobius(std::int64_t n) const { return mobius_[check(n)]; }
  double mangoldt(std::int64_t n) const { return mangoldt_[check(n)]; }
  std::int64_t spf(std::int64_t n) const { return spf_[check(n)]; }
  std::int64_t phi(std::int64_t n) const { return phi_[check(n)]; }
  bool is_prime(std::int64_t n) const { return n >= 2 && spf(n) == n; }
  bool is_squarefree(std::int64_t n) const { return mobius(n) != 0; }

  // Ascending primes <= n_max.
  std::span<const std::uint32_t> primes() const { return primes_; }
  // Primes <= bound (bound clamped to n_max).
  std::span<const std::uint32_t> primes_up_to(std::int64_t bound) const;

  friend ArithmeticTables build_tables(std::int64_t n_max, const Budget& budget);

 private:
  std::size_t check(std::int64_t n) const;

  std::int64_t n_max_ = 0;
  std::vector<std::int8_t> mobius_;
  std::vector<double> mangoldt_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::uint32_t> primes_;
};

// Linear sieve; mu, Lambda and phi are filled in the same pass as spf.
// Throws CapacityError when n_max exceeds budget.max_table_entries.
ArithmeticTables build_tables(std::int64_t n_max, const Budget& budget = {});

// pi(x) for 2 <= x <= n_max.
std::int64_t prime_count(const ArithmeticTables& tables, double x);

// c_q(n) from mu(q/g) phi(q) / phi(q/g), g = gcd(q, |n|). c_q(0) = phi(q).
std::int64_t ramanujan_sum(const ArithmeticTables& tables, std::int64_t q, std::int64_t n);

// Defining trigonometric sum over a coprime to q. Independent of the tables.
std::complex<double> ramanujan_sum_direct_complex(std::int64_t q, std::int64_t n);
double ramanujan_sum_direct(std::int64_t q, std::int64_t n);

// Number of squarefree integers in [1, Q].
std::int64_t squarefree_count(const ArithmeticTables& tables, std::int64_t Q);

CoefficientSequence coefficient_sequence(const ArithmeticTables& tables,
                                         const SequenceSpec& spec, std::int64_t N);

// True when every coefficient outside the declared support is zero.
bool support_consistent(const ArithmeticTables& tables, const CoefficientSequence& seq);

}  // namespace l1sieve
