#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace l1sieve {

enum class Support { all, squarefree, primes };

std::string_view to_string(Support s);

// Finite coefficient vector a_1..a_N. coeffs(n - 1) holds a_n.
struct CoefficientSequence {
  Eigen::VectorXcd coeffs;
  Support support = Support::all;

  std::int64_t size() const { return coeffs.size(); }
  std::complex<double> operator[](std::int64_t n) const { return coeffs(n - 1); }
};

enum class SequenceKind {
  mobius,
  mangoldt,
  prime_indicator,
  theta,
  chi3,
  chi3_on_primes,
  ones,
  random_complex,
  squarefree_random,
  prime_random,
};

std::string_view to_string(SequenceKind k);
std::optional<SequenceKind> parse_sequence_kind(std::string_view name);

struct SequenceSpec {
  SequenceKind kind = SequenceKind::ones;
  std::uint64_t seed = 0;  // used by the random kinds only
};

// Non-principal character modulo 3.
constexpr int chi3(std::int64_t n) {
  const std::int64_t r = ((n % 3) + 3) % 3;
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

}  // namespace l1sieve
