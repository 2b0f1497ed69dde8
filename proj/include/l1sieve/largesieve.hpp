#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "l1sieve/arith.hpp"
#include "l1sieve/config.hpp"
#include "l1sieve/expsum.hpp"
#include "l1sieve/sequence.hpp"

namespace l1sieve {

// num / den with den > 0. Compared exactly through 128-bit cross products.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return double(num) / double(den); }
  friend bool operator<(const Fraction& x, const Fraction& y) {
    return static_cast<__int128>(x.num) * y.den < static_cast<__int128>(y.num) * x.den;
  }
  friend bool operator==(const Fraction& x, const Fraction& y) {
    return static_cast<__int128>(x.num) * y.den == static_cast<__int128>(y.num) * x.den;
  }
};

enum class PointSetKind { prime_square_farey, prime_farey, reduced_farey, equispaced, explicit_points, shifted };

std::string_view to_string(PointSetKind k);
std::optional<PointSetKind> parse_point_set_kind(std::string_view name);

// Points of [0, 1) with a certified minimum circular gap delta.
struct SpacedPointSet {
  PointSetKind kind = PointSetKind::explicit_points;
  std::int64_t parameter = 0;
  double offset = 0.0;             // shifted sets only
  std::vector<double> points;      // ascending
  std::vector<Fraction> fractions; // exact points, same order; empty for explicit/shifted
  std::optional<Fraction> delta_exact;
  double delta = 1.0;

  std::size_t size() const { return points.size(); }
};

// Farey-type sets (prime_square_farey(P), prime_farey(P), reduced_farey(Q))
// and equispaced(M) = {j/M}. delta comes from exact adjacent gaps and is
// verified against the kind's lower bound (1/P^4, 1/P^2, 1/Q^2, 1/M).
SpacedPointSet build_point_set(const ArithmeticTables& tables, PointSetKind kind,
                               std::int64_t parameter, const Budget& budget = {});

// Arbitrary points (reduced mod 1); delta from floating-point adjacent gaps.
SpacedPointSet explicit_point_set(std::vector<double> points);

// Every point moved by alpha; the spacing is unchanged.
SpacedPointSet shifted(const SpacedPointSet& base, double alpha);

struct SieveCheck {
  double lhs = 0.0;    // sum_r |S(alpha_r + shift)|^2
  double rhs = 0.0;    // (N + 1/delta - 1) sum |a_n|^2
  double ratio = 0.0;  // lhs / rhs
};

SieveCheck large_sieve_check(const CoefficientSequence& seq, const SpacedPointSet& set,
                             double shift = 0.0, const Execution& exec = {});

// (1/pi(P)) (N + delta^{-1} - 1) with delta^{-1} = P^4 (gstar) or P^2 (h).
double sieve_bound_for_kernel_gap(const ArithmeticTables& tables, std::int64_t N, std::int64_t P,
                                  KernelKind kind);

}  // namespace l1sieve
