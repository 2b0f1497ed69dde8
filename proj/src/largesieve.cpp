#include "l1sieve/largesieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "l1sieve/errors.hpp"
#include "l1sieve/parallel.hpp"
#include "l1sieve/quadrature.hpp"

namespace l1sieve {

namespace {

struct KindName {
  PointSetKind kind;
  std::string_view name;
};

constexpr KindName kPointSetNames[] = {
    {PointSetKind::prime_square_farey, "prime_square_farey"},
    {PointSetKind::prime_farey, "prime_farey"},
    {PointSetKind::reduced_farey, "reduced_farey"},
    {PointSetKind::equispaced, "equispaced"},
    {PointSetKind::explicit_points, "explicit"},
    {PointSetKind::shifted, "shifted"},
};

Fraction reduced(std::int64_t num, std::int64_t den) {
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

// Exact difference y - x of two fractions, reduced.
Fraction difference(const Fraction& x, const Fraction& y) {
  const __int128 num = static_cast<__int128>(y.num) * x.den - static_cast<__int128>(x.num) * y.den;
  const __int128 den = static_cast<__int128>(x.den) * y.den;
  const auto g = std::gcd(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  return {static_cast<std::int64_t>(num / g), static_cast<std::int64_t>(den / g)};
}

std::int64_t estimated_size(const ArithmeticTables& tables, PointSetKind kind, std::int64_t parameter) {
  std::int64_t total = 0;
  switch (kind) {
    case PointSetKind::prime_square_farey:
      for (const std::int64_t p : tables.primes_up_to(parameter)) total += p * p - 1;
      return total;
    case PointSetKind::prime_farey:
      for (const std::int64_t p : tables.primes_up_to(parameter)) total += p - 1;
      return total;
    case PointSetKind::reduced_farey:
      for (std::int64_t q = 1; q <= parameter; ++q) total += tables.phi(q);
      return total;
    default: return parameter;
  }
}

}  // namespace

std::string_view to_string(PointSetKind k) {
  for (const auto& e : kPointSetNames)
    if (e.kind == k) return e.name;
  return "?";
}

std::optional<PointSetKind> parse_point_set_kind(std::string_view name) {
  for (const auto& e : kPointSetNames)
    if (e.name == name) return e.kind;
  return std::nullopt;
}

SpacedPointSet build_point_set(const ArithmeticTables& tables, PointSetKind kind, std::int64_t parameter,
                               const Budget& budget) {
  if (kind == PointSetKind::explicit_points || kind == PointSetKind::shifted)
    throw ParameterError("build_point_set: use explicit_point_set / shifted for this kind");
  if (kind == PointSetKind::equispaced ? parameter < 1 : parameter < 2)
    throw ParameterError("build_point_set: parameter too small for " + std::string(to_string(kind)));
  if (kind != PointSetKind::equispaced && parameter > tables.n_max())
    throw RangeError("build_point_set: parameter exceeds table range");
  if (estimated_size(tables, kind, parameter) > budget.max_point_set_size)
    throw CapacityError("build_point_set: " + std::string(to_string(kind)) + "(" + std::to_string(parameter) +
                        ") exceeds the point-set budget");

  SpacedPointSet set;
  set.kind = kind;
  set.parameter = parameter;
  auto& fr = set.fractions;
  std::int64_t bound_den = 0;  // delta must be >= 1 / bound_den
  switch (kind) {
    case PointSetKind::prime_square_farey:
      for (const std::int64_t p : tables.primes_up_to(parameter))
        for (std::int64_t a = 1; a < p * p; ++a) fr.push_back(reduced(a, p * p));
      bound_den = parameter * parameter * parameter * parameter;
      break;
    case PointSetKind::prime_farey:
      for (const std::int64_t p : tables.primes_up_to(parameter))
        for (std::int64_t a = 1; a < p; ++a) fr.push_back(reduced(a, p));
      bound_den = parameter * parameter;
      break;
    case PointSetKind::reduced_farey:
      for (std::int64_t q = 1; q <= parameter; ++q)
        for (std::int64_t a = 1; a <= q; ++a)
          if (std::gcd(a, q) == 1) fr.push_back(reduced(a, q));
      bound_den = parameter * parameter;
      break;
    case PointSetKind::equispaced:
      for (std::int64_t j = 0; j < parameter; ++j) fr.push_back(reduced(j, parameter));
      bound_den = parameter;
      break;
    default: break;
  }
  std::sort(fr.begin(), fr.end(), [](const Fraction& x, const Fraction& y) {
    return x < y || (x == y && x.den < y.den);
  });
  fr.erase(std::unique(fr.begin(), fr.end(),
                       [](const Fraction& x, const Fraction& y) { return x.num == y.num && x.den == y.den; }),
           fr.end());
  if (fr.empty()) throw DegenerateSetError("build_point_set: empty point set");

  Fraction gap{1, 1};
  for (std::size_t i = 0; i + 1 < fr.size(); ++i) {
    const Fraction d = difference(fr[i], fr[i + 1]);
    if (d < gap) gap = d;
  }
  if (fr.size() > 1) {
    const Fraction wrap = difference(fr.back(), Fraction{fr.front().num + fr.front().den, fr.front().den});
    if (wrap < gap) gap = wrap;
  }
  if (gap.num <= 0) throw DegenerateSetError("build_point_set: repeated point");
  if (gap < Fraction{1, bound_den})
    throw InvariantViolation("build_point_set: certified gap " + std::to_string(gap.num) + "/" +
                             std::to_string(gap.den) + " below the kind's lower bound");

  set.points.reserve(fr.size());
  for (const auto& f : fr) set.points.push_back(f.value());
  set.delta_exact = gap;
  set.delta = gap.value();
  return set;
}

SpacedPointSet explicit_point_set(std::vector<double> points) {
  if (points.empty()) throw DegenerateSetError("explicit_point_set: empty point set");
  for (double& x : points) {
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
  }
  std::sort(points.begin(), points.end());
  double gap = 1.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) gap = std::min(gap, points[i + 1] - points[i]);
  if (points.size() > 1) gap = std::min(gap, points.front() + 1.0 - points.back());
  if (!(gap > 0.0)) throw DegenerateSetError("explicit_point_set: points not distinct modulo 1");
  SpacedPointSet set;
  set.kind = PointSetKind::explicit_points;
  set.parameter = static_cast<std::int64_t>(points.size());
  set.points = std::move(points);
  set.delta = gap;
  return set;
}

SpacedPointSet shifted(const SpacedPointSet& base, double alpha) {
  SpacedPointSet set;
  set.kind = PointSetKind::shifted;
  set.parameter = base.parameter;
  set.offset = base.offset + alpha;
  set.points.reserve(base.points.size());
  for (double x : base.points) {
    double y = x + alpha;
    y -= std::floor(y);
    set.points.push_back(y >= 1.0 ? 0.0 : y);
  }
  std::sort(set.points.begin(), set.points.end());
  set.delta_exact = base.delta_exact;
  set.delta = base.delta;
  return set;
}

SieveCheck large_sieve_check(const CoefficientSequence& seq, const SpacedPointSet& set, double shift,
                             const Execution& exec) {
  if (set.points.empty()) throw DegenerateSetError("large_sieve_check: empty point set");
  const TrigPoly poly = to_trig_poly(seq);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (set.points.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks);
  parallel_chunks(chunks, resolved_workers(exec), [&](std::size_t c) {
    const std::size_t lo = c * kChunk, hi = std::min(set.points.size(), lo + kChunk);
    std::vector<double> sq;
    sq.reserve(hi - lo);
    for (std::size_t r = lo; r < hi; ++r) sq.push_back(std::norm(eval_poly(poly, set.points[r] + shift)));
    partial[c] = pairwise_sum(sq);
  });
  SieveCheck out;
  out.lhs = pairwise_sum(partial);
  out.rhs = (double(seq.size()) + 1.0 / set.delta - 1.0) * l2_norm_sq(seq);
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

double sieve_bound_for_kernel_gap(const ArithmeticTables& tables, std::int64_t N, std::int64_t P,
                                  KernelKind kind) {
  if (kind != KernelKind::gstar && kind != KernelKind::h)
    throw ParameterError("sieve_bound_for_kernel_gap: kind must be gstar or h");
  const auto count = tables.primes_up_to(P).size();
  if (count == 0) throw ParameterError("sieve_bound_for_kernel_gap: no primes <= P");
  const double p2 = double(P) * double(P);
  const double inverse_delta = kind == KernelKind::gstar ? p2 * p2 : p2;
  return (double(N) + inverse_delta - 1.0) / double(count);
}

}  // namespace l1sieve
