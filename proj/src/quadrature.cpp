#include "l1sieve/quadrature.hpp"

#include <cmath>
#include <string>

#include "l1sieve/errors.hpp"
#include "l1sieve/fft.hpp"
#include "l1sieve/parallel.hpp"

namespace l1sieve {

namespace {

double sum_abs(const Eigen::VectorXcd& values) {
  std::vector<double> mags(static_cast<std::size_t>(values.size()));
  for (Eigen::Index j = 0; j < values.size(); ++j) mags[static_cast<std::size_t>(j)] = std::abs(values(j));
  return pairwise_sum(mags);
}

}  // namespace

double l2_norm_sq(const TrigPoly& poly) {
  std::vector<double> terms(static_cast<std::size_t>(poly.span()));
  for (Eigen::Index i = 0; i < poly.coeffs.size(); ++i) terms[static_cast<std::size_t>(i)] = std::norm(poly.coeffs(i));
  return pairwise_sum(terms);
}

double l2_norm_sq(const CoefficientSequence& seq) { return l2_norm_sq(to_trig_poly(seq)); }

double l2_norm_sq_quadrature(const CoefficientSequence& seq, std::int64_t M, const Budget& budget) {
  if (M == 0) M = 2 * seq.size() + 2;
  const Eigen::VectorXcd values = grid_values(to_trig_poly(seq), M, 0, 1, budget);
  std::vector<double> sq(static_cast<std::size_t>(M));
  for (std::int64_t j = 0; j < M; ++j) sq[static_cast<std::size_t>(j)] = std::norm(values(j));
  return pairwise_sum(sq) / double(M);
}

L1Estimate l1_norm(const TrigPoly& poly, const QuadratureOptions& options, const Budget& budget,
                   const Execution& exec) {
  if (!(options.rel_tol > 0.0)) throw ParameterError("l1_norm: rel_tol must be positive");
  if (options.oversample_start < 2) throw ParameterError("l1_norm: oversample_start must be >= 2");
  if (options.oversample_cap < options.oversample_start)
    throw ParameterError("l1_norm: oversample_cap below oversample_start");

  const std::int64_t M0 = smooth_ceil(options.oversample_start * (poly.span() + 1));
  if (M0 > budget.max_grid_points)
    throw CapacityError("l1_norm: base grid " + std::to_string(M0) + " exceeds budget");
  const std::int64_t max_level = options.oversample_cap / options.oversample_start;
  const unsigned workers = resolved_workers(exec);

  L1Estimate est;
  est.rel_tol = options.rel_tol;
  // offset_sums[t] = sum_j |poly((j + t/s) / M0)| at the current level s.
  std::vector<double> offset_sums{sum_abs(grid_values(poly, M0, 0, 1, budget))};
  std::int64_t s = 1;
  est.grids.push_back({M0, offset_sums[0] / double(M0)});

  while (2 * s <= max_level) {
    const std::int64_t next = 2 * s;
    std::vector<double> fresh(static_cast<std::size_t>(s));
    parallel_chunks(static_cast<std::size_t>(s), workers, [&](std::size_t t) {
      fresh[t] = sum_abs(grid_values(poly, M0, 2 * static_cast<std::int64_t>(t) + 1, next, budget));
    });
    std::vector<double> merged(static_cast<std::size_t>(next));
    for (std::int64_t t = 0; t < s; ++t) {
      merged[static_cast<std::size_t>(2 * t)] = offset_sums[static_cast<std::size_t>(t)];
      merged[static_cast<std::size_t>(2 * t + 1)] = fresh[static_cast<std::size_t>(t)];
    }
    offset_sums = std::move(merged);
    s = next;

    const double value = pairwise_sum(offset_sums) / double(s * M0);
    const double previous = est.grids.back().value;
    est.grids.push_back({s * M0, value});
    est.last_delta = value == 0.0 ? std::abs(value - previous) : std::abs(value - previous) / value;
    if (est.last_delta < options.rel_tol) {
      est.converged = true;
      break;
    }
  }
  est.value = est.grids.back().value;
  if (est.grids.size() == 1) est.converged = false;

  const double l2 = std::sqrt(l2_norm_sq(poly));
  if (est.value > l2 + options.rel_tol * est.value + 1e-12)
    throw InvariantViolation("l1_norm: value " + std::to_string(est.value) + " exceeds L2 norm " +
                             std::to_string(l2));
  const double largest = poly.coeffs.size() ? poly.coeffs.cwiseAbs().maxCoeff() : 0.0;
  if (est.value < largest - options.rel_tol * est.value - 1e-12)
    throw InvariantViolation("l1_norm: value " + std::to_string(est.value) +
                             " below largest coefficient " + std::to_string(largest));
  return est;
}

L1Estimate l1_norm(const CoefficientSequence& seq, const QuadratureOptions& options, const Budget& budget,
                   const Execution& exec) {
  return l1_norm(to_trig_poly(seq), options, budget, exec);
}

L1Estimate l1_norm_kernel(const ArithmeticTables& tables, const KernelSpec& spec,
                          const QuadratureOptions& options, const Budget& budget, const Execution& exec) {
  return l1_norm(kernel_trig_poly(tables, spec), options, budget, exec);
}

}  // namespace l1sieve
