#pragma once

#include <cstdint>
#include <vector>

#include "l1sieve/arith.hpp"
#include "l1sieve/config.hpp"
#include "l1sieve/expsum.hpp"
#include "l1sieve/sequence.hpp"

namespace l1sieve {

struct QuadratureOptions {
  double rel_tol = 1e-4;
  std::int64_t oversample_start = 16;
  std::int64_t oversample_cap = 1024;
};

struct GridSample {
  std::int64_t M = 0;
  double value = 0.0;
};

struct L1Estimate {
  double value = 0.0;
  std::vector<GridSample> grids;  // strictly increasing M
  bool converged = false;
  double last_delta = 0.0;        // relative change between the last two grids
  double rel_tol = 0.0;
};

// Coefficient-space sum |a_n|^2.
double l2_norm_sq(const CoefficientSequence& seq);
double l2_norm_sq(const TrigPoly& poly);

// (1/M) sum_j |S(j/M)|^2; exact for M >= N + 1. M = 0 selects 2N + 2.
double l2_norm_sq_quadrature(const CoefficientSequence& seq, std::int64_t M = 0,
                             const Budget& budget = {});

// Rectangle rule for the integral of |poly| over [0, 1].
//
// The base grid has M0 = smooth_ceil(oversample_start * (span + 1)) points.
// Refinement level s samples (j + t/s) / M0 for t < s, so every refinement
// reuses the coarser sums and only the new offsets cost one length-M0
// transform each; memory stays O(M0) however fine the grid gets. s doubles
// until successive estimates differ by less than rel_tol or s * oversample_start
// reaches oversample_cap. Non-convergence is reported in the result.
//
// The discrete Cauchy bound (value <= ||poly||_2) and the single-coefficient
// projection bound (value >= max |c_k|) are exact for M0 > span and are
// checked; a violation throws InvariantViolation.
L1Estimate l1_norm(const TrigPoly& poly, const QuadratureOptions& options = {},
                   const Budget& budget = {}, const Execution& exec = {});

L1Estimate l1_norm(const CoefficientSequence& seq, const QuadratureOptions& options = {},
                   const Budget& budget = {}, const Execution& exec = {});

// Same quadrature on a spectral-form kernel (fejer, gstar, h, h_truncated).
L1Estimate l1_norm_kernel(const ArithmeticTables& tables, const KernelSpec& spec,
                          const QuadratureOptions& options = {}, const Budget& budget = {},
                          const Execution& exec = {});

}  // namespace l1sieve
