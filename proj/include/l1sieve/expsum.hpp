#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "l1sieve/arith.hpp"
#include "l1sieve/config.hpp"
#include "l1sieve/sequence.hpp"

namespace l1sieve {

// ||x||, the distance from x to the nearest integer.
template <typename Scalar>
Scalar distance_to_nearest_integer(Scalar x) {
  using std::abs;
  using std::round;
  return abs(x - round(x));
}

// e(x) = exp(2 pi i x).
template <typename Scalar>
std::complex<Scalar> unit_exp(Scalar x) {
  return std::polar(Scalar(1), Scalar(2) * std::numbers::pi_v<Scalar> * (x - std::round(x)));
}

// F_N(alpha) = sum_{n=1}^{N} e(n alpha). Closed form away from the integers,
// direct summation inside ||alpha|| < 1/(4N^2).
template <typename Scalar>
std::complex<Scalar> eval_F(std::int64_t N, Scalar alpha) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar r = alpha - std::round(alpha);
  const Scalar n = static_cast<Scalar>(N);
  if (std::abs(r) < Scalar(1) / (Scalar(4) * n * n)) {
    std::complex<Scalar> acc{};
    for (std::int64_t k = 1; k <= N; ++k) acc += unit_exp(static_cast<Scalar>(k) * r);
    return acc;
  }
  const Scalar ratio = std::sin(pi * n * r) / std::sin(pi * r);
  return std::polar(ratio, pi * (n + Scalar(1)) * r);
}

// Fejer kernel T_N(alpha) = |F_N(alpha)|^2 / N.
template <typename Scalar>
Scalar eval_T(std::int64_t N, Scalar alpha) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar r = alpha - std::round(alpha);
  const Scalar n = static_cast<Scalar>(N);
  if (std::abs(r) < Scalar(1) / (Scalar(4) * n * n)) return std::norm(eval_F(N, r)) / n;
  const Scalar ratio = std::sin(pi * n * r) / std::sin(pi * r);
  return ratio * ratio / n;
}

// eps_q(n) = sum_{a=1}^{q} e(-na/q): q when q | n, else 0.
constexpr std::int64_t eps(std::int64_t q, std::int64_t n) { return n % q == 0 ? q : 0; }

// Trigonometric polynomial sum_{k=k_min}^{k_min+size-1} coeffs(k - k_min) e(k alpha).
struct TrigPoly {
  std::int64_t k_min = 0;
  Eigen::VectorXcd coeffs;

  std::int64_t k_max() const { return k_min + coeffs.size() - 1; }
  // Number of distinct frequencies the poly can contain.
  std::int64_t span() const { return coeffs.size(); }
};

TrigPoly to_trig_poly(const CoefficientSequence& seq);

// Direct evaluation at one point.
std::complex<double> eval_poly(const TrigPoly& poly, double alpha);
std::complex<double> eval_sequence(const CoefficientSequence& seq, double alpha);

enum class KernelKind { fejer, gstar, h, h_truncated, k_part3 };

std::string_view to_string(KernelKind k);
std::optional<KernelKind> parse_kernel_kind(std::string_view name);

struct KernelSpec {
  KernelKind kind = KernelKind::fejer;
  std::int64_t N = 1;
  std::int64_t P = 0;  // gstar, h, h_truncated
  std::int64_t Q = 0;  // k_part3
};

// floor(N^{1/k}) computed in integers.
std::int64_t integer_root(std::int64_t N, int k);

// Fills P or Q with the defaults: floor(N^{1/4}) for gstar, floor(N^{1/2})
// for h / h_truncated / k_part3, when the argument is absent.
KernelSpec make_kernel_spec(KernelKind kind, std::int64_t N,
                            std::optional<std::int64_t> parameter = std::nullopt);

// Throws ParameterError unless the spec satisfies its kind's constraints.
void validate(const KernelSpec& spec);

// Raw coefficients c_k (gstar) or d_k (h, h_truncated) for k = -N..N at
// index k + N, without the Fejer weights 1 - |k|/N.
Eigen::VectorXd kernel_coefficients(const ArithmeticTables& tables, const KernelSpec& spec);

// Spectral form sum_{|k|<=N} (1 - |k|/N) coef_k e(k alpha) as a TrigPoly.
// Defined for fejer (coef_k = 1), gstar, h and h_truncated.
TrigPoly kernel_trig_poly(const ArithmeticTables& tables, const KernelSpec& spec);

// Shifted-|F|^2 route.
double eval_kernel(const ArithmeticTables& tables, const KernelSpec& spec, double alpha);

// Spectral route; ParameterError for k_part3.
double eval_kernel_spectral(const ArithmeticTables& tables, const KernelSpec& spec, double alpha);

struct GridEvaluation {
  std::int64_t M = 0;
  Eigen::VectorXcd values;  // values(j) at alpha_j = j / M
  std::string provenance;
};

// Values of poly at alpha_j = (j + t/s) / M. Frequencies are folded mod M,
// which is exact for any M, then one inverse DFT of length M is taken.
Eigen::VectorXcd grid_values(const TrigPoly& poly, std::int64_t M, std::int64_t t = 0,
                             std::int64_t s = 1, const Budget& budget = {});

GridEvaluation grid_eval_sequence(const CoefficientSequence& seq, std::int64_t M,
                                  const Budget& budget = {});

GridEvaluation grid_eval_kernel(const ArithmeticTables& tables, const KernelSpec& spec,
                                std::int64_t M, const Budget& budget = {},
                                const Execution& exec = {});

// One weighted shift a/q of |F_N|^2.
struct FejerShift {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double weight = 1.0;
};

// sum over shifts of weight * |F_N(j/M - a/q)|^2 for j < M, using per-j and
// per-shift sine tables; falls back to an exactly reduced argument when the
// shifted point is within 1e-4 of an integer.
Eigen::VectorXd shifted_fejer_grid(std::int64_t N, std::int64_t M,
                                   const std::vector<FejerShift>& shifts,
                                   const Execution& exec = {});

// The K_{N,Q} shift list: a/q with q <= Q squarefree, gcd(a, q) = 1, weight mu(q).
std::vector<FejerShift> k_part3_shifts(const ArithmeticTables& tables, std::int64_t Q);

}  // namespace l1sieve
