#include "l1sieve/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "l1sieve/errors.hpp"
#include "l1sieve/parallel.hpp"

namespace l1sieve {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Metric record(std::string name, double value, std::optional<double> reference = std::nullopt) {
  Metric m{std::move(name), value, reference, std::nullopt, std::nullopt, false};
  if (reference && *reference != 0.0) m.ratio = value / *reference;
  return m;
}

Metric checked(std::string name, double value, double reference, bool ok, bool analytic) {
  Metric m = record(std::move(name), value, reference);
  m.check = ok;
  m.analytic = analytic;
  return m;
}

void finish(ExperimentRow& row, const Stopwatch& clock, const ExperimentSettings& settings) {
  row.finalize();
  row.runtime_ms = settings.record_timing ? clock.elapsed_ms() : 0.0;
}

void require_even(std::int64_t N, const char* what) {
  if (N < 2 || N % 2 != 0) throw ParameterError(std::string(what) + ": N must be even and >= 2");
}

// sum over n <= N with Lambda(n) != 0 of (N - n) Lambda(n), kept per prime power.
struct WeightedPrimePowers {
  std::vector<std::int64_t> n;
  std::vector<double> weight;
};

WeightedPrimePowers weighted_prime_powers(const ArithmeticTables& tables, std::int64_t N) {
  WeightedPrimePowers out;
  for (std::int64_t n = 2; n <= N; ++n) {
    const double lambda = tables.mangoldt(n);
    if (lambda == 0.0) continue;
    out.n.push_back(n);
    out.weight.push_back(double(N - n) * lambda);
  }
  return out;
}

double log_n(std::int64_t N) { return std::log(double(N)); }

// Every nonzero coefficient sits on an index allowed by `support`.
bool supported_on(const ArithmeticTables& tables, const CoefficientSequence& seq, Support support) {
  if (static_cast<std::int64_t>(seq.size()) > tables.n_max())
    throw RangeError("sequence longer than the arithmetic tables");
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(seq.size()); ++n) {
    if (seq[n] == cplx{}) continue;
    if (support == Support::squarefree && !tables.is_squarefree(n)) return false;
    if (support == Support::primes && !tables.is_prime(n)) return false;
  }
  return true;
}

}  // namespace

bool ExperimentRow::invariant_violated() const {
  return std::any_of(metrics.begin(), metrics.end(),
                     [](const Metric& m) { return m.analytic && m.check && !*m.check; });
}

void ExperimentRow::finalize() {
  pass = converged && std::all_of(metrics.begin(), metrics.end(),
                                  [](const Metric& m) { return !m.check || *m.check; });
}

const Metric* ExperimentRow::metric(const std::string& name) const {
  for (const auto& m : metrics)
    if (m.name == name) return &m;
  return nullptr;
}

ExperimentRow kernel_gap_scan(const ArithmeticTables& tables, std::int64_t N, std::int64_t P, KernelKind kind,
                              std::int64_t M, const ExperimentSettings& settings) {
  Stopwatch clock;
  if (kind != KernelKind::gstar && kind != KernelKind::h && kind != KernelKind::h_truncated)
    throw ParameterError("kernel_gap_scan: kind must be gstar, h or h_truncated");
  const KernelSpec spec{kind, N, P, 0};
  validate(spec);

  ExperimentRow row;
  row.experiment = "kernel_gap";
  row.variant = std::string(to_string(kind));
  row.N = N;
  row.P = P;
  row.M = M;
  if (M < 4 * N) row.note = "grid-resolution warning: M < 4N";

  const Eigen::VectorXd coef = kernel_coefficients(tables, spec);
  auto weight = [&](std::int64_t k) { return 1.0 - double(std::abs(k)) / double(N); };

  // kernel - T_N has coefficients w_k (coef_k - 1).
  TrigPoly diff{-N, Eigen::VectorXcd(2 * N + 1)};
  for (std::int64_t k = -N; k <= N; ++k) diff.coeffs(N + k) = weight(k) * (coef(N + k) - 1.0);
  const Eigen::VectorXd gap = grid_values(diff, M, 0, 1, settings.budget).real();
  const double max_gap = gap.cwiseAbs().maxCoeff();
  const double min_gap = gap.minCoeff();

  const bool squares = kind == KernelKind::gstar;
  const auto set = build_point_set(tables, squares ? PointSetKind::prime_square_farey : PointSetKind::prime_farey,
                                   P, settings.budget);
  const double inverse_delta = double(set.delta_exact->den) / double(set.delta_exact->num);
  const double p2 = double(P) * double(P);
  const double inverse_delta_bound = squares ? p2 * p2 : p2;
  row.metrics.push_back(checked("inverse_delta", inverse_delta, inverse_delta_bound,
                                inverse_delta <= inverse_delta_bound, true));

  const double ceiling = sieve_bound_for_kernel_gap(tables, N, P, squares ? KernelKind::gstar : KernelKind::h);
  const double slack = 1e-12 * ceiling + 1e-9 * double(N);
  if (kind == KernelKind::h_truncated) {
    TrigPoly low{-N, Eigen::VectorXcd::Zero(2 * N + 1)};
    double low_l1 = 0.0;
    for (std::int64_t k = -std::min(P, N); k <= std::min(P, N); ++k) {
      // d_k from the untruncated h kernel.
      double d = 0.0;
      for (const std::int64_t p : tables.primes_up_to(P)) d += eps(p, k);
      d /= double(tables.primes_up_to(P).size());
      low.coeffs(N + k) = weight(k) * d;
      low_l1 += std::abs(weight(k) * d);
    }
    const double truncation = grid_values(low, M, 0, 1, settings.budget).cwiseAbs().maxCoeff();
    const double three_p = 3.0 * double(P);
    row.metrics.push_back(checked("truncation_diff", truncation, three_p,
                                  truncation <= three_p * (1.0 + 1e-12), true));
    row.metrics.push_back(checked("max_gap", max_gap, ceiling + low_l1,
                                  max_gap <= ceiling + low_l1 + slack, true));
  } else {
    row.metrics.push_back(checked("max_gap", max_gap, ceiling, max_gap <= ceiling + slack, true));
    const double floor_gap = -1e-8 * double(N);
    row.metrics.push_back(checked("min_gap", min_gap, floor_gap, min_gap >= floor_gap, true));
  }
  const double rate = squares ? std::pow(double(N), 0.75) * log_n(N) : std::sqrt(double(N)) * log_n(N);
  row.metrics.push_back(record("max_gap_vs_rate", max_gap, rate));
  finish(row, clock, settings);
  return row;
}

ExperimentRow squarefree_theorem_ratio(const ArithmeticTables& tables, const SequenceSpec& b, std::int64_t N,
                                       const ExperimentSettings& settings) {
  require_even(N, "squarefree_theorem_ratio");
  const auto seq = coefficient_sequence(tables, b, N);
  if (seq.support != Support::squarefree)
    throw ParameterError("squarefree_theorem_ratio: coefficients must be squarefree-supported");
  auto row = squarefree_theorem_ratio(tables, seq, std::string(to_string(b.kind)), settings);
  if (b.kind != SequenceKind::mobius) row.seed = b.seed;
  return row;
}

ExperimentRow squarefree_theorem_ratio(const ArithmeticTables& tables, const CoefficientSequence& seq,
                                       const std::string& variant, const ExperimentSettings& settings) {
  Stopwatch clock;
  const auto N = static_cast<std::int64_t>(seq.size());
  require_even(N, "squarefree_theorem_ratio");
  if (!supported_on(tables, seq, Support::squarefree))
    throw ParameterError("squarefree_theorem_ratio: coefficients must vanish off the squarefree integers");

  ExperimentRow row;
  row.experiment = "squarefree_theorem";
  row.variant = variant;
  row.N = N;
  row.tolerance = settings.quadrature.rel_tol;

  const auto est = l1_norm(seq, settings.quadrature, settings.budget, settings.exec);
  const double l2 = l2_norm_sq(seq);
  const double L = est.value;
  const double logN = log_n(N);
  row.M = est.grids.back().M;
  row.converged = est.converged;

  row.metrics.push_back(checked("l1", L, std::sqrt(l2), L <= std::sqrt(l2) * (1.0 + 5.0 * est.rel_tol), true));
  const double theorem = L * std::pow(double(N), 0.375) * std::sqrt(logN) / std::sqrt(l2);
  row.metrics.push_back(checked("theorem_ratio", theorem, settings.floor, theorem >= settings.floor, false));
  if (variant == to_string(SequenceKind::mobius)) {
    const double mobius_ratio = L * std::sqrt(logN) / std::pow(double(N), 0.125);
    row.metrics.push_back(checked("mobius_ratio", mobius_ratio, settings.floor, mobius_ratio >= settings.floor, false));
  }

  // Autocorrelation: L1 of sum |b_n|^2 e(n a) is at most (L1 of b)^2.
  CoefficientSequence squared{seq.coeffs.cwiseAbs2().cast<cplx>(), seq.support};
  const auto est_sq = l1_norm(squared, settings.quadrature, settings.budget, settings.exec);
  row.converged = row.converged && est_sq.converged;
  row.metrics.push_back(checked("autocorrelation", est_sq.value, L * L,
                                est_sq.value <= L * L * (1.0 + 5.0 * est.rel_tol), true));
  if (!row.converged) row.note = "quadrature did not converge";
  finish(row, clock, settings);
  return row;
}

std::vector<ExperimentRow> prime_support_experiments(const ArithmeticTables& tables, std::int64_t N,
                                                     const ExperimentSettings& settings) {
  require_even(N, "prime_support_experiments");
  const double logN = log_n(N);
  const double rootN = std::sqrt(double(N));
  std::vector<ExperimentRow> rows;

  auto start_row = [&](const char* name, SequenceKind kind) {
    ExperimentRow row;
    row.experiment = name;
    row.variant = std::string(to_string(kind));
    row.N = N;
    row.tolerance = settings.quadrature.rel_tol;
    return row;
  };
  auto measure = [&](ExperimentRow& row, const CoefficientSequence& seq) {
    const auto est = l1_norm(seq, settings.quadrature, settings.budget, settings.exec);
    row.M = est.grids.back().M;
    row.converged = est.converged;
    if (!est.converged) row.note = "quadrature did not converge";
    const double l2 = l2_norm_sq(seq);
    row.metrics.push_back(checked("l1", est.value, std::sqrt(l2),
                                  est.value <= std::sqrt(l2) * (1.0 + 5.0 * est.rel_tol), true));
    return est.value;
  };

  {
    Stopwatch clock;
    auto row = start_row("prime_indicator_l1", SequenceKind::prime_indicator);
    const double L = measure(row, coefficient_sequence(tables, {SequenceKind::prime_indicator, 0}, N));
    const double ratio = L * logN * logN / rootN;
    row.metrics.push_back(checked("indicator_ratio", ratio, settings.floor, ratio >= settings.floor, false));
    row.metrics.push_back(record("l1_vs_sqrtN_over_logN", L, rootN / logN));
    finish(row, clock, settings);
    rows.push_back(std::move(row));
  }
  {
    Stopwatch clock;
    auto row = start_row("chi3_primes_l1", SequenceKind::chi3_on_primes);
    const auto seq = coefficient_sequence(tables, {SequenceKind::chi3_on_primes, 0}, N);
    const double L = measure(row, seq);
    const double ratio = L * logN / std::pow(double(N), 0.25);
    row.metrics.push_back(checked("theorem_ratio", ratio, settings.floor, ratio >= settings.floor, false));
    row.metrics.push_back(record("partial_sum_at_zero", seq.coeffs.sum().real(), rootN / logN));
    finish(row, clock, settings);
    rows.push_back(std::move(row));
  }
  auto row = prime_support_theorem(
      tables, coefficient_sequence(tables, {SequenceKind::prime_random, settings.seed}, N),
      std::string(to_string(SequenceKind::prime_random)), settings);
  row.seed = settings.seed;
  rows.push_back(std::move(row));
  return rows;
}

ExperimentRow prime_support_theorem(const ArithmeticTables& tables, const CoefficientSequence& seq,
                                    const std::string& variant, const ExperimentSettings& settings) {
  Stopwatch clock;
  const auto N = static_cast<std::int64_t>(seq.size());
  require_even(N, "prime_support_theorem");
  if (!supported_on(tables, seq, Support::primes))
    throw ParameterError("prime_support_theorem: coefficients must vanish off the primes");
  ExperimentRow row;
  row.experiment = "prime_support_theorem";
  row.variant = variant;
  row.N = N;
  row.tolerance = settings.quadrature.rel_tol;
  const auto est = l1_norm(seq, settings.quadrature, settings.budget, settings.exec);
  row.M = est.grids.back().M;
  row.converged = est.converged;
  if (!est.converged) row.note = "quadrature did not converge";
  const double l2 = l2_norm_sq(seq);
  row.metrics.push_back(checked("l1", est.value, std::sqrt(l2),
                                est.value <= std::sqrt(l2) * (1.0 + 5.0 * est.rel_tol), true));
  const double ratio = est.value * std::pow(double(N), 0.25) * std::sqrt(log_n(N)) / std::sqrt(l2);
  row.metrics.push_back(checked("prime_support_ratio", ratio, settings.floor, ratio >= settings.floor, false));
  finish(row, clock, settings);
  return row;
}

double vaughan_v_spectral(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q) {
  if (Q < 1 || Q > N) throw ParameterError("vaughan_V: need 1 <= Q <= N");
  if (N > tables.n_max()) throw RangeError("vaughan_V: N exceeds table range");
  const auto pp = weighted_prime_powers(tables, N);
  std::vector<double> per_q;
  std::vector<double> terms(pp.n.size());
  for (std::int64_t q = 1; q <= Q; ++q) {
    const int mu = tables.mobius(q);
    if (mu == 0) continue;
    for (std::size_t i = 0; i < pp.n.size(); ++i)
      terms[i] = pp.weight[i] * double(ramanujan_sum(tables, q, -pp.n[i]));
    per_q.push_back(mu * pairwise_sum(terms));
  }
  return pairwise_sum(per_q);
}

double vaughan_v_quadrature(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q,
                            const Execution& exec) {
  if (Q < 1 || Q > N) throw ParameterError("vaughan_V: need 1 <= Q <= N");
  const std::int64_t M = 4 * N;
  const auto lambda = coefficient_sequence(tables, {SequenceKind::mangoldt, 0}, N);
  const Eigen::VectorXcd s = grid_values(to_trig_poly(lambda), M);
  const Eigen::VectorXd k = shifted_fejer_grid(N, M, k_part3_shifts(tables, Q), exec);
  std::vector<double> products(static_cast<std::size_t>(M));
  for (std::int64_t j = 0; j < M; ++j) products[static_cast<std::size_t>(j)] = s(j).real() * k(j);
  return pairwise_sum(products) / double(M);
}

VReport vaughan_V(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q,
                  const ExperimentSettings& settings) {
  VReport r;
  r.N = N;
  r.Q = Q;
  r.v_spectral = vaughan_v_spectral(tables, N, Q);
  r.target = 3.0 * double(Q) * double(N) * double(N) / (kPi * kPi);
  r.ratio = r.v_spectral / r.target;
  const auto pp = weighted_prime_powers(tables, N);
  r.crude_bound = double(Q) * double(Q + 1) / 2.0 * pairwise_sum(pp.weight);
  if (N <= settings.vaughan_quadrature_max_n) {
    r.v_quadrature = vaughan_v_quadrature(tables, N, Q, settings.exec);
    const double allowed = std::max(1e-6 * std::abs(r.v_spectral),
                                    settings.vaughan_quadrature_tol * double(N) * double(N) * double(Q));
    r.routes_agree = std::abs(r.v_spectral - *r.v_quadrature) <= allowed;
  }
  return r;
}

ExperimentRow to_row(const VReport& report, const ExperimentSettings& settings) {
  ExperimentRow row;
  row.experiment = "vaughan";
  row.variant = "mangoldt";
  row.N = report.N;
  row.Q = report.Q;
  row.tolerance = settings.vaughan_quadrature_tol;
  if (report.v_quadrature) {
    row.M = 4 * report.N;
    row.metrics.push_back(checked("v_quadrature", *report.v_quadrature, report.v_spectral,
                                  report.routes_agree.value_or(false), true));
  } else {
    row.note = "quadrature route skipped above vaughan_quadrature_max_n";
  }
  row.metrics.push_back(record("v_spectral", report.v_spectral, report.target));
  row.metrics.push_back(checked("crude_bound", std::abs(report.v_spectral), report.crude_bound,
                                std::abs(report.v_spectral) <= report.crude_bound, true));
  Metric ratio = record("v_over_target", report.ratio, 1.0);
  if (report.N >= (std::int64_t{1} << 14)) {
    ratio.check = report.ratio >= 0.6 && report.ratio <= 1.4;
  }
  row.metrics.push_back(ratio);
  row.finalize();
  return row;
}

ExperimentRow lambda_l1_bounds(const ArithmeticTables& tables, std::int64_t N, std::int64_t Q,
                               const ExperimentSettings& settings) {
  Stopwatch clock;
  if (Q == 0) Q = integer_root(N, 2);
  ExperimentRow row;
  row.experiment = "lambda_l1";
  row.variant = "mangoldt";
  row.N = N;
  row.Q = Q;
  row.tolerance = settings.quadrature.rel_tol;

  const auto seq = coefficient_sequence(tables, {SequenceKind::mangoldt, 0}, N);
  const auto est = l1_norm(seq, settings.quadrature, settings.budget, settings.exec);
  row.M = est.grids.back().M;
  row.converged = est.converged;
  if (!est.converged) row.note = "quadrature did not converge";
  const double L = est.value;
  const double n = double(N), q = double(Q);
  const double V = vaughan_v_spectral(tables, N, Q);
  const double chain = V / (n * (n + q * q));
  const double l2 = l2_norm_sq(seq);

  row.metrics.push_back(checked("l1", L, std::sqrt(l2), L <= std::sqrt(l2) * (1.0 + 5.0 * est.rel_tol), true));
  row.metrics.push_back(checked("chain_lower_bound", L, chain, L >= chain * (1.0 - est.rel_tol), true));
  row.metrics.push_back(record("v_spectral", V, 3.0 * q * n * n / (kPi * kPi)));
  row.metrics.push_back(
      record("asymptotic_lower", L, (3.0 / (kPi * kPi) - settings.epsilon) * q * n / (n + q * q)));
  const double vaughan_constant = L / std::sqrt(n);
  Metric vc = checked("vaughan_constant", vaughan_constant, 0.15, vaughan_constant >= 0.15, false);
  row.metrics.push_back(vc);
  row.metrics.push_back(record("vaughan_constant_vs_derived", vaughan_constant, 3.0 / (2.0 * kPi * kPi)));
  const double goldston = L / std::sqrt(n * log_n(N));
  row.metrics.push_back(checked("goldston_ratio", goldston, std::sqrt(0.75), goldston <= std::sqrt(0.75), false));
  finish(row, clock, settings);
  return row;
}

ExperimentRow large_sieve_experiment(const ArithmeticTables& tables, PointSetKind kind, std::int64_t parameter,
                                     const SequenceSpec& spec, std::int64_t N, int trials,
                                     const ExperimentSettings& settings) {
  Stopwatch clock;
  ExperimentRow row;
  row.experiment = "large_sieve";
  row.variant = std::string(to_string(kind)) + "/" + std::string(to_string(spec.kind));
  row.N = N;
  row.P = parameter;
  row.seed = spec.seed;
  row.tolerance = 1e-9;

  const auto set = build_point_set(tables, kind, parameter, settings.budget);
  const auto seq = coefficient_sequence(tables, spec, N);
  std::mt19937_64 rng(spec.seed ^ 0x5eedULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < std::max(1, trials); ++t) {
    const double shift = t == 0 ? 0.0 : unit(rng);
    worst = std::max(worst, large_sieve_check(seq, set, shift, settings.exec).ratio);
  }
  row.metrics.push_back(record("points", double(set.size())));
  row.metrics.push_back(record("delta", set.delta));
  row.metrics.push_back(checked("max_ratio", worst, 1.0, worst <= 1.0 + 1e-9, true));
  finish(row, clock, settings);
  return row;
}

ExperimentRow convolution_annihilation(const ArithmeticTables& tables, KernelKind kind, std::int64_t N,
                                       const ExperimentSettings& settings) {
  Stopwatch clock;
  if (kind != KernelKind::gstar && kind != KernelKind::h_truncated)
    throw ParameterError("convolution_annihilation: kind must be gstar or h_truncated");
  const auto spec = make_kernel_spec(kind, N);
  const SequenceSpec seq_spec{kind == KernelKind::gstar ? SequenceKind::squarefree_random : SequenceKind::prime_random,
                              settings.seed};
  const auto seq = coefficient_sequence(tables, seq_spec, N);

  ExperimentRow row;
  row.experiment = "annihilation";
  row.variant = std::string(to_string(kind)) + "/" + std::string(to_string(seq_spec.kind));
  row.N = N;
  row.P = spec.P;
  row.seed = settings.seed;
  const std::int64_t M = 4 * N;
  row.M = M;

  const Eigen::VectorXcd s = grid_values(to_trig_poly(seq), M, 0, 1, settings.budget);
  const TrigPoly kernel = kernel_trig_poly(tables, spec);
  const TrigPoly fejer = kernel_trig_poly(tables, KernelSpec{KernelKind::fejer, N, 0, 0});
  double abs_sum = 0.0;
  for (Eigen::Index i = 0; i < seq.coeffs.size(); ++i) abs_sum += std::abs(seq.coeffs(i));

  // integral of kern(beta - alpha) S(beta) on the grid; the kernels are even.
  auto convolve = [&](const TrigPoly& kern, double alpha) {
    TrigPoly twisted = kern;
    for (Eigen::Index i = 0; i < twisted.coeffs.size(); ++i)
      twisted.coeffs(i) *= unit_exp(-double(kern.k_min + i) * alpha);
    const Eigen::VectorXcd kv = grid_values(twisted, M, 0, 1, settings.budget);
    std::vector<cplx> prod(static_cast<std::size_t>(M));
    for (std::int64_t j = 0; j < M; ++j) prod[static_cast<std::size_t>(j)] = kv(j) * s(j);
    return pairwise_sum(prod) / double(M);
  };

  std::mt19937_64 rng(settings.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_kernel = 0.0, worst_fejer = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = unit(rng);
    worst_kernel = std::max(worst_kernel, std::abs(convolve(kernel, alpha)));
    cplx expected{};
    for (std::int64_t n = 1; n <= N; ++n)
      expected += (1.0 - double(n) / double(N)) * seq[n] * unit_exp(double(n) * alpha);
    worst_fejer = std::max(worst_fejer, std::abs(convolve(fejer, alpha) - expected));
  }
  const double scale = double(N) * abs_sum;
  row.metrics.push_back(checked("max_abs_integral", worst_kernel, 1e-6 * scale, worst_kernel <= 1e-6 * scale, true));
  row.metrics.push_back(checked("fejer_identity_error", worst_fejer, 1e-9 * scale, worst_fejer <= 1e-9 * scale, true));
  finish(row, clock, settings);
  return row;
}

ExperimentRow arithmetic_checks(const ArithmeticTables& tables, std::int64_t N, const ExperimentSettings& settings) {
  Stopwatch clock;
  if (N < 17 || N > tables.n_max()) throw RangeError("arithmetic_checks: need 17 <= N <= n_max");
  ExperimentRow row;
  row.experiment = "arith_checks";
  row.variant = "sieve";
  row.N = N;

  std::int64_t pi = 0;
  double worst_rs = std::numeric_limits<double>::infinity();
  std::int64_t mertens = 0;
  double worst_mertens = 0.0;
  std::int64_t squarefree = 0;
  std::vector<double> weighted, lambda_sq;
  for (std::int64_t n = 1; n <= N; ++n) {
    pi += tables.is_prime(n);
    mertens += tables.mobius(n);
    squarefree += tables.mobius(n) != 0;
    const double lam = tables.mangoldt(n);
    if (lam != 0.0) {
      weighted.push_back(double(N - n) * lam);
      lambda_sq.push_back(lam * lam);
    }
    if (n >= 17) worst_rs = std::min(worst_rs, double(pi) * std::log(double(n)) / double(n));
    if (n >= 100) worst_mertens = std::max(worst_mertens, std::abs(double(mertens)) / std::pow(double(n), 0.6));
  }
  row.metrics.push_back(checked("rosser_schoenfeld_min", worst_rs, 1.0, worst_rs > 1.0, true));

  const double weighted_lambda = pairwise_sum(weighted) / (0.5 * double(N) * double(N));
  Metric weighted_metric = record("weighted_lambda_ratio", weighted_lambda, 1.0);
  if (N >= (std::int64_t{1} << 14)) weighted_metric.check = weighted_lambda >= 0.9 && weighted_lambda <= 1.1;
  row.metrics.push_back(weighted_metric);

  const double density = double(squarefree) / (6.0 / (kPi * kPi) * double(N));
  const double band = 2.0 / std::sqrt(double(N));
  Metric msf = record("squarefree_density", density, 1.0);
  if (N >= 100) msf.check = std::abs(density - 1.0) <= band;
  row.metrics.push_back(msf);

  row.metrics.push_back(record("lambda_square_ratio", pairwise_sum(lambda_sq) / (double(N) * log_n(N)), 1.0));
  if (N >= 100) row.metrics.push_back(checked("mertens_guard", worst_mertens, 1.0, worst_mertens <= 1.0, false));
  finish(row, clock, settings);
  return row;
}

}  // namespace l1sieve
