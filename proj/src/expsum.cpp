#include "l1sieve/expsum.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "l1sieve/errors.hpp"
#include "l1sieve/fft.hpp"
#include "l1sieve/parallel.hpp"

namespace l1sieve {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// e(num / den) with the numerator reduced in integers first.
cplx exact_unit_exp(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  const double angle = 2.0 * kPi * double(r) / double(den);
  return {std::cos(angle), std::sin(angle)};
}

struct KindName {
  KernelKind kind;
  std::string_view name;
};

constexpr KindName kKernelNames[] = {
    {KernelKind::fejer, "fejer"}, {KernelKind::gstar, "gstar"}, {KernelKind::h, "h"},
    {KernelKind::h_truncated, "h_truncated"}, {KernelKind::k_part3, "k_part3"},
};

double prime_weight(const ArithmeticTables& tables, std::int64_t P) {
  const auto count = tables.primes_up_to(P).size();
  if (count == 0) throw ParameterError("kernel needs at least one prime <= P");
  return 1.0 / double(count);
}

// sum_{|k|<=N} poly_k e(k alpha) for a real, even coefficient vector indexed k + N.
double eval_even_real(const TrigPoly& poly, double alpha) {
  const std::int64_t N = poly.k_max();
  const double r = alpha - std::round(alpha);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(N) + 1);
  terms.push_back(poly.coeffs(N).real());
  for (std::int64_t k = 1; k <= N; ++k) {
    const double c = poly.coeffs(N + k).real();
    if (c == 0.0) continue;
    const double x = double(k) * r;
    terms.push_back(2.0 * c * std::cos(2.0 * kPi * (x - std::round(x))));
  }
  return pairwise_sum(terms);
}

// Low-frequency part of H_N removed by the truncation: sum_{|k|<=P} w_k d_k e(k alpha).
double h_low_frequency(const ArithmeticTables& tables, const KernelSpec& spec, double alpha) {
  const auto primes = tables.primes_up_to(spec.P);
  const double inv = prime_weight(tables, spec.P);
  const std::int64_t K = std::min(spec.P, spec.N);
  const double r = alpha - std::round(alpha);
  std::vector<double> terms;
  double d0 = 0.0;
  for (const auto p : primes) d0 += p;
  terms.push_back(d0 * inv);
  for (std::int64_t k = 1; k <= K; ++k) {
    double d = 0.0;
    for (const auto p : primes)
      if (k % p == 0) d += p;
    if (d == 0.0) continue;
    const double w = 1.0 - double(k) / double(spec.N);
    const double x = double(k) * r;
    terms.push_back(2.0 * w * d * inv * std::cos(2.0 * kPi * (x - std::round(x))));
  }
  return pairwise_sum(terms);
}

}  // namespace

TrigPoly to_trig_poly(const CoefficientSequence& seq) { return TrigPoly{1, seq.coeffs}; }

std::complex<double> eval_poly(const TrigPoly& poly, double alpha) {
  constexpr std::int64_t kBlock = 64;
  constexpr std::int64_t kPairwiseBlocks = 512;
  const double r = alpha - std::round(alpha);
  const cplx step = unit_exp(r);
  const std::int64_t n = poly.span();
  const bool cascade = n > kBlock * kPairwiseBlocks;
  std::vector<cplx> blocks;
  if (cascade) blocks.reserve(static_cast<std::size_t>(n / kBlock + 1));
  cplx total{};
  for (std::int64_t start = 0; start < n; start += kBlock) {
    // Reseed the recurrence every block to keep the phase error bounded.
    cplx w = unit_exp(double(poly.k_min + start) * r);
    cplx acc{};
    const std::int64_t stop = std::min(n, start + kBlock);
    for (std::int64_t i = start; i < stop; ++i) {
      acc += poly.coeffs(i) * w;
      w *= step;
    }
    if (cascade)
      blocks.push_back(acc);
    else
      total += acc;
  }
  return cascade ? pairwise_sum(blocks) : total;
}

std::complex<double> eval_sequence(const CoefficientSequence& seq, double alpha) {
  return eval_poly(to_trig_poly(seq), alpha);
}

std::string_view to_string(KernelKind k) {
  for (const auto& e : kKernelNames)
    if (e.kind == k) return e.name;
  return "?";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view name) {
  for (const auto& e : kKernelNames)
    if (e.name == name) return e.kind;
  return std::nullopt;
}

std::int64_t integer_root(std::int64_t N, int k) {
  if (N < 0 || k < 1) throw ParameterError("integer_root: need N >= 0 and k >= 1");
  auto pow_le = [&](std::int64_t r) {
    __int128 v = 1;
    for (int i = 0; i < k; ++i) {
      v *= r;
      if (v > N) return false;
    }
    return true;
  };
  auto r = static_cast<std::int64_t>(std::floor(std::pow(double(N), 1.0 / k)));
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

KernelSpec make_kernel_spec(KernelKind kind, std::int64_t N, std::optional<std::int64_t> parameter) {
  KernelSpec spec{kind, N, 0, 0};
  switch (kind) {
    case KernelKind::fejer: break;
    case KernelKind::gstar: spec.P = parameter.value_or(integer_root(N, 4)); break;
    case KernelKind::h:
    case KernelKind::h_truncated: spec.P = parameter.value_or(integer_root(N, 2)); break;
    case KernelKind::k_part3: spec.Q = parameter.value_or(integer_root(N, 2)); break;
  }
  validate(spec);
  return spec;
}

void validate(const KernelSpec& spec) {
  if (spec.N < 1) throw ParameterError("kernel N must be >= 1");
  switch (spec.kind) {
    case KernelKind::fejer: return;
    case KernelKind::gstar:
    case KernelKind::h:
    case KernelKind::h_truncated:
      if (spec.P < 2) throw ParameterError(std::string(to_string(spec.kind)) + " kernel requires P >= 2");
      return;
    case KernelKind::k_part3:
      if (spec.Q < 1) throw ParameterError("k_part3 kernel requires Q >= 1");
      return;
  }
}

Eigen::VectorXd kernel_coefficients(const ArithmeticTables& tables, const KernelSpec& spec) {
  validate(spec);
  if (spec.kind == KernelKind::fejer || spec.kind == KernelKind::k_part3)
    throw ParameterError("kernel_coefficients: " + std::string(to_string(spec.kind)) +
                         " has a closed evaluation, not a coefficient table");
  if (spec.P > tables.n_max()) throw RangeError("kernel_coefficients: P exceeds table range");

  const std::int64_t N = spec.N;
  const double inv = prime_weight(tables, spec.P);
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(2 * N + 1);
  for (const std::int64_t p : tables.primes_up_to(spec.P)) {
    const std::int64_t step = spec.kind == KernelKind::gstar ? p * p : p;
    for (std::int64_t k = 0; k <= N; k += step) {
      coef(N + k) += double(step);
      if (k != 0) coef(N - k) += double(step);
    }
  }
  coef *= inv;
  if (spec.kind == KernelKind::h_truncated)
    coef.segment(N - std::min(spec.P, N), 2 * std::min(spec.P, N) + 1).setZero();
  return coef;
}

TrigPoly kernel_trig_poly(const ArithmeticTables& tables, const KernelSpec& spec) {
  validate(spec);
  if (spec.kind == KernelKind::k_part3)
    throw ParameterError("kernel_trig_poly: k_part3 is evaluated through its shifted form only");
  const std::int64_t N = spec.N;
  Eigen::VectorXd coef = spec.kind == KernelKind::fejer ? Eigen::VectorXd::Ones(2 * N + 1)
                                                        : kernel_coefficients(tables, spec);
  for (std::int64_t k = -N; k <= N; ++k) coef(N + k) *= 1.0 - double(std::abs(k)) / double(N);
  return TrigPoly{-N, coef.cast<cplx>()};
}

double eval_kernel(const ArithmeticTables& tables, const KernelSpec& spec, double alpha) {
  validate(spec);
  const std::int64_t N = spec.N;
  switch (spec.kind) {
    case KernelKind::fejer: return eval_T(N, alpha);
    case KernelKind::gstar:
    case KernelKind::h:
    case KernelKind::h_truncated: {
      const double inv = prime_weight(tables, spec.P);
      std::vector<double> shifts;
      for (const std::int64_t p : tables.primes_up_to(spec.P)) {
        const std::int64_t q = spec.kind == KernelKind::gstar ? p * p : p;
        for (std::int64_t a = 1; a < q; ++a) shifts.push_back(eval_T(N, alpha - double(a) / double(q)));
      }
      const double h = eval_T(N, alpha) + inv * pairwise_sum(shifts);
      if (spec.kind != KernelKind::h_truncated) return h;
      return h - h_low_frequency(tables, spec, alpha);
    }
    case KernelKind::k_part3: {
      std::vector<double> terms;
      for (std::int64_t q = 1; q <= spec.Q; ++q) {
        const int mu = tables.mobius(q);
        if (mu == 0) continue;
        for (std::int64_t a = 1; a <= q; ++a)
          if (std::gcd(a, q) == 1) terms.push_back(mu * double(N) * eval_T(N, alpha - double(a) / double(q)));
      }
      return pairwise_sum(terms);
    }
  }
  return 0.0;
}

double eval_kernel_spectral(const ArithmeticTables& tables, const KernelSpec& spec, double alpha) {
  return eval_even_real(kernel_trig_poly(tables, spec), alpha);
}

Eigen::VectorXcd grid_values(const TrigPoly& poly, std::int64_t M, std::int64_t t, std::int64_t s,
                             const Budget& budget) {
  if (M < 1) throw RangeError("grid size M must be >= 1");
  if (s < 1) throw RangeError("grid offset denominator must be >= 1");
  if (M > budget.max_grid_points)
    throw CapacityError("grid size " + std::to_string(M) + " exceeds budget " +
                        std::to_string(budget.max_grid_points));
  std::vector<cplx> folded(static_cast<std::size_t>(M), cplx{});
  const std::int64_t sM = s * M;
  for (std::int64_t i = 0; i < poly.span(); ++i) {
    const cplx c = poly.coeffs(i);
    if (c == cplx{}) continue;
    const std::int64_t k = poly.k_min + i;
    std::int64_t slot = k % M;
    if (slot < 0) slot += M;
    const cplx twist = t == 0 ? cplx{1.0, 0.0}
                              : exact_unit_exp(static_cast<std::int64_t>((static_cast<__int128>(k) * t) % sM), sM);
    folded[static_cast<std::size_t>(slot)] += c * twist;
  }
  Eigen::VectorXcd out(M);
  inverse_dft(folded, std::span<cplx>(out.data(), static_cast<std::size_t>(M)));
  return out;
}

GridEvaluation grid_eval_sequence(const CoefficientSequence& seq, std::int64_t M, const Budget& budget) {
  return GridEvaluation{M, grid_values(to_trig_poly(seq), M, 0, 1, budget),
                        "sequence N=" + std::to_string(seq.size())};
}

GridEvaluation grid_eval_kernel(const ArithmeticTables& tables, const KernelSpec& spec, std::int64_t M,
                                const Budget& budget, const Execution& exec) {
  validate(spec);
  if (M < 1) throw RangeError("grid size M must be >= 1");
  if (M > budget.max_grid_points) throw CapacityError("grid size exceeds budget");
  GridEvaluation out;
  out.M = M;
  out.provenance = std::string("kernel ") + std::string(to_string(spec.kind)) + " N=" + std::to_string(spec.N);
  if (spec.kind == KernelKind::k_part3) {
    out.values = shifted_fejer_grid(spec.N, M, k_part3_shifts(tables, spec.Q), exec).cast<cplx>();
    return out;
  }
  out.values = grid_values(kernel_trig_poly(tables, spec), M, 0, 1, budget);
  const double scale = std::max(1.0, out.values.real().cwiseAbs().maxCoeff());
  const double residue = out.values.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-9 * scale)
    throw InvariantViolation("real kernel has imaginary residue " + std::to_string(residue));
  out.values.imag().setZero();
  return out;
}

std::vector<FejerShift> k_part3_shifts(const ArithmeticTables& tables, std::int64_t Q) {
  if (Q < 1 || Q > tables.n_max()) throw RangeError("k_part3_shifts: Q outside table range");
  std::vector<FejerShift> shifts;
  for (std::int64_t q = 1; q <= Q; ++q) {
    const int mu = tables.mobius(q);
    if (mu == 0) continue;
    for (std::int64_t a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1) shifts.push_back({a, q, double(mu)});
  }
  return shifts;
}

Eigen::VectorXd shifted_fejer_grid(std::int64_t N, std::int64_t M, const std::vector<FejerShift>& shifts,
                                   const Execution& exec) {
  if (N < 1 || M < 1) throw RangeError("shifted_fejer_grid: N and M must be positive");
  const auto S = shifts.size();

  // sin/cos of pi*x and pi*N*x, arguments reduced mod 2 in integers.
  auto angle = [](std::int64_t num, std::int64_t den) {
    const std::int64_t r = static_cast<std::int64_t>(static_cast<__int128>(num) % (2 * den));
    return kPi * double(r) / double(den);
  };
  std::vector<double> sy(S), cy(S), sny(S), cny(S), w(S);
  for (std::size_t i = 0; i < S; ++i) {
    const auto& sh = shifts[i];
    sy[i] = std::sin(angle(sh.a, sh.q));
    cy[i] = std::cos(angle(sh.a, sh.q));
    sny[i] = std::sin(angle(N * sh.a, sh.q));
    cny[i] = std::cos(angle(N * sh.a, sh.q));
    w[i] = sh.weight;
  }

  const double n2 = double(N) * double(N);
  auto exact = [&](std::int64_t j, const FejerShift& sh) {
    const std::int64_t den = M * sh.q;
    std::int64_t m = (j * sh.q - sh.a * M) % den;
    if (m < 0) m += den;
    if (m == 0) return n2;
    if (2 * m > den) m -= den;
    const double num = std::sin(angle(N * m, den));
    const double base = std::sin(kPi * double(m) / double(den));
    return (num / base) * (num / base);
  };

  Eigen::VectorXd out(M);
  constexpr std::int64_t kChunk = 256;
  const auto chunks = static_cast<std::size_t>((M + kChunk - 1) / kChunk);
  parallel_chunks(chunks, resolved_workers(exec), [&](std::size_t c) {
    const std::int64_t lo = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t hi = std::min(M, lo + kChunk);
    for (std::int64_t j = lo; j < hi; ++j) {
      const double sx = std::sin(angle(j, M)), cx = std::cos(angle(j, M));
      const double snx = std::sin(angle(N * j, M)), cnx = std::cos(angle(N * j, M));
      double acc = 0.0;
      for (std::size_t i = 0; i < S; ++i) {
        const double den = sx * cy[i] - cx * sy[i];
        if (std::abs(den) < 1e-4) {
          acc += w[i] * exact(j, shifts[i]);
          continue;
        }
        const double num = snx * cny[i] - cnx * sny[i];
        const double ratio = num / den;
        acc += w[i] * ratio * ratio;
      }
      out(j) = acc;
    }
  });
  return out;
}

}  // namespace l1sieve
