#include "l1sieve/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace l1sieve {

namespace {

using cplx = std::complex<double>;

Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}

// e(-m^2 / (2M)), reduced exactly in integers first.
cplx chirp(std::int64_t m, std::int64_t M) {
  const std::int64_t r = (static_cast<__int128>(m) * m % (2 * M));
  const double angle = -std::numbers::pi * double(r) / double(M);
  return {std::cos(angle), std::sin(angle)};
}

void bluestein(std::span<const cplx> in, std::span<cplx> out) {
  const auto M = static_cast<std::int64_t>(in.size());
  std::int64_t L = 1;
  while (L < 2 * M - 1) L <<= 1;

  std::vector<cplx> a(L, cplx{}), b(L, cplx{}), fa(L), fb(L);
  for (std::int64_t k = 0; k < M; ++k) a[k] = in[k] * std::conj(chirp(k, M));
  b[0] = chirp(0, M);
  for (std::int64_t m = 1; m < M; ++m) b[m] = b[L - m] = chirp(m, M);

  auto& fft = thread_fft();
  fft.fwd(fa.data(), a.data(), L);
  fft.fwd(fb.data(), b.data(), L);
  for (std::int64_t i = 0; i < L; ++i) fa[i] *= fb[i];
  fft.inv(a.data(), fa.data(), L);
  const double scale = 1.0 / double(L);
  for (std::int64_t j = 0; j < M; ++j) out[j] = std::conj(chirp(j, M)) * a[j] * scale;
}

}  // namespace

std::int64_t largest_prime_factor(std::int64_t n) {
  std::int64_t largest = 1;
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      largest = p;
      n /= p;
    }
  return n > 1 ? n : largest;
}

std::int64_t smooth_ceil(std::int64_t n) {
  if (n <= 1) return 1;
  std::int64_t best = std::int64_t{1} << 62;
  for (std::int64_t p7 = 1; p7 < best; p7 *= 7)
    for (std::int64_t p5 = p7; p5 < best; p5 *= 5)
      for (std::int64_t p3 = p5; p3 < best; p3 *= 3) {
        std::int64_t v = p3;
        while (v < n) v *= 2;
        if (v < best) best = v;
      }
  return best;
}

void inverse_dft(std::span<const cplx> in, std::span<cplx> out) {
  if (in.size() != out.size()) throw std::invalid_argument("inverse_dft: size mismatch");
  const auto M = static_cast<std::int64_t>(in.size());
  if (M == 0) return;
  if (M == 1) {
    out[0] = in[0];
    return;
  }
  if (largest_prime_factor(M) > 13) {
    bluestein(in, out);
    return;
  }
  // kissfft needs distinct buffers.
  if (in.data() == out.data()) {
    std::vector<cplx> copy(in.begin(), in.end());
    thread_fft().inv(out.data(), copy.data(), M);
  } else {
    thread_fft().inv(out.data(), in.data(), M);
  }
}

}  // namespace l1sieve
