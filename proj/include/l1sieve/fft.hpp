#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace l1sieve {

// out[j] = sum_k in[k] e(jk/M) for j < M, with M = in.size() = out.size().
// Sizes with a prime factor above 13 go through Bluestein's chirp transform
// on a power-of-two grid. Safe to call concurrently from several threads.
void inverse_dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

// Smallest 7-smooth integer >= n.
std::int64_t smooth_ceil(std::int64_t n);

std::int64_t largest_prime_factor(std::int64_t n);

}  // namespace l1sieve
