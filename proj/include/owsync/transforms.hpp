#pragma once

#include <span>

#include "owsync/types.hpp"

namespace owsync {

// Radix-2 transforms. Every function throws SizeError unless the input
// length is a power of two.

/// Forward DFT without scaling: X_k = sum_n x_n exp(-j 2 pi k n / N).
ComplexVec dft(std::span<const Complex> signal);

/// Inverse DFT with 1/N scaling, so dft(idft(X)) == X.
ComplexVec idft(std::span<const Complex> spectrum);

/// Real part of idft(); intended for Hermitian-symmetric spectra whose
/// inverse is real up to rounding.
RealVec idft_real(std::span<const Complex> spectrum);

/// Discrete Hartley transform with symmetric 1/sqrt(N) scaling:
///   y(n) = 1/sqrt(N) * sum_k x(k) [cos(2 pi k n / N) + sin(2 pi k n / N)]
/// The transform is its own inverse.
RealVec dht(std::span<const double> signal);

}  // namespace owsync
