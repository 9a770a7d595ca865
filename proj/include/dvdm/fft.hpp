#pragma once

#include <complex>
#include <vector>

namespace dvdm {

/// In-place complex DFT, FFTW-backed, any length. forward uses the
/// e^{-i 2 pi jk / n} convention; the inverse is normalized by 1/n.
/// Thread-safe (plans are cached behind a mutex).
void dft(std::vector<std::complex<double>>& a, bool forward);

std::vector<std::complex<double>> dft_of_real(const std::vector<double>& v);

/// Real part of the inverse DFT (inputs are assumed conjugate-symmetric).
std::vector<double> idft_to_real(std::vector<std::complex<double>> a);

}  // namespace dvdm
