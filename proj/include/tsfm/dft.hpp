#pragma once

#include <complex>
#include <vector>

namespace tsfm {

/// Forward DFT of a real series; full-length complex spectrum.
std::vector<std::complex<double>> dft_forward(const std::vector<double>& x);

/// Inverse DFT of a conjugate-symmetric spectrum back to a real series.
/// Any imaginary residue is discarded; callers that care assert on it via
/// dft_inverse_max_imag.
std::vector<double> dft_inverse_real(const std::vector<std::complex<double>>& spectrum);

/// Largest |imaginary part| the inverse transform would discard.
double dft_inverse_max_imag(const std::vector<std::complex<double>>& spectrum);

/// Magnitude spectrum of the non-negative frequencies, length floor(L/2)+1.
std::vector<double> magnitude_spectrum(const std::vector<double>& x);

} // namespace tsfm
