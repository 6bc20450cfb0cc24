#include "tsfm/dft.hpp"

#include <unsupported/Eigen/FFT>

#include "tsfm/common.hpp"

namespace tsfm {

std::vector<std::complex<double>> dft_forward(const std::vector<double>& x) {
    if (x.empty()) {
        throw UsageError("dft_forward: empty input");
    }
    if (x.size() == 1) {
        return {std::complex<double>(x[0], 0.0)};
    }
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, x);
    return spectrum;
}

static std::vector<std::complex<double>> inverse_complex(
    const std::vector<std::complex<double>>& spectrum) {
    if (spectrum.empty()) {
        throw UsageError("dft_inverse: empty spectrum");
    }
    if (spectrum.size() == 1) {
        return {spectrum[0]};
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> out;
    fft.inv(out, spectrum);
    return out;
}

std::vector<double> dft_inverse_real(const std::vector<std::complex<double>>& spectrum) {
    const auto z = inverse_complex(spectrum);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = z[i].real();
    }
    return out;
}

double dft_inverse_max_imag(const std::vector<std::complex<double>>& spectrum) {
    const auto z = inverse_complex(spectrum);
    double m = 0.0;
    for (const auto& c : z) {
        m = std::max(m, std::abs(c.imag()));
    }
    return m;
}

std::vector<double> magnitude_spectrum(const std::vector<double>& x) {
    const auto spectrum = dft_forward(x);
    const std::size_t n = x.size() / 2 + 1;
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) {
        mag[i] = std::abs(spectrum[i]);
    }
    return mag;
}

} // namespace tsfm
