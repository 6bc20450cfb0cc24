#include "tsfm/interp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "tsfm/common.hpp"

namespace tsfm {

double lerp_at(const std::vector<double>& y, double t) {
    if (y.empty()) {
        throw UsageError("lerp_at: empty input");
    }
    const auto n = static_cast<std::ptrdiff_t>(y.size());
    if (t <= 0.0) {
        return y.front();
    }
    if (t >= static_cast<double>(n - 1)) {
        return y.back();
    }
    const auto i = static_cast<std::size_t>(t);
    const double frac = t - static_cast<double>(i);
    return y[i] + frac * (y[i + 1] - y[i]);
}

std::vector<double> resize_linear(const std::vector<double>& y, int target_len) {
    if (y.empty() || target_len < 1) {
        throw UsageError("resize_linear: empty input or non-positive target");
    }
    if (static_cast<int>(y.size()) == target_len) {
        return y;
    }
    if (y.size() == 1) {
        return std::vector<double>(static_cast<std::size_t>(target_len), y[0]);
    }
    if (target_len == 1) {
        return {y.front()};
    }
    std::vector<double> out(static_cast<std::size_t>(target_len));
    const double scale = static_cast<double>(y.size() - 1) / static_cast<double>(target_len - 1);
    for (int i = 0; i < target_len; ++i) {
        out[static_cast<std::size_t>(i)] = lerp_at(y, static_cast<double>(i) * scale);
    }
    out.front() = y.front();
    out.back() = y.back();
    return out;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw UsageError("CubicSpline: need at least two knots with matching sizes");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw UsageError("CubicSpline: knot positions must be strictly increasing");
        }
    }
    // Thomas solve of the natural-spline tridiagonal system for second derivatives.
    m_.assign(n, 0.0);
    if (n == 2) {
        return;
    }
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        sub[i] = h0;
        diag[i] = 2.0 * (h0 + h1);
        sup[i] = h1;
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - sup[i] * (i + 2 < n ? m_[i + 1] : 0.0)) / diag[i];
        if (i == 1) {
            break;
        }
    }
}

double CubicSpline::operator()(double t) const {
    const std::size_t n = x_.size();
    if (t <= x_.front()) {
        // Natural boundary: extrapolate linearly with the end slope.
        const double h = x_[1] - x_[0];
        const double slope = (y_[1] - y_[0]) / h - h * (2.0 * m_[0] + m_[1]) / 6.0;
        return y_[0] + slope * (t - x_[0]);
    }
    if (t >= x_.back()) {
        const double h = x_[n - 1] - x_[n - 2];
        const double slope = (y_[n - 1] - y_[n - 2]) / h + h * (m_[n - 2] + 2.0 * m_[n - 1]) / 6.0;
        return y_[n - 1] + slope * (t - x_[n - 1]);
    }
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(x_.begin(), x_.end(), t) - x_.begin());
    hi = std::min(hi, n - 1);
    const std::size_t lo = hi - 1;
    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - t) / h;
    const double b = (t - x_[lo]) / h;
    return a * y_[lo] + b * y_[hi] +
           ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h / 6.0;
}

} // namespace tsfm
