#pragma once

#include <vector>

namespace tsfm {

/// Value of the piecewise-linear function through (0, y[0])..(n-1, y[n-1]) at
/// position t. t is clamped to [0, n-1].
double lerp_at(const std::vector<double>& y, double t);

/// Resample to target_len by linear interpolation over the index axis.
/// Endpoints map to endpoints exactly.
std::vector<double> resize_linear(const std::vector<double>& y, int target_len);

/// Natural cubic spline through (x[i], y[i]); x strictly increasing.
/// Two knots degenerate to a straight line.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;

private:
    std::vector<double> x_, y_, m_; // m_: second derivatives at knots
};

} // namespace tsfm
