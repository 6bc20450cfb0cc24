#include "tsfm/series.hpp"

#include <cmath>

#include "tsfm/common.hpp"
#include "tsfm/interp.hpp"

namespace tsfm {

std::vector<double> znormalize(const std::vector<double>& values) {
    if (values.empty()) {
        throw UsageError("znormalize: empty series");
    }
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= n;
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    const double std_dev = std::sqrt(var / n);
    std::vector<double> out(values.size());
    if (std_dev < 1e-8) {
        return out; // constant series -> zeros
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = (values[i] - mean) / std_dev;
    }
    return out;
}

TimeSeries znormalize(TimeSeries series) {
    series.values = znormalize(series.values);
    return series;
}

TimeSeries canonicalize_length(TimeSeries series, int target_len) {
    if (target_len < 1) {
        throw UsageError("canonicalize_length: target_len must be positive");
    }
    if (series.length() == target_len) {
        return series;
    }
    if (series.length() < 2) {
        throw DataError("canonicalize_length: cannot resize a length-" +
                        std::to_string(series.length()) + " series (sample " +
                        series.sample_id + ")");
    }
    series.values = resize_linear(series.values, target_len);
    return series;
}

} // namespace tsfm
