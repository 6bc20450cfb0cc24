#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace tsfm {

/// One univariate series. `label` is absent for corpus views where labels
/// have been dropped. `sample_id` is unique within a dataset.
struct TimeSeries {
    std::vector<double> values;
    std::optional<int> label;
    std::string dataset_id;
    std::string sample_id;
    int original_length = 0; // length before any canonicalization

    int length() const { return static_cast<int>(values.size()); }
};

/// Fixed-length group of rows from a single dataset, ready for an encoder.
struct Batch {
    Eigen::MatrixXd values;          // B x L
    std::vector<int> lengths;        // per-row original length
    std::vector<int> labels;         // empty when unlabeled
    std::vector<std::string> sample_ids;
    std::string dataset_id;

    int rows() const { return static_cast<int>(values.rows()); }
    int cols() const { return static_cast<int>(values.cols()); }
};

/// Per-series standardization to mean 0, population std 1. Constant series
/// (std below 1e-8) map to all zeros.
std::vector<double> znormalize(const std::vector<double>& values);
TimeSeries znormalize(TimeSeries series);

/// Linear re-interpolation over the index axis to target_len; endpoints are
/// preserved exactly. A length-1 series can only be "canonicalized" to its
/// own length.
TimeSeries canonicalize_length(TimeSeries series, int target_len);

} // namespace tsfm
