#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tsfm/series.hpp"

namespace tsfm {

/// Merged train+test pool of one dataset after preprocessing. Every series
/// shares `canonical_length`; labels are remapped to 0..C-1 in ascending
/// order of the original label values.
struct Dataset {
    std::string id;
    std::vector<TimeSeries> samples; // order: all TRAIN rows, then all TEST rows
    int canonical_length = 0;
    int num_classes = 0;
    std::vector<double> original_labels; // ascending, index = remapped label

    const TimeSeries& by_id(const std::string& sample_id) const;
};

using Archive = std::map<std::string, Dataset>;

/// Loads a UCR-style archive: one subdirectory per dataset holding
/// `<name>_TRAIN.tsv` and `<name>_TEST.tsv`, rows `label<TAB>v1<TAB>v2...`.
/// Trailing NaN fields are stripped, series are interpolated to the merged
/// pool's median length, then z-normalized.
Archive load_archive(const std::string& root_path);

/// Rows of one TSV file: (raw label, series with NaN padding stripped).
/// Sample ids count up from first_sample_index. Exposed for tests.
std::vector<std::pair<double, TimeSeries>> load_tsv(const std::string& path,
                                                    const std::string& dataset_id,
                                                    int first_sample_index);

} // namespace tsfm
