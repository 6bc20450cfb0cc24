#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tsfm/archive.hpp"

namespace tsfm {

struct SplitLists {
    std::vector<std::string> pretrain;
    std::vector<std::string> train;
    std::vector<std::string> val;
    std::vector<std::string> test;
};

/// Deterministic record of which sample ids land where. Identical
/// (archive, seed) produce byte-identical serializations.
struct SplitManifest {
    std::uint64_t seed = 0;
    std::map<std::string, SplitLists> datasets;

    std::string to_json() const;               // sorted keys, content-hashed
    static SplitManifest from_json(const std::string& text);
    std::string content_hash() const;

    void save(const std::string& path) const;
    static SplitManifest load(const std::string& path);
};

/// Carves each merged pool into pretrain (floor(N/2)) and a 3:1:1
/// train/val/test split of the remainder R: test = val = floor(R/5),
/// train = R - 2*floor(R/5). Shuffling uses one stream per dataset keyed by
/// the dataset id, so adding datasets never perturbs existing splits.
/// Every dataset needs at least 10 samples.
SplitManifest make_splits(const Archive& archive, std::uint64_t seed);

/// Unlabeled pretrain view: per dataset, the pretrain samples with labels
/// dropped.
std::map<std::string, std::vector<TimeSeries>> pretrain_corpus(const Archive& archive,
                                                               const SplitManifest& manifest);

} // namespace tsfm
