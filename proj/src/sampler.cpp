#include "tsfm/sampler.hpp"

#include "tsfm/common.hpp"

namespace tsfm {

Batch make_batch(const std::vector<const TimeSeries*>& rows) {
    if (rows.empty()) {
        throw UsageError("make_batch: no rows");
    }
    const int len = rows.front()->length();
    Batch batch;
    batch.dataset_id = rows.front()->dataset_id;
    batch.values.resize(static_cast<Eigen::Index>(rows.size()), len);
    bool any_label = false;
    for (const auto* row : rows) {
        if (row->dataset_id != batch.dataset_id) {
            throw UsageError("make_batch: rows span multiple datasets");
        }
        if (row->length() != len) {
            throw UsageError("make_batch: rows differ in length");
        }
        any_label = any_label || row->label.has_value();
    }
    batch.lengths.reserve(rows.size());
    batch.sample_ids.reserve(rows.size());
    for (std::size_t b = 0; b < rows.size(); ++b) {
        const auto& s = *rows[b];
        for (int t = 0; t < len; ++t) {
            batch.values(static_cast<Eigen::Index>(b), t) = s.values[static_cast<std::size_t>(t)];
        }
        batch.lengths.push_back(s.original_length > 0 ? s.original_length : s.length());
        batch.sample_ids.push_back(s.sample_id);
        if (any_label) {
            if (!s.label.has_value()) {
                throw UsageError("make_batch: mixed labeled and unlabeled rows");
            }
            batch.labels.push_back(*s.label);
        }
    }
    return batch;
}

Batch make_batch(const std::vector<TimeSeries>& rows) {
    std::vector<const TimeSeries*> ptrs;
    ptrs.reserve(rows.size());
    for (const auto& r : rows) {
        ptrs.push_back(&r);
    }
    return make_batch(ptrs);
}

Batch sample_pretrain_batch(const Corpus& corpus, int batch_size, Rng& rng) {
    if (batch_size < 2) {
        throw UsageError("sample_pretrain_batch: batch_size must be >= 2");
    }
    if (corpus.empty()) {
        throw UsageError("sample_pretrain_batch: empty corpus");
    }
    const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(corpus.size()) - 1);
    auto it = corpus.begin();
    std::advance(it, pick);
    const auto& pool = it->second;
    if (pool.empty()) {
        throw DataError("sample_pretrain_batch: dataset '" + it->first + "' has an empty pool");
    }
    const int n = static_cast<int>(pool.size());
    std::vector<const TimeSeries*> rows;
    rows.reserve(static_cast<std::size_t>(batch_size));
    if (n >= batch_size) {
        for (int idx : rng.sample_without_replacement(n, batch_size)) {
            rows.push_back(&pool[static_cast<std::size_t>(idx)]);
        }
    } else {
        for (int i = 0; i < batch_size; ++i) {
            rows.push_back(&pool[static_cast<std::size_t>(rng.uniform_int(0, n - 1))]);
        }
    }
    return make_batch(rows);
}

} // namespace tsfm
