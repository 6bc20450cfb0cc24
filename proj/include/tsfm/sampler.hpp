#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsfm/rng.hpp"
#include "tsfm/series.hpp"

namespace tsfm {

using Corpus = std::map<std::string, std::vector<TimeSeries>>;

/// Packs rows into a Batch. All series must share a dataset id and length.
Batch make_batch(const std::vector<const TimeSeries*>& rows);
Batch make_batch(const std::vector<TimeSeries>& rows);

/// One dataset drawn uniformly, then batch_size samples drawn uniformly
/// without replacement from its pool (with replacement when the pool is
/// smaller than the batch). batch_size must be >= 2; the contrastive losses
/// downstream are undefined for a single row.
Batch sample_pretrain_batch(const Corpus& corpus, int batch_size, Rng& rng);

} // namespace tsfm
