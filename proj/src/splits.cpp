#include "tsfm/splits.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "tsfm/common.hpp"
#include "tsfm/rng.hpp"

namespace tsfm {

namespace {

nlohmann::json body_json(const SplitManifest& m) {
    nlohmann::json datasets = nlohmann::json::object();
    for (const auto& [id, lists] : m.datasets) {
        datasets[id] = {{"pretrain", lists.pretrain},
                        {"train", lists.train},
                        {"val", lists.val},
                        {"test", lists.test}};
    }
    return {{"datasets", datasets}, {"seed", m.seed}};
}

void sort_numeric(std::vector<std::string>& ids) {
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    });
}

} // namespace

std::string SplitManifest::content_hash() const {
    return "fnv1a64:" + to_hex(fnv1a64(body_json(*this).dump()));
}

std::string SplitManifest::to_json() const {
    nlohmann::json j = body_json(*this);
    j["content_hash"] = content_hash();
    return j.dump(2) + "\n";
}

SplitManifest SplitManifest::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw DataError(std::string("manifest parse failure: ") + e.what());
    }
    SplitManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [id, lists] : j.at("datasets").items()) {
        SplitLists sl;
        sl.pretrain = lists.at("pretrain").get<std::vector<std::string>>();
        sl.train = lists.at("train").get<std::vector<std::string>>();
        sl.val = lists.at("val").get<std::vector<std::string>>();
        sl.test = lists.at("test").get<std::vector<std::string>>();
        m.datasets.emplace(id, std::move(sl));
    }
    if (j.contains("content_hash") &&
        j.at("content_hash").get<std::string>() != m.content_hash()) {
        throw DataError("manifest content hash mismatch");
    }
    return m;
}

void SplitManifest::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write manifest '" + path + "'");
    }
    out << to_json();
}

SplitManifest SplitManifest::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open manifest '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

SplitManifest make_splits(const Archive& archive, std::uint64_t seed) {
    SplitManifest manifest;
    manifest.seed = seed;
    const Rng root = Rng::from_seed(seed).stream("splits");
    for (const auto& [id, ds] : archive) {
        const int n = static_cast<int>(ds.samples.size());
        if (n < 10) {
            throw DataError("dataset '" + id + "' has only " + std::to_string(n) +
                            " samples; at least 10 are required to split");
        }
        std::vector<std::string> ids;
        ids.reserve(static_cast<std::size_t>(n));
        for (const auto& s : ds.samples) {
            ids.push_back(s.sample_id);
        }
        Rng rng = root.stream(id);
        rng.shuffle(ids);

        const int pretrain_n = n / 2;
        const int remainder = n - pretrain_n;
        const int fifth = remainder / 5;
        const int test_n = fifth;
        const int val_n = fifth;
        const int train_n = remainder - 2 * fifth;

        SplitLists lists;
        auto cursor = ids.begin();
        lists.pretrain.assign(cursor, cursor + pretrain_n);
        cursor += pretrain_n;
        lists.train.assign(cursor, cursor + train_n);
        cursor += train_n;
        lists.val.assign(cursor, cursor + val_n);
        cursor += val_n;
        lists.test.assign(cursor, cursor + test_n);

        sort_numeric(lists.pretrain);
        sort_numeric(lists.train);
        sort_numeric(lists.val);
        sort_numeric(lists.test);
        manifest.datasets.emplace(id, std::move(lists));
    }
    return manifest;
}

std::map<std::string, std::vector<TimeSeries>> pretrain_corpus(const Archive& archive,
                                                               const SplitManifest& manifest) {
    std::map<std::string, std::vector<TimeSeries>> corpus;
    for (const auto& [id, lists] : manifest.datasets) {
        const auto it = archive.find(id);
        if (it == archive.end()) {
            throw DataError("manifest names dataset '" + id + "' missing from the archive");
        }
        std::vector<TimeSeries> pool;
        pool.reserve(lists.pretrain.size());
        for (const auto& sid : lists.pretrain) {
            TimeSeries s = it->second.by_id(sid);
            s.label.reset(); // no labels in the pre-training corpus
            pool.push_back(std::move(s));
        }
        corpus.emplace(id, std::move(pool));
    }
    return corpus;
}

} // namespace tsfm
