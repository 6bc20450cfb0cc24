#include "tsfm/archive.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "tsfm/common.hpp"

namespace fs = std::filesystem;

namespace tsfm {

const TimeSeries& Dataset::by_id(const std::string& sample_id) const {
    for (const auto& s : samples) {
        if (s.sample_id == sample_id) {
            return s;
        }
    }
    throw DataError("dataset " + id + ": unknown sample id '" + sample_id + "'");
}

namespace {

double parse_field(const std::string& field, const std::string& path, int line_no) {
    // UCR files spell missing values as NaN; accept any case.
    std::string lower = field;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) {
            throw std::invalid_argument(field);
        }
        return v;
    } catch (const std::exception&) {
        throw DataError(path + ":" + std::to_string(line_no) + ": non-numeric field '" + field +
                        "'");
    }
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
        const auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

int median_length(const std::vector<std::pair<double, TimeSeries>>& rows) {
    std::vector<int> lengths;
    lengths.reserve(rows.size());
    for (const auto& [label, s] : rows) {
        lengths.push_back(s.length());
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths[lengths.size() / 2];
}

} // namespace

std::vector<std::pair<double, TimeSeries>> load_tsv(const std::string& path,
                                                    const std::string& dataset_id,
                                                    int first_sample_index) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    std::vector<std::pair<double, TimeSeries>> out;
    std::string line;
    int line_no = 0;
    int index = first_sample_index;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() < 2) {
            throw DataError(path + ":" + std::to_string(line_no) + ": row has fewer than 2 fields");
        }
        const double raw_label = parse_field(fields[0], path, line_no);
        if (std::isnan(raw_label)) {
            throw DataError(path + ":" + std::to_string(line_no) + ": NaN label");
        }
        TimeSeries s;
        s.dataset_id = dataset_id;
        s.sample_id = std::to_string(index);
        s.values.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            s.values.push_back(parse_field(fields[i], path, line_no));
        }
        // Trailing NaN fields pad variable-length rows; interior NaN is data corruption.
        while (!s.values.empty() && std::isnan(s.values.back())) {
            s.values.pop_back();
        }
        for (double v : s.values) {
            if (!std::isfinite(v)) {
                throw DataError(path + ":" + std::to_string(line_no) +
                                ": non-finite value inside series");
            }
        }
        if (s.values.empty()) {
            throw DataError(path + ":" + std::to_string(line_no) + ": empty series");
        }
        s.original_length = s.length();
        out.emplace_back(raw_label, std::move(s));
        ++index;
    }
    return out;
}

Archive load_archive(const std::string& root_path) {
    if (!fs::is_directory(root_path)) {
        throw DataError("archive root '" + root_path + "' is not a directory");
    }
    Archive archive;
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root_path)) {
        if (entry.is_directory()) {
            dirs.push_back(entry.path());
        }
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& dir : dirs) {
        const std::string name = dir.filename().string();
        const auto train = dir / (name + "_TRAIN.tsv");
        const auto test = dir / (name + "_TEST.tsv");
        if (!fs::exists(train) || !fs::exists(test)) {
            throw DataError("dataset '" + name + "' is missing " + name + "_TRAIN.tsv or " +
                            name + "_TEST.tsv");
        }
        auto rows = load_tsv(train.string(), name, 0);
        auto test_rows = load_tsv(test.string(), name, static_cast<int>(rows.size()));
        rows.insert(rows.end(), std::make_move_iterator(test_rows.begin()),
                    std::make_move_iterator(test_rows.end()));
        if (rows.empty()) {
            throw DataError("dataset '" + name + "' has no samples");
        }

        Dataset ds;
        ds.id = name;
        ds.canonical_length = median_length(rows);

        std::vector<double> labels;
        for (const auto& [label, s] : rows) {
            labels.push_back(label);
        }
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        ds.original_labels = labels;
        ds.num_classes = static_cast<int>(labels.size());

        ds.samples.reserve(rows.size());
        for (auto& [label, s] : rows) {
            const auto it = std::lower_bound(labels.begin(), labels.end(), label);
            s.label = static_cast<int>(it - labels.begin());
            s = canonicalize_length(std::move(s), ds.canonical_length);
            s = znormalize(std::move(s));
            ds.samples.push_back(std::move(s));
        }
        archive.emplace(name, std::move(ds));
    }
    if (archive.empty()) {
        throw DataError("archive root '" + root_path + "' contains no datasets");
    }
    return archive;
}

} // namespace tsfm
