#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghkad/matrix.hpp"

namespace ghkad {

// Feature matrix plus binary labels: 0 = normal, 1 = anomaly.
struct Dataset {
    Matrix features;
    std::vector<int> labels;
    std::string name;
    std::uint64_t seed = 0;

    std::size_t n() const { return features.rows; }
    std::size_t dim() const { return features.cols; }
    std::size_t count_label(int label) const;
};

struct SubsampleSpec {
    std::size_t n_normal = 0;
    std::size_t n_anomaly = 0;
    std::uint64_t seed = 0;
};

// How a raw delimited file becomes a Dataset. Label cells are matched
// verbatim against the two value lists; rows matching neither are dropped.
// Categorical columns one-hot encode in place (the column expands to one
// indicator per category, categories sorted); category lists and z-score
// statistics come from normal-class rows only, so anomalies never influence
// preprocessing. Anomaly-row categories unseen among normals encode as
// all-zeros and are counted in the load report.
struct PreprocessSpec {
    std::vector<std::size_t> categorical_columns;  // raw column indexes
    bool standardize = true;
    bool skip_header = false;
    std::optional<std::size_t> label_column;  // default: last column
    std::vector<std::string> normal_values;
    std::vector<std::string> anomaly_values;
    std::optional<SubsampleSpec> subsample;

    void validate() const;
};

struct LoadReport {
    std::size_t rows_read = 0;          // data rows seen (after any header)
    std::size_t rows_label_dropped = 0; // label matched neither rule
    std::size_t rows_missing_dropped = 0;  // empty numeric cell
    std::size_t unknown_category_cells = 0;
};

// 2-D manifold benchmark set: normals drawn evenly from two interleaved
// crescents and one ring (Gaussian noise sigma = 0.08), anomalies uniform
// over the normals' bounding box inflated 20%, rejecting anything within
// 0.15 of a manifold centerline. Bit-identical for a given seed.
Dataset generate_synthetic(std::uint64_t seed, std::size_t n_normal,
                           std::size_t n_anomaly);

// Distance from (x, y) to the nearest generator centerline; exposed for the
// rejection rule's tests and boundary plots.
double synthetic_centerline_distance(double x, double y);

Dataset load_csv(const std::string& path, const PreprocessSpec& spec,
                 LoadReport* report = nullptr);

// Deterministic shuffled split. With train_on_normal_only the fraction
// applies to the normal class, the training side is all-normal, and every
// anomaly goes to test.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  bool train_on_normal_only, std::uint64_t seed);

// Dataset CSV round trip: header f0..f{d-1},label; full double precision.
void save_csv(const Dataset& dataset, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

}  // namespace ghkad
