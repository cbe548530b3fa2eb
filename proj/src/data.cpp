#include "ghkad/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "ghkad/errors.hpp"
#include "ghkad/rng.hpp"

namespace ghkad {

std::size_t Dataset::count_label(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

void PreprocessSpec::validate() const {
    if (normal_values.empty()) throw config_error("preprocess: normal_values is empty");
    if (anomaly_values.empty()) throw config_error("preprocess: anomaly_values is empty");
    for (const auto& v : normal_values)
        if (std::find(anomaly_values.begin(), anomaly_values.end(), v) != anomaly_values.end())
            throw config_error("preprocess: label value '" + v + "' is in both classes");
    for (std::size_t i = 0; i < categorical_columns.size(); ++i)
        for (std::size_t j = i + 1; j < categorical_columns.size(); ++j)
            if (categorical_columns[i] == categorical_columns[j])
                throw config_error("preprocess: duplicate categorical column");
    if (subsample && (subsample->n_normal == 0 || subsample->n_anomaly == 0))
        throw config_error("preprocess: subsample counts must be positive");
}

// ---------------------------------------------------------------------------
// Synthetic generator geometry: two unit-radius half-circle arcs interleaved
// the usual two-moons way, plus a separate full ring.

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kNoiseSigma = 0.08;
constexpr double kRejectMargin = 0.15;
constexpr double kBoxInflate = 1.2;

constexpr double kArcBx = 1.0, kArcBy = 0.5;            // lower crescent center
constexpr double kRingX = 3.2, kRingY = 0.3, kRingR = 0.7;

// Distance to a half circle of radius r about (cx, cy): the upper half covers
// angles [0, pi], the lower [pi, 2pi]. Off the covered half the closest point
// is one of the two endpoints (cx +- r, cy).
double half_arc_distance(double px, double py, double cx, double cy, double r,
                         bool upper) {
    const double dx = px - cx, dy = py - cy;
    if (upper ? dy >= 0.0 : dy <= 0.0) return std::fabs(std::hypot(dx, dy) - r);
    return std::min(std::hypot(dx - r, dy), std::hypot(dx + r, dy));
}

}  // namespace

double synthetic_centerline_distance(double x, double y) {
    const double a = half_arc_distance(x, y, 0.0, 0.0, 1.0, true);
    const double b = half_arc_distance(x, y, kArcBx, kArcBy, 1.0, false);
    const double ring = std::fabs(std::hypot(x - kRingX, y - kRingY) - kRingR);
    return std::min({a, b, ring});
}

Dataset generate_synthetic(std::uint64_t seed, std::size_t n_normal,
                           std::size_t n_anomaly) {
    if (n_normal == 0 || n_anomaly == 0)
        throw std::invalid_argument("generate_synthetic: both class counts must be positive");

    Dataset ds;
    ds.features = Matrix(n_normal + n_anomaly, 2);
    ds.labels.assign(n_normal + n_anomaly, 0);
    ds.name = "synthetic";
    ds.seed = seed;

    Rng rng(seed);
    for (std::size_t i = 0; i < n_normal; ++i) {
        double x, y;
        switch (i % 3) {
            case 0: {  // upper crescent
                const double t = rng.uniform(0.0, kPi);
                x = std::cos(t);
                y = std::sin(t);
                break;
            }
            case 1: {  // lower crescent, shifted to interleave
                const double t = rng.uniform(0.0, kPi);
                x = kArcBx - std::cos(t);
                y = kArcBy - std::sin(t);
                break;
            }
            default: {  // ring
                const double t = rng.uniform(0.0, 2.0 * kPi);
                x = kRingX + kRingR * std::cos(t);
                y = kRingY + kRingR * std::sin(t);
                break;
            }
        }
        ds.features(i, 0) = x + kNoiseSigma * rng.normal();
        ds.features(i, 1) = y + kNoiseSigma * rng.normal();
    }

    double xlo = ds.features(0, 0), xhi = xlo;
    double ylo = ds.features(0, 1), yhi = ylo;
    for (std::size_t i = 1; i < n_normal; ++i) {
        xlo = std::min(xlo, ds.features(i, 0));
        xhi = std::max(xhi, ds.features(i, 0));
        ylo = std::min(ylo, ds.features(i, 1));
        yhi = std::max(yhi, ds.features(i, 1));
    }
    const double xc = 0.5 * (xlo + xhi), xh = 0.5 * (xhi - xlo) * kBoxInflate;
    const double yc = 0.5 * (ylo + yhi), yh = 0.5 * (yhi - ylo) * kBoxInflate;

    for (std::size_t i = 0; i < n_anomaly; ++i) {
        double x, y;
        do {
            x = rng.uniform(xc - xh, xc + xh);
            y = rng.uniform(yc - yh, yc + yh);
        } while (synthetic_centerline_distance(x, y) < kRejectMargin);
        ds.features(n_normal + i, 0) = x;
        ds.features(n_normal + i, 1) = y;
        ds.labels[n_normal + i] = 1;
    }
    return ds;
}

// ---------------------------------------------------------------------------
// CSV ingest

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

bool parse_number(const std::string& cell, double& out) {
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size() && std::isfinite(out);
}

std::string basename_of(const std::string& path) {
    return path.substr(path.find_last_of("/\\") + 1);
}

// Pick `want` elements of `pool` by partial Fisher-Yates, then restore file
// order so subsampling selects rows without also reshuffling them.
std::vector<std::size_t> pick_rows(std::vector<std::size_t> pool, std::size_t want,
                                   Rng& rng, const char* what) {
    if (want > pool.size())
        throw data_error("subsample: requested " + std::to_string(want) + " " + what +
                         " rows but only " + std::to_string(pool.size()) + " available");
    for (std::size_t i = 0; i < want; ++i)
        std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
    pool.resize(want);
    std::sort(pool.begin(), pool.end());
    return pool;
}

struct RawRow {
    int label;
    std::vector<double> numeric;      // non-categorical cells in column order
    std::vector<std::string> categories;  // categorical cells in column order
};

}  // namespace

Dataset load_csv(const std::string& path, const PreprocessSpec& spec,
                 LoadReport* report) {
    spec.validate();
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);

    LoadReport local;
    LoadReport& rep = report ? *report : local;
    rep = LoadReport{};

    const auto where = [&](std::size_t line_no) {
        return basename_of(path) + ":" + std::to_string(line_no) + ": ";
    };

    std::vector<RawRow> rows;
    std::vector<bool> is_categorical;
    std::size_t n_cols = 0, label_col = 0, line_no = 0;
    std::string line;
    bool saw_data = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (spec.skip_header && line_no == 1) continue;
        if (trim(line).empty()) continue;
        const auto cells = split_cells(line);
        ++rep.rows_read;

        if (!saw_data) {
            saw_data = true;
            n_cols = cells.size();
            label_col = spec.label_column.value_or(n_cols - 1);
            if (label_col >= n_cols)
                throw config_error("preprocess: label column " + std::to_string(label_col) +
                                   " out of range for " + std::to_string(n_cols) + " columns");
            is_categorical.assign(n_cols, false);
            for (const auto c : spec.categorical_columns) {
                if (c >= n_cols || c == label_col)
                    throw config_error("preprocess: categorical column " + std::to_string(c) +
                                       " out of range or equal to the label column");
                is_categorical[c] = true;
            }
        } else if (cells.size() != n_cols) {
            throw data_error(where(line_no) + "expected " + std::to_string(n_cols) +
                             " columns, got " + std::to_string(cells.size()));
        }

        const auto& lab = cells[label_col];
        int label;
        if (std::find(spec.normal_values.begin(), spec.normal_values.end(), lab) !=
            spec.normal_values.end()) {
            label = 0;
        } else if (std::find(spec.anomaly_values.begin(), spec.anomaly_values.end(), lab) !=
                   spec.anomaly_values.end()) {
            label = 1;
        } else {
            ++rep.rows_label_dropped;
            continue;
        }

        RawRow row;
        row.label = label;
        bool missing = false;
        for (std::size_t c = 0; c < n_cols && !missing; ++c) {
            if (c == label_col) continue;
            if (is_categorical[c]) {
                row.categories.push_back(cells[c]);
                continue;
            }
            if (cells[c].empty()) {
                missing = true;
                break;
            }
            double v;
            if (!parse_number(cells[c], v))
                throw data_error(where(line_no) + "cannot parse '" + cells[c] +
                                 "' in column " + std::to_string(c + 1));
            row.numeric.push_back(v);
        }
        if (missing) {
            ++rep.rows_missing_dropped;
            continue;
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> normal_idx, anomaly_idx;
    for (std::size_t i = 0; i < rows.size(); ++i)
        (rows[i].label == 0 ? normal_idx : anomaly_idx).push_back(i);
    if (normal_idx.empty())
        throw data_error(basename_of(path) + ": no rows matched the normal label rule");
    if (anomaly_idx.empty())
        throw data_error(basename_of(path) + ": no rows matched the anomaly label rule");

    std::uint64_t ds_seed = 0;
    if (spec.subsample) {
        ds_seed = spec.subsample->seed;
        Rng rng(ds_seed);
        normal_idx = pick_rows(std::move(normal_idx), spec.subsample->n_normal, rng, "normal");
        anomaly_idx = pick_rows(std::move(anomaly_idx), spec.subsample->n_anomaly, rng, "anomaly");
    }
    std::vector<std::size_t> selected = normal_idx;
    selected.insert(selected.end(), anomaly_idx.begin(), anomaly_idx.end());

    // Category vocabularies from selected normal rows only, sorted for a
    // stable column order.
    const std::size_t n_cat = spec.categorical_columns.size();
    std::vector<std::map<std::string, std::size_t>> vocab(n_cat);
    {
        std::size_t slot = 0;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (!is_categorical[c]) continue;
            for (const auto i : normal_idx) vocab[slot][rows[i].categories[slot]] = 0;
            std::size_t k = 0;
            for (auto& [cat, id] : vocab[slot]) id = k++;
            ++slot;
        }
    }

    std::size_t d = 0;
    for (std::size_t c = 0, slot = 0; c < n_cols; ++c) {
        if (c == label_col) continue;
        d += is_categorical[c] ? vocab[slot++].size() : 1;
    }

    Dataset ds;
    ds.features = Matrix(selected.size(), d);
    ds.labels.resize(selected.size());
    ds.name = basename_of(path);
    ds.seed = ds_seed;

    for (std::size_t r = 0; r < selected.size(); ++r) {
        const RawRow& row = rows[selected[r]];
        ds.labels[r] = row.label;
        double* out = ds.features.row(r);
        std::size_t num_slot = 0, cat_slot = 0, o = 0;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (c == label_col) continue;
            if (!is_categorical[c]) {
                out[o++] = row.numeric[num_slot++];
                continue;
            }
            const auto& v = vocab[cat_slot];
            const auto it = v.find(row.categories[cat_slot]);
            if (it == v.end()) ++rep.unknown_category_cells;  // indicators stay zero
            else out[o + it->second] = 1.0;
            o += v.size();
            ++cat_slot;
        }
    }

    if (spec.standardize) {
        const std::size_t nn = normal_idx.size();
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (std::size_t r = 0; r < nn; ++r) mean += ds.features(r, j);
            mean /= static_cast<double>(nn);
            double var = 0.0;
            for (std::size_t r = 0; r < nn; ++r) {
                const double dev = ds.features(r, j) - mean;
                var += dev * dev;
            }
            const double sd = std::sqrt(var / static_cast<double>(nn));
            const double inv = sd > 1e-12 ? 1.0 / sd : 1.0;  // constant column: center only
            for (std::size_t r = 0; r < ds.n(); ++r)
                ds.features(r, j) = (ds.features(r, j) - mean) * inv;
        }
    }
    return ds;
}

// ---------------------------------------------------------------------------

std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  bool train_on_normal_only, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split: train_fraction must be in (0, 1)");
    const std::size_t n = dataset.n();
    if (n == 0) throw data_error("split: empty dataset");
    if (dataset.labels.size() != n) throw data_error("split: label/feature size mismatch");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::size_t i = 0; i + 1 < n; ++i)
        std::swap(order[i], order[i + rng.index(n - i)]);

    std::vector<std::size_t> train_idx, test_idx;
    if (train_on_normal_only) {
        const std::size_t n_normal = dataset.count_label(0);
        const auto k = static_cast<std::size_t>(train_fraction * static_cast<double>(n_normal));
        std::size_t normals_seen = 0;
        for (const auto i : order) {
            if (dataset.labels[i] == 0 && normals_seen++ < k) train_idx.push_back(i);
            else test_idx.push_back(i);
        }
    } else {
        const auto k = static_cast<std::size_t>(train_fraction * static_cast<double>(n));
        train_idx.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        test_idx.assign(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    }
    if (train_idx.empty() || test_idx.empty())
        throw data_error("split: train_fraction leaves an empty side");

    const auto take = [&](const std::vector<std::size_t>& idx) {
        Dataset out;
        out.features = Matrix(idx.size(), dataset.dim());
        out.labels.resize(idx.size());
        out.name = dataset.name;
        out.seed = seed;
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const double* src = dataset.features.row(idx[r]);
            std::copy(src, src + dataset.dim(), out.features.row(r));
            out.labels[r] = dataset.labels[idx[r]];
        }
        return out;
    };
    return {take(train_idx), take(test_idx)};
}

// ---------------------------------------------------------------------------

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    for (std::size_t j = 0; j < dataset.dim(); ++j) out << "f" << j << ",";
    out << "label\n";
    char buf[40];
    for (std::size_t i = 0; i < dataset.n(); ++i) {
        for (std::size_t j = 0; j < dataset.dim(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", dataset.features(i, j));
            out << buf << ",";
        }
        out << dataset.labels[i] << "\n";
    }
    if (!out) throw io_error("write failed for " + path);
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0, n_cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_cells(line);
        double v;
        if (line_no == 1 && !parse_number(cells[0], v)) continue;  // header
        if (n_cols == 0) {
            n_cols = cells.size();
            if (n_cols < 2)
                throw data_error(basename_of(path) + ":" + std::to_string(line_no) +
                                 ": need at least one feature and a label column");
        } else if (cells.size() != n_cols) {
            throw data_error(basename_of(path) + ":" + std::to_string(line_no) +
                             ": expected " + std::to_string(n_cols) + " columns, got " +
                             std::to_string(cells.size()));
        }
        std::vector<double> row(n_cols - 1);
        for (std::size_t c = 0; c + 1 < n_cols; ++c)
            if (!parse_number(cells[c], row[c]))
                throw data_error(basename_of(path) + ":" + std::to_string(line_no) +
                                 ": cannot parse '" + cells[c] + "'");
        if (!parse_number(cells[n_cols - 1], v) || (v != 0.0 && v != 1.0))
            throw data_error(basename_of(path) + ":" + std::to_string(line_no) +
                             ": label must be 0 or 1, got '" + cells[n_cols - 1] + "'");
        rows.push_back(std::move(row));
        labels.push_back(static_cast<int>(v));
    }
    if (rows.empty()) throw data_error(basename_of(path) + ": no data rows");

    Dataset ds;
    ds.features = Matrix(rows.size(), n_cols - 1);
    ds.labels = std::move(labels);
    ds.name = basename_of(path);
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i].begin(), rows[i].end(), ds.features.row(i));
    return ds;
}

}  // namespace ghkad
