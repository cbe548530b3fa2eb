// Command-line front end: dataset generation, model fitting, scoring,
// benchmark tables, and decision-boundary/histogram export. Every command
// reads a single JSON config assembled from --config, --set overrides,
// --seed, and --out-dir, so a saved config reproduces a run byte-for-byte
// apart from timestamps and wall-clock timing fields.
//
// Exit codes: 0 success, 1 partial benchmark failure, 2 config, 3 data,
// 4 numeric, 5 I/O.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghkad/data.hpp"
#include "ghkad/errors.hpp"
#include "ghkad/eval.hpp"
#include "ghkad/kde.hpp"
#include "ghkad/model_io.hpp"
#include "ghkad/ocsvm.hpp"
#include "ghkad/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ghkad;

namespace {

constexpr int kGeneratorVersion = 1;
constexpr const char* kReportTag = "ghkad-report v1";

// ---------------------------------------------------------------- config --

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

json parse_override_value(const std::string& text) {
    // Values parse as JSON when they can (numbers, booleans, arrays) and
    // fall back to bare strings, so paths need no extra quoting.
    json v = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (v.is_discarded()) return json(text);
    return v;
}

void apply_override(json& cfg, const std::string& entry) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("--set expects key=value, got '" + entry + "'");
    const std::string key = entry.substr(0, eq);

    json* node = &cfg;
    std::size_t start = 0;
    for (;;) {
        const auto dot = key.find('.', start);
        const std::string part =
            key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty())
            throw config_error("--set key '" + key + "' has an empty path segment");
        if (!node->is_object()) *node = json::object();
        if (dot == std::string::npos) {
            (*node)[part] = parse_override_value(entry.substr(eq + 1));
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

json load_config(const CommonArgs& args) {
    json cfg = json::object();
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path, std::ios::binary);
        if (!in) throw config_error("cannot open config file '" + args.config_path + "'");
        const std::string text((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
        json file_cfg = json::parse(text, nullptr, /*allow_exceptions=*/false);
        if (file_cfg.is_discarded())
            throw config_error("config file '" + args.config_path + "' is not valid JSON");
        if (!file_cfg.is_object())
            throw config_error("config file '" + args.config_path + "' must hold a JSON object");
        cfg = std::move(file_cfg);
    }
    for (const auto& entry : args.overrides) apply_override(cfg, entry);
    if (args.seed) cfg["seed"] = *args.seed;
    if (!args.out_dir.empty()) cfg["out_dir"] = args.out_dir;
    return cfg;
}

template <typename T>
T get_as(const json& node, const std::string& key) {
    try {
        return node.get<T>();
    } catch (const json::exception&) {
        throw config_error("config key '" + key + "' has the wrong type");
    }
}

const json& require_key(const json& cfg, const std::string& key) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) throw config_error("missing required config key '" + key + "'");
    return *it;
}

template <typename T>
T cfg_value(const json& cfg, const std::string& key, T fallback) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    return get_as<T>(*it, key);
}

// Counts read via int64 first: nlohmann would silently wrap a negative
// number into a huge std::size_t.
std::size_t cfg_count(const json& cfg, const std::string& key, std::size_t fallback) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    const auto v = get_as<std::int64_t>(*it, key);
    if (v < 0) throw config_error("config key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

fs::path ensure_out_dir(const json& cfg) {
    const fs::path dir = cfg_value<std::string>(cfg, "out_dir", ".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

// ---------------------------------------------------------------- output --

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON reports carry the same line-1 format tag convention as model files.
void write_report(const fs::path& path, const std::string& kind, const json& body) {
    write_file_atomic(path.string(), std::string(kReportTag) + " " + kind + "\n" +
                                         body.dump(2) + "\n");
}

void save_dataset_atomic(const Dataset& ds, const fs::path& path) {
    const fs::path tmp = path.string() + ".tmp";
    save_csv(ds, tmp.string());
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code rm;
        fs::remove(tmp, rm);
        throw io_error("cannot move '" + tmp.string() + "' into place: " + ec.message());
    }
}

// ---------------------------------------------------------------- models --

ModelFamily family_from_string(const std::string& s) {
    if (s == "ocsvm") return ModelFamily::Ocsvm;
    if (s == "kde") return ModelFamily::Kde;
    throw config_error("unknown model family '" + s + "' (expected 'ocsvm' or 'kde')");
}

KernelSpec kernel_from_config(const json& kernel) {
    if (!kernel.is_object()) throw config_error("'kernel' must be a JSON object");
    try {
        return kernel_spec_from_json(kernel.dump());
    } catch (const data_error& e) {
        throw config_error(std::string("bad kernel config: ") + e.what());
    }
}

Matrix normal_rows(const Dataset& ds) {
    Matrix out(ds.count_label(0), ds.dim());
    std::size_t k = 0;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        if (ds.labels[i] != 0) continue;
        for (std::size_t j = 0; j < ds.dim(); ++j) out(k, j) = ds.features(i, j);
        ++k;
    }
    return out;
}

// -------------------------------------------------------------- generate --

int cmd_generate(const json& cfg) {
    const auto seed = cfg_value<std::uint64_t>(cfg, "seed", 0);
    const auto n_normal = cfg_count(cfg, "n_normal", 1000);
    const auto n_anomaly = cfg_count(cfg, "n_anomaly", 50);
    if (n_normal == 0 || n_anomaly == 0)
        throw config_error("evaluation requires both classes: n_normal and n_anomaly "
                           "must be positive");
    const fs::path out_dir = ensure_out_dir(cfg);
    const auto dataset_file = cfg_value<std::string>(cfg, "dataset_file", "synthetic.csv");
    const auto manifest_file = cfg_value<std::string>(cfg, "manifest_file", "manifest.json");

    const Dataset ds = generate_synthetic(seed, n_normal, n_anomaly);
    save_dataset_atomic(ds, out_dir / dataset_file);

    const json manifest = {
        {"command", "generate"},       {"generator_version", kGeneratorVersion},
        {"seed", seed},                {"n_normal", n_normal},
        {"n_anomaly", n_anomaly},      {"dataset", dataset_file},
        {"created_utc", utc_timestamp()},
    };
    write_report(out_dir / manifest_file, "manifest", manifest);

    std::cout << "wrote " << ds.n() << " rows to " << (out_dir / dataset_file).string() << "\n";
    return 0;
}

// ------------------------------------------------------------------- fit --

int cmd_fit(const json& cfg) {
    const auto dataset_path = get_as<std::string>(require_key(cfg, "dataset"), "dataset");
    const fs::path out_dir = ensure_out_dir(cfg);
    const auto model_file = cfg_value<std::string>(cfg, "model_file", "model.ghm");
    const auto report_file = cfg_value<std::string>(cfg, "report_file", "fit_report.json");

    const json model_cfg = cfg.contains("model") ? cfg.at("model") : json::object();
    if (!model_cfg.is_object()) throw config_error("'model' must be a JSON object");
    const ModelFamily family = family_from_string(
        model_cfg.contains("family") ? get_as<std::string>(model_cfg.at("family"), "model.family")
                                     : std::string("ocsvm"));
    const KernelSpec spec = kernel_from_config(
        model_cfg.contains("kernel") ? model_cfg.at("kernel")
                                     : json{{"family", "rbf"}, {"gamma", 5.0}});

    const Dataset ds = read_dataset_csv(dataset_path);
    const Matrix train = normal_rows(ds);
    if (train.rows < 2)
        throw data_error("dataset '" + dataset_path +
                         "' has fewer than two normal-labeled rows to fit on");

    json report = {
        {"command", "fit"},
        {"dataset", dataset_path},
        {"model_file", model_file},
        {"family", family == ModelFamily::Ocsvm ? "ocsvm" : "kde"},
        {"kernel", spec.describe()},
        {"n_train", train.rows},
        {"dim", train.cols},
    };

    const fs::path model_path = out_dir / model_file;
    double train_time_s = 0.0;
    if (family == ModelFamily::Ocsvm) {
        OcsvmConfig oc;
        oc.nu = cfg_value<double>(model_cfg, "nu", 0.1);
        oc.tol = cfg_value<double>(model_cfg, "tol", 1e-6);
        oc.max_iter = cfg_count(model_cfg, "max_iter", 0);

        const auto t0 = std::chrono::steady_clock::now();
        const OcsvmModel model = fit(train, spec, oc);
        train_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        save_model(model, model_path.string());

        const auto& diag = model.diagnostics();
        report["ocsvm"] = {
            {"nu", oc.nu},
            {"tol", oc.tol},
            {"rho", model.rho()},
            {"iterations", diag.iterations},
            {"converged", diag.converged},
            {"kkt_violation", diag.kkt_violation},
            {"ridge_repaired", diag.ridge_repaired},
            {"rho_median_fallback", diag.rho_median_fallback},
            {"n_support", model.support_indices().size()},
            {"support_fraction",
             static_cast<double>(model.support_indices().size()) / static_cast<double>(train.rows)},
        };
    } else {
        // h = 0 (the default) requests the Scott rule, as in the eval layer.
        double h = cfg_value<double>(model_cfg, "h", 0.0);
        if (h <= 0.0) h = scott_bandwidth(train);

        const auto t0 = std::chrono::steady_clock::now();
        KdeModel model = fit_kde(train, spec, h);
        train_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        // Threshold calibration: an explicit contamination wins; otherwise the
        // dataset's own anomaly fraction, if it has any anomalies.
        std::optional<double> contamination;
        if (model_cfg.contains("contamination"))
            contamination = get_as<double>(model_cfg.at("contamination"), "model.contamination");
        else if (ds.count_label(1) > 0)
            contamination = static_cast<double>(ds.count_label(1)) / static_cast<double>(ds.n());
        if (contamination) choose_threshold(model, *contamination);
        save_model(model, model_path.string());

        report["kde"] = {
            {"h", model.bandwidth()},
            {"norm_const", model.norm_const()},
            {"threshold", model.threshold() ? json(*model.threshold()) : json()},
            {"contamination", contamination ? json(*contamination) : json()},
        };
    }
    report["train_time_s"] = train_time_s;
    write_report(out_dir / report_file, "fit", report);

    std::cout << "fit " << report["family"].get<std::string>() << " on " << train.rows
              << " normal rows (dim " << train.cols << ") in " << train_time_s << " s -> "
              << model_path.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- score --

int cmd_score(const json& cfg) {
    const auto model_path = get_as<std::string>(require_key(cfg, "model"), "model");
    const auto dataset_path = get_as<std::string>(require_key(cfg, "dataset"), "dataset");
    const fs::path out_dir = ensure_out_dir(cfg);
    const auto scores_file = cfg_value<std::string>(cfg, "scores_file", "scores.csv");

    const Dataset ds = read_dataset_csv(dataset_path);
    const ModelKind kind = peek_model_kind(model_path);

    std::vector<double> scores;
    std::size_t model_dim = 0;
    if (kind == ModelKind::Ocsvm) {
        const OcsvmModel model = load_ocsvm(model_path);
        model_dim = model.train_points().cols;
        if (model_dim == ds.dim()) {
            scores.resize(ds.n());
            for (std::size_t i = 0; i < ds.n(); ++i)
                scores[i] = -model.decision(ds.features.row(i), ds.dim());
        }
    } else {
        const KdeModel model = load_kde(model_path);
        model_dim = model.dim();
        if (model_dim == ds.dim()) scores = model.anomaly_scores(ds.features);
    }
    if (model_dim != ds.dim())
        throw data_error("model expects dim " + std::to_string(model_dim) + " but dataset '" +
                         dataset_path + "' has dim " + std::to_string(ds.dim()));

    std::string out = "index,score,label\n";
    out.reserve(out.size() + ds.n() * 32);
    for (std::size_t i = 0; i < ds.n(); ++i)
        out += std::to_string(i) + "," + fmt_double(scores[i]) + "," +
               std::to_string(ds.labels[i]) + "\n";
    write_file_atomic((out_dir / scores_file).string(), out);

    std::cout << "scored " << ds.n() << " rows -> " << (out_dir / scores_file).string() << "\n";
    return 0;
}

// ------------------------------------------------------------- benchmark --

std::vector<ModelConfig> models_from_config(const json& m) {
    if (m.is_string()) {
        const auto preset = m.get<std::string>();
        if (preset == "ocsvm-table") return synthetic_ocsvm_configs();
        if (preset == "kde-table") return synthetic_kde_configs();
        if (preset == "both-tables") {
            auto out = synthetic_ocsvm_configs();
            auto kde = synthetic_kde_configs();
            for (auto& c : out) c.name = "ocsvm/" + c.name;
            for (auto& c : kde) c.name = "kde/" + c.name;
            out.insert(out.end(), std::make_move_iterator(kde.begin()),
                       std::make_move_iterator(kde.end()));
            return out;
        }
        throw config_error("unknown model preset '" + preset +
                           "' (expected 'ocsvm-table', 'kde-table', or 'both-tables')");
    }
    if (!m.is_array() || m.empty())
        throw config_error("'models' must be a preset name or a non-empty array");
    std::vector<ModelConfig> out;
    for (const auto& e : m) {
        if (!e.is_object()) throw config_error("each 'models' entry must be a JSON object");
        ModelConfig c;
        c.name = get_as<std::string>(require_key(e, "name"), "models[].name");
        c.family =
            family_from_string(get_as<std::string>(require_key(e, "family"), "models[].family"));
        c.spec = kernel_from_config(require_key(e, "kernel"));
        c.nu = cfg_value<double>(e, "nu", 0.1);
        c.h = cfg_value<double>(e, "h", 0.0);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::uint64_t> seeds_from_config(const json& cfg) {
    if (cfg.contains("seeds")) {
        const json& s = cfg.at("seeds");
        if (!s.is_array() || s.empty()) throw config_error("'seeds' must be a non-empty array");
        std::vector<std::uint64_t> out;
        for (const auto& v : s) out.push_back(get_as<std::uint64_t>(v, "seeds[]"));
        return out;
    }
    const auto base = cfg_value<std::uint64_t>(cfg, "seed", 1);
    const auto n = cfg_count(cfg, "n_seeds", 10);
    if (n == 0) throw config_error("'n_seeds' must be positive");
    std::vector<std::uint64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = base + i;
    return out;
}

std::vector<Dataset> datasets_from_config(const json& cfg) {
    const auto default_seed = cfg_value<std::uint64_t>(cfg, "seed", 1);
    const json entries = cfg.contains("datasets")
                             ? cfg.at("datasets")
                             : json::array({json{{"synthetic", json::object()}}});
    if (!entries.is_array() || entries.empty())
        throw config_error("'datasets' must be a non-empty array");

    // Every referenced file must exist before any model is fitted, so a typo
    // fails in milliseconds rather than after a long run.
    for (const auto& e : entries) {
        std::string path;
        if (e.is_string() && e.get<std::string>() != "synthetic") path = e.get<std::string>();
        if (e.is_object() && e.contains("path"))
            path = get_as<std::string>(e.at("path"), "datasets[].path");
        if (!path.empty() && !fs::exists(path))
            throw config_error("dataset file not found: '" + path + "'");
    }

    std::vector<Dataset> out;
    for (const auto& e : entries) {
        if (e.is_string()) {
            const auto s = e.get<std::string>();
            if (s == "synthetic") {
                out.push_back(generate_synthetic(default_seed, 1000, 50));
            } else {
                out.push_back(read_dataset_csv(s));
            }
        } else if (e.is_object() && e.contains("synthetic")) {
            const json& g = e.at("synthetic");
            out.push_back(generate_synthetic(cfg_value<std::uint64_t>(g, "seed", default_seed),
                                             cfg_count(g, "n_normal", 1000),
                                             cfg_count(g, "n_anomaly", 50)));
        } else if (e.is_object() && e.contains("path")) {
            out.push_back(read_dataset_csv(e.at("path").get<std::string>()));
            if (e.contains("name"))
                out.back().name = get_as<std::string>(e.at("name"), "datasets[].name");
        } else {
            throw config_error("bad dataset entry: expected a path, \"synthetic\", or an object "
                               "with 'path' or 'synthetic'");
        }
    }
    return out;
}

int cmd_benchmark(const json& cfg) {
    const fs::path out_dir = ensure_out_dir(cfg);
    const double train_fraction = cfg_value<double>(cfg, "train_fraction", 0.8);
    const auto models =
        models_from_config(cfg.contains("models") ? cfg.at("models") : json("ocsvm-table"));
    const auto seeds = seeds_from_config(cfg);
    const auto datasets = datasets_from_config(cfg);

    const auto rows = benchmark(datasets, models, seeds, train_fraction);

    write_file_atomic((out_dir / "benchmark.csv").string(), benchmark_csv(rows));
    const std::string table = benchmark_table(rows);
    write_file_atomic((out_dir / "benchmark.txt").string(), table);

    json cells = json::array();
    for (const auto& r : rows) {
        json c = {{"dataset", r.dataset}, {"model", r.model},
                  {"status", r.failed ? "failed" : "ok"}};
        if (r.failed) {
            c["error"] = r.error;
        } else {
            const auto metric = [&r](double mean, double sd) {
                json m = {{"mean", mean}};
                if (r.has_sd) m["sd"] = sd;
                return m;
            };
            c["auc"] = metric(r.auc_mean, r.auc_sd);
            c["accuracy"] = metric(r.accuracy_mean, r.accuracy_sd);
            c["precision"] = metric(r.precision_mean, r.precision_sd);
            c["recall"] = metric(r.recall_mean, r.recall_sd);
            c["train_time_s"] = metric(r.train_time_s_mean, r.train_time_s_sd);
            c["n_kernel_params"] = r.n_kernel_params;
            c["n_hyperparams"] = r.n_hyperparams;
        }
        cells.push_back(std::move(c));
    }
    const json body = {{"command", "benchmark"},
                       {"train_fraction", train_fraction},
                       {"seeds", seeds},
                       {"cells", std::move(cells)}};
    write_report(out_dir / "cells.json", "benchmark", body);

    std::cout << table;
    const bool any_failed =
        std::any_of(rows.begin(), rows.end(), [](const BenchmarkRow& r) { return r.failed; });
    if (any_failed) std::cerr << "warning: some benchmark cells failed\n";
    return any_failed ? 1 : 0;
}

// --------------------------------------------------------- export-boundary --

void inflate_range(double& lo, double& hi, double inflate) {
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
        return;
    }
    const double pad = 0.5 * inflate * (hi - lo);
    lo -= pad;
    hi += pad;
}

int cmd_export_boundary(const json& cfg) {
    const auto model_path = get_as<std::string>(require_key(cfg, "model"), "model");
    const auto dataset_path = get_as<std::string>(require_key(cfg, "dataset"), "dataset");
    const fs::path out_dir = ensure_out_dir(cfg);
    const auto grid_n = cfg_count(cfg, "grid_n", 300);
    const auto n_bins = cfg_count(cfg, "n_bins", 50);
    const double inflate = cfg_value<double>(cfg, "inflate", 0.1);
    if (grid_n < 2) throw config_error("'grid_n' must be at least 2");
    if (n_bins == 0) throw config_error("'n_bins' must be positive");

    const Dataset ds = read_dataset_csv(dataset_path);
    if (ds.dim() != 2)
        throw data_error("boundary export needs 2-D data; '" + dataset_path + "' has dim " +
                         std::to_string(ds.dim()));

    const ModelKind kind = peek_model_kind(model_path);
    std::optional<OcsvmModel> ocsvm;
    std::optional<KdeModel> kde;
    if (kind == ModelKind::Ocsvm) {
        ocsvm.emplace(load_ocsvm(model_path));
        if (ocsvm->train_points().cols != 2)
            throw data_error("boundary export needs a 2-D model; '" + model_path + "' has dim " +
                             std::to_string(ocsvm->train_points().cols));
    } else {
        kde.emplace(load_kde(model_path));
        if (kde->dim() != 2)
            throw data_error("boundary export needs a 2-D model; '" + model_path + "' has dim " +
                             std::to_string(kde->dim()));
        if (!kde->threshold())
            throw data_error("KDE model '" + model_path +
                             "' has no stored threshold; refit with 'contamination' set");
    }

    double xmin = ds.features(0, 0), xmax = xmin;
    double ymin = ds.features(0, 1), ymax = ymin;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        xmin = std::min(xmin, ds.features(i, 0));
        xmax = std::max(xmax, ds.features(i, 0));
        ymin = std::min(ymin, ds.features(i, 1));
        ymax = std::max(ymax, ds.features(i, 1));
    }
    inflate_range(xmin, xmax, inflate);
    inflate_range(ymin, ymax, inflate);

    std::vector<double> xs(grid_n), ys(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid_n - 1);
        xs[i] = xmin + (xmax - xmin) * t;
        ys[i] = ymin + (ymax - ymin) * t;
    }

    // The exported value is positive on the normal side and zero exactly on
    // the plotted boundary: the OCSVM decision function, or threshold minus
    // score for a KDE.
    std::vector<double> grid(grid_n * grid_n);
    if (kde) {
        Matrix queries(grid_n * grid_n, 2);
        for (std::size_t iy = 0; iy < grid_n; ++iy)
            for (std::size_t ix = 0; ix < grid_n; ++ix) {
                queries(iy * grid_n + ix, 0) = xs[ix];
                queries(iy * grid_n + ix, 1) = ys[iy];
            }
        const auto s = kde->anomaly_scores(queries);
        for (std::size_t k = 0; k < s.size(); ++k) grid[k] = *kde->threshold() - s[k];
    } else {
        for (std::size_t iy = 0; iy < grid_n; ++iy)
            for (std::size_t ix = 0; ix < grid_n; ++ix) {
                const double p[2] = {xs[ix], ys[iy]};
                grid[iy * grid_n + ix] = ocsvm->decision(p, 2);
            }
    }

    std::string grid_csv = "x,y,value\n";
    grid_csv.reserve(grid_csv.size() + grid.size() * 48);
    for (std::size_t iy = 0; iy < grid_n; ++iy)
        for (std::size_t ix = 0; ix < grid_n; ++ix)
            grid_csv += fmt_double(xs[ix]) + "," + fmt_double(ys[iy]) + "," +
                        fmt_double(grid[iy * grid_n + ix]) + "\n";
    write_file_atomic((out_dir / cfg_value<std::string>(cfg, "grid_file", "grid.csv")).string(),
                      grid_csv);

    std::vector<double> point_values(ds.n());
    if (kde) {
        const auto s = kde->anomaly_scores(ds.features);
        for (std::size_t i = 0; i < ds.n(); ++i) point_values[i] = *kde->threshold() - s[i];
    } else {
        for (std::size_t i = 0; i < ds.n(); ++i)
            point_values[i] = ocsvm->decision(ds.features.row(i), 2);
    }

    const HistogramData hist = histogram(point_values, ds.labels, n_bins);
    std::string hist_csv = "bin_lo,bin_hi,normal_count,anomaly_count\n";
    for (std::size_t b = 0; b < n_bins; ++b)
        hist_csv += fmt_double(hist.edges[b]) + "," + fmt_double(hist.edges[b + 1]) + "," +
                    std::to_string(hist.normal_counts[b]) + "," +
                    std::to_string(hist.anomaly_counts[b]) + "\n";
    write_file_atomic(
        (out_dir / cfg_value<std::string>(cfg, "histogram_file", "histogram.csv")).string(),
        hist_csv);

    const std::string title = ocsvm ? ocsvm->kernel_spec().describe() : kde->spec().describe();
    write_file_atomic(
        (out_dir / cfg_value<std::string>(cfg, "boundary_svg_file", "boundary.svg")).string(),
        boundary_svg(ds.features, ds.labels, grid, xs, ys, 0.0, title));
    write_file_atomic(
        (out_dir / cfg_value<std::string>(cfg, "histogram_svg_file", "histogram.svg")).string(),
        histogram_svg(hist, 0.0, title));

    std::size_t normal_pos = 0, anomaly_neg = 0;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        if (ds.labels[i] == 0 && point_values[i] > 0.0) ++normal_pos;
        if (ds.labels[i] == 1 && point_values[i] < 0.0) ++anomaly_neg;
    }
    std::printf("boundary at level 0: %zu/%zu normals positive, %zu/%zu anomalies negative\n",
                normal_pos, ds.count_label(0), anomaly_neg, ds.count_label(1));
    std::cout << "wrote grid (" << grid_n << "x" << grid_n << "), histogram (" << n_bins
              << " bins), and SVGs to " << out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel anomaly detection: GH-kernel OCSVM and KDE models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ghkad 1.0.0");

    CommonArgs args;
    const auto add_common = [&args](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON config file");
        sub->add_option("--set", args.overrides,
                        "override a config key (key=value, dotted paths descend into objects)");
        sub->add_option("--seed", args.seed, "seed override");
        sub->add_option("--out-dir", args.out_dir, "output directory (created if missing)");
    };

    CLI::App* generate =
        app.add_subcommand("generate", "write a synthetic labeled dataset and its manifest");
    CLI::App* fit_cmd =
        app.add_subcommand("fit", "fit a model on the normal-labeled rows of a dataset CSV");
    CLI::App* score_cmd =
        app.add_subcommand("score", "score every row of a dataset with a saved model");
    CLI::App* bench =
        app.add_subcommand("benchmark", "run the kernel comparison and write table files");
    CLI::App* boundary = app.add_subcommand(
        "export-boundary", "export a decision grid, score histograms, and SVG plots");
    for (CLI::App* sub : {generate, fit_cmd, score_cmd, bench, boundary}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const json cfg = load_config(args);
        if (generate->parsed()) return cmd_generate(cfg);
        if (fit_cmd->parsed()) return cmd_fit(cfg);
        if (score_cmd->parsed()) return cmd_score(cfg);
        if (bench->parsed()) return cmd_benchmark(cfg);
        return cmd_export_boundary(cfg);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 5;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 5;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const quadrature_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
