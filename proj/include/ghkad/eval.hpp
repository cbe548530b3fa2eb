#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ghkad/data.hpp"
#include "ghkad/kernels.hpp"
#include "ghkad/matrix.hpp"

namespace ghkad {

// Anomaly = positive class throughout this module.

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool precision_undefined = false;  // no predicted positives; reported as 0
};

// Mann-Whitney rank statistic with midrank tie handling; identical to
// trapezoidal ROC integration. Higher score must mean more anomalous.
double auc_roc(const std::vector<double>& scores, const std::vector<int>& labels);

Metrics classification_metrics(const std::vector<int>& predictions,
                               const std::vector<int>& labels);

enum class ModelFamily { Ocsvm, Kde };

struct EvalReport {
    double auc_roc = 0.0;
    double accuracy = 0.0, precision = 0.0, recall = 0.0;
    bool precision_undefined = false;
    double train_time_s = 0.0;  // fit only: Gram + solve / table + model build
    std::size_t n_kernel_params = 0;
    std::size_t n_hyperparams = 0;  // kernel params + the model knob (nu or h)
    std::string model_desc;
    std::string protocol_desc;
};

// Fit on training normals, score the labeled test set. OCSVM flags points
// with negative decision values; KDE thresholds its training-score quantile
// at the given contamination. A KDE h of 0 means Scott's rule.
EvalReport evaluate_model(const Matrix& train_normals, const Dataset& test,
                          ModelFamily family, const KernelSpec& spec, double nu,
                          double h, double contamination,
                          const std::string& protocol = "");

// Exhaustive grid over named parameter values, in declared order. Recognized
// names: "nu" (OCSVM), "h" (KDE), and the kernel's own parameters ("gamma";
// "degree"/"scale"/"coef0"; "lengthscale" plus the distribution parameters
// "lambda"/"alpha"/"beta"/"delta"/"mu", or "sigma"/"mu", or "df"/"mu"/"sigma"
// matching the template's variant). Unknown names are configuration errors;
// combinations that violate a model invariant are skipped and counted.
struct GridSpec {
    std::vector<std::pair<std::string, std::vector<double>>> parameters;
    double validation_fraction = 0.25;
    std::uint64_t seed = 0;

    void validate() const;
};

struct GridResult {
    KernelSpec spec;
    double nu = 0.1;  // defaults when the grid does not set them
    double h = 0.0;
    EvalReport report;  // best combination, evaluated on the validation split
    std::size_t n_skipped = 0;
    std::vector<std::pair<std::string, double>> trace;  // desc -> validation AUC
};

// Holds out validation_fraction of the normals plus a contamination-matched
// anomaly sample, fits each combination on the remaining normals, and keeps
// the best validation AUC (ties: fewer hyperparameters, then first in
// lexicographic combination order). Deterministic for identical inputs.
GridResult grid_search(const Dataset& dataset, ModelFamily family,
                       const KernelSpec& spec_template, const GridSpec& grid);

struct ModelConfig {
    std::string name;
    ModelFamily family = ModelFamily::Ocsvm;
    KernelSpec spec;
    double nu = 0.1;
    double h = 0.0;  // KDE; 0 means Scott's rule
};

struct BenchmarkRow {
    std::string dataset, model;
    bool failed = false;
    std::string error;
    bool has_sd = false;  // absent for a single seed
    double auc_mean = 0, auc_sd = 0;
    double accuracy_mean = 0, accuracy_sd = 0;
    double precision_mean = 0, precision_sd = 0;
    double recall_mean = 0, recall_sd = 0;
    double train_time_s_mean = 0, train_time_s_sd = 0;
    std::size_t n_kernel_params = 0, n_hyperparams = 0;
};

// One row per (dataset, model): each seed drives a deterministic
// train-on-normals split, metrics are aggregated as mean and population SD
// across seeds. A failing cell is marked and the rest continue.
std::vector<BenchmarkRow> benchmark(const std::vector<Dataset>& datasets,
                                    const std::vector<ModelConfig>& configs,
                                    const std::vector<std::uint64_t>& seeds,
                                    double train_fraction = 0.8);

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);
std::string benchmark_table(const std::vector<BenchmarkRow>& rows);

// The kernel lineups of the synthetic comparison, in table order: four
// standard kernels followed by the five GH variants, with defaults tuned for
// the synthetic manifold set.
std::vector<ModelConfig> synthetic_ocsvm_configs();
std::vector<ModelConfig> synthetic_kde_configs();

}  // namespace ghkad
