// End-to-end tests of the command-line binary: every case shells out to the
// real executable (path injected at compile time) and inspects exit codes
// and output files, never internal state.
#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(GHKAD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ghkad_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

// Report files carry a tag line ahead of the JSON body.
json parse_report(const fs::path& path, const std::string& kind) {
    const std::string text = slurp(path);
    const auto nl = text.find('\n');
    REQUIRE(nl != std::string::npos);
    CHECK(text.substr(0, nl) == "ghkad-report v1 " + kind);
    return json::parse(text.substr(nl + 1));
}

std::string drop_lines_containing(const std::string& text, const std::string& needle) {
    std::string out;
    for (const auto& line : split_lines(text))
        if (line.find(needle) == std::string::npos) out += line + "\n";
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generate writes dataset plus manifest, byte-stable modulo timestamp") {
    const fs::path dir = scratch("generate");
    REQUIRE(run_cli("generate --out-dir " + (dir / "a").string()) == 0);

    const std::string csv = slurp(dir / "a" / "synthetic.csv");
    const auto lines = split_lines(csv);
    CHECK(lines.size() == 1051);  // header + 1000 normals + 50 anomalies
    CHECK(lines[0] == "f0,f1,label");

    const json manifest = parse_report(dir / "a" / "manifest.json", "manifest");
    CHECK(manifest.at("generator_version") == 1);
    CHECK(manifest.at("seed") == 0);
    CHECK(manifest.at("n_normal") == 1000);
    CHECK(manifest.at("n_anomaly") == 50);
    CHECK(manifest.contains("created_utc"));

    // Same config again: identical bytes except the manifest timestamp.
    REQUIRE(run_cli("generate --out-dir " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "b" / "synthetic.csv") == csv);
    CHECK(drop_lines_containing(slurp(dir / "a" / "manifest.json"), "created_utc") ==
          drop_lines_containing(slurp(dir / "b" / "manifest.json"), "created_utc"));

    // A different seed changes the data.
    REQUIRE(run_cli("generate --seed 7 --out-dir " + (dir / "c").string()) == 0);
    CHECK(slurp(dir / "c" / "synthetic.csv") != csv);

    CHECK(run_cli("generate --set n_anomaly=0 --out-dir " + (dir / "d").string()) == 2);
    CHECK(run_cli("generate --set n_normal=0 --out-dir " + (dir / "d").string()) == 2);
}

TEST_CASE("fit writes a tagged model with the nu-property support fraction") {
    const fs::path dir = scratch("fit");
    REQUIRE(run_cli("generate --out-dir " + dir.string()) == 0);
    const std::string data = (dir / "synthetic.csv").string();

    REQUIRE(run_cli("fit --set dataset=" + data + " --out-dir " + (dir / "m1").string()) == 0);
    const std::string model = slurp(dir / "m1" / "model.ghm");
    CHECK(model.substr(0, model.find('\n')) == "ghkad-model v1 ocsvm");

    const json report = parse_report(dir / "m1" / "fit_report.json", "fit");
    CHECK(report.at("family") == "ocsvm");
    CHECK(report.at("n_train") == 1000);
    CHECK(report.at("dim") == 2);
    CHECK(report.at("ocsvm").at("converged") == true);
    const double sf = report.at("ocsvm").at("support_fraction").get<double>();
    CHECK(sf >= 0.1 - 0.02);
    CHECK(sf <= 0.1 + 0.05);

    // Model files carry no timing, so a re-run reproduces them byte-for-byte.
    REQUIRE(run_cli("fit --set dataset=" + data + " --out-dir " + (dir / "m2").string()) == 0);
    CHECK(slurp(dir / "m2" / "model.ghm") == model);

    // A different nu moves the support fraction with it.
    REQUIRE(run_cli("fit --set dataset=" + data + " --set model.nu=0.2 --out-dir " +
                    (dir / "m3").string()) == 0);
    const json r3 = parse_report(dir / "m3" / "fit_report.json", "fit");
    const double sf3 = r3.at("ocsvm").at("support_fraction").get<double>();
    CHECK(sf3 >= 0.2 - 0.02);
    CHECK(sf3 <= 0.2 + 0.05);

    CHECK(run_cli("fit --set dataset=" + data + " --set model.nu=0 --out-dir " +
                  (dir / "m4").string()) == 2);
    CHECK(run_cli("fit --set dataset=does_not_exist.csv --out-dir " + (dir / "m5").string()) == 5);
}

TEST_CASE("fit kde stores bandwidth and threshold") {
    const fs::path dir = scratch("fit_kde");
    REQUIRE(run_cli("generate --out-dir " + dir.string()) == 0);
    REQUIRE(run_cli("fit --set dataset=" + (dir / "synthetic.csv").string() +
                    " --set model.family=kde"
                    " --set model.kernel='{\"family\":\"epanechnikov\"}'"
                    " --out-dir " + dir.string()) == 0);

    const std::string model = slurp(dir / "model.ghm");
    CHECK(model.substr(0, model.find('\n')) == "ghkad-model v1 kde");

    const json report = parse_report(dir / "fit_report.json", "fit");
    CHECK(report.at("family") == "kde");
    CHECK(report.at("kde").at("h").get<double>() > 0.0);  // Scott rule resolved
    // With anomalies present the threshold calibrates to their fraction.
    CHECK(report.at("kde").at("threshold").is_number());
    CHECK(report.at("kde").at("contamination").get<double>() == doctest::Approx(50.0 / 1050.0));
}

TEST_CASE("score emits per-row scores with labels and near-zero margin SVs") {
    const fs::path dir = scratch("score");
    REQUIRE(run_cli("generate --out-dir " + dir.string()) == 0);
    const std::string data = (dir / "synthetic.csv").string();
    REQUIRE(run_cli("fit --set dataset=" + data + " --out-dir " + dir.string()) == 0);
    const std::string model = (dir / "model.ghm").string();

    REQUIRE(run_cli("score --set model=" + model + " --set dataset=" + data + " --out-dir " +
                    dir.string()) == 0);
    const auto lines = split_lines(slurp(dir / "scores.csv"));
    REQUIRE(lines.size() == 1051);
    CHECK(lines[0] == "index,score,label");

    double min_abs_normal = 1e300;
    std::size_t n_anomaly_rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto c1 = lines[i].find(',');
        const auto c2 = lines[i].rfind(',');
        REQUIRE(c1 != std::string::npos);
        REQUIRE(c2 > c1);
        CHECK(std::stoul(lines[i].substr(0, c1)) == i - 1);
        const double score = std::stod(lines[i].substr(c1 + 1, c2 - c1 - 1));
        const int label = std::stoi(lines[i].substr(c2 + 1));
        if (label == 0) min_abs_normal = std::min(min_abs_normal, std::fabs(score));
        if (label == 1) ++n_anomaly_rows;
    }
    CHECK(n_anomaly_rows == 50);
    // Margin support vectors sit on the decision surface, so the closest
    // training score to zero is within solver tolerance of it.
    CHECK(min_abs_normal <= 10.0 * 1e-6);

    // Dimension mismatch is a data error.
    spit(dir / "dim3.csv", "f0,f1,f2,label\n1,2,3,0\n2,3,4,0\n9,9,9,1\n");
    CHECK(run_cli("score --set model=" + model + " --set dataset=" + (dir / "dim3.csv").string() +
                  " --out-dir " + dir.string()) == 3);

    // A version-tag mismatch is rejected before any scoring.
    std::string tampered = slurp(dir / "model.ghm");
    tampered.replace(tampered.find("v1"), 2, "v9");
    spit(dir / "bad_model.ghm", tampered);
    CHECK(run_cli("score --set model=" + (dir / "bad_model.ghm").string() +
                  " --set dataset=" + data + " --out-dir " + dir.string()) == 3);

    CHECK(run_cli("score --set model=missing.ghm --set dataset=" + data + " --out-dir " +
                  dir.string()) == 5);
}

TEST_CASE("benchmark writes tables; single seed means no spread columns") {
    const fs::path dir = scratch("benchmark");
    const json cfg = {
        {"datasets", json::array({json{{"synthetic", {{"seed", 3}, {"n_normal", 300}, {"n_anomaly", 30}}}}})},
        {"models", json::array({
            json{{"name", "rbf"}, {"family", "ocsvm"},
                 {"kernel", {{"family", "rbf"}, {"gamma", 5.0}}}, {"nu", 0.1}},
            json{{"name", "linear"}, {"family", "ocsvm"},
                 {"kernel", {{"family", "linear"}}}, {"nu", 0.1}},
        })},
        {"seeds", json::array({7})},
    };
    spit(dir / "cfg.json", cfg.dump());
    REQUIRE(run_cli("benchmark --config " + (dir / "cfg.json").string() + " --out-dir " +
                    dir.string()) == 0);

    const auto csv = split_lines(slurp(dir / "benchmark.csv"));
    REQUIRE(csv.size() == 3);  // header + one row per model
    CHECK(csv[0].rfind("dataset,model,auc_mean,auc_sd", 0) == 0);
    CHECK(csv[1].rfind("synthetic,rbf,", 0) == 0);
    CHECK(csv[2].rfind("synthetic,linear,", 0) == 0);
    for (std::size_t i = 1; i < csv.size(); ++i) CHECK(csv[i].substr(csv[i].rfind(',') + 1) == "ok");

    // One seed, deterministic models: the text table shows no "+-" spread.
    const std::string table = slurp(dir / "benchmark.txt");
    CHECK(table.find("+-") == std::string::npos);
    CHECK(table.find("rbf") != std::string::npos);

    const json cells = parse_report(dir / "cells.json", "benchmark");
    REQUIRE(cells.at("cells").size() == 2);
    const json& rbf = cells.at("cells")[0];
    CHECK(rbf.at("status") == "ok");
    CHECK(rbf.at("auc").at("mean").get<double>() > 0.5);
    CHECK(!rbf.at("auc").contains("sd"));
}

TEST_CASE("benchmark preset reproduces the nine-kernel table layout") {
    const fs::path dir = scratch("bench_preset");
    const json cfg = {
        {"datasets", json::array({json{{"synthetic", {{"seed", 3}, {"n_normal", 200}, {"n_anomaly", 20}}}}})},
        {"models", "ocsvm-table"},
        {"seeds", json::array({5})},
    };
    spit(dir / "cfg.json", cfg.dump());
    REQUIRE(run_cli("benchmark --config " + (dir / "cfg.json").string() + " --out-dir " +
                    dir.string()) == 0);

    const auto csv = split_lines(slurp(dir / "benchmark.csv"));
    REQUIRE(csv.size() == 10);  // header + 9 kernels
    const std::vector<std::string> expected = {"rbf",    "polynomial",    "linear",
                                               "sigmoid", "full-gh",      "gh-gaussian",
                                               "gh-nig",  "gh-student-t", "gh-hyperbolic"};
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(csv[i + 1].rfind("synthetic," + expected[i] + ",", 0) == 0);
}

TEST_CASE("benchmark error paths: missing dataset fails fast, broken cell flags exit 1") {
    const fs::path dir = scratch("bench_errors");
    // Missing dataset: config error before any fitting, so no outputs appear.
    CHECK(run_cli("benchmark --set datasets='[\"no_such_file.csv\"]' --out-dir " +
                  (dir / "missing").string()) == 2);
    CHECK(!fs::exists(dir / "missing" / "benchmark.csv"));

    // A cell that cannot fit (KDE has no RBF profile) is marked failed and
    // flips the exit code to 1 while the healthy cell still reports.
    const json cfg = {
        {"datasets", json::array({json{{"synthetic", {{"seed", 3}, {"n_normal", 200}, {"n_anomaly", 20}}}}})},
        {"models", json::array({
            json{{"name", "ok-rbf"}, {"family", "ocsvm"},
                 {"kernel", {{"family", "rbf"}, {"gamma", 5.0}}}},
            json{{"name", "bad-kde"}, {"family", "kde"},
                 {"kernel", {{"family", "rbf"}, {"gamma", 5.0}}}},
        })},
        {"seeds", json::array({7})},
    };
    spit(dir / "cfg.json", cfg.dump());
    CHECK(run_cli("benchmark --config " + (dir / "cfg.json").string() + " --out-dir " +
                  dir.string()) == 1);
    const auto csv = split_lines(slurp(dir / "benchmark.csv"));
    REQUIRE(csv.size() == 3);
    CHECK(csv[1].substr(csv[1].rfind(',') + 1) == "ok");
    CHECK(csv[2].rfind("synthetic,bad-kde,", 0) == 0);
    CHECK(csv[2].find("failed:") != std::string::npos);
}

TEST_CASE("export-boundary grid and histograms conserve and separate the classes") {
    const fs::path dir = scratch("boundary");
    REQUIRE(run_cli("generate --out-dir " + dir.string()) == 0);
    const std::string data = (dir / "synthetic.csv").string();

    const json cfg = {
        {"dataset", data},
        {"model", {{"family", "ocsvm"},
                   {"nu", 0.05},
                   {"kernel", {{"family", "gh"},
                               {"lengthscale", 0.35},
                               {"variant", {{"kind", "full_gh"}, {"lambda", -0.5}, {"alpha", 2.0},
                                            {"beta", 0.4}, {"delta", 1.0}, {"mu", 0.0}}}}}}},
    };
    spit(dir / "fit.json", cfg.dump());
    REQUIRE(run_cli("fit --config " + (dir / "fit.json").string() + " --out-dir " + dir.string()) ==
            0);

    REQUIRE(run_cli("export-boundary --set model=" + (dir / "model.ghm").string() +
                    " --set dataset=" + data + " --out-dir " + dir.string()) == 0);

    // Default grid is 300x300.
    const auto grid_lines = split_lines(slurp(dir / "grid.csv"));
    REQUIRE(grid_lines.size() == 90001);
    CHECK(grid_lines[0] == "x,y,value");

    // Rebuild the value field and check the zero contour separates the
    // classes: sign of the bilinear interpolant at each data point.
    const std::size_t n = 300;
    std::vector<double> xs, ys(n), values(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        const std::string& line = grid_lines[k + 1];
        const auto c1 = line.find(',');
        const auto c2 = line.rfind(',');
        const double x = std::stod(line.substr(0, c1));
        const double y = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        values[k] = std::stod(line.substr(c2 + 1));
        if (k < n) xs.push_back(x);
        if (k % n == 0) ys[k / n] = y;
    }
    const auto value_at = [&](double px, double py) {
        const double fx = (px - xs[0]) / (xs[1] - xs[0]);
        const double fy = (py - ys[0]) / (ys[1] - ys[0]);
        const std::size_t ix = std::min(n - 2, static_cast<std::size_t>(std::max(0.0, fx)));
        const std::size_t iy = std::min(n - 2, static_cast<std::size_t>(std::max(0.0, fy)));
        const double tx = fx - static_cast<double>(ix), ty = fy - static_cast<double>(iy);
        const double v00 = values[iy * n + ix], v10 = values[iy * n + ix + 1];
        const double v01 = values[(iy + 1) * n + ix], v11 = values[(iy + 1) * n + ix + 1];
        return (1 - ty) * ((1 - tx) * v00 + tx * v10) + ty * ((1 - tx) * v01 + tx * v11);
    };
    std::size_t normal_pos = 0, normal_total = 0, anomaly_neg = 0, anomaly_total = 0;
    const auto data_lines = split_lines(slurp(data));
    for (std::size_t i = 1; i < data_lines.size(); ++i) {
        const auto c1 = data_lines[i].find(',');
        const auto c2 = data_lines[i].rfind(',');
        const double px = std::stod(data_lines[i].substr(0, c1));
        const double py = std::stod(data_lines[i].substr(c1 + 1, c2 - c1 - 1));
        const int label = std::stoi(data_lines[i].substr(c2 + 1));
        const double v = value_at(px, py);
        if (label == 0) {
            ++normal_total;
            if (v > 0.0) ++normal_pos;
        } else {
            ++anomaly_total;
            if (v < 0.0) ++anomaly_neg;
        }
    }
    REQUIRE(normal_total == 1000);
    REQUIRE(anomaly_total == 50);
    CHECK(static_cast<double>(normal_pos) >= 0.90 * static_cast<double>(normal_total));
    CHECK(static_cast<double>(anomaly_neg) >= 0.90 * static_cast<double>(anomaly_total));

    // Histogram bins conserve the class counts.
    const auto hist_lines = split_lines(slurp(dir / "histogram.csv"));
    REQUIRE(hist_lines.size() == 51);  // header + 50 bins
    CHECK(hist_lines[0] == "bin_lo,bin_hi,normal_count,anomaly_count");
    std::size_t normal_sum = 0, anomaly_sum = 0;
    for (std::size_t i = 1; i < hist_lines.size(); ++i) {
        const auto fields = hist_lines[i];
        const auto c3 = fields.rfind(',');
        const auto c2 = fields.rfind(',', c3 - 1);
        normal_sum += std::stoul(fields.substr(c2 + 1, c3 - c2 - 1));
        anomaly_sum += std::stoul(fields.substr(c3 + 1));
    }
    CHECK(normal_sum == 1000);
    CHECK(anomaly_sum == 50);

    const std::string boundary_svg = slurp(dir / "boundary.svg");
    CHECK(boundary_svg.rfind("<svg", 0) == 0);
    CHECK(boundary_svg.find("</svg>") != std::string::npos);
    const std::string hist_svg = slurp(dir / "histogram.svg");
    CHECK(hist_svg.rfind("<svg", 0) == 0);
    CHECK(hist_svg.find("</svg>") != std::string::npos);
}

TEST_CASE("export-boundary rejects bad inputs with the right exit classes") {
    const fs::path dir = scratch("boundary_errors");
    REQUIRE(run_cli("generate --set n_normal=60 --set n_anomaly=6 --out-dir " + dir.string()) == 0);
    const std::string data = (dir / "synthetic.csv").string();
    REQUIRE(run_cli("fit --set dataset=" + data + " --out-dir " + dir.string()) == 0);
    const std::string model = (dir / "model.ghm").string();

    // Non-2-D data is a data error.
    spit(dir / "dim3.csv", "f0,f1,f2,label\n1,2,3,0\n2,3,4,0\n9,9,9,1\n");
    CHECK(run_cli("export-boundary --set model=" + model +
                  " --set dataset=" + (dir / "dim3.csv").string() + " --out-dir " + dir.string()) ==
          3);
    CHECK(run_cli("export-boundary --set model=" + model + " --set dataset=" + data +
                  " --set grid_n=1 --out-dir " + dir.string()) == 2);

    // A KDE fit on an anomaly-free dataset stores no threshold, which the
    // boundary export needs.
    std::string all_normal = "f0,f1,label\n";
    for (int i = 0; i < 20; ++i)
        all_normal += std::to_string(0.1 * i) + "," + std::to_string(0.05 * i) + ",0\n";
    spit(dir / "normals.csv", all_normal);
    REQUIRE(run_cli("fit --set dataset=" + (dir / "normals.csv").string() +
                    " --set model.family=kde"
                    " --set model.kernel='{\"family\":\"epanechnikov\"}'"
                    " --set model_file=kde.ghm --out-dir " + dir.string()) == 0);
    CHECK(run_cli("export-boundary --set model=" + (dir / "kde.ghm").string() +
                  " --set dataset=" + data + " --out-dir " + dir.string()) == 3);
}

TEST_CASE("config plumbing: file, overrides, and seed flag compose") {
    const fs::path dir = scratch("config");
    spit(dir / "cfg.json", R"({"seed": 5, "n_normal": 200, "n_anomaly": 20})");

    // --set overrides the file; --seed overrides both.
    REQUIRE(run_cli("generate --config " + (dir / "cfg.json").string() +
                    " --set n_normal=120 --out-dir " + (dir / "a").string()) == 0);
    CHECK(split_lines(slurp(dir / "a" / "synthetic.csv")).size() == 141);  // header + 120 + 20

    REQUIRE(run_cli("generate --config " + (dir / "cfg.json").string() + " --seed 9 --out-dir " +
                    (dir / "b").string()) == 0);
    REQUIRE(run_cli("generate --set seed=9 --set n_normal=200 --set n_anomaly=20 --out-dir " +
                    (dir / "c").string()) == 0);
    CHECK(slurp(dir / "b" / "synthetic.csv") == slurp(dir / "c" / "synthetic.csv"));

    spit(dir / "bad.json", "{not json");
    CHECK(run_cli("generate --config " + (dir / "bad.json").string()) == 2);
    CHECK(run_cli("generate --set no_equals_sign") == 2);
    CHECK(run_cli("fit --set dataset=x.csv --set model.family=banana") == 2);
    CHECK(run_cli("benchmark --set models=no-such-preset") == 2);
    CHECK(run_cli("benchmark --set models='[]'") == 2);
    CHECK(run_cli("bogus-subcommand") == 2);
}

TEST_SUITE_END();
