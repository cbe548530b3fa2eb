#include "ghkad/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ghkad/errors.hpp"
#include "json.hpp"

namespace ghkad {

namespace {

using nlohmann::json;

constexpr const char* kTagOcsvm = "ghkad-model v1 ocsvm";
constexpr const char* kTagKde = "ghkad-model v1 kde";

json variant_to_json(const GHVariant& v) {
    json j;
    switch (v.tag()) {
        case GHTag::FullGH: {
            const GHParams& p = v.gh();
            j = {{"kind", "full_gh"}, {"lambda", p.lambda}, {"alpha", p.alpha},
                 {"beta", p.beta},    {"delta", p.delta},   {"mu", p.mu}};
            break;
        }
        case GHTag::NIG: {
            const GHParams& p = v.gh();
            j = {{"kind", "nig"}, {"alpha", p.alpha}, {"beta", p.beta},
                 {"delta", p.delta}, {"mu", p.mu}};
            break;
        }
        case GHTag::Hyperbolic: {
            const GHParams& p = v.gh();
            j = {{"kind", "hyperbolic"}, {"alpha", p.alpha}, {"beta", p.beta},
                 {"delta", p.delta}, {"mu", p.mu}};
            break;
        }
        case GHTag::GaussianReduction: {
            const GaussianParams& p = v.gaussian_params();
            j = {{"kind", "gaussian"}, {"sigma", p.sigma}, {"mu", p.mu}};
            break;
        }
        case GHTag::StudentT: {
            const StudentTParams& p = v.student_params();
            j = {{"kind", "student_t"}, {"df", p.degrees}, {"mu", p.location},
                 {"sigma", p.scale}};
            break;
        }
    }
    return j;
}

GHVariant variant_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "full_gh")
        return GHVariant::full_gh(GHParams(j.at("lambda").get<double>(),
                                           j.at("alpha").get<double>(),
                                           j.at("beta").get<double>(),
                                           j.at("delta").get<double>(),
                                           j.at("mu").get<double>()));
    if (kind == "nig")
        return GHVariant::nig(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                              j.at("delta").get<double>(), j.at("mu").get<double>());
    if (kind == "hyperbolic")
        return GHVariant::hyperbolic(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                                     j.at("delta").get<double>(), j.at("mu").get<double>());
    if (kind == "gaussian")
        return GHVariant::gaussian(j.at("sigma").get<double>(), j.at("mu").get<double>());
    if (kind == "student_t")
        return GHVariant::student_t(j.at("df").get<double>(), j.at("mu").get<double>(),
                                    j.at("sigma").get<double>());
    throw data_error("unknown GH variant kind '" + kind + "'");
}

json spec_to_json_obj(const KernelSpec& spec) {
    switch (spec.family) {
        case KernelFamily::RBF: return {{"family", "rbf"}, {"gamma", spec.gamma_rbf}};
        case KernelFamily::Linear: return {{"family", "linear"}};
        case KernelFamily::Polynomial:
            return {{"family", "polynomial"}, {"degree", spec.degree},
                    {"scale", spec.scale}, {"coef0", spec.coef0}};
        case KernelFamily::Sigmoid:
            return {{"family", "sigmoid"}, {"scale", spec.scale}, {"coef0", spec.coef0}};
        case KernelFamily::GH:
            return {{"family", "gh"}, {"lengthscale", spec.lengthscale},
                    {"variant", variant_to_json(*spec.variant)}};
        case KernelFamily::GaussianProfile: return {{"family", "gaussian_profile"}};
        case KernelFamily::Epanechnikov: return {{"family", "epanechnikov"}};
        case KernelFamily::Tophat: return {{"family", "tophat"}};
        case KernelFamily::Exponential: return {{"family", "exponential"}};
    }
    throw std::logic_error("unhandled kernel family");
}

KernelSpec spec_from_json_obj(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "rbf") return KernelSpec::rbf(j.at("gamma").get<double>());
    if (family == "linear") return KernelSpec::linear();
    if (family == "polynomial")
        return KernelSpec::polynomial(j.at("degree").get<int>(), j.at("scale").get<double>(),
                                      j.at("coef0").get<double>());
    if (family == "sigmoid")
        return KernelSpec::sigmoid(j.at("scale").get<double>(), j.at("coef0").get<double>());
    if (family == "gh")
        return KernelSpec::gh(variant_from_json(j.at("variant")),
                              j.at("lengthscale").get<double>());
    if (family == "gaussian_profile") return KernelSpec::profile(KernelFamily::GaussianProfile);
    if (family == "epanechnikov") return KernelSpec::profile(KernelFamily::Epanechnikov);
    if (family == "tophat") return KernelSpec::profile(KernelFamily::Tophat);
    if (family == "exponential") return KernelSpec::profile(KernelFamily::Exponential);
    throw data_error("unknown kernel family '" + family + "'");
}

json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.rows * m.cols)
        throw data_error("matrix data length does not match its shape");
    m.data = data;
    return m;
}

void write_tagged(const std::string& path, const char* tag, const json& body) {
    write_file_atomic(path, std::string(tag) + "\n" + body.dump(2) + "\n");
}

// Splits the tag line off and parses the rest, mapping parse problems to
// data errors that name the file.
json read_tagged(const std::string& path, const char* expected_tag) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::string tag;
    std::getline(in, tag);
    if (!tag.empty() && tag.back() == '\r') tag.pop_back();
    if (tag != expected_tag)
        throw data_error(path + ": expected format tag '" + std::string(expected_tag) +
                         "', found '" + tag + "'");
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw data_error(path + ": malformed model body: " + e.what());
    }
}

}  // namespace

std::string kernel_spec_to_json(const KernelSpec& spec) {
    return spec_to_json_obj(spec).dump();
}

KernelSpec kernel_spec_from_json(const std::string& json_text) {
    try {
        return spec_from_json_obj(json::parse(json_text));
    } catch (const json::exception& e) {
        throw data_error(std::string("malformed kernel spec: ") + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw io_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw io_error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

void save_model(const OcsvmModel& model, const std::string& path) {
    const OcsvmDiagnostics& d = model.diagnostics();
    const json body = {
        {"kernel", spec_to_json_obj(model.kernel_spec())},
        {"train_points", matrix_to_json(model.train_points())},
        {"alphas", model.alphas()},
        {"rho", model.rho()},
        {"support_tol", model.support_tol()},
        {"diagnostics",
         {{"iterations", d.iterations},
          {"kkt_violation", d.kkt_violation},
          {"converged", d.converged},
          {"ridge_repaired", d.ridge_repaired},
          {"rho_median_fallback", d.rho_median_fallback}}},
    };
    write_tagged(path, kTagOcsvm, body);
}

void save_model(const KdeModel& model, const std::string& path) {
    json body = {
        {"kernel", spec_to_json_obj(model.spec())},
        {"train_points", matrix_to_json(model.train_points())},
        {"h", model.bandwidth()},
    };
    if (model.threshold()) body["threshold"] = *model.threshold();
    write_tagged(path, kTagKde, body);
}

ModelKind peek_model_kind(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::string tag;
    std::getline(in, tag);
    if (!tag.empty() && tag.back() == '\r') tag.pop_back();
    if (tag == kTagOcsvm) return ModelKind::Ocsvm;
    if (tag == kTagKde) return ModelKind::Kde;
    throw data_error(path + ": not a recognized model file (tag '" + tag + "')");
}

OcsvmModel load_ocsvm(const std::string& path) {
    const json j = read_tagged(path, kTagOcsvm);
    try {
        const KernelSpec spec = spec_from_json_obj(j.at("kernel"));
        Matrix points = matrix_from_json(j.at("train_points"));
        auto alphas = j.at("alphas").get<std::vector<double>>();
        const auto& jd = j.at("diagnostics");
        OcsvmDiagnostics diag;
        diag.iterations = jd.at("iterations").get<std::size_t>();
        diag.kkt_violation = jd.at("kkt_violation").get<double>();
        diag.converged = jd.at("converged").get<bool>();
        diag.ridge_repaired = jd.at("ridge_repaired").get<bool>();
        diag.rho_median_fallback = jd.at("rho_median_fallback").get<bool>();
        return OcsvmModel(CompiledKernel(spec), std::move(points), std::move(alphas),
                          j.at("rho").get<double>(), j.at("support_tol").get<double>(),
                          std::move(diag));
    } catch (const json::exception& e) {
        throw data_error(path + ": malformed ocsvm model: " + e.what());
    }
}

KdeModel load_kde(const std::string& path) {
    const json j = read_tagged(path, kTagKde);
    try {
        const KernelSpec spec = spec_from_json_obj(j.at("kernel"));
        Matrix points = matrix_from_json(j.at("train_points"));
        std::optional<double> threshold;
        if (j.contains("threshold")) threshold = j.at("threshold").get<double>();
        return KdeModel(CompiledKernel(spec), std::move(points), j.at("h").get<double>(),
                        threshold);
    } catch (const json::exception& e) {
        throw data_error(path + ": malformed kde model: " + e.what());
    }
}

}  // namespace ghkad
