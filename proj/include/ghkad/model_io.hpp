#pragma once

#include <string>

#include "ghkad/kde.hpp"
#include "ghkad/kernels.hpp"
#include "ghkad/ocsvm.hpp"

namespace ghkad {

enum class ModelKind { Ocsvm, Kde };

// Model files carry a one-line format tag ("ghkad-model v1 ocsvm" or
// "ghkad-model v1 kde") followed by a JSON document. Doubles use shortest
// round-trip encoding, so a reloaded model scores bit-identically; GH kernel
// tables are rebuilt from the spec on load (deterministic, costs the same
// quadrature as the original fit).
void save_model(const OcsvmModel& model, const std::string& path);
void save_model(const KdeModel& model, const std::string& path);

// Reads just the tag line; wrong tag or version is a data error.
ModelKind peek_model_kind(const std::string& path);

OcsvmModel load_ocsvm(const std::string& path);
KdeModel load_kde(const std::string& path);

// KernelSpec as a JSON text fragment; shared by model files and run configs.
std::string kernel_spec_to_json(const KernelSpec& spec);
KernelSpec kernel_spec_from_json(const std::string& json_text);

// Writes to a temporary in the target directory, then renames into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ghkad
