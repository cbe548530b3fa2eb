#pragma once

#include <stdexcept>
#include <string>

namespace ghkad {

// Adaptive quadrature or an iterative solver failed to reach its tolerance.
struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed run configuration (bad flag value, invalid parameter combination).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data problem: parse failure, empty class, dimension mismatch on load.
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failure distinct from malformed content.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ghkad
