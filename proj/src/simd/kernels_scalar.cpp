#include <cmath>

#include "ghkad/simd.hpp"

namespace ghkad::simd {

void squared_distances_scalar(const PointBlock& block, std::size_t offset,
                              std::size_t count, const double* q, double* out) {
    for (std::size_t i = 0; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < block.d; ++k) {
            const double diff = block.dims[k][offset + i] - q[k];
            acc = std::fma(diff, diff, acc);
        }
        out[i] = acc;
    }
}

void dot_products_scalar(const PointBlock& block, std::size_t offset, std::size_t count,
                         const double* q, double* out) {
    for (std::size_t i = 0; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < block.d; ++k)
            acc = std::fma(block.dims[k][offset + i], q[k], acc);
        out[i] = acc;
    }
}

}  // namespace ghkad::simd
