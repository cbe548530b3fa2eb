#pragma once

#include <cstddef>
#include <vector>

#include "ghkad/matrix.hpp"

namespace ghkad::simd {

// Dimension-major copy of a point set: coordinate k of point i lives at
// dims[k][i], so the batch kernels stream contiguous memory per dimension.
struct PointBlock {
    std::size_t n = 0, d = 0;
    std::vector<std::vector<double>> dims;

    static PointBlock from_matrix(const Matrix& m);
};

enum class Path { Scalar, Avx2 };

// Selected once per process: AVX2+FMA when the CPU has both, overridable
// with GHKAD_SIMD=scalar|avx2 (requesting avx2 on hardware without it is an
// error, not a silent fallback).
Path active_path();
const char* path_name(Path p);

// out[i] = sum_k (dims[k][i + offset] - q[k])^2 for i in [0, count).
// Each element accumulates dimension-by-dimension with fused multiply-adds,
// so the scalar and AVX2 paths round identically bit for bit.
void squared_distances(const PointBlock& block, std::size_t offset, std::size_t count,
                       const double* q, double* out);

// out[i] = sum_k dims[k][i + offset] * q[k], same accumulation contract.
void dot_products(const PointBlock& block, std::size_t offset, std::size_t count,
                  const double* q, double* out);

// Per-path entry points, exposed for the equivalence tests.
void squared_distances_scalar(const PointBlock& block, std::size_t offset,
                              std::size_t count, const double* q, double* out);
void dot_products_scalar(const PointBlock& block, std::size_t offset, std::size_t count,
                         const double* q, double* out);
#ifdef GHKAD_HAVE_AVX2_TU
void squared_distances_avx2(const PointBlock& block, std::size_t offset,
                            std::size_t count, const double* q, double* out);
void dot_products_avx2(const PointBlock& block, std::size_t offset, std::size_t count,
                       const double* q, double* out);
#endif

}  // namespace ghkad::simd
