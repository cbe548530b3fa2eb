#include "ghkad/simd.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ghkad/errors.hpp"

namespace ghkad::simd {

PointBlock PointBlock::from_matrix(const Matrix& m) {
    PointBlock b;
    b.n = m.rows;
    b.d = m.cols;
    b.dims.assign(m.cols, std::vector<double>(m.rows));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = 0; k < m.cols; ++k) b.dims[k][i] = m(i, k);
    return b;
}

namespace {

bool cpu_has_avx2_fma() {
#if defined(GHKAD_HAVE_AVX2_TU) && defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Path select_path() {
    if (const char* env = std::getenv("GHKAD_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Path::Scalar;
        if (v == "avx2") {
            if (!cpu_has_avx2_fma())
                throw config_error("GHKAD_SIMD=avx2 but the CPU lacks AVX2+FMA");
            return Path::Avx2;
        }
        throw config_error("GHKAD_SIMD must be 'scalar' or 'avx2', got '" + v + "'");
    }
    return cpu_has_avx2_fma() ? Path::Avx2 : Path::Scalar;
}

}  // namespace

Path active_path() {
    static const Path p = select_path();
    return p;
}

const char* path_name(Path p) { return p == Path::Avx2 ? "avx2" : "scalar"; }

void squared_distances(const PointBlock& block, std::size_t offset, std::size_t count,
                       const double* q, double* out) {
#ifdef GHKAD_HAVE_AVX2_TU
    if (active_path() == Path::Avx2)
        return squared_distances_avx2(block, offset, count, q, out);
#endif
    squared_distances_scalar(block, offset, count, q, out);
}

void dot_products(const PointBlock& block, std::size_t offset, std::size_t count,
                  const double* q, double* out) {
#ifdef GHKAD_HAVE_AVX2_TU
    if (active_path() == Path::Avx2) return dot_products_avx2(block, offset, count, q, out);
#endif
    dot_products_scalar(block, offset, count, q, out);
}

}  // namespace ghkad::simd
