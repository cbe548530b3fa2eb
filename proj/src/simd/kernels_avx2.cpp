// Compiled with -mavx2 -mfma; see src/CMakeLists.txt. Four points per
// iteration, dimension-by-dimension fused multiply-adds — the exact
// per-element operation sequence of the scalar path, so results match bit
// for bit. Remainders under four points reuse the scalar code.

#include <immintrin.h>

#include "ghkad/simd.hpp"

namespace ghkad::simd {

void squared_distances_avx2(const PointBlock& block, std::size_t offset,
                            std::size_t count, const double* q, double* out) {
    const std::size_t main = count - count % 4;
    for (std::size_t i = 0; i < main; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < block.d; ++k) {
            const __m256d p = _mm256_loadu_pd(block.dims[k].data() + offset + i);
            const __m256d diff = _mm256_sub_pd(p, _mm256_set1_pd(q[k]));
            acc = _mm256_fmadd_pd(diff, diff, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (main < count)
        squared_distances_scalar(block, offset + main, count - main, q, out + main);
}

void dot_products_avx2(const PointBlock& block, std::size_t offset, std::size_t count,
                       const double* q, double* out) {
    const std::size_t main = count - count % 4;
    for (std::size_t i = 0; i < main; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < block.d; ++k) {
            const __m256d p = _mm256_loadu_pd(block.dims[k].data() + offset + i);
            acc = _mm256_fmadd_pd(p, _mm256_set1_pd(q[k]), acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (main < count) dot_products_scalar(block, offset + main, count - main, q, out + main);
}

}  // namespace ghkad::simd
