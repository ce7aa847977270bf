// AVX2 variants of the grid kernels. Compiled with -mavx2 (and without
// -mfma: the scalar reference cannot fuse multiply-add, so this unit must not
// either, or the distance fields would differ in the last ulp).

#include "evac/kernels.hpp"

#include <cmath>
#include <immintrin.h>
#include <vector>

namespace evac::kernels {

namespace {

// Horizontal 3-tap pass with unaligned loads shifted by one element; the two
// edge columns fall out of the vector loop and are done directly.
void hpass_avx2(const std::int32_t* src, std::int32_t* dst, int w) {
    dst[0] = src[0] + (w > 1 ? src[1] : 0);
    int x = 1;
    for (; x + 8 <= w - 1; x += 8) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + x - 1));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + x));
        const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + x + 1));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + x),
                            _mm256_add_epi32(_mm256_add_epi32(a, b), c));
    }
    for (; x < w - 1; ++x) dst[x] = src[x - 1] + src[x] + src[x + 1];
    if (w > 1) dst[w - 1] = src[w - 2] + src[w - 1];
}

void moore_sum_avx2(const std::int32_t* in, std::int32_t* out, int w, int h) {
    std::vector<std::int32_t> row(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        hpass_avx2(in + static_cast<std::size_t>(y) * w,
                   row.data() + static_cast<std::size_t>(y) * w, w);

    for (int y = 0; y < h; ++y) {
        std::int32_t* dst = out + static_cast<std::size_t>(y) * w;
        const std::int32_t* mid = row.data() + static_cast<std::size_t>(y) * w;
        const std::int32_t* up = y + 1 < h ? mid + w : nullptr;
        const std::int32_t* dn = y > 0 ? mid - w : nullptr;
        int x = 0;
        for (; x + 8 <= w; x += 8) {
            __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mid + x));
            if (dn)
                s = _mm256_add_epi32(s, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dn + x)));
            if (up)
                s = _mm256_add_epi32(s, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(up + x)));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + x), s);
        }
        for (; x < w; ++x) {
            std::int32_t s = mid[x];
            if (dn) s += dn[x];
            if (up) s += up[x];
            dst[x] = s;
        }
    }
}

void gather_table_avx2(const std::int32_t* counts, int n,
                       const double* table, int table_len, double* out) {
    const __m128i last = _mm_set1_epi32(table_len - 1);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(counts + i));
        idx = _mm_min_epi32(idx, last);
        const __m256d v = _mm256_i32gather_pd(table, idx, 8);
        _mm256_storeu_pd(out + i, v);
    }
    const std::int32_t last_s = table_len - 1;
    for (; i < n; ++i) {
        std::int32_t idx = counts[i];
        if (idx > last_s) idx = last_s;
        out[i] = table[idx];
    }
}

void distance_field_avx2(int w, int h, int exit_x, int band_lo, int band_hi,
                         double* out) {
    const double diag = std::sqrt(static_cast<double>(w) * w +
                                  static_cast<double>(h) * h);
    const __m256d vdiag = _mm256_set1_pd(diag);
    const __m256d ramp = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    for (int y = 0; y < h; ++y) {
        int dy = 0;
        if (y < band_lo) dy = band_lo - y;
        else if (y > band_hi) dy = y - band_hi;
        const double dy2 = static_cast<double>(dy) * dy;
        const __m256d vdy2 = _mm256_set1_pd(dy2);
        double* dst = out + static_cast<std::size_t>(y) * w;
        int x = 0;
        for (; x + 4 <= w; x += 4) {
            const __m256d dx = _mm256_add_pd(
                _mm256_set1_pd(static_cast<double>(x - exit_x)), ramp);
            const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), vdy2);
            const __m256d d = _mm256_sqrt_pd(d2);
            _mm256_storeu_pd(dst + x,
                             _mm256_div_pd(_mm256_sub_pd(vdiag, d), vdiag));
        }
        for (; x < w; ++x) {
            const double dx = static_cast<double>(x - exit_x);
            const double d = std::sqrt(dx * dx + dy2);
            dst[x] = (diag - d) / diag;
        }
    }
}

const Kernels avx2_table{"avx2", &moore_sum_avx2, &gather_table_avx2,
                         &distance_field_avx2};

} // namespace

const Kernels& avx2_impl() { return avx2_table; }

} // namespace evac::kernels
