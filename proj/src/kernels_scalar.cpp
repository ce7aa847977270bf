#include "evac/kernels.hpp"

#include <cmath>
#include <vector>

namespace evac::kernels {

namespace {

// Separable two-pass box sum. The horizontal pass writes 3-tap row sums into
// a scratch buffer, the vertical pass adds up to three scratch rows. The AVX2
// variant mirrors this structure exactly.
void moore_sum_scalar(const std::int32_t* in, std::int32_t* out, int w, int h) {
    std::vector<std::int32_t> row(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const std::int32_t* src = in + static_cast<std::size_t>(y) * w;
        std::int32_t* dst = row.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            std::int32_t s = src[x];
            if (x > 0) s += src[x - 1];
            if (x + 1 < w) s += src[x + 1];
            dst[x] = s;
        }
    }
    for (int y = 0; y < h; ++y) {
        std::int32_t* dst = out + static_cast<std::size_t>(y) * w;
        const std::int32_t* mid = row.data() + static_cast<std::size_t>(y) * w;
        const std::int32_t* up = y + 1 < h ? mid + w : nullptr;
        const std::int32_t* dn = y > 0 ? mid - w : nullptr;
        for (int x = 0; x < w; ++x) {
            std::int32_t s = mid[x];
            if (dn) s += dn[x];
            if (up) s += up[x];
            dst[x] = s;
        }
    }
}

void gather_table_scalar(const std::int32_t* counts, int n,
                         const double* table, int table_len, double* out) {
    const std::int32_t last = table_len - 1;
    for (int i = 0; i < n; ++i) {
        std::int32_t idx = counts[i];
        if (idx > last) idx = last;
        out[i] = table[idx];
    }
}

void distance_field_scalar(int w, int h, int exit_x, int band_lo, int band_hi,
                           double* out) {
    const double diag = std::sqrt(static_cast<double>(w) * w +
                                  static_cast<double>(h) * h);
    for (int y = 0; y < h; ++y) {
        // Vertical offset to the nearest band row; zero inside the band.
        int dy = 0;
        if (y < band_lo) dy = band_lo - y;
        else if (y > band_hi) dy = y - band_hi;
        const double dy2 = static_cast<double>(dy) * dy;
        for (int x = 0; x < w; ++x) {
            const double dx = static_cast<double>(x - exit_x);
            const double d = std::sqrt(dx * dx + dy2);
            out[static_cast<std::size_t>(y) * w + x] = (diag - d) / diag;
        }
    }
}

} // namespace

const Kernels& scalar() {
    static const Kernels k{"scalar", &moore_sum_scalar, &gather_table_scalar,
                           &distance_field_scalar};
    return k;
}

} // namespace evac::kernels
