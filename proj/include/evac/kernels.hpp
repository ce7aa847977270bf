#pragma once

#include <cstdint>

namespace evac::kernels {

/// The per-tick grid sweeps, as interchangeable kernel sets. Each variant
/// must produce bit-identical output for the same input: the Moore sum is
/// integer arithmetic, the table gather copies doubles verbatim, and the
/// distance field uses only exactly-rounded operations (integer squares below
/// 2^53, min, IEEE sqrt, one subtract, one divide). Determinism of a run is
/// therefore independent of which variant the dispatcher picks.
struct Kernels {
    const char* name;

    /// Clipped 3x3 box sum: out[x,y] = sum of in over the Moore block of
    /// (x,y), dropping cells outside the w x h grid.
    void (*moore_sum)(const std::int32_t* in, std::int32_t* out, int w, int h);

    /// out[i] = table[min(counts[i], table_len - 1)]. The clamp is a guard;
    /// callers size the table to cover every reachable count.
    void (*gather_table)(const std::int32_t* counts, int n,
                         const double* table, int table_len, double* out);

    /// Distance-utility field for one exit: a vertical band of patches in
    /// column exit_x spanning rows [band_lo, band_hi]. For each patch,
    /// d = min Euclidean distance from its center to a band patch center and
    /// out[x,y] = (diag - d) / diag with diag = sqrt(w^2 + h^2).
    void (*distance_field)(int w, int h, int exit_x, int band_lo, int band_hi,
                           double* out);
};

/// Portable reference implementation.
const Kernels& scalar();

/// AVX2 implementation, or nullptr when unsupported (non-x86 build, or the
/// CPU lacks AVX2).
const Kernels* avx2();

/// The variant the engine uses: AVX2 when available, unless the environment
/// variable EVACSIM_KERNELS (values: auto, scalar, avx2) overrides. Resolved
/// once per process.
const Kernels& active();

} // namespace evac::kernels
