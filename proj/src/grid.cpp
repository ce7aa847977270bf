#include "evac/grid.hpp"

#include "evac/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace evac {

void GridSpec::validate() const {
    if (width < 3)
        throw std::invalid_argument("grid width must be at least 3 patches");
    if (door_width < 1 || height < door_width)
        throw std::invalid_argument("door width must satisfy 1 <= door_width <= height");
    if (patch_side <= 0.0)
        throw std::invalid_argument("patch side must be positive");
}

double GridSpec::diagonal() const {
    return std::sqrt(static_cast<double>(width) * width +
                     static_cast<double>(height) * height);
}

void build_distance_fields(const GridSpec& spec, PatchField& field) {
    const auto& k = kernels::active();
    k.distance_field(spec.width, spec.height, 0, spec.band_lo(), spec.band_hi(),
                     field.ud_left.data());
    k.distance_field(spec.width, spec.height, spec.width - 1, spec.band_lo(),
                     spec.band_hi(), field.ud_right.data());
}

std::int32_t occupancy_moore(const PatchField& field, Patch p) {
    const int w = field.occupancy.width();
    const int h = field.occupancy.height();
    if (p.x < 0 || p.x >= w || p.y < 0 || p.y >= h)
        throw std::out_of_range("occupancy_moore: patch outside grid");
    std::int32_t sum = 0;
    const int y0 = p.y > 0 ? p.y - 1 : 0;
    const int y1 = p.y + 1 < h ? p.y + 1 : h - 1;
    const int x0 = p.x > 0 ? p.x - 1 : 0;
    const int x1 = p.x + 1 < w ? p.x + 1 : w - 1;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) sum += field.occupancy.at(x, y);
    return sum;
}

bool is_exit(const GridSpec& spec, Patch p) {
    if (p.y < spec.band_lo() || p.y > spec.band_hi()) return false;
    return p.x == 0 || p.x == spec.width - 1;
}

} // namespace evac
