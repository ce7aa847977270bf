#pragma once

#include <cstdint>
#include <vector>

namespace evac {

/// Integer patch coordinate. x grows toward the right exit, y upward.
struct Patch {
    int x = 0;
    int y = 0;
    friend bool operator==(const Patch& a, const Patch& b) {
        return a.x == b.x && a.y == b.y;
    }
};

/// Row-major 2D array over the patch grid.
template <typename T>
class Grid2D {
public:
    Grid2D() = default;
    Grid2D(int w, int h, T fill = T{})
        : w_(w), h_(h), cells_(static_cast<std::size_t>(w) * h, fill) {}

    T& at(int x, int y) { return cells_[static_cast<std::size_t>(y) * w_ + x]; }
    const T& at(int x, int y) const {
        return cells_[static_cast<std::size_t>(y) * w_ + x];
    }
    T& at(Patch p) { return at(p.x, p.y); }
    const T& at(Patch p) const { return at(p.x, p.y); }

    T* data() { return cells_.data(); }
    const T* data() const { return cells_.data(); }
    int width() const { return w_; }
    int height() const { return h_; }
    std::size_t size() const { return cells_.size(); }
    void fill(T v) { cells_.assign(cells_.size(), v); }

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<T> cells_;
};

/// Geometry of the evacuation space: a bounded rectangle of 1 m patches with
/// one exit band on each side wall, vertically centered.
struct GridSpec {
    int width = 68;       // patches
    int height = 20;      // patches
    int door_width = 6;   // patches per exit band
    double patch_side = 1.0; // meters

    void validate() const; // throws std::invalid_argument on a bad geometry

    int band_lo() const { return (height - door_width) / 2; }
    int band_hi() const { return band_lo() + door_width - 1; }
    double diagonal() const;

    bool in_grid(Patch p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    }
};

/// Per-patch fields. The distance utilities are static once built; the
/// occupancy, its Moore sums and the expected-comfort field are refreshed by
/// the engine every tick.
struct PatchField {
    Grid2D<double> ud_left;
    Grid2D<double> ud_right;
    Grid2D<double> uec;
    Grid2D<std::int32_t> occupancy;
    Grid2D<std::int32_t> moore_counts; // Moore sums of the tick-start snapshot

    explicit PatchField(const GridSpec& spec)
        : ud_left(spec.width, spec.height),
          ud_right(spec.width, spec.height),
          uec(spec.width, spec.height, 1.0),
          occupancy(spec.width, spec.height, 0),
          moore_counts(spec.width, spec.height, 0) {}
};

/// Populates both static distance-utility fields: ud = (D - d) / D with d the
/// Euclidean distance from the patch center to the nearest patch center of
/// that side's exit band and D the diagonal of the space. 1.0 on the band
/// itself, strictly below 1 elsewhere, mirror-symmetric between the sides.
void build_distance_fields(const GridSpec& spec, PatchField& field);

/// Number of agents on the <= 9 in-grid cells of the 3x3 block around p.
/// Throws std::out_of_range for a patch outside the grid.
std::int32_t occupancy_moore(const PatchField& field, Patch p);

/// True iff p lies in the left or right exit band.
bool is_exit(const GridSpec& spec, Patch p);

} // namespace evac
