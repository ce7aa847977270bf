#include "evac/metrics.hpp"

#include "evac/engine.hpp"

namespace evac {

double record_tick_uec(const WorldState& world) {
    double sum = 0.0;
    long occupied = 0;
    const int w = world.spec.width;
    const int h = world.spec.height;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (world.snapshot_occupancy.at(x, y) > 0) {
                sum += world.field.uec.at(x, y);
                ++occupied;
            }
        }
    }
    return occupied == 0 ? 0.0 : sum / static_cast<double>(occupied);
}

} // namespace evac
