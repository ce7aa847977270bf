#include "evac/config.hpp"

#include <stdexcept>

namespace evac {

const char* to_string(MovingPattern p) {
    switch (p) {
        case MovingPattern::SR: return "SR";
        case MovingPattern::RF: return "RF";
        case MovingPattern::BneSr: return "BNE+SR";
        case MovingPattern::BneRf: return "BNE+RF";
    }
    return "?";
}

MovingPattern parse_pattern(const std::string& name) {
    if (name == "SR") return MovingPattern::SR;
    if (name == "RF") return MovingPattern::RF;
    if (name == "BNE+SR") return MovingPattern::BneSr;
    if (name == "BNE+RF") return MovingPattern::BneRf;
    throw std::invalid_argument("unknown moving pattern '" + name +
                                "' (expected SR, RF, BNE+SR or BNE+RF)");
}

void SimConfig::validate() const {
    if (number_persons < 1)
        throw std::invalid_argument("number_persons must be at least 1");
    if (pct_bne < 0.0 || pct_bne > 100.0)
        throw std::invalid_argument("pct_bne must lie in [0, 100]");
    if (probability_competing <= 0.0 || probability_competing >= 100.0)
        throw std::invalid_argument("probability_competing must lie in (0, 100)");
    if (door_width < 1)
        throw std::invalid_argument("door_width must be at least 1");
    if (move_speed <= 0.0)
        throw std::invalid_argument("move_speed must be positive");
    if (step_length <= 0.0 || step_length > 1.0)
        throw std::invalid_argument(
            "step_length must lie in (0, 1]: one tick of free walking may not "
            "span more than a patch");
    if (follow_radius <= 0.0)
        throw std::invalid_argument("follow_radius must be positive");
    if (weight_ud < 0.0)
        throw std::invalid_argument("weight_ud must be non-negative");
    if (max_ticks < 1)
        throw std::invalid_argument("max_ticks must be at least 1");
}

} // namespace evac
