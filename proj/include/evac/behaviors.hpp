#pragma once

#include "evac/grid.hpp"
#include "evac/rng.hpp"
#include "evac/utilities.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace evac {

enum class ExitSide : std::uint8_t { Left, Right };
enum class Policy : std::uint8_t { SR, RF, BNE };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Patch patch_of(Vec2 pos) {
    return {static_cast<int>(pos.x), static_cast<int>(pos.y)};
}

inline Vec2 patch_center(Patch p) { return {p.x + 0.5, p.y + 0.5}; }

/// One evacuating pedestrian.
struct AgentState {
    int id = 0;
    Vec2 pos;
    Policy policy = Policy::SR;
    ExitSide exit_side = ExitSide::Left;
    double speed = 0.0; // m/s, refreshed every tick from local density
    int leader = -1;    // id of the agent last followed (RF only), -1 = none
};

/// The patches an equilibrium agent may move to this tick: its own patch plus
/// the up-to-5 Moore neighbors that do not lie in the rear half-plane
/// relative to its exit. Order is fixed (forward arc first, own patch last)
/// and clipping at walls only removes entries.
struct CandidateSet {
    std::array<Patch, 6> patches;
    int count = 0;
};

CandidateSet candidate_patches(const AgentState& agent, const GridSpec& spec);

/// The exit-band patch whose center is nearest to `from` on the given side.
Patch nearest_band_cell(const GridSpec& spec, Patch from, ExitSide side);

/// Nearer exit by Euclidean distance from a continuous position; exact
/// midline ties are broken by a coin flip.
ExitSide choose_nearer_side(const GridSpec& spec, Vec2 pos, Rng& rng);

/// Number of potential competitors an agent anticipates for a candidate
/// patch: the Moore occupancy of the candidate, excluding the agent itself
/// when its own patch lies inside that block.
int competitor_count(const AgentState& agent, Patch candidate,
                     const PatchField& field);

/// Shortest Route: one 8-direction step from the agent's patch along the
/// line to the nearest exit-band cell of its (fixed) side.
Patch sr_decide(const AgentState& agent, const GridSpec& spec);

/// Bayesian-equilibrium step: the candidate patch maximizing
/// weight_ud * ud + uec, with uec looked up in `uec_by_count` at the
/// self-excluded competitor count taken from field.moore_counts (the
/// tick-start snapshot). Exact score ties are broken uniformly via rng.
Patch bne_decide(const AgentState& agent, const PatchField& field,
                 const GridSpec& spec, const BnePredictionParams& params,
                 std::span<const double> uec_by_count, Rng& rng);

/// Frozen view of the agent population at the start of a tick, bucketed by
/// patch for radius queries. Bucket traversal order is row-major by patch and
/// insertion-ordered within a patch, so queries are deterministic.
class PositionIndex {
public:
    struct Entry {
        Vec2 pos;
        ExitSide side;
        int index; // position in the engine's live-agent array
    };

    void build(std::span<const Entry> agents, const GridSpec& spec);

    /// Visits every entry whose patch lies within Chebyshev distance
    /// `radius_cells` of `center`, clipped at walls.
    template <typename Fn>
    void for_each_near(Patch center, int radius_cells, Fn&& fn) const {
        const int x0 = center.x - radius_cells > 0 ? center.x - radius_cells : 0;
        const int x1 = center.x + radius_cells < w_ - 1 ? center.x + radius_cells : w_ - 1;
        const int y0 = center.y - radius_cells > 0 ? center.y - radius_cells : 0;
        const int y1 = center.y + radius_cells < h_ - 1 ? center.y + radius_cells : h_ - 1;
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const std::size_t cell = static_cast<std::size_t>(y) * w_ + x;
                for (std::size_t i = starts_[cell]; i < starts_[cell + 1]; ++i)
                    fn(entries_[i]);
            }
        }
    }

private:
    int w_ = 0;
    int h_ = 0;
    std::vector<std::size_t> starts_;
    std::vector<Entry> entries_;
};

struct RfDecision {
    Patch target;
    int leader_index = -1; // index into the snapshot array, -1 = SR fallback
};

/// Random Follow: pick, uniformly at random, one visible agent to trail for
/// this tick and step toward it; with nobody to follow, fall back to the
/// Shortest Route step. Visible means within follow_radius, sharing the
/// agent's exit side, and strictly nearer that exit. `snapshot` holds the
/// same entries the index was built from, ordered so that snapshot[i].index
/// == i.
RfDecision rf_decide(const AgentState& agent, int self_index,
                     const PositionIndex& index,
                     std::span<const PositionIndex::Entry> snapshot,
                     const GridSpec& spec, double follow_radius, Rng& rng);

} // namespace evac
