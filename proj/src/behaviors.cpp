#include "evac/behaviors.hpp"

#include <algorithm>
#include <cmath>

namespace evac {

namespace {

int sgn(int v) { return (v > 0) - (v < 0); }

int chebyshev(Patch a, Patch b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

} // namespace

CandidateSet candidate_patches(const AgentState& agent, const GridSpec& spec) {
    const Patch p = patch_of(agent.pos);
    const int fwd = agent.exit_side == ExitSide::Right ? 1 : -1;
    const Patch raw[6] = {
        {p.x, p.y + 1},       {p.x + fwd, p.y + 1}, {p.x + fwd, p.y},
        {p.x + fwd, p.y - 1}, {p.x, p.y - 1},       {p.x, p.y},
    };
    CandidateSet set;
    for (const Patch& c : raw)
        if (spec.in_grid(c)) set.patches[set.count++] = c;
    return set;
}

Patch nearest_band_cell(const GridSpec& spec, Patch from, ExitSide side) {
    const int x = side == ExitSide::Left ? 0 : spec.width - 1;
    const int y = std::clamp(from.y, spec.band_lo(), spec.band_hi());
    return {x, y};
}

ExitSide choose_nearer_side(const GridSpec& spec, Vec2 pos, Rng& rng) {
    // The nearest band-cell center has the same y offset on both sides, so
    // the Euclidean comparison reduces to the x offsets.
    const double dl = pos.x - 0.5;
    const double dr = (spec.width - 0.5) - pos.x;
    if (dl < dr) return ExitSide::Left;
    if (dr < dl) return ExitSide::Right;
    return rng.bounded(2) == 0 ? ExitSide::Left : ExitSide::Right;
}

int competitor_count(const AgentState& agent, Patch candidate,
                     const PatchField& field) {
    int n = occupancy_moore(field, candidate);
    if (chebyshev(patch_of(agent.pos), candidate) <= 1) n -= 1;
    return n > 0 ? n : 0;
}

Patch sr_decide(const AgentState& agent, const GridSpec& spec) {
    const Patch p = patch_of(agent.pos);
    const Patch band = nearest_band_cell(spec, p, agent.exit_side);
    return {p.x + sgn(band.x - p.x), p.y + sgn(band.y - p.y)};
}

Patch bne_decide(const AgentState& agent, const PatchField& field,
                 const GridSpec& spec, const BnePredictionParams& params,
                 std::span<const double> uec_by_count, Rng& rng) {
    const CandidateSet set = candidate_patches(agent, spec);
    const Grid2D<double>& ud =
        agent.exit_side == ExitSide::Left ? field.ud_left : field.ud_right;
    const Patch self = patch_of(agent.pos);
    const int last = static_cast<int>(uec_by_count.size()) - 1;

    double best = -1.0;
    std::array<int, 6> ties{};
    int n_ties = 0;
    for (int i = 0; i < set.count; ++i) {
        const Patch c = set.patches[i];
        int n = field.moore_counts.at(c);
        if (chebyshev(self, c) <= 1) n -= 1;
        if (n < 0) n = 0;
        if (n > last) n = last;
        const double score =
            total_utility(ud.at(c), uec_by_count[static_cast<std::size_t>(n)], params);
        if (score > best) {
            best = score;
            ties[0] = i;
            n_ties = 1;
        } else if (score == best) {
            ties[n_ties++] = i;
        }
    }
    const int pick =
        n_ties == 1 ? ties[0]
                    : ties[static_cast<std::size_t>(rng.bounded(static_cast<std::uint64_t>(n_ties)))];
    return set.patches[pick];
}

void PositionIndex::build(std::span<const Entry> agents, const GridSpec& spec) {
    w_ = spec.width;
    h_ = spec.height;
    const std::size_t cells = static_cast<std::size_t>(w_) * h_;
    starts_.assign(cells + 1, 0);
    for (const Entry& e : agents) {
        const Patch p = patch_of(e.pos);
        starts_[static_cast<std::size_t>(p.y) * w_ + p.x + 1]++;
    }
    for (std::size_t i = 1; i <= cells; ++i) starts_[i] += starts_[i - 1];
    entries_.resize(agents.size());
    std::vector<std::size_t> cursor(starts_.begin(), starts_.end() - 1);
    for (const Entry& e : agents) {
        const Patch p = patch_of(e.pos);
        entries_[cursor[static_cast<std::size_t>(p.y) * w_ + p.x]++] = e;
    }
}

RfDecision rf_decide(const AgentState& agent, int self_index,
                     const PositionIndex& index,
                     std::span<const PositionIndex::Entry> snapshot,
                     const GridSpec& spec, double follow_radius, Rng& rng) {
    const Patch p = patch_of(agent.pos);
    const double r2 = follow_radius * follow_radius;
    const int reach = static_cast<int>(std::ceil(follow_radius));

    // Deterministic candidate ordering (row-major buckets) keeps the uniform
    // draw reproducible.
    std::array<int, 64> local{};
    std::vector<int> spill;
    int n = 0;
    index.for_each_near(p, reach, [&](const PositionIndex::Entry& e) {
        if (e.index == self_index || e.side != agent.exit_side) return;
        if (agent.exit_side == ExitSide::Right ? e.pos.x <= agent.pos.x
                                               : e.pos.x >= agent.pos.x)
            return;
        const double dx = e.pos.x - agent.pos.x;
        const double dy = e.pos.y - agent.pos.y;
        if (dx * dx + dy * dy > r2) return;
        if (n < static_cast<int>(local.size()))
            local[n] = e.index;
        else
            spill.push_back(e.index);
        ++n;
    });

    if (n == 0) return {sr_decide(agent, spec), -1};

    const int pick = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
    const int leader_index =
        pick < static_cast<int>(local.size()) ? local[pick]
                                              : spill[pick - local.size()];
    const Patch lp = patch_of(snapshot[static_cast<std::size_t>(leader_index)].pos);
    return {{p.x + sgn(lp.x - p.x), p.y + sgn(lp.y - p.y)}, leader_index};
}

} // namespace evac
