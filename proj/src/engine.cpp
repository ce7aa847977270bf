#include "evac/engine.hpp"

#include "evac/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace evac {

void refresh_expected_comfort(WorldState& world) {
    const int w = world.spec.width;
    const int h = world.spec.height;
    world.snapshot_occupancy = world.field.occupancy;
    const kernels::Kernels& k = kernels::active();
    k.moore_sum(world.snapshot_occupancy.data(), world.field.moore_counts.data(), w, h);
    k.gather_table(world.field.moore_counts.data(), w * h,
                   world.uec_by_count.data(),
                   static_cast<int>(world.uec_by_count.size()),
                   world.field.uec.data());
}

WorldState initialize(const SimConfig& config, const GridSpec& spec) {
    config.validate();
    spec.validate();

    WorldState world(spec, config);
    build_distance_fields(spec, world.field);
    world.uec_by_count =
        expected_comfort_table(config.number_persons, config.prediction_params());

    std::vector<Patch> free_patches;
    free_patches.reserve(static_cast<std::size_t>(spec.width) * spec.height);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x)
            if (!is_exit(spec, {x, y})) free_patches.push_back({x, y});

    const int n = config.number_persons;
    world.agents.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        AgentState& a = world.agents[static_cast<std::size_t>(i)];
        a.id = i;
        const Patch p = free_patches[static_cast<std::size_t>(
            world.rng.bounded(free_patches.size()))];
        a.pos = {p.x + world.rng.uniform01(), p.y + world.rng.uniform01()};
        world.field.occupancy.at(p) += 1;
    }

    switch (config.moving_pattern) {
        case MovingPattern::SR:
            for (AgentState& a : world.agents) a.policy = Policy::SR;
            break;
        case MovingPattern::RF:
            for (AgentState& a : world.agents) a.policy = Policy::RF;
            break;
        case MovingPattern::BneSr:
        case MovingPattern::BneRf: {
            const Policy rest = config.moving_pattern == MovingPattern::BneSr
                                    ? Policy::SR
                                    : Policy::RF;
            const long k = std::lround(config.pct_bne * n / 100.0);
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            world.rng.shuffle(order);
            for (int i = 0; i < n; ++i)
                world.agents[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]
                    .policy = i < k ? Policy::BNE : rest;
            break;
        }
    }

    for (AgentState& a : world.agents)
        a.exit_side = choose_nearer_side(spec, a.pos, world.rng);

    for (AgentState& a : world.agents) {
        const double rho = occupancy_moore(world.field, patch_of(a.pos)) / 9.0;
        a.speed = speed_from_density(rho, config.move_speed);
    }

    refresh_expected_comfort(world);
    return world;
}

WorldState initialize(const SimConfig& config) {
    GridSpec spec;
    spec.door_width = config.door_width;
    return initialize(config, spec);
}

void advance_tick(WorldState& world) {
    if (world.agents.empty())
        throw std::logic_error("advance_tick: run already complete");

    const GridSpec& spec = world.spec;
    const SimConfig& config = world.config;

    refresh_expected_comfort(world);
    world.uec_acc.add_sample(record_tick_uec(world));

    // Frozen position snapshot for the follow policy.
    const bool has_rf = config.moving_pattern == MovingPattern::RF ||
                        config.moving_pattern == MovingPattern::BneRf;
    std::vector<PositionIndex::Entry> snap;
    PositionIndex index;
    if (has_rf) {
        snap.reserve(world.agents.size());
        for (std::size_t i = 0; i < world.agents.size(); ++i)
            snap.push_back({world.agents[i].pos, world.agents[i].exit_side,
                            static_cast<int>(i)});
        index.build(snap, spec);
    }

    std::vector<int> order(world.agents.size());
    std::iota(order.begin(), order.end(), 0);
    world.rng.shuffle(order);

    const double dt = config.tick_seconds();
    const BnePredictionParams params = config.prediction_params();

    for (const int i : order) {
        AgentState& a = world.agents[static_cast<std::size_t>(i)];
        const Patch cur = patch_of(a.pos);

        // Speed responds to the live local crowding (Moore count over the
        // 9 m^2 block), not the snapshot.
        const double rho = occupancy_moore(world.field, cur) / 9.0;
        a.speed = speed_from_density(rho, config.move_speed);

        Patch target = cur;
        switch (a.policy) {
            case Policy::SR:
                target = sr_decide(a, spec);
                break;
            case Policy::RF: {
                const RfDecision d = rf_decide(a, i, index, snap, spec,
                                               config.follow_radius, world.rng);
                a.leader = d.leader_index >= 0
                               ? world.agents[static_cast<std::size_t>(d.leader_index)].id
                               : -1;
                target = d.target;
                break;
            }
            case Policy::BNE:
                target = bne_decide(a, world.field, spec, params,
                                    world.uec_by_count, world.rng);
                break;
        }

        // A free-speed agent covers speed*dt every tick. The own-patch target
        // is the one case that caps at the center: it means "hold position",
        // and an uncapped step would oscillate around the center forever. Any
        // other target is a waypoint the agent may pass through mid-tick
        // (validate() keeps step_length within one patch, which bounds the
        // overshoot inside the grid).
        const Vec2 c = patch_center(target);
        const double dx = c.x - a.pos.x;
        const double dy = c.y - a.pos.y;
        const double dist = std::sqrt(dx * dx + dy * dy);
        if (dist > 0.0) {
            const double step = a.speed * dt;
            const bool hold = target == cur;
            const double f = hold && step >= dist ? 1.0 : step / dist;
            a.pos.x += dx * f;
            a.pos.y += dy * f;
            a.pos.x = std::clamp(a.pos.x, 0.0, spec.width - 1e-9);
            a.pos.y = std::clamp(a.pos.y, 0.0, spec.height - 1e-9);
        }

        const Patch now = patch_of(a.pos);
        if (!(now == cur)) {
            world.field.occupancy.at(cur) -= 1;
            world.field.occupancy.at(now) += 1;
        }
    }

    long removed = std::erase_if(world.agents, [&](const AgentState& a) {
        const Patch p = patch_of(a.pos);
        if (!is_exit(spec, p)) return false;
        world.field.occupancy.at(p) -= 1;
        return true;
    });
    world.evacuated += static_cast<int>(removed);
    world.tick += 1;
}

RunRecord run_to_completion(const SimConfig& config) {
    WorldState world = initialize(config);
    while (!world.agents.empty() && world.tick < config.max_ticks)
        advance_tick(world);

    RunRecord rec;
    rec.evac_ticks = world.tick;
    rec.evac_seconds = static_cast<double>(world.tick) * config.tick_seconds();
    rec.mean_uec = world.uec_acc.run_mean();
    rec.stalled = !world.agents.empty();
    rec.seed = config.seed;
    rec.config = config;
    return rec;
}

std::string snapshot(const WorldState& world) {
    std::ostringstream out;
    out << "tick " << world.tick << '\n';
    for (int y = world.spec.height - 1; y >= 0; --y) {
        for (int x = 0; x < world.spec.width; ++x) {
            if (x > 0) out << ' ';
            out << world.field.occupancy.at(x, y);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace evac
