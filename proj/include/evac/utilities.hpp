#pragma once

#include <cstdint>
#include <vector>

namespace evac {

/// Parameters of the congestion-prediction rule used by equilibrium agents.
struct BnePredictionParams {
    /// Probability that one nearby agent enters a given candidate patch next
    /// tick. One of six directions, hence the default.
    double p_m = 1.0 / 6.0;
    /// Coefficient balancing distance utility against expected comfort
    /// utility in the total score.
    double weight_ud = 1.0;
};

/// Distance utility of a patch at distance d from the exit, where diag is the
/// diagonal of the evacuation space: (diag - d) / diag. 1 on the exit itself,
/// falling linearly to 0 at the far end of the longest possible path.
double distance_utility(double d, double diag);

/// Comfort utility of a patch holding n occupants. A fixed table: full
/// comfort up to 2 occupants, 0.51 at 3, 0.07 at 4, zero from 5 on.
double comfort_utility(int n);

/// Expected comfort utility of a patch for which `competitors` nearby agents
/// may each independently enter with probability params.p_m: the binomial
/// expectation of comfort_utility over the entrant count. Terms beyond 4
/// entrants vanish because the comfort table is zero there.
///
/// Exactly 1 for competitors <= 2 (every reachable occupancy is fully
/// comfortable), strictly decreasing afterwards. Accepts counts up to 10000.
double expected_comfort(int competitors, const BnePredictionParams& params);

/// expected_comfort for every count 0..max_count inclusive, as a lookup
/// table. The per-tick field refresh and the per-agent scoring both index
/// this table instead of re-deriving binomial sums.
std::vector<double> expected_comfort_table(int max_count,
                                           const BnePredictionParams& params);

/// Total utility score of a candidate patch.
double total_utility(double ud, double uec, const BnePredictionParams& params);

/// Walking speed under local crowding. rho is the pedestrian density in
/// person/m^2; the piecewise base curve (free 1.4 m/s up to 4/m^2, a
/// quadratic taper between 4 and 8, a 0.1 m/s crawl from 8 up) is rescaled so
/// that the configured free speed replaces 1.4 m/s. The printed branch
/// constants do not meet continuously at rho = 4 and rho = 8; they are
/// evaluated as printed.
double speed_from_density(double rho, double move_speed);

} // namespace evac
