#include "evac/utilities.hpp"

#include <cassert>
#include <stdexcept>

namespace evac {

double distance_utility(double d, double diag) {
    assert(diag > 0.0);
    return (diag - d) / diag;
}

double comfort_utility(int n) {
    assert(n >= 0);
    if (n <= 2) return 1.0;
    if (n == 3) return 0.51;
    if (n == 4) return 0.07;
    return 0.0;
}

double expected_comfort(int competitors, const BnePredictionParams& params) {
    if (competitors < 0 || competitors > 10000)
        throw std::invalid_argument("expected_comfort: competitor count out of range");
    if (params.p_m <= 0.0 || params.p_m >= 1.0)
        throw std::invalid_argument("expected_comfort: p_m must lie in (0,1)");

    // With at most 2 potential entrants every outcome has comfort 1 and the
    // entrant probabilities sum to 1, so the expectation is exactly 1.
    if (competitors <= 2) return 1.0;
    const int n_max = competitors < 4 ? competitors : 4;

    const double p = params.p_m;
    const double q = 1.0 - p;

    // Binomial pmf by a multiplicative running product:
    // P(0) = q^N, P(n+1) = P(n) * (N-n)/(n+1) * p/q.
    double prob = 1.0;
    for (int i = 0; i < competitors; ++i) prob *= q;

    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        sum += prob * comfort_utility(n);
        prob *= static_cast<double>(competitors - n) / static_cast<double>(n + 1) * (p / q);
    }
    return sum;
}

std::vector<double> expected_comfort_table(int max_count,
                                           const BnePredictionParams& params) {
    std::vector<double> table(static_cast<std::size_t>(max_count) + 1);
    for (int n = 0; n <= max_count; ++n)
        table[static_cast<std::size_t>(n)] = expected_comfort(n, params);
    return table;
}

double total_utility(double ud, double uec, const BnePredictionParams& params) {
    return params.weight_ud * ud + uec;
}

double speed_from_density(double rho, double move_speed) {
    if (rho < 0.0)
        throw std::invalid_argument("speed_from_density: negative density");
    assert(move_speed > 0.0);

    double base;
    if (rho <= 4.0)
        base = 1.4;
    else if (rho < 8.0)
        base = 0.03 * rho * rho - 0.64 * rho + 3.36;
    else
        base = 0.1;
    return base * (move_speed / 1.4);
}

} // namespace evac
