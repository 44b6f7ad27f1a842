#ifndef MOMENTBOUNDS_BOUNDS_HPP
#define MOMENTBOUNDS_BOUNDS_HPP

#include <optional>
#include <string>

namespace momentbounds {

/// Optional lower / upper support limits.  Whichever is present constrains
/// the standardized moments of every distribution living inside.
struct SupportBounds {
    std::optional<double> x_min;
    std::optional<double> x_max;

    [[nodiscard]] bool two_sided() const { return x_min && x_max; }
    [[nodiscard]] bool any() const { return x_min || x_max; }
};

/**
 * Mean and standard deviation of a distribution together with its support
 * limits.  Construction validates that sigma > 0, x_min < x_max where both
 * are given, and that the mean lies strictly inside the support.
 */
struct BoundInput {
    double mean;
    double stddev;
    SupportBounds support;

    BoundInput(double mean, double stddev, SupportBounds support);
};

enum class BoundStatus { proven, conjectured };

[[nodiscard]] std::string to_string(BoundStatus status);

/**
 * The spread parameters a bound report was computed from.
 *
 * spread_min / spread_max are sigma / |mu - bound| toward the lower and
 * upper support limit.  delta1 <= delta2 are the normalized distances
 * |mu - bound| / |mu| (absent when mu == 0), delta0 is the one present in
 * the one-sided case, and delta_prime = sqrt(delta1 * delta2) is the
 * largest feasible coefficient of variation for two-sided support.
 */
struct DeltaParams {
    std::optional<double> spread_min;   // toward x_min
    std::optional<double> spread_max;   // toward x_max
    std::optional<double> delta0;
    std::optional<double> delta1;
    std::optional<double> delta2;
    std::optional<double> delta_prime;
};

struct MomentBoundReport {
    int order = 0;
    double lower = 0; // -infinity when unconstrained
    double upper = 0; // +infinity when unconstrained
    BoundStatus status = BoundStatus::proven;
    DeltaParams delta_params;

    [[nodiscard]] std::string to_json() const;
};

enum class Side { lower, upper };

/**
 * Relative spread of a distribution toward one support limit:
 * sigma / (mu - bound) for the lower side, sigma / (bound - mu) for the
 * upper side.  Throws MeanOutsideSupport unless the mean lies strictly on
 * the correct side of the bound.
 */
double relative_spread(double mean, double stddev, double bound, Side side);

/// Minimum kurtosis compatible with a given skewness: D_3^2 + 1.
double pearson_floor(double d3);

/**
 * Sharp skewness limits for a distribution with the given mean, sigma and
 * support.  With spread s toward a bound, a lower support limit forces
 * D_3 >= s - 1/s and an upper one forces D_3 <= 1/s - s; each limit is
 * attained by a two-point distribution with one point on the bound.
 * Missing sides give infinite limits.  Two-sided support must satisfy
 * spread_min * spread_max <= 1 (InfeasibleSpread otherwise).
 */
MomentBoundReport d3_limits(const BoundInput& input);

/**
 * Kurtosis limits.  One-sided support with spread s gives the proven floor
 * 1 for s <= 1 and (s - 1/s)^2 + 1 beyond, with no ceiling.  Two-sided
 * support takes the floor from the larger spread and adds the ceiling
 * (s - 1/s)^2 + 1 evaluated at the smaller spread; the ceiling rests on the
 * two-point extremal family being worst, so the report is downgraded to
 * conjectured.
 */
MomentBoundReport d4_limits(const BoundInput& input);

/**
 * Limits for orders 5 through 16, built from the two-point extremal family
 * via dn_of_z and therefore all reported as conjectured.  Odd n behaves
 * like d3 (floor from the lower spread, ceiling reflected from the upper
 * one); even n behaves like d4.
 */
MomentBoundReport dn_conjectured_limits(int n, const BoundInput& input);

/// Dispatches to d3_limits, d4_limits, or dn_conjectured_limits.
MomentBoundReport limits_for_order(int n, const BoundInput& input);

/**
 * Largest coefficient of variation any distribution with this mean can have
 * inside two-sided support: sqrt(delta1 * delta2) with the normalized
 * distances defined above.  Requires mean > 0 and both bounds.
 */
double feasibility_edge_cov(double mean, const SupportBounds& support);

} // namespace momentbounds

#endif
