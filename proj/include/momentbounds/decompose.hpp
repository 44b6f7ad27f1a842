#ifndef MOMENTBOUNDS_DECOMPOSE_HPP
#define MOMENTBOUNDS_DECOMPOSE_HPP

#include "momentbounds/bidisperse.hpp"
#include "momentbounds/distribution.hpp"

#include <string>
#include <variant>
#include <vector>

namespace momentbounds {

/**
 * One piece of a mean-preserving mixture: either a two-point distribution
 * straddling the shared mean, or a single point sitting on it.
 */
struct MixtureComponent {
    std::variant<BidisperseSpec, double> part;
    double weight = 0;

    [[nodiscard]] bool degenerate() const { return part.index() == 1; }
    [[nodiscard]] double component_mean() const;
    [[nodiscard]] DiscreteDistribution as_distribution() const;
};

struct MixtureDecomposition {
    double mean = 0;
    std::vector<MixtureComponent> components;

    /// {"mean": ..., "components": [{"values", "probabilities", "weight"}, ...]}
    [[nodiscard]] std::string to_json() const;
};

/**
 * Replaces the two largest support points by their probability-weighted
 * average carrying the combined mass.  Mean-preserving; the result has one
 * fewer point.  Throws TooFewPoints below 2 points.
 */
DiscreteDistribution merge_last_two(const DiscreteDistribution& dist);

/**
 * Splits a three-point distribution with mean mu into two mean-mu pieces.
 * When the middle point sits below the mean, the pieces pair it and the
 * lowest point with the highest one; mirrored when it sits above; a middle
 * point exactly on the mean becomes a degenerate component of its own
 * weight.  Throws NotThreePoints unless the input has exactly 3 points.
 */
MixtureDecomposition split_three_point(const DiscreteDistribution& dist);

/**
 * Full recursive decomposition of a k-point distribution (2 <= k <= 64)
 * into two-point components sharing its mean, plus degenerate points for
 * mass exactly on the mean.  Works by merging the top two points, splitting
 * the smaller problem, and expanding the merged point back into the pieces
 * that captured it.  Worst-case component count grows as 2^(k-2).
 */
MixtureDecomposition decompose(const DiscreteDistribution& dist);

/// Pools the components back together; inverse of decompose up to rounding.
DiscreteDistribution recompose(const MixtureDecomposition& decomposition);

} // namespace momentbounds

#endif
