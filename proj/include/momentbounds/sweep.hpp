#ifndef MOMENTBOUNDS_SWEEP_HPP
#define MOMENTBOUNDS_SWEEP_HPP

#include "momentbounds/bounds.hpp"
#include "momentbounds/distribution.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

namespace momentbounds {

/**
 * Monte Carlo sweep over the feasible coefficient-of-variation range of a
 * two-sided support.  Random distributions with the configured mean are
 * generated per delta-bin, their standardized moments are compared against
 * the analytic limits, and empirical extrema are recorded per bin.
 */
struct SweepConfig {
    double x_min = 0;
    double x_max = 1;
    double mean = 0.5;
    std::vector<int> orders = {3, 4};  // subset of 3..8
    int bins = 4;                      // >= 4, uniform over (0, delta_prime]
    int samples_per_bin = 100;         // >= 100, split evenly across k_values
    std::vector<int> k_values = {2, 3, 4}; // must contain 2
    std::uint64_t seed = 0;
    int threads = 1;                   // 0 = hardware concurrency
};

/// Per-family tallies inside one bin.  Samples are assigned to bins by
/// realized delta; discards count draws from this bin's stream that landed
/// in no bin at all (for example a zero-variance collapse).
struct FamilyTally {
    std::int64_t n_samples = 0;
    std::int64_t n_discarded = 0;
    std::vector<double> emp_min; // per order, NaN while empty
    std::vector<double> emp_max;
};

struct SweepRecord {
    double delta_lo = 0;
    double delta_hi = 0;
    double delta_center = 0;
    FamilyTally bidisperse; // k == 2
    FamilyTally multipoint; // k >= 3
    std::vector<double> analytic_lower; // per order, evaluated at delta_center
    std::vector<double> analytic_upper;
    std::vector<BoundStatus> status;
    // Sample with the largest realized delta assigned to this bin, with its
    // standardized moments per order.  NaN / empty when the bin is empty.
    double edge_delta = 0;
    std::vector<double> edge_dn;
};

/// A sample whose standardized moment escaped the analytic limits by more
/// than 1e-9.  Proven-bound violations indicate a bug; conjectured-bound
/// violations are counterexamples worth keeping.
struct BoundViolation {
    int order = 0;
    double value = 0;
    double lower = 0;
    double upper = 0;
    BoundStatus status = BoundStatus::proven;
    double delta = 0;
    std::vector<double> values;
    std::vector<double> probabilities;
};

struct SweepResult {
    std::vector<int> orders;
    double delta_prime = 0;
    std::vector<SweepRecord> records;
    std::vector<BoundViolation> violations;
    std::int64_t total_generated = 0;
    std::int64_t total_discarded = 0;
    double max_realized_delta = 0;
};

/**
 * Draws one random k-point distribution with the exact target mean: k-1
 * values uniform on the support, probabilities from a flat simplex, and the
 * last value solved to force the mean, rejecting solutions that escape the
 * support.  Throws SamplingExhausted after 10,000 rejected attempts.  The
 * result can carry fewer than k points when near-duplicate values merge.
 */
DiscreteDistribution sample_constrained(int k, const SupportBounds& support,
                                        double mean, std::mt19937_64& rng);

/**
 * Runs the sweep.  Fully deterministic for a fixed config: every (bin,
 * family) pair owns an RNG sub-stream derived from the master seed by a
 * splitmix64 chain, and aggregation merges worker output in bin order, so
 * the thread count never changes the result.
 *
 * The k = 2 family is drawn at a coefficient of variation targeted inside
 * the generating bin (with a share of draws pinned to the bin edge and to
 * the support-touching endpoints, so each bin exercises its extremal
 * corner); families with k >= 3 use sample_constrained and land wherever
 * their realized delta falls.
 */
SweepResult run_sweep(const SweepConfig& config);

/**
 * Writes the sweep as CSV with columns delta_bin_lo, delta_bin_hi, order,
 * family, n_samples, n_discarded, empirical_min, empirical_max,
 * analytic_lower, analytic_upper, bound_status.  Floats carry 17
 * significant digits; infinities render as "-inf"/"+inf"; empty extrema as
 * "nan".  Byte-identical for identical results.
 */
void write_report(const SweepResult& result, const std::filesystem::path& destination);

} // namespace momentbounds

#endif
