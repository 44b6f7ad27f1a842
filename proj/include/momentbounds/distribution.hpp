#ifndef MOMENTBOUNDS_DISTRIBUTION_HPP
#define MOMENTBOUNDS_DISTRIBUTION_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace momentbounds {

// Highest central / standardized moment order handled anywhere in the library.
inline constexpr int kMaxOrder = 16;

// Tolerances used when canonicalizing a distribution.
inline constexpr double kProbSumTolerance = 1e-9;   // |sum(p) - 1| allowed on ingest
inline constexpr double kProbDropThreshold = 1e-15; // entries below this are dropped
inline constexpr double kValueMergeTolerance = 1e-12; // relative, scaled by max(1,|x|)

/**
 * A finite discrete probability distribution.
 *
 * Construction canonicalizes the input: values are sorted ascending,
 * points equal within 1e-12 * max(1, |x|) are merged (probabilities added),
 * probabilities below 1e-15 are dropped, and the remainder is renormalized
 * to sum to 1 in working precision.  Inputs are rejected if any entry is
 * non-finite, any probability is negative, the probabilities do not sum to
 * 1 within 1e-9, or no support point survives.
 */
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<double> values,
                         std::vector<double> probabilities,
                         std::string label = {});

    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] const std::vector<double>& probabilities() const { return probs_; }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }

    [[nodiscard]] double min_value() const { return values_.front(); }
    [[nodiscard]] double max_value() const { return values_.back(); }

    /// Parses {"values": [...], "probabilities": [...], "label": optional}.
    static DiscreteDistribution from_json(const std::string& text);
    static DiscreteDistribution load(const std::filesystem::path& path);

    /// Serializes with fixed key order and 17-significant-digit floats.
    [[nodiscard]] std::string to_json() const;

private:
    std::vector<double> values_;
    std::vector<double> probs_;
    std::string label_;
};

/**
 * Moment summary of a distribution up to a requested order.
 *
 * central[i] holds the central moment of order i+1 (so central[0] is m_1,
 * which is zero up to rounding).  standardized[i] holds D_{i+3}, defined as
 * m_n / sigma^n; it is populated only when max_order >= 3.  cov is sigma/mu
 * and is absent when the mean is exactly zero.
 */
struct MomentSummary {
    double mean = 0;
    double stddev = 0;
    std::optional<double> cov;
    std::vector<double> central;
    std::vector<double> standardized;
    int max_order = 2;

    [[nodiscard]] double central_moment(int n) const;      // n in [1, max_order]
    [[nodiscard]] double standardized_moment(int n) const; // n in [3, max_order]
    [[nodiscard]] std::string to_json() const;
};

/**
 * Computes mean, standard deviation, and central + standardized moments up
 * to max_order using a two-pass scheme (mean first, then centered powers).
 *
 * Throws OrderOutOfRange unless 2 <= max_order <= 16, and
 * DegenerateDistribution when sigma == 0 and max_order >= 3 (standardized
 * moments are undefined for a point mass).
 */
MomentSummary summarize(const DiscreteDistribution& dist, int max_order);

/**
 * Pools weighted distributions into one distribution.  Weights must be
 * non-negative and sum to 1 within 1e-9 (BadWeights otherwise); an empty
 * component list throws EmptyMixture.  Raw moments are linear under this
 * operation; central moments are not.
 */
DiscreteDistribution mixture(
    const std::vector<std::pair<DiscreteDistribution, double>>& components);

/// Maps every support point x to scale * x + shift.  Throws ZeroScale if scale == 0.
DiscreteDistribution affine_transform(const DiscreteDistribution& dist,
                                      double scale, double shift);

} // namespace momentbounds

#endif
