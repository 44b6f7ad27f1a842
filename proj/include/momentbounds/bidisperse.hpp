#ifndef MOMENTBOUNDS_BIDISPERSE_HPP
#define MOMENTBOUNDS_BIDISPERSE_HPP

#include "momentbounds/distribution.hpp"

#include <utility>
#include <vector>

namespace momentbounds {

/**
 * A two-point distribution: value a_minus with probability 1-q and value
 * a_plus with probability q.  For q in (0,1) and a_minus < a_plus the mean
 * always lies strictly between the two points, which is what makes this
 * family the extremal one for standardized moments at fixed mean and
 * relative width.
 */
class BidisperseSpec {
public:
    BidisperseSpec(double a_minus, double a_plus, double q);

    [[nodiscard]] double a_minus() const { return a_minus_; }
    [[nodiscard]] double a_plus() const { return a_plus_; }
    [[nodiscard]] double q() const { return q_; }
    [[nodiscard]] double mean() const { return mean_; }

    /// Point ratio a_plus / a_minus; meaningful only when a_minus > 0.
    [[nodiscard]] double eta() const { return a_plus_ / a_minus_; }

    [[nodiscard]] DiscreteDistribution to_distribution() const;

private:
    double a_minus_, a_plus_, q_, mean_;
};

/**
 * The same two-point distribution written through its normalized distances
 * from the mean: delta_minus = (mu - a_minus)/mu, delta_plus = (a_plus - mu)/mu.
 * Satisfies cov^2 = delta_minus * delta_plus and
 * q = delta_minus^2 / (delta_minus^2 + cov^2).
 */
struct DeltaForm {
    double delta_minus = 0;
    double delta_plus = 0;
    double cov = 0;
};

/// Converts a spec with mean > 0 into its normalized-distance form.
DeltaForm delta_form_of(const BidisperseSpec& spec);

/**
 * Builds the two-point distribution with the given mean, point ratio
 * eta = a_plus/a_minus > 1, and probability q of the larger point:
 *   a_plus = eta * mu / (1 - q + eta q),  a_minus = mu / (1 - q + eta q).
 * Requires mu > 0 (a negative mean inverts the point ordering; reflect the
 * problem instead).  Throws BadEta if eta <= 1.
 */
BidisperseSpec make_bidisperse(double mean, double eta, double q);

struct CovSkew {
    double cov = 0;
    double skewness = 0;
};

/**
 * Coefficient of variation and skewness of a two-point distribution with
 * mean > 0:
 *   cov = sigma / mu,   D_3 = (1 - 2q) / sqrt(q - q^2).
 */
CovSkew cov_skew_of(const BidisperseSpec& spec);

/**
 * Recovers the unique two-point distribution with the given mean > 0,
 * cov > 0 and skewness.  With M_3 = sqrt(4 + D_3^2):
 *   q = (-D_3 + M_3) / (2 M_3),
 *   a_pm = mu * (1 + (cov/2) * (D_3 ± M_3)).
 * D_3 = 0 gives the symmetric case q = 1/2, eta = (1+cov)/(1-cov).
 */
BidisperseSpec invert_skew(double mean, double cov, double skewness);

/**
 * Standardized moment of order n of a two-point distribution as a function
 * of q alone:
 *   D_n(q) = ((1-q)^(n-1) + (-1)^n q^(n-1)) / (q - q^2)^(n/2 - 1).
 * Valid for 3 <= n <= 16 and q in (0,1).
 */
double dn_of_q(int n, double q);

/**
 * The same moment through the reduced variable z = cov / (1 - a/mu), where
 * a is either point of the pair:
 *   D_n(z) = sum_{i=1}^{n-1} (-1)^(n-i+1) z^(2i-n).
 * Invariant under z -> -1/z, which swaps the two points.  For n = 3 this is
 * z - 1/z.  Throws ZeroZ when z == 0.
 */
double dn_of_z(int n, double z);

/**
 * Support points of the two-point distribution with mean > 0, cov > 0 and
 * probability q of the larger point:
 *   a_minus = mu (1 - cov sqrt(q/(1-q))),  a_plus = mu (1 + cov sqrt((1-q)/q)).
 * Returns {a_minus, a_plus}.
 */
std::pair<double, double> endpoints_from_q(double mean, double cov, double q);

/**
 * All two-point distributions with the given mean > 0 and cov > 0 whose
 * standardized moment of order n equals target.  Odd n: D_n(q) is strictly
 * decreasing, so there is exactly one solution.  Even n: D_n(q) is symmetric
 * about q = 1/2 with minimum 1, so targets below 1 throw NoSolution, 1 gives
 * the single root q = 1/2, and larger targets give two mirrored roots
 * (returned in increasing q).  Roots are bisected to |dq| <= 1e-13.
 */
std::vector<BidisperseSpec> construct_with_moment(int n, double mean, double cov,
                                                  double target);

/**
 * Central moment of order n >= 2 normalized by mu^n, parameterized by the
 * relative cov and the normalized lower distance delta_minus:
 *   m_n / mu^n = q (cov^2/delta_minus)^n + (1-q) (-delta_minus)^n,
 * with q = delta_minus^2 / (delta_minus^2 + cov^2).
 */
double mn_delta(int n, double cov, double delta_minus);

/**
 * Partial derivative of mn_delta with respect to delta_minus at fixed cov:
 *
 *   [(-1)^n cov^2 d^(n-1) ((n-2) d^2 + n cov^2)
 *      - cov^(2n) d^(1-n) ((n-2) cov^2 + n d^2)] / (d^2 + cov^2)^2,
 *
 * writing d for delta_minus.  Negative for all odd n; for even n it is
 * negative below d = cov, zero at d = cov, positive above.
 */
double mn_delta_derivative(int n, double cov, double delta_minus);

} // namespace momentbounds

#endif
