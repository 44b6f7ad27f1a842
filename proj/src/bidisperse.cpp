#include "momentbounds/bidisperse.hpp"

#include "momentbounds/errors.hpp"
#include "momentbounds/format.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace momentbounds {

namespace {

void check_order(int n, int lowest) {
    if (n < lowest || n > kMaxOrder)
        throw OrderOutOfRange("moment order " + std::to_string(n) + " outside [" +
                              std::to_string(lowest) + ", 16]");
}

void check_mean_cov(double mean, double cov) {
    if (!(mean > 0)) throw NonPositiveMean("mean must be > 0, got " + format_double(mean));
    if (!(cov > 0)) throw NonPositiveCov("cov must be > 0, got " + format_double(cov));
}

void check_q(const char* who, double q) {
    if (!(q > 0) || !(q < 1))
        throw Error(std::string(who) + ": q must lie in (0,1), got " + format_double(q));
}

} // namespace

BidisperseSpec::BidisperseSpec(double a_minus, double a_plus, double q)
    : a_minus_(a_minus), a_plus_(a_plus), q_(q) {
    if (!std::isfinite(a_minus) || !std::isfinite(a_plus) || !std::isfinite(q))
        throw NonFiniteValues("two-point spec with non-finite parameter");
    if (!(a_minus < a_plus))
        throw Error("two-point spec needs a_minus < a_plus, got [" +
                    format_double(a_minus) + ", " + format_double(a_plus) + "]");
    check_q("BidisperseSpec", q);
    mean_ = (1 - q) * a_minus + q * a_plus;
    if (!(a_minus_ < mean_ && mean_ < a_plus_))
        throw Error("two-point spec degenerates: mean does not straddle the points");
}

DiscreteDistribution BidisperseSpec::to_distribution() const {
    return DiscreteDistribution({a_minus_, a_plus_}, {1 - q_, q_});
}

DeltaForm delta_form_of(const BidisperseSpec& spec) {
    if (!(spec.mean() > 0))
        throw NonPositiveMean("delta form needs mean > 0");
    DeltaForm d;
    d.delta_minus = (spec.mean() - spec.a_minus()) / spec.mean();
    d.delta_plus = (spec.a_plus() - spec.mean()) / spec.mean();
    d.cov = std::sqrt(d.delta_minus * d.delta_plus);
    return d;
}

BidisperseSpec make_bidisperse(double mean, double eta, double q) {
    if (!(mean > 0))
        throw NonPositiveMean("make_bidisperse needs mean > 0 (reflect negative-mean "
                              "problems through the bounds module)");
    if (!(eta > 1)) throw BadEta("eta must exceed 1, got " + format_double(eta));
    check_q("make_bidisperse", q);
    const double denom = 1 - q + eta * q;
    return BidisperseSpec(mean / denom, eta * mean / denom, q);
}

CovSkew cov_skew_of(const BidisperseSpec& spec) {
    const double mu = spec.mean();
    if (!(mu > 0)) throw NonPositiveMean("cov_skew_of needs mean > 0");
    const double q = spec.q();
    const double dm = spec.a_minus() - mu;
    const double dp = spec.a_plus() - mu;
    CovSkew out;
    out.cov = std::sqrt((1 - q) * dm * dm + q * dp * dp) / mu;
    out.skewness = (1 - 2 * q) / std::sqrt(q * (1 - q));
    return out;
}

BidisperseSpec invert_skew(double mean, double cov, double skewness) {
    check_mean_cov(mean, cov);
    const double d3 = skewness;
    const double m3 = std::sqrt(4 + d3 * d3);
    const double q = (-d3 + m3) / (2 * m3);
    const double a_minus = mean * (1 + 0.5 * cov * (d3 - m3));
    const double a_plus = mean * (1 + 0.5 * cov * (d3 + m3));
    return BidisperseSpec(a_minus, a_plus, q);
}

double dn_of_q(int n, double q) {
    check_order(n, 3);
    check_q("dn_of_q", q);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double numer = std::pow(1 - q, n - 1) + sign * std::pow(q, n - 1);
    return numer / std::pow(q - q * q, 0.5 * n - 1);
}

double dn_of_z(int n, double z) {
    check_order(n, 3);
    if (z == 0) throw ZeroZ("dn_of_z is undefined at z = 0");
    // Terms carry exponents 2i-n for i = 1..n-1; walk them up by z^2.
    double power = std::pow(z, 2 - n);
    const double z2 = z * z;
    double sign = (n % 2 == 0) ? 1.0 : -1.0; // (-1)^(n-i+1) at i = 1
    double sum = 0;
    for (int i = 1; i <= n - 1; ++i) {
        sum += sign * power;
        power *= z2;
        sign = -sign;
    }
    return sum;
}

std::pair<double, double> endpoints_from_q(double mean, double cov, double q) {
    check_mean_cov(mean, cov);
    check_q("endpoints_from_q", q);
    const double a_minus = mean * (1 - cov * std::sqrt(q / (1 - q)));
    const double a_plus = mean * (1 + cov * std::sqrt((1 - q) / q));
    return {a_minus, a_plus};
}

namespace {

constexpr int kGridIntervals = 1 << 10;
constexpr double kQTolerance = 1e-13;

// Bisects dn_of_q(n, .) - target on [lo, hi], which must bracket a sign change.
double bisect_q(int n, double target, double lo, double hi, double flo) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kQTolerance) return mid;
        const double fmid = dn_of_q(n, mid) - target;
        if (fmid == 0) return mid;
        if ((fmid > 0) == (flo > 0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceFailure("bisection on q failed to converge");
}

// Walks an end gap of the grid toward the boundary of (0,1) until the
// function value crosses target; D_n(q) diverges at both ends, so this
// terminates unless q underflows.
double extend_bracket(int n, double target, double inner, bool toward_zero) {
    const bool diverges_positive = toward_zero || n % 2 == 0;
    double outer = toward_zero ? inner / 2 : 1 - (1 - inner) / 2;
    for (int iter = 0; iter < 2000; ++iter) {
        const double f = dn_of_q(n, outer) - target;
        if (f == 0) return outer;
        if (diverges_positive ? f > 0 : f < 0) {
            if (toward_zero) return bisect_q(n, target, outer, inner, f);
            return bisect_q(n, target, inner, outer, dn_of_q(n, inner) - target);
        }
        if (toward_zero) {
            outer /= 2;
            if (outer < 1e-300) break;
        } else {
            outer = 1 - (1 - outer) / 2;
            if (1 - outer < 1e-300) break;
        }
    }
    throw ConvergenceFailure("could not bracket a root of D_n(q) near the boundary");
}

} // namespace

std::vector<BidisperseSpec> construct_with_moment(int n, double mean, double cov,
                                                  double target) {
    check_order(n, 3);
    check_mean_cov(mean, cov);
    if (!std::isfinite(target)) throw NoSolution("target moment must be finite");

    const bool even = n % 2 == 0;
    std::vector<double> roots;

    if (even && target < 1) {
        throw NoSolution("even-order standardized moments of a two-point distribution "
                         "are at least 1, target " + format_double(target) +
                         " is unreachable");
    }
    if (even && target == 1) {
        roots.push_back(0.5);
    } else {
        // Scan a fixed grid for sign changes, then refine each bracket.
        std::vector<double> f(kGridIntervals);
        for (int i = 1; i < kGridIntervals; ++i)
            f[static_cast<std::size_t>(i)] =
                dn_of_q(n, static_cast<double>(i) / kGridIntervals) - target;

        bool hit_grid_zero_last = false;
        for (int i = 1; i < kGridIntervals; ++i) {
            const double q = static_cast<double>(i) / kGridIntervals;
            const double fi = f[static_cast<std::size_t>(i)];
            if (fi == 0) {
                roots.push_back(q);
                hit_grid_zero_last = true;
                continue;
            }
            if (i > 1 && !hit_grid_zero_last) {
                const double fprev = f[static_cast<std::size_t>(i - 1)];
                if ((fi > 0) != (fprev > 0))
                    roots.push_back(bisect_q(n, target,
                                             static_cast<double>(i - 1) / kGridIntervals,
                                             q, fprev));
            }
            hit_grid_zero_last = false;
        }

        // End gaps: every branch of D_n(q) diverges at q -> 0 and q -> 1.
        const double f_first = f[1];
        const double f_last = f[kGridIntervals - 1];
        if (f_first < 0)
            roots.insert(roots.begin(),
                         extend_bracket(n, target, 1.0 / kGridIntervals, true));
        if (even ? f_last < 0 : f_last > 0)
            roots.push_back(extend_bracket(
                n, target, static_cast<double>(kGridIntervals - 1) / kGridIntervals,
                false));
    }

    if (roots.empty())
        throw NoSolution("no two-point distribution reaches the target moment");
    std::sort(roots.begin(), roots.end());

    std::vector<BidisperseSpec> out;
    out.reserve(roots.size());
    for (double q : roots) {
        const auto [a_minus, a_plus] = endpoints_from_q(mean, cov, q);
        out.emplace_back(a_minus, a_plus, q);
    }
    return out;
}

double mn_delta(int n, double cov, double delta_minus) {
    check_order(n, 2);
    if (!(cov > 0)) throw NonPositiveCov("cov must be > 0");
    if (!(delta_minus > 0)) throw Error("mn_delta: delta_minus must be > 0");
    const double c2 = cov * cov;
    const double q = delta_minus * delta_minus / (delta_minus * delta_minus + c2);
    return q * std::pow(c2 / delta_minus, n) + (1 - q) * std::pow(-delta_minus, n);
}

double mn_delta_derivative(int n, double cov, double delta_minus) {
    check_order(n, 2);
    if (!(cov > 0)) throw NonPositiveCov("cov must be > 0");
    if (!(delta_minus > 0)) throw Error("mn_delta_derivative: delta_minus must be > 0");
    const double d = delta_minus;
    const double c2 = cov * cov;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double denom = (d * d + c2) * (d * d + c2);
    const double first = sign * c2 * std::pow(d, n - 1) * ((n - 2) * d * d + n * c2);
    const double second = std::pow(c2, n) * std::pow(d, 1 - n) * ((n - 2) * c2 + n * d * d);
    return (first - second) / denom;
}

} // namespace momentbounds
