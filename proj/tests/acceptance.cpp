// Acceptance gate: exercises the headline guarantees end to end and prints
// one [PASS]/[FAIL] line per check.  Exits nonzero if anything fails.
#include "momentbounds/bidisperse.hpp"
#include "momentbounds/bounds.hpp"
#include "momentbounds/decompose.hpp"
#include "momentbounds/distribution.hpp"
#include "momentbounds/errors.hpp"
#include "momentbounds/format.hpp"
#include "momentbounds/sweep.hpp"

#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace momentbounds;

struct Failure {
    std::string detail;
};

void require(bool ok, const std::string& detail) {
    if (!ok) throw Failure{detail};
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string num(double x) { return format_double(x); }

SupportBounds lower_only(double x) { return {x, std::nullopt}; }
SupportBounds both(double lo, double hi) { return {lo, hi}; }

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Skewness floor at mean 1 with the support bounded below by zero:
// cov 0.4 pins the floor at -2.1 and cov 1 pins it at 0.
void skewness_floor_reference_values() {
    const auto tight = d3_limits(BoundInput(1.0, 0.4, lower_only(0.0)));
    require(close(tight.lower, -2.1, 1e-12),
            "cov 0.4 floor " + num(tight.lower) + ", expected -2.1");
    const auto unit = d3_limits(BoundInput(1.0, 1.0, lower_only(0.0)));
    require(close(unit.lower, 0.0, 1e-12),
            "cov 1 floor " + num(unit.lower) + ", expected 0");
}

// A symmetric window three standard deviations wide on each side limits the
// skewness to [-8/3, 8/3] regardless of location or scale.
void three_sigma_window_limits() {
    const double cases[][2] = {{1.0, 0.3}, {-2.5, 0.7}, {10.0, 4.0}, {0.0, 1.0}};
    for (const auto& c : cases) {
        const double mu = c[0], sigma = c[1];
        const auto r = d3_limits(BoundInput(mu, sigma, both(mu - 3 * sigma, mu + 3 * sigma)));
        require(close(r.lower, -8.0 / 3.0, 1e-12),
                "mu=" + num(mu) + " sigma=" + num(sigma) + " lower " + num(r.lower));
        require(close(r.upper, 8.0 / 3.0, 1e-12),
                "mu=" + num(mu) + " sigma=" + num(sigma) + " upper " + num(r.upper));
    }
}

// The q-parameterized and z-parameterized two-point moment formulas are the
// same function: agreement to 1e-10 relative across a dense q grid, fast.
void q_z_parameterizations_agree() {
    const auto start = std::chrono::steady_clock::now();
    for (int n = 3; n <= 8; ++n) {
        for (int i = 1; i <= 1000; ++i) {
            const double q = i / 1001.0;
            const double a = dn_of_q(n, q);
            const double b = dn_of_z(n, std::sqrt((1 - q) / q));
            const double tol = 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
            require(close(a, b, tol), "n=" + std::to_string(n) + " q=" + num(q) + ": " +
                                          num(a) + " vs " + num(b));
        }
    }
    const double secs = elapsed_seconds(start);
    require(secs < 1.0, "grid took " + num(secs) + " s, limit 1 s");
}

// decompose splits any discrete distribution into two-point components that
// share its mean; recompose restores the input point for point.
void decomposition_round_trip() {
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 500; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 11);
        const auto dist = oracle::random_dist(rng, k, -10.0, 10.0);
        const double mu = summarize(dist, 2).mean;

        const auto parts = decompose(dist);
        require(close(parts.mean, mu, 1e-12 * std::max(1.0, std::abs(mu))),
                "decomposition mean " + num(parts.mean) + " vs " + num(mu));

        double total_weight = 0;
        for (const auto& comp : parts.components) {
            require(comp.weight > 0, "non-positive weight " + num(comp.weight));
            total_weight += comp.weight;
            require(close(comp.component_mean(), mu, 1e-12 * std::max(1.0, std::abs(mu))),
                    "component mean " + num(comp.component_mean()) + " vs " + num(mu));
            if (!comp.degenerate()) {
                const auto& spec = std::get<BidisperseSpec>(comp.part);
                require(spec.a_minus() < mu && mu < spec.a_plus(),
                        "component does not straddle the mean");
            }
        }
        require(close(total_weight, 1.0, 1e-12), "weights sum to " + num(total_weight));

        const auto back = recompose(parts);
        require(back.size() == dist.size(),
                "recompose size " + std::to_string(back.size()) + " vs " +
                    std::to_string(dist.size()));
        for (std::size_t i = 0; i < dist.size(); ++i) {
            require(close(back.values()[i], dist.values()[i],
                          1e-12 * std::max(1.0, std::abs(dist.values()[i]))),
                    "value " + num(back.values()[i]) + " vs " + num(dist.values()[i]));
            require(close(back.probabilities()[i], dist.probabilities()[i], 1e-12),
                    "probability " + num(back.probabilities()[i]) + " vs " +
                        num(dist.probabilities()[i]));
        }
    }
}

// With nonnegative support, m3 >= mu^3 (cov^4 - cov^2).  The bound survives
// mixing: any two distributions with a common mean that satisfy it produce
// mixtures that satisfy it too.
void mixture_preserves_skewness_bound() {
    std::mt19937_64 rng(502);
    const SupportBounds support{0.0, 10.0};
    const auto m3_slack = [](const DiscreteDistribution& d) {
        const auto s = summarize(d, 3);
        const double cov = s.stddev / s.mean;
        const double floor =
            s.mean * s.mean * s.mean * (std::pow(cov, 4) - cov * cov);
        return s.central_moment(3) - floor;
    };
    const auto draw = [&](double mean) {
        for (;;) {
            const int k = 2 + static_cast<int>(rng() % 5);
            const auto d = sample_constrained(k, support, mean, rng);
            if (d.size() >= 2) return d;
        }
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const double mean = oracle::uniform(rng, 0.5, 4.0);
        const auto a = draw(mean);
        const auto b = draw(mean);
        require(m3_slack(a) >= -1e-10, "component slack " + num(m3_slack(a)));
        require(m3_slack(b) >= -1e-10, "component slack " + num(m3_slack(b)));
        for (int step = 1; step <= 9; ++step) {
            const double alpha = step / 10.0;
            const auto mix = mixture({{a, alpha}, {b, 1 - alpha}});
            const double slack = m3_slack(mix);
            require(slack >= -1e-10,
                    "alpha=" + num(alpha) + " mix slack " + num(slack));
        }
    }
}

// Seeded desk-scale sweep over [0, 5] with mean 1: finishes quickly, never
// crosses an analytic limit, respects the feasibility edge cov' = 2, and the
// top bin's edge sample realizes the kurtosis ceiling 3.25.
void sweep_stays_inside_limits() {
    SweepConfig config;
    config.x_min = 0;
    config.x_max = 5;
    config.mean = 1;
    config.orders = {3, 4, 5};
    config.bins = 50;
    config.samples_per_bin = 2000;
    config.seed = 0;
    config.threads = 1;

    const auto start = std::chrono::steady_clock::now();
    const auto result = run_sweep(config);
    const double secs = elapsed_seconds(start);
    require(secs < 60.0, "sweep took " + num(secs) + " s, limit 60 s");

    if (!result.violations.empty()) {
        for (const auto& v : result.violations) {
            std::cerr << "violation: order " << v.order << " value " << num(v.value)
                      << " outside [" << num(v.lower) << ", " << num(v.upper) << "] ("
                      << to_string(v.status) << ") at cov " << num(v.delta) << "; values";
            for (double x : v.values) std::cerr << ' ' << num(x);
            std::cerr << "; probabilities";
            for (double p : v.probabilities) std::cerr << ' ' << num(p);
            std::cerr << '\n';
        }
        require(false, std::to_string(result.violations.size()) +
                           " bound violations (counterexamples on stderr)");
    }

    require(result.max_realized_delta <= 2 + 1e-9,
            "max realized cov " + num(result.max_realized_delta) + " exceeds 2");

    const SweepRecord* top = nullptr;
    for (auto it = result.records.rbegin(); it != result.records.rend(); ++it) {
        if (it->bidisperse.n_samples + it->multipoint.n_samples > 0) {
            top = &*it;
            break;
        }
    }
    require(top != nullptr, "every bin is empty");
    // The record's edge sample is the one drawn at the largest realized cov,
    // i.e. at the feasibility edge itself, where the kurtosis ceiling is
    // (2 - 1/2)^2 + 1 = 3.25.
    require(close(top->edge_delta, 2.0, 1e-9),
            "edge sample cov " + num(top->edge_delta) + ", expected 2");
    const double d4_at_edge = top->edge_dn[1];
    require(close(d4_at_edge, 3.25, 0.02 * 3.25),
            "kurtosis at the feasibility edge " + num(d4_at_edge) + ", expected 3.25 +/- 2%");
}

// make_bidisperse -> cov_skew_of -> invert_skew reproduces the original
// two-point parameters across the whole usable (eta, q, mean) range.
void inversion_round_trip() {
    std::mt19937_64 rng(603);
    for (int trial = 0; trial < 1000; ++trial) {
        const double eta = 1.0 + 49.0 * std::max(oracle::uniform(rng, 0, 1), 1e-9);
        const double q = oracle::uniform(rng, 0.01, 0.99);
        const double mean = oracle::uniform(rng, 0.1, 10.0);
        const auto spec = make_bidisperse(mean, eta, q);
        const auto cs = cov_skew_of(spec);
        const auto back = invert_skew(mean, cs.cov, cs.skewness);
        const auto check = [&](double got, double want, const char* name) {
            require(close(got, want, 1e-9 * std::max(1.0, std::abs(want))),
                    std::string(name) + " " + num(got) + " vs " + num(want) + " at eta=" +
                        num(eta) + " q=" + num(q) + " mean=" + num(mean));
        };
        check(back.a_minus(), spec.a_minus(), "a_minus");
        check(back.a_plus(), spec.a_plus(), "a_plus");
        check(back.q(), spec.q(), "q");
    }
}

// Kurtosis never drops below skewness^2 + 1 on any distribution with
// positive variance.
void kurtosis_floor_holds() {
    std::mt19937_64 rng(704);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 9);
        const auto dist = oracle::random_dist(rng, k, -5.0, 5.0);
        const auto s = summarize(dist, 4);
        const double d3 = s.standardized_moment(3);
        const double d4 = s.standardized_moment(4);
        require(d4 >= pearson_floor(d3) - 1e-9,
                "D4 " + num(d4) + " below D3^2+1 " + num(pearson_floor(d3)));
    }
}

// The closed-form derivative of the normalized two-point moment matches
// central finite differences, is negative for odd orders, and for even
// orders changes sign exactly where the lower gap equals the cov.
void moment_derivative_contract() {
    std::mt19937_64 rng(805);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const double cov = oracle::uniform(rng, 0.1, 2.5);
        const double dm = oracle::uniform(rng, 0.1, 2.5);
        const double analytic = mn_delta_derivative(n, cov, dm);
        const double h = 1e-6 * std::max(1.0, dm);
        const double fd = (mn_delta(n, cov, dm + h) - mn_delta(n, cov, dm - h)) / (2 * h);
        require(close(analytic, fd, 1e-6 * std::max(1.0, std::abs(analytic))),
                "n=" + std::to_string(n) + " cov=" + num(cov) + " dm=" + num(dm) +
                    ": analytic " + num(analytic) + " vs fd " + num(fd));
        if (n % 2 == 1)
            require(analytic < 0, "n=" + std::to_string(n) + " derivative " +
                                      num(analytic) + " not negative");
    }
    for (const int n : {4, 6, 8}) {
        for (const double cov : {0.3, 1.0, 2.2}) {
            const double below = mn_delta_derivative(n, cov, cov * (1 - 1e-6));
            const double above = mn_delta_derivative(n, cov, cov * (1 + 1e-6));
            require(below < 0 && above > 0,
                    "n=" + std::to_string(n) + " cov=" + num(cov) + " sign change not at " +
                        "the cov: " + num(below) + " / " + num(above));
        }
    }
}

// Standardized moments ignore shifts; scaling by c multiplies order n by
// sign(c)^n.
void shift_scale_invariance() {
    std::mt19937_64 rng(906);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 9);
        const auto dist = oracle::random_dist(rng, k, -10.0, 10.0);
        const double shift = oracle::uniform(rng, -100.0, 100.0);
        const double magnitude = oracle::uniform(rng, 0.25, 4.0);
        const double scale = (rng() & 1) ? magnitude : -magnitude;

        const auto base = summarize(dist, 8);
        const auto shifted = summarize(affine_transform(dist, 1.0, shift), 8);
        const auto scaled = summarize(affine_transform(dist, scale, 0.0), 8);
        for (int n = 3; n <= 8; ++n) {
            const double want = base.standardized_moment(n);
            const double tol = 1e-10 * std::max(1.0, std::abs(want));
            require(close(shifted.standardized_moment(n), want, tol),
                    "shift " + num(shift) + " order " + std::to_string(n) + ": " +
                        num(shifted.standardized_moment(n)) + " vs " + num(want));
            const double sign = (scale < 0 && n % 2 == 1) ? -1.0 : 1.0;
            require(close(scaled.standardized_moment(n), sign * want, tol),
                    "scale " + num(scale) + " order " + std::to_string(n) + ": " +
                        num(scaled.standardized_moment(n)) + " vs " + num(sign * want));
        }
    }
}

} // namespace

int main() {
    const std::pair<const char*, std::function<void()>> checks[] = {
        {"skewness floor reference values (mean 1, lower bound 0)",
         skewness_floor_reference_values},
        {"symmetric three-sigma window limits skewness to [-8/3, 8/3]",
         three_sigma_window_limits},
        {"q- and z-parameterized two-point moments agree on a dense grid",
         q_z_parameterizations_agree},
        {"decomposition round trips 500 random distributions",
         decomposition_round_trip},
        {"mean-preserving mixtures keep the one-sided skewness bound",
         mixture_preserves_skewness_bound},
        {"seeded sweep stays inside analytic limits and hits the edge",
         sweep_stays_inside_limits},
        {"bidisperse inversion round trips 1000 parameter triples",
         inversion_round_trip},
        {"kurtosis floor D4 >= D3^2 + 1 on 1000 random distributions",
         kurtosis_floor_holds},
        {"two-point moment derivative matches finite differences",
         moment_derivative_contract},
        {"standardized moments are shift invariant and scale covariant",
         shift_scale_invariance},
    };

    int failures = 0;
    for (const auto& [name, fn] : checks) {
        try {
            fn();
            std::cout << "[PASS] " << name << '\n';
        } catch (const Failure& f) {
            ++failures;
            std::cout << "[FAIL] " << name << ": " << f.detail << '\n';
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] " << name << ": unexpected error: " << e.what() << '\n';
        }
    }
    if (failures != 0) std::cout << failures << " of 10 checks failed\n";
    return failures == 0 ? 0 : 1;
}
