#include "momentbounds/sweep.hpp"

#include "momentbounds/bidisperse.hpp"
#include "momentbounds/errors.hpp"
#include "momentbounds/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <thread>

namespace momentbounds {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kViolationSlack = 1e-9;
constexpr double kDeltaOverflowSlack = 1e-9; // realized delta may exceed delta' by FP noise
constexpr int kMaxSampleAttempts = 10000;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Sub-stream seed for one (bin, family) pair; chained splitmix64 keeps the
// streams independent of scheduling.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t bin, std::uint64_t family) {
    const std::uint64_t mixed = splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (bin + 1)));
    return splitmix64(mixed ^ (0xBF58476D1CE4E5B9ULL * (family + 1)));
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Flat Dirichlet via normalized exponentials.
std::vector<double> simplex_draw(int k, std::mt19937_64& rng) {
    std::vector<double> p(static_cast<std::size_t>(k));
    double total = 0;
    for (double& e : p) {
        e = -std::log1p(-uniform01(rng));
        total += e;
    }
    if (total <= 0) { // all draws hit exactly zero; retry cheaply
        return simplex_draw(k, rng);
    }
    for (double& e : p) e /= total;
    return p;
}

struct Contribution {
    int bin = 0;
    int family = 0; // 0 bidisperse, 1 multipoint
    double delta = 0;
    std::vector<double> dn; // per requested order
};

struct WorkerOutput {
    std::vector<Contribution> contributions;
    // [family] discards from this bin's stream
    std::array<std::int64_t, 2> discarded{0, 0};
    std::int64_t generated = 0;
    std::vector<BoundViolation> violations;
};

SweepConfig validated(SweepConfig c) {
    if (!(std::isfinite(c.x_min) && std::isfinite(c.x_max) && std::isfinite(c.mean)))
        throw BadConfig("sweep config has non-finite support or mean");
    if (!(c.x_min < c.mean && c.mean < c.x_max))
        throw BadConfig("sweep needs x_min < mean < x_max");
    if (!(c.mean > 0))
        throw BadConfig("sweep bins by sigma/mean and therefore needs mean > 0");
    if (c.bins < 4) throw BadConfig("sweep needs at least 4 bins");
    if (c.samples_per_bin < 100) throw BadConfig("sweep needs at least 100 samples per bin");
    if (c.orders.empty()) throw BadConfig("sweep needs at least one moment order");
    std::sort(c.orders.begin(), c.orders.end());
    c.orders.erase(std::unique(c.orders.begin(), c.orders.end()), c.orders.end());
    for (int n : c.orders)
        if (n < 3 || n > 8) throw BadConfig("sweep orders must lie in 3..8");
    if (c.k_values.empty()) throw BadConfig("sweep needs at least one point count");
    std::sort(c.k_values.begin(), c.k_values.end());
    c.k_values.erase(std::unique(c.k_values.begin(), c.k_values.end()), c.k_values.end());
    for (int k : c.k_values)
        if (k < 2 || k > 16) throw BadConfig("sweep point counts must lie in 2..16");
    if (c.k_values.front() != 2)
        throw BadConfig("sweep always includes the two-point family (k = 2)");
    if (c.threads < 0) throw BadConfig("thread count must be >= 0");
    return c;
}

// Two-point sample with coefficient of variation targeted inside
// [delta_lo, delta_hi].  One draw in eight pins delta to the bin's upper
// edge, and one in four pins the pair to a support endpoint, so extremal
// corners are always exercised.
struct BidisperseDraw {
    DiscreteDistribution dist;
    // Drawn exactly at this bin's own edge; tally it here even if the
    // realized delta rounds a ulp across the bin boundary.
    bool pin_to_bin = false;
};

DiscreteDistribution bidisperse_at(const SweepConfig& c, double delta, double d) {
    const double a_minus = c.mean * (1 - d);
    const double a_plus = c.mean * (1 + delta * delta / d);
    const double q = d * d / (d * d + delta * delta);
    return DiscreteDistribution({a_minus, a_plus}, {1 - q, q});
}

BidisperseDraw draw_bidisperse(const SweepConfig& c, double delta_lo, double delta_hi,
                               int draw_index, bool top_bin, std::mt19937_64& rng) {
    const double g_lower = (c.mean - c.x_min) / c.mean;
    const double g_upper = (c.x_max - c.mean) / c.mean;

    // The first draws of every bin are deterministic witnesses of the bin's
    // extremal corners: the lower bin edge combined with each support-touching
    // placement, and (in the top bin) the feasibility edge itself.  They make
    // the empirical extrema meet the analytic curves at the bin edge instead
    // of merely approaching them.
    if (delta_lo > 0 && draw_index < 2) {
        const double d_corner =
            draw_index == 0 ? g_lower : delta_lo * delta_lo / g_upper;
        return {bidisperse_at(c, delta_lo, d_corner), true};
    }
    if (top_bin && draw_index == 2) {
        const double d_min = delta_hi * delta_hi / g_upper;
        return {bidisperse_at(c, delta_hi, 0.5 * (d_min + g_lower)), true};
    }

    double delta;
    do {
        delta = uniform01(rng) < 0.125
                    ? delta_hi
                    : delta_lo + uniform01(rng) * (delta_hi - delta_lo);
    } while (!(delta > 0));

    const double d_min = delta * delta / g_upper; // a_plus on x_max
    const double d_max = g_lower;                 // a_minus on x_min
    double d;
    if (d_min >= d_max) {
        d = 0.5 * (d_min + d_max); // delta at the feasibility edge, up to rounding
    } else {
        const double u = uniform01(rng);
        if (u < 0.125) d = d_max;
        else if (u < 0.25) d = d_min;
        else d = d_min + uniform01(rng) * (d_max - d_min);
    }
    return {bidisperse_at(c, delta, d), false};
}

void tally(FamilyTally& t, const Contribution& s) {
    ++t.n_samples;
    for (std::size_t i = 0; i < s.dn.size(); ++i) {
        if (std::isnan(t.emp_min[i]) || s.dn[i] < t.emp_min[i]) t.emp_min[i] = s.dn[i];
        if (std::isnan(t.emp_max[i]) || s.dn[i] > t.emp_max[i]) t.emp_max[i] = s.dn[i];
    }
}

void write_family_rows(std::ofstream& out, const SweepRecord& r,
                       const std::vector<int>& orders, std::size_t oi,
                       const char* name, const FamilyTally& t) {
    out << format_double(r.delta_lo) << ',' << format_double(r.delta_hi) << ','
        << orders[oi] << ',' << name << ',' << t.n_samples << ',' << t.n_discarded
        << ',' << format_double(t.emp_min[oi]) << ',' << format_double(t.emp_max[oi])
        << ',' << format_double(r.analytic_lower[oi]) << ','
        << format_double(r.analytic_upper[oi]) << ','
        << to_string(r.status[oi]) << '\n';
}

} // namespace

DiscreteDistribution sample_constrained(int k, const SupportBounds& support,
                                        double mean, std::mt19937_64& rng) {
    if (k < 2 || k > 16) throw BadConfig("sample_constrained needs 2 <= k <= 16");
    if (!support.two_sided())
        throw BadConfig("sample_constrained needs two-sided support");
    const double lo = *support.x_min;
    const double hi = *support.x_max;
    if (!(lo < mean && mean < hi))
        throw MeanOutsideSupport("sample mean must lie strictly inside the support");

    for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
        std::vector<double> values(static_cast<std::size_t>(k));
        for (int i = 0; i + 1 < k; ++i)
            values[static_cast<std::size_t>(i)] = lo + uniform01(rng) * (hi - lo);
        std::vector<double> probs = simplex_draw(k, rng);

        double partial = 0;
        for (int i = 0; i + 1 < k; ++i)
            partial += probs[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)];
        const double solved = (mean - partial) / probs[static_cast<std::size_t>(k - 1)];
        if (!std::isfinite(solved) || solved < lo || solved > hi) continue;
        values[static_cast<std::size_t>(k - 1)] = solved;
        return DiscreteDistribution(std::move(values), std::move(probs));
    }
    throw SamplingExhausted("no in-support solution after 10000 attempts");
}

SweepResult run_sweep(const SweepConfig& raw_config) {
    const SweepConfig c = validated(raw_config);
    const SupportBounds support{c.x_min, c.x_max};
    const double delta_prime = feasibility_edge_cov(c.mean, support);
    const int max_order = c.orders.back();
    const std::size_t n_orders = c.orders.size();
    const std::size_t n_families = c.k_values.size();

    // Per-family sample quotas inside one bin.
    std::vector<int> quota(n_families, c.samples_per_bin / static_cast<int>(n_families));
    for (std::size_t f = 0; f < static_cast<std::size_t>(c.samples_per_bin) % n_families; ++f)
        ++quota[f];

    auto bin_edge = [&](int i) { return delta_prime * i / c.bins; };

    auto run_bin = [&](int b) {
        WorkerOutput out;
        const double lo = bin_edge(b);
        const double hi = bin_edge(b + 1);
        for (std::size_t f = 0; f < n_families; ++f) {
            const int k = c.k_values[f];
            const int fam = (k == 2) ? 0 : 1;
            std::mt19937_64 rng(substream_seed(c.seed, static_cast<std::uint64_t>(b), f));
            for (int s = 0; s < quota[f]; ++s) {
                bool pin_to_bin = false;
                DiscreteDistribution dist = [&] {
                    if (k != 2) return sample_constrained(k, support, c.mean, rng);
                    auto draw = draw_bidisperse(c, lo, hi, s, b == c.bins - 1, rng);
                    pin_to_bin = draw.pin_to_bin;
                    return std::move(draw.dist);
                }();
                ++out.generated;

                MomentSummary summary;
                try {
                    summary = summarize(dist, max_order);
                } catch (const DegenerateDistribution&) {
                    ++out.discarded[static_cast<std::size_t>(fam)];
                    continue;
                }
                const double delta = summary.stddev / summary.mean;
                int bin = static_cast<int>(std::floor(delta / delta_prime * c.bins));
                if (bin == c.bins && delta <= delta_prime * (1 + kDeltaOverflowSlack))
                    bin = c.bins - 1; // the feasibility edge belongs to the top bin
                if (pin_to_bin) bin = b;
                if (!(delta > 0) || bin < 0 || bin >= c.bins) {
                    ++out.discarded[static_cast<std::size_t>(fam)];
                    continue;
                }

                Contribution contrib;
                contrib.bin = bin;
                contrib.family = fam;
                contrib.delta = delta;
                contrib.dn.reserve(n_orders);
                for (int n : c.orders) contrib.dn.push_back(summary.standardized_moment(n));

                // Check the sample against the analytic limits at its own
                // realized mean and sigma.
                const BoundInput input(summary.mean, summary.stddev, support);
                for (std::size_t oi = 0; oi < n_orders; ++oi) {
                    const MomentBoundReport rep = limits_for_order(c.orders[oi], input);
                    const double v = contrib.dn[oi];
                    // Slack scales with the limit: samples pinned to a support
                    // endpoint sit exactly on the bound, so only rounding noise
                    // relative to its magnitude separates the two.
                    const double slack_lo =
                        kViolationSlack * std::max(1.0, std::abs(rep.lower));
                    const double slack_hi =
                        kViolationSlack * std::max(1.0, std::abs(rep.upper));
                    if (v >= rep.lower - slack_lo && v <= rep.upper + slack_hi)
                        continue;
                    BoundViolation violation;
                    violation.order = c.orders[oi];
                    violation.value = v;
                    violation.lower = rep.lower;
                    violation.upper = rep.upper;
                    violation.status = rep.status;
                    violation.delta = delta;
                    violation.values = dist.values();
                    violation.probabilities = dist.probabilities();
                    out.violations.push_back(std::move(violation));
                }
                out.contributions.push_back(std::move(contrib));
            }
        }
        return out;
    };

    std::vector<WorkerOutput> outputs(static_cast<std::size_t>(c.bins));
    unsigned threads = c.threads > 0 ? static_cast<unsigned>(c.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(c.bins));
    if (threads <= 1) {
        for (int b = 0; b < c.bins; ++b) outputs[static_cast<std::size_t>(b)] = run_bin(b);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int b = static_cast<int>(t); b < c.bins; b += static_cast<int>(threads))
                    outputs[static_cast<std::size_t>(b)] = run_bin(b);
            });
        for (auto& th : pool) th.join();
    }

    // Deterministic merge in bin order.
    SweepResult result;
    result.orders = c.orders;
    result.delta_prime = delta_prime;
    result.records.resize(static_cast<std::size_t>(c.bins));
    for (int b = 0; b < c.bins; ++b) {
        SweepRecord& r = result.records[static_cast<std::size_t>(b)];
        r.delta_lo = bin_edge(b);
        r.delta_hi = bin_edge(b + 1);
        r.delta_center = 0.5 * (r.delta_lo + r.delta_hi);
        r.bidisperse.emp_min.assign(n_orders, kNaN);
        r.bidisperse.emp_max.assign(n_orders, kNaN);
        r.multipoint.emp_min.assign(n_orders, kNaN);
        r.multipoint.emp_max.assign(n_orders, kNaN);
        r.edge_delta = kNaN;
        const BoundInput center(c.mean, r.delta_center * c.mean, support);
        for (int n : c.orders) {
            const MomentBoundReport rep = limits_for_order(n, center);
            r.analytic_lower.push_back(rep.lower);
            r.analytic_upper.push_back(rep.upper);
            r.status.push_back(rep.status);
        }
    }

    result.max_realized_delta = kNaN;
    for (int b = 0; b < c.bins; ++b) {
        WorkerOutput& out = outputs[static_cast<std::size_t>(b)];
        result.total_generated += out.generated;
        result.total_discarded += out.discarded[0] + out.discarded[1];
        result.records[static_cast<std::size_t>(b)].bidisperse.n_discarded += out.discarded[0];
        result.records[static_cast<std::size_t>(b)].multipoint.n_discarded += out.discarded[1];
        for (const Contribution& s : out.contributions) {
            SweepRecord& r = result.records[static_cast<std::size_t>(s.bin)];
            tally(s.family == 0 ? r.bidisperse : r.multipoint, s);
            if (std::isnan(r.edge_delta) || s.delta > r.edge_delta) {
                r.edge_delta = s.delta;
                r.edge_dn = s.dn;
            }
            if (std::isnan(result.max_realized_delta) ||
                s.delta > result.max_realized_delta)
                result.max_realized_delta = s.delta;
        }
        for (BoundViolation& v : out.violations)
            result.violations.push_back(std::move(v));
    }
    return result;
}

void write_report(const SweepResult& result, const std::filesystem::path& destination) {
    if (result.records.empty()) throw BadConfig("write_report needs a non-empty sweep");
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw IoError("cannot open " + destination.string() + " for writing");

    out << "delta_bin_lo,delta_bin_hi,order,family,n_samples,n_discarded,"
           "empirical_min,empirical_max,analytic_lower,analytic_upper,bound_status\n";
    for (const SweepRecord& r : result.records) {
        for (std::size_t oi = 0; oi < result.orders.size(); ++oi) {
            write_family_rows(out, r, result.orders, oi, "bidisperse", r.bidisperse);
            write_family_rows(out, r, result.orders, oi, "multipoint", r.multipoint);
        }
    }
    out.flush();
    if (!out) throw IoError("failed while writing " + destination.string());
}

} // namespace momentbounds
