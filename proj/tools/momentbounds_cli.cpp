// Command-line front end for the moment-bounds library.
//
// Subcommands:
//   moments FILE --max-order N        moment summary of a distribution, as JSON
//   bounds --mean M --std S [--xmin A] [--xmax B] --orders 3,4,...
//                                     analytic limits per order, as a JSON array
//   construct --order N --mean M --cov D --target T
//                                     two-point distributions hitting the target
//                                     moment, one JSON object per line
//   decompose FILE [--out PATH]       mean-preserving two-point decomposition
//   sweep --xmin A --xmax B --mean M [--bins K] [--samples N] [--orders LIST]
//         [--kvalues LIST] [--seed S] --out PATH
//                                     Monte Carlo sweep, written as CSV
//
// Exit codes: 0 success, 1 domain error, 2 usage error.  Outputs are
// byte-identical across runs for identical invocations (fixed JSON key
// order, 17-significant-digit floats).  MOMENT_BOUNDS_THREADS, when set,
// caps sweep parallelism (it never changes the numbers, only the wall time).

#include "momentbounds/bidisperse.hpp"
#include "momentbounds/bounds.hpp"
#include "momentbounds/decompose.hpp"
#include "momentbounds/distribution.hpp"
#include "momentbounds/errors.hpp"
#include "momentbounds/format.hpp"
#include "momentbounds/sweep.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace momentbounds;

int run_moments(const std::string& file, int max_order) {
    auto dist = DiscreteDistribution::load(file);
    std::cout << summarize(dist, max_order).to_json() << "\n";
    return 0;
}

int run_bounds(double mean, double stddev, std::optional<double> x_min,
               std::optional<double> x_max, const std::vector<int>& orders) {
    if (orders.empty()) throw BadConfig("--orders needs at least one order");
    BoundInput input(mean, stddev, SupportBounds{x_min, x_max});
    std::cout << "[";
    for (std::size_t i = 0; i < orders.size(); ++i)
        std::cout << (i ? ", " : "") << limits_for_order(orders[i], input).to_json();
    std::cout << "]\n";
    return 0;
}

int run_construct(int order, double mean, double cov, double target) {
    for (const auto& spec : construct_with_moment(order, mean, cov, target))
        std::cout << spec.to_distribution().to_json() << "\n";
    return 0;
}

int run_decompose(const std::string& file, const std::string& out) {
    auto decomposition = decompose(DiscreteDistribution::load(file));
    if (out.empty()) {
        std::cout << decomposition.to_json() << "\n";
        return 0;
    }
    std::ofstream sink(out);
    if (!sink) throw IoError("cannot open " + out);
    sink << decomposition.to_json() << "\n";
    if (!sink) throw IoError("write failed for " + out);
    return 0;
}

int threads_from_env() {
    const char* raw = std::getenv("MOMENT_BOUNDS_THREADS");
    if (!raw || !*raw) return 1;
    char* end = nullptr;
    long parsed = std::strtol(raw, &end, 10);
    if (!end || *end != '\0' || parsed <= 0)
        throw BadConfig("MOMENT_BOUNDS_THREADS must be a positive integer");
    return static_cast<int>(parsed);
}

int run_sweep(const SweepConfig& config, const std::string& out) {
    SweepResult result = run_sweep(config);
    write_report(result, out);
    std::size_t proven = 0;
    for (const auto& v : result.violations) {
        if (v.status == BoundStatus::proven) ++proven;
        std::cerr << "violation: order=" << v.order << " value=" << format_double(v.value)
                  << " limits=[" << format_double(v.lower) << ", " << format_double(v.upper)
                  << "] status=" << to_string(v.status) << " delta=" << format_double(v.delta)
                  << "\n";
    }
    std::cout << "wrote " << out << ": bins=" << result.records.size()
              << " delta_prime=" << format_double(result.delta_prime)
              << " generated=" << result.total_generated
              << " discarded=" << result.total_discarded
              << " max_delta=" << format_double(result.max_realized_delta)
              << " violations=" << result.violations.size()
              << " (proven=" << proven << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"standardized moments, analytic bounds, and two-point decompositions "
                 "for bounded discrete distributions"};
    app.require_subcommand(1);

    std::string moments_file;
    int max_order = 4;
    auto* moments = app.add_subcommand("moments", "summarize a distribution JSON file");
    moments->add_option("file", moments_file, "distribution JSON file")->required();
    moments->add_option("--max-order", max_order, "highest moment order (2..16)")
        ->capture_default_str();

    double b_mean = 0, b_std = 0;
    std::optional<double> b_xmin, b_xmax;
    std::vector<int> b_orders = {3, 4};
    auto* bounds = app.add_subcommand("bounds", "analytic limits on standardized moments");
    bounds->add_option("--mean", b_mean, "distribution mean")->required();
    bounds->add_option("--std", b_std, "distribution standard deviation")->required();
    bounds->add_option("--xmin", b_xmin, "lower support limit");
    bounds->add_option("--xmax", b_xmax, "upper support limit");
    bounds->add_option("--orders", b_orders, "comma-separated moment orders")
        ->delimiter(',')
        ->capture_default_str();

    int c_order = 3;
    double c_mean = 0, c_cov = 0, c_target = 0;
    auto* construct =
        app.add_subcommand("construct", "two-point distributions with a given moment");
    construct->add_option("--order", c_order, "moment order (3..16)")->required();
    construct->add_option("--mean", c_mean, "target mean (> 0)")->required();
    construct->add_option("--cov", c_cov, "target coefficient of variation (> 0)")->required();
    construct->add_option("--target", c_target, "target standardized moment")->required();

    std::string d_file, d_out;
    auto* decompose_cmd =
        app.add_subcommand("decompose", "split a distribution into mean-preserving pairs");
    decompose_cmd->add_option("file", d_file, "distribution JSON file")->required();
    decompose_cmd->add_option("--out", d_out, "output path (stdout when omitted)");

    SweepConfig sweep_config;
    std::string s_out;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep against the analytic limits");
    sweep->add_option("--xmin", sweep_config.x_min, "lower support limit")->required();
    sweep->add_option("--xmax", sweep_config.x_max, "upper support limit")->required();
    sweep->add_option("--mean", sweep_config.mean, "target mean (> 0)")->required();
    sweep->add_option("--bins", sweep_config.bins, "number of delta bins (>= 4)")
        ->capture_default_str();
    sweep->add_option("--samples", sweep_config.samples_per_bin, "samples per bin (>= 100)")
        ->capture_default_str();
    sweep->add_option("--orders", sweep_config.orders, "moment orders, subset of 3..8")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--kvalues", sweep_config.k_values,
                      "support sizes to draw (must include 2)")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--seed", sweep_config.seed, "master RNG seed")->capture_default_str();
    sweep->add_option("--out", s_out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*moments) return run_moments(moments_file, max_order);
        if (*bounds) return run_bounds(b_mean, b_std, b_xmin, b_xmax, b_orders);
        if (*construct) return run_construct(c_order, c_mean, c_cov, c_target);
        if (*decompose_cmd) return run_decompose(d_file, d_out);
        if (*sweep) {
            sweep_config.threads = threads_from_env();
            return run_sweep(sweep_config, s_out);
        }
    } catch (const momentbounds::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
