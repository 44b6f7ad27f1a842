#include "momentbounds/bounds.hpp"

#include "momentbounds/bidisperse.hpp"
#include "momentbounds/errors.hpp"
#include "momentbounds/format.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace momentbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasibilitySlack = 1e-12;

struct Spreads {
    std::optional<double> toward_min;
    std::optional<double> toward_max;
};

Spreads spreads_of(const BoundInput& in) {
    Spreads s;
    if (in.support.x_min)
        s.toward_min = relative_spread(in.mean, in.stddev, *in.support.x_min, Side::lower);
    if (in.support.x_max)
        s.toward_max = relative_spread(in.mean, in.stddev, *in.support.x_max, Side::upper);
    if (s.toward_min && s.toward_max && *s.toward_min * *s.toward_max > 1 + kFeasibilitySlack)
        throw InfeasibleSpread(
            "sigma^2 exceeds (mu - x_min)(x_max - mu); no such distribution exists");
    return s;
}

DeltaParams delta_params_of(const BoundInput& in, const Spreads& s) {
    DeltaParams p;
    p.spread_min = s.toward_min;
    p.spread_max = s.toward_max;
    if (in.mean == 0) return p;
    std::optional<double> dist_min, dist_max;
    if (in.support.x_min) dist_min = std::abs(in.mean - *in.support.x_min) / std::abs(in.mean);
    if (in.support.x_max) dist_max = std::abs(*in.support.x_max - in.mean) / std::abs(in.mean);
    if (dist_min && dist_max) {
        p.delta1 = std::min(*dist_min, *dist_max);
        p.delta2 = std::max(*dist_min, *dist_max);
        p.delta_prime = std::sqrt(*p.delta1 * *p.delta2);
    } else if (dist_min) {
        p.delta0 = dist_min;
    } else if (dist_max) {
        p.delta0 = dist_max;
    }
    return p;
}

// Even-order floor from the larger spread.  Below s = 1 the symmetric
// two-point distribution fits inside the support and realizes D_n = 1,
// the universal minimum; beyond it the bound-pinned pair takes over.
double even_floor(int n, double spread) {
    return spread <= 1 ? 1.0 : dn_of_z(n, spread);
}

} // namespace

BoundInput::BoundInput(double mean, double stddev, SupportBounds support)
    : mean(mean), stddev(stddev), support(std::move(support)) {
    if (!std::isfinite(mean) || !std::isfinite(stddev))
        throw NonFiniteValues("bound input with non-finite mean or sigma");
    if (!(stddev > 0)) throw NonPositiveCov("bound input needs sigma > 0");
    if (this->support.x_min && this->support.x_max &&
        !(*this->support.x_min < *this->support.x_max))
        throw MeanOutsideSupport("support limits out of order");
    if (this->support.x_min && !(mean > *this->support.x_min))
        throw MeanOutsideSupport("mean must lie strictly above x_min");
    if (this->support.x_max && !(mean < *this->support.x_max))
        throw MeanOutsideSupport("mean must lie strictly below x_max");
}

std::string to_string(BoundStatus status) {
    return status == BoundStatus::proven ? "proven" : "conjectured";
}

std::string MomentBoundReport::to_json() const {
    auto opt = [](const std::optional<double>& v) {
        return v ? json_number(*v) : std::string("null");
    };
    std::ostringstream out;
    out << "{\"order\": " << order
        << ", \"lower\": " << json_number(lower)
        << ", \"upper\": " << json_number(upper)
        << ", \"status\": \"" << to_string(status) << "\""
        << ", \"delta_params\": {\"spread_min\": " << opt(delta_params.spread_min)
        << ", \"spread_max\": " << opt(delta_params.spread_max)
        << ", \"delta0\": " << opt(delta_params.delta0)
        << ", \"delta1\": " << opt(delta_params.delta1)
        << ", \"delta2\": " << opt(delta_params.delta2)
        << ", \"delta_prime\": " << opt(delta_params.delta_prime)
        << "}}";
    return out.str();
}

double relative_spread(double mean, double stddev, double bound, Side side) {
    if (!std::isfinite(bound)) throw NonFiniteValues("support bound must be finite");
    if (!(stddev > 0)) throw NonPositiveCov("relative spread needs sigma > 0");
    if (side == Side::lower) {
        if (!(mean > bound))
            throw MeanOutsideSupport("mean " + format_double(mean) +
                                     " does not exceed lower bound " + format_double(bound));
        return stddev / (mean - bound);
    }
    if (!(mean < bound))
        throw MeanOutsideSupport("mean " + format_double(mean) +
                                 " is not below upper bound " + format_double(bound));
    return stddev / (bound - mean);
}

double pearson_floor(double d3) { return d3 * d3 + 1; }

MomentBoundReport d3_limits(const BoundInput& input) {
    const Spreads s = spreads_of(input);
    MomentBoundReport r;
    r.order = 3;
    r.status = BoundStatus::proven;
    r.lower = s.toward_min ? *s.toward_min - 1 / *s.toward_min : -kInf;
    r.upper = s.toward_max ? 1 / *s.toward_max - *s.toward_max : kInf;
    r.delta_params = delta_params_of(input, s);
    return r;
}

MomentBoundReport d4_limits(const BoundInput& input) {
    const Spreads s = spreads_of(input);
    MomentBoundReport r;
    r.order = 4;
    r.delta_params = delta_params_of(input, s);

    if (s.toward_min && s.toward_max) {
        const double s_small = std::min(*s.toward_min, *s.toward_max);
        const double s_large = std::max(*s.toward_min, *s.toward_max);
        r.lower = even_floor(4, s_large);
        r.upper = dn_of_z(4, s_small);       // = (s_small - 1/s_small)^2 + 1
        r.status = BoundStatus::conjectured; // the ceiling is
    } else {
        r.lower = s.toward_min ? even_floor(4, *s.toward_min)
                               : (s.toward_max ? even_floor(4, *s.toward_max) : 1.0);
        r.upper = kInf;
        r.status = BoundStatus::proven;
    }
    return r;
}

MomentBoundReport dn_conjectured_limits(int n, const BoundInput& input) {
    if (n < 5 || n > kMaxOrder)
        throw OrderOutOfRange("dn_conjectured_limits covers orders 5 through 16");
    const Spreads s = spreads_of(input);
    MomentBoundReport r;
    r.order = n;
    r.status = BoundStatus::conjectured;
    r.delta_params = delta_params_of(input, s);

    if (n % 2 == 1) {
        r.lower = s.toward_min ? dn_of_z(n, *s.toward_min) : -kInf;
        r.upper = s.toward_max ? -dn_of_z(n, *s.toward_max) : kInf;
    } else if (s.toward_min && s.toward_max) {
        const double s_small = std::min(*s.toward_min, *s.toward_max);
        const double s_large = std::max(*s.toward_min, *s.toward_max);
        r.lower = even_floor(n, s_large);
        r.upper = dn_of_z(n, s_small);
    } else {
        r.lower = s.toward_min ? even_floor(n, *s.toward_min)
                               : (s.toward_max ? even_floor(n, *s.toward_max) : 1.0);
        r.upper = kInf;
    }
    return r;
}

MomentBoundReport limits_for_order(int n, const BoundInput& input) {
    if (n == 3) return d3_limits(input);
    if (n == 4) return d4_limits(input);
    return dn_conjectured_limits(n, input);
}

double feasibility_edge_cov(double mean, const SupportBounds& support) {
    if (!(mean > 0)) throw NonPositiveMean("feasibility edge needs mean > 0");
    if (!support.two_sided())
        throw MeanOutsideSupport("feasibility edge needs both support limits");
    if (!(*support.x_min < mean && mean < *support.x_max))
        throw MeanOutsideSupport("mean must lie strictly inside the support");
    const double d1 = (mean - *support.x_min) / mean;
    const double d2 = (*support.x_max - mean) / mean;
    return std::sqrt(d1 * d2);
}

} // namespace momentbounds
