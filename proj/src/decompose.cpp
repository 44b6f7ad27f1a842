#include "momentbounds/decompose.hpp"

#include "momentbounds/errors.hpp"
#include "momentbounds/format.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace momentbounds {

namespace {

constexpr double kWeightPrune = 1e-15;
constexpr std::size_t kMaxDecomposePoints = 64;

bool on_mean(double x, double mean) {
    return std::abs(x - mean) <= 1e-12 * std::max(1.0, std::abs(mean));
}

// Support points and probabilities kept exact; no tolerance re-merging
// happens between recursion steps, so values can be compared with ==.
struct Raw {
    std::vector<double> v;
    std::vector<double> p;
};

double raw_mean(const Raw& d) {
    double m = 0;
    for (std::size_t i = 0; i < d.v.size(); ++i) m += d.p[i] * d.v[i];
    return m;
}

// Splits (v1, v2, v3) into mean-preserving two-point pieces around mean.
void split3(const Raw& d, double mean, double weight,
            std::vector<MixtureComponent>& out) {
    const double v1 = d.v[0], v2 = d.v[1], v3 = d.v[2];
    const double p1 = d.p[0], p2 = d.p[1], p3 = d.p[2];
    if (!(v1 < mean && mean < v3))
        throw MeanDegenerate("three-point split needs v1 < mean < v3");

    if (on_mean(v2, mean)) {
        const double q = (mean - v1) / (v3 - v1);
        out.push_back({BidisperseSpec(v1, v3, q), weight * p1 / (1 - q)});
        out.push_back({v2, weight * p2});
        return;
    }
    if (v2 < mean) {
        const double q1 = (mean - v1) / (v3 - v1);
        const double q2 = (mean - v2) / (v3 - v2);
        out.push_back({BidisperseSpec(v1, v3, q1), weight * p1 / (1 - q1)});
        out.push_back({BidisperseSpec(v2, v3, q2), weight * p2 / (1 - q2)});
        return;
    }
    // Mirrored case: the middle point lies above the mean.
    const double q1 = (mean - v1) / (v3 - v1);
    const double q2 = (mean - v1) / (v2 - v1);
    out.push_back({BidisperseSpec(v1, v3, q1), weight * p3 / q1});
    out.push_back({BidisperseSpec(v1, v2, q2), weight * p2 / q2});
}

void decompose_raw(const Raw& d, double mean, double weight,
                   std::vector<MixtureComponent>& out) {
    const std::size_t k = d.v.size();
    if (k == 1) {
        out.push_back({d.v[0], weight});
        return;
    }
    if (k == 2) {
        out.push_back({BidisperseSpec(d.v[0], d.v[1], d.p[1]), weight});
        return;
    }
    if (k == 3) {
        split3(d, mean, weight, out);
        return;
    }

    // Merge the top two points, decompose the smaller problem, then expand
    // the merged point back inside every piece that captured it.  Each such
    // piece becomes a three-point distribution with the same mean.
    const double tail = d.p[k - 2] + d.p[k - 1];
    const double merged_value = (d.p[k - 2] * d.v[k - 2] + d.p[k - 1] * d.v[k - 1]) / tail;
    const double ratio = d.p[k - 2] / tail;

    Raw smaller;
    smaller.v.assign(d.v.begin(), d.v.end() - 2);
    smaller.p.assign(d.p.begin(), d.p.end() - 2);
    smaller.v.push_back(merged_value);
    smaller.p.push_back(tail);

    std::vector<MixtureComponent> pieces;
    decompose_raw(smaller, mean, 1.0, pieces);

    for (const auto& piece : pieces) {
        if (!piece.degenerate()) {
            const auto& spec = std::get<BidisperseSpec>(piece.part);
            if (spec.a_plus() == merged_value) {
                Raw tri;
                tri.v = {spec.a_minus(), d.v[k - 2], d.v[k - 1]};
                tri.p = {1 - spec.q(), spec.q() * ratio, spec.q() * (1 - ratio)};
                split3(tri, mean, weight * piece.weight, out);
                continue;
            }
        }
        out.push_back({piece.part, weight * piece.weight});
    }
}

std::vector<MixtureComponent> prune(std::vector<MixtureComponent> components) {
    std::vector<MixtureComponent> kept;
    kept.reserve(components.size());
    for (auto& c : components)
        if (c.weight >= kWeightPrune) kept.push_back(std::move(c));
    return kept;
}

} // namespace

double MixtureComponent::component_mean() const {
    if (degenerate()) return std::get<double>(part);
    return std::get<BidisperseSpec>(part).mean();
}

DiscreteDistribution MixtureComponent::as_distribution() const {
    if (degenerate()) return DiscreteDistribution({std::get<double>(part)}, {1.0});
    return std::get<BidisperseSpec>(part).to_distribution();
}

std::string MixtureDecomposition::to_json() const {
    std::ostringstream out;
    out << "{\"mean\": " << format_double(mean) << ", \"components\": [";
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        out << (i ? ", " : "") << "{\"values\": [";
        if (c.degenerate()) {
            out << format_double(std::get<double>(c.part)) << "], \"probabilities\": [1";
        } else {
            const auto& spec = std::get<BidisperseSpec>(c.part);
            out << format_double(spec.a_minus()) << ", " << format_double(spec.a_plus())
                << "], \"probabilities\": [" << format_double(1 - spec.q()) << ", "
                << format_double(spec.q());
        }
        out << "], \"weight\": " << format_double(c.weight) << "}";
    }
    out << "]}";
    return out.str();
}

DiscreteDistribution merge_last_two(const DiscreteDistribution& dist) {
    if (dist.size() < 2) throw TooFewPoints("merge_last_two needs at least 2 points");
    const auto& v = dist.values();
    const auto& p = dist.probabilities();
    const std::size_t k = v.size();
    const double tail = p[k - 2] + p[k - 1];
    const double merged = (p[k - 2] * v[k - 2] + p[k - 1] * v[k - 1]) / tail;

    std::vector<double> values(v.begin(), v.end() - 2);
    std::vector<double> probs(p.begin(), p.end() - 2);
    values.push_back(merged);
    probs.push_back(tail);
    return DiscreteDistribution(std::move(values), std::move(probs), dist.label());
}

MixtureDecomposition split_three_point(const DiscreteDistribution& dist) {
    if (dist.size() != 3)
        throw NotThreePoints("split_three_point needs exactly 3 points, got " +
                             std::to_string(dist.size()));
    Raw raw{dist.values(), dist.probabilities()};
    MixtureDecomposition result;
    result.mean = raw_mean(raw);
    split3(raw, result.mean, 1.0, result.components);
    result.components = prune(std::move(result.components));
    return result;
}

MixtureDecomposition decompose(const DiscreteDistribution& dist) {
    if (dist.size() < 2) throw TooFewPoints("decompose needs at least 2 points");
    if (dist.size() > kMaxDecomposePoints)
        throw Error("decompose supports at most 64 points, got " +
                    std::to_string(dist.size()));
    Raw raw{dist.values(), dist.probabilities()};
    MixtureDecomposition result;
    result.mean = raw_mean(raw);
    decompose_raw(raw, result.mean, 1.0, result.components);
    result.components = prune(std::move(result.components));
    return result;
}

DiscreteDistribution recompose(const MixtureDecomposition& decomposition) {
    std::vector<std::pair<DiscreteDistribution, double>> parts;
    parts.reserve(decomposition.components.size());
    for (const auto& c : decomposition.components)
        parts.emplace_back(c.as_distribution(), c.weight);
    return mixture(parts);
}

} // namespace momentbounds
