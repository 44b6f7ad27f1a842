#include "momentbounds/distribution.hpp"

#include "momentbounds/errors.hpp"
#include "momentbounds/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace momentbounds {

namespace {

bool nearly_equal_values(double a, double b) {
    return std::abs(a - b) <= kValueMergeTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> values,
                                           std::vector<double> probabilities,
                                           std::string label)
    : label_(std::move(label)) {
    if (values.size() != probabilities.size())
        throw InvalidDistribution("values and probabilities differ in length");
    if (values.empty())
        throw InvalidDistribution("distribution needs at least one support point");

    for (double v : values)
        if (!std::isfinite(v)) throw NonFiniteValues("non-finite support value");
    for (double p : probabilities) {
        if (!std::isfinite(p)) throw NonFiniteValues("non-finite probability");
        if (p < 0) throw InvalidDistribution("negative probability");
    }

    const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    if (std::abs(total - 1.0) > kProbSumTolerance)
        throw InvalidDistribution("probabilities sum to " + format_double(total) +
                                  ", expected 1 within 1e-9");

    std::vector<std::size_t> index(values.size());
    std::iota(index.begin(), index.end(), std::size_t{0});
    std::sort(index.begin(), index.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    // Merge near-duplicate points, then drop negligible mass.
    for (std::size_t i : index) {
        if (!values_.empty() && nearly_equal_values(values_.back(), values[i])) {
            probs_.back() += probabilities[i];
        } else {
            values_.push_back(values[i]);
            probs_.push_back(probabilities[i]);
        }
    }
    std::size_t kept = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (probs_[i] < kProbDropThreshold) continue;
        values_[kept] = values_[i];
        probs_[kept] = probs_[i];
        ++kept;
    }
    values_.resize(kept);
    probs_.resize(kept);
    if (values_.empty())
        throw InvalidDistribution("no support point carries probability above 1e-15");

    const double surviving = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    for (double& p : probs_) p /= surviving;
}

DiscreteDistribution DiscreteDistribution::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDistribution(std::string("bad distribution JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("values") || !doc.contains("probabilities"))
        throw InvalidDistribution("distribution JSON needs \"values\" and \"probabilities\"");
    try {
        auto values = doc.at("values").get<std::vector<double>>();
        auto probs = doc.at("probabilities").get<std::vector<double>>();
        std::string label;
        if (doc.contains("label")) label = doc.at("label").get<std::string>();
        return DiscreteDistribution(std::move(values), std::move(probs), std::move(label));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidDistribution(std::string("bad distribution JSON: ") + e.what());
    }
}

DiscreteDistribution DiscreteDistribution::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string DiscreteDistribution::to_json() const {
    std::ostringstream out;
    out << "{\"values\": [";
    for (std::size_t i = 0; i < values_.size(); ++i)
        out << (i ? ", " : "") << format_double(values_[i]);
    out << "], \"probabilities\": [";
    for (std::size_t i = 0; i < probs_.size(); ++i)
        out << (i ? ", " : "") << format_double(probs_[i]);
    out << "]";
    if (!label_.empty()) out << ", \"label\": " << nlohmann::json(label_).dump();
    out << "}";
    return out.str();
}

double MomentSummary::central_moment(int n) const {
    if (n < 1 || n > max_order) throw OrderOutOfRange("central moment order out of range");
    return central[static_cast<std::size_t>(n - 1)];
}

double MomentSummary::standardized_moment(int n) const {
    if (n < 3 || n > max_order) throw OrderOutOfRange("standardized moment order out of range");
    return standardized[static_cast<std::size_t>(n - 3)];
}

std::string MomentSummary::to_json() const {
    std::ostringstream out;
    out << "{\"mean\": " << format_double(mean)
        << ", \"std\": " << format_double(stddev)
        << ", \"cov\": " << (cov ? format_double(*cov) : "null")
        << ", \"max_order\": " << max_order
        << ", \"central_moments\": [";
    for (std::size_t i = 0; i < central.size(); ++i)
        out << (i ? ", " : "") << format_double(central[i]);
    out << "], \"standardized_moments\": [";
    for (std::size_t i = 0; i < standardized.size(); ++i)
        out << (i ? ", " : "") << format_double(standardized[i]);
    out << "]}";
    return out.str();
}

MomentSummary summarize(const DiscreteDistribution& dist, int max_order) {
    if (max_order < 2 || max_order > kMaxOrder)
        throw OrderOutOfRange("max_order must lie in [2, 16], got " + std::to_string(max_order));

    const auto& x = dist.values();
    const auto& p = dist.probabilities();

    MomentSummary s;
    s.max_order = max_order;

    double mean = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mean += p[i] * x[i];
    s.mean = mean;

    // Second pass over centered powers keeps cancellation under control.
    s.central.assign(static_cast<std::size_t>(max_order), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - mean;
        double power = 1;
        for (int n = 1; n <= max_order; ++n) {
            power *= d;
            s.central[static_cast<std::size_t>(n - 1)] += p[i] * power;
        }
    }

    const double m2 = std::max(s.central[1], 0.0);
    s.stddev = std::sqrt(m2);
    if (mean != 0) s.cov = s.stddev / mean;

    if (max_order >= 3) {
        if (s.stddev == 0)
            throw DegenerateDistribution(
                "standardized moments are undefined for a zero-variance distribution");
        for (int n = 3; n <= max_order; ++n)
            s.standardized.push_back(s.central[static_cast<std::size_t>(n - 1)] /
                                     std::pow(s.stddev, n));
    }
    return s;
}

DiscreteDistribution mixture(
    const std::vector<std::pair<DiscreteDistribution, double>>& components) {
    if (components.empty()) throw EmptyMixture("mixture of zero components");

    double total = 0;
    for (const auto& [dist, w] : components) {
        (void)dist;
        if (!std::isfinite(w) || w < 0) throw BadWeights("mixture weights must be >= 0");
        total += w;
    }
    if (std::abs(total - 1.0) > kProbSumTolerance)
        throw BadWeights("mixture weights sum to " + format_double(total) +
                         ", expected 1 within 1e-9");

    std::vector<double> values;
    std::vector<double> probs;
    for (const auto& [dist, w] : components) {
        if (w == 0) continue;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            values.push_back(dist.values()[i]);
            probs.push_back(w * dist.probabilities()[i]);
        }
    }
    return DiscreteDistribution(std::move(values), std::move(probs));
}

DiscreteDistribution affine_transform(const DiscreteDistribution& dist,
                                      double scale, double shift) {
    if (scale == 0) throw ZeroScale("affine transform needs a non-zero scale");
    std::vector<double> values;
    values.reserve(dist.size());
    for (double v : dist.values()) values.push_back(scale * v + shift);
    return DiscreteDistribution(std::move(values), dist.probabilities(), dist.label());
}

} // namespace momentbounds
