#ifndef MOMENTBOUNDS_ERRORS_HPP
#define MOMENTBOUNDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace momentbounds {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Distribution construction / ingest.
class InvalidDistribution : public Error { using Error::Error; };
class NonFiniteValues : public Error { using Error::Error; };

// Moment summaries.
class DegenerateDistribution : public Error { using Error::Error; };
class OrderOutOfRange : public Error { using Error::Error; };

// Mixtures and transforms.
class EmptyMixture : public Error { using Error::Error; };
class BadWeights : public Error { using Error::Error; };
class ZeroScale : public Error { using Error::Error; };

// Two-point family.
class BadEta : public Error { using Error::Error; };
class NonPositiveMean : public Error { using Error::Error; };
class NonPositiveCov : public Error { using Error::Error; };
class ZeroZ : public Error { using Error::Error; };
class NoSolution : public Error { using Error::Error; };
class ConvergenceFailure : public Error { using Error::Error; };

// Bounds.
class MeanOutsideSupport : public Error { using Error::Error; };
class InfeasibleSpread : public Error { using Error::Error; };

// Decomposition.
class TooFewPoints : public Error { using Error::Error; };
class NotThreePoints : public Error { using Error::Error; };
class MeanDegenerate : public Error { using Error::Error; };

// Sweep harness.
class SamplingExhausted : public Error { using Error::Error; };
class BadConfig : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

} // namespace momentbounds

#endif
