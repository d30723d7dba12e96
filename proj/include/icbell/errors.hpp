#pragma once

#include <stdexcept>
#include <string>

namespace icbell {

// Base class for all validation failures raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NormalizationError : Error { using Error::Error; };   // distribution does not sum to 1
struct NegativeProbability : Error { using Error::Error; };  // entry below -tolerance
struct SignalingError : Error { using Error::Error; };       // marginals depend on the remote setting
struct DimensionMismatch : Error { using Error::Error; };    // outcome alphabets incompatible
struct ShapeMismatch : Error { using Error::Error; };        // setting counts incompatible
struct InvalidWeights : Error { using Error::Error; };       // mixture weights invalid
struct InvalidBias : Error { using Error::Error; };          // bias table out of range / inconsistent
struct InvalidCG : Error { using Error::Error; };            // Collins-Gisin table has no valid box
struct InvalidDistribution : Error { using Error::Error; };  // input distribution invalid
struct InvalidArity : Error { using Error::Error; };         // protocol tables sized wrong
struct AlphabetMismatch : Error { using Error::Error; };     // protocol alphabet vs box outcomes
struct InvalidPhaseIndex : Error { using Error::Error; };    // Fourier index t outside 1..floor(d/2)
struct InvalidEpsilon : Error { using Error::Error; };       // correlation parameter outside [-1, 1]
struct DomainError : Error { using Error::Error; };          // scalar argument outside its domain
struct DegenerateChannel : Error { using Error::Error; };    // zero-capacity channel where ratio is undefined

}  // namespace icbell
