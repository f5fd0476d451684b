#ifndef GPFW_ERRORS_HPP_
#define GPFW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gpfw {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// geometry
struct ZeroVector : Error { using Error::Error; };
struct OffSurface : Error { using Error::Error; };
struct DegenerateNormal : Error { using Error::Error; };
struct NoSignChange : Error { using Error::Error; };
struct ZeroDirection : Error { using Error::Error; };
struct StepExceedsReach : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };

// objectives
struct NotSymmetric : Error { using Error::Error; };

// solvers
struct ConfigInvalid : Error { using Error::Error; };
struct DegenerateStep : Error { using Error::Error; };
struct SingularJacobian : Error { using Error::Error; };

// analysis
struct TooShort : Error { using Error::Error; };
struct NonPositiveValue : Error { using Error::Error; };
struct NoSamplesInLevel : Error { using Error::Error; };
struct InsufficientRange : Error { using Error::Error; };
struct DominanceTooWeak : Error { using Error::Error; };
struct ThetaOutOfRange : Error { using Error::Error; };

// cli
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace gpfw

#endif  // GPFW_ERRORS_HPP_
