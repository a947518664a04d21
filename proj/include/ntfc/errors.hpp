#pragma once

#include <stdexcept>
#include <string>

namespace ntfc {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad configuration or arguments (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

/// Numeric failure during evaluation (CLI exit code 3).
struct NumericError : Error {
    using Error::Error;
};

struct PoleError : NumericError { using NumericError::NumericError; };
struct DomainError : NumericError { using NumericError::NumericError; };
struct NonFiniteSample : NumericError { using NumericError::NumericError; };
struct ZeroWeight : NumericError { using NumericError::NumericError; };
struct SeriesDiverged : NumericError { using NumericError::NumericError; };
struct SingularStep : NumericError { using NumericError::NumericError; };
struct HorizonExhausted : NumericError { using NumericError::NumericError; };

struct BadRate : ConfigError { using ConfigError::ConfigError; };
struct ZeroScale : ConfigError { using ConfigError::ConfigError; };
struct InsufficientHistory : ConfigError { using ConfigError::ConfigError; };
struct InsufficientLags : ConfigError { using ConfigError::ConfigError; };
struct IntegerOrder : ConfigError { using ConfigError::ConfigError; };
struct GridMismatch : ConfigError { using ConfigError::ConfigError; };
struct DegreeTooLow : ConfigError { using ConfigError::ConfigError; };
struct RegionOfConvergence : ConfigError { using ConfigError::ConfigError; };
struct ParseError : ConfigError { using ConfigError::ConfigError; };

}  // namespace ntfc
