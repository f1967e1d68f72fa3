#pragma once

#include <stdexcept>
#include <string>

namespace netgauntlet {

// Error taxonomy mirrored by the CLI exit codes: config errors exit 2,
// data errors exit 3, training divergence 4, schema mismatch 5.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct ParseError : DataError {
    using DataError::DataError;
};

struct LabelError : DataError {
    using DataError::DataError;
};

struct EmptyInputError : DataError {
    using DataError::DataError;
};

struct SizeError : DataError {
    using DataError::DataError;
};

struct ShapeError : DataError {
    using DataError::DataError;
};

struct ConsistencyError : DataError {
    using DataError::DataError;
};

struct SchemaError : Error {
    using Error::Error;
};

struct TrainingDiverged : Error {
    TrainingDiverged(const std::string& msg, int epoch_arg) : Error(msg), epoch(epoch_arg) {}
    int epoch;
};

} // namespace netgauntlet
