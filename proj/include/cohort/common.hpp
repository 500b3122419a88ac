// common.hpp - shared index/weight types and the error hierarchy
#ifndef COHORT_COMMON_HPP
#define COHORT_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cohort {

using Index = std::uint32_t;  // entity, section or community position
using Weight = std::int64_t;  // connection units; all scoring is integral

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised while reading or validating input data.
class InputError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public InputError {
public:
    EmptyInput() : InputError("no valid enrollment rows") {}
};

class MalformedRow : public InputError {
public:
    MalformedRow(std::size_t row, const std::string &what)
        : InputError("row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// A community set does not partition the network's entities.
class PartitionMismatch : public Error {
public:
    using Error::Error;
};

class SameCommunity : public Error {
public:
    SameCommunity(Index a, Index b)
        : Error("entities " + std::to_string(a) + " and " + std::to_string(b) +
                " are in the same community") {}
};

class NoSwapPossible : public Error {
public:
    NoSwapPossible() : Error("no pair of entities in distinct communities") {}
};

class NonpositiveTemperature : public Error {
public:
    explicit NonpositiveTemperature(double t)
        : Error("temperature must be positive, got " + std::to_string(t)) {}
};

// Invalid parameter combination or option value.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace cohort

#endif // COHORT_COMMON_HPP
