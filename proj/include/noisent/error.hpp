// error.hpp — exception type shared by every noisent module

#pragma once

#include <stdexcept>
#include <string>

namespace noisent {

enum class ErrorKind {
    DimensionMismatch,
    IndexOutOfRange,
    NotHermitian,
    NotPositive,
    InvalidState,
    InvalidNoise,
    ZeroCoupling,
    StateCorrupted,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace noisent
