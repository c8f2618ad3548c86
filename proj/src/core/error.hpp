#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fpcav {

enum class ErrorCode {
    invalid_argument,
    domain,
    unstable,
    no_solution,
    calibration,
    fit,
    format,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace fpcav
