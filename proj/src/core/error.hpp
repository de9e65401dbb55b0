#pragma once

#include <stdexcept>
#include <string>

namespace dpua {

// Error taxonomy shared across the library. The C API maps categories to
// status codes; the CLI maps them to exit codes.
enum class ErrorCode {
    InvalidArgument,   // bad parameters, malformed config, violated preconditions
    Io,                // filesystem and serialization failures
    Parse,             // malformed datasets, checkpoints, configs
    Training,          // failures inside a training loop
    Judge,             // remote judge unavailable or malformed replies
    State,             // run-directory locking, resume conflicts
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace dpua
