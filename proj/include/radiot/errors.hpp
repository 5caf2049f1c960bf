#ifndef RADIOT_ERRORS_HPP
#define RADIOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace radiot {

// Error categories map 1:1 onto the C API status codes.
enum class ErrorKind {
    config = 1,    // bad configuration / schedule / parameters
    io = 2,        // filesystem and stream failures
    format = 3,    // malformed waterfall files, CSV, JSON documents
    training = 4,  // optimizer divergence and friends
    internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ErrorKind::config, msg) {}
};
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorKind::io, msg) {}
};
struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(ErrorKind::format, msg) {}
};
struct TrainingError : Error {
    explicit TrainingError(const std::string& msg) : Error(ErrorKind::training, msg) {}
};

}  // namespace radiot

#endif  // RADIOT_ERRORS_HPP
