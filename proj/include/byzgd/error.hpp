#ifndef BYZGD_ERROR_HPP
#define BYZGD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace byzgd {

// Bad caller input: dimensions, ranges, malformed batches.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Ill-conditioned or non-finite numerics discovered at runtime.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem problems, always carrying the offending path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what, const std::string& path)
        : std::runtime_error(what + ": " + path), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace byzgd

#endif
