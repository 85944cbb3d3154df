#ifndef GREYCAST_ERRORS_HPP
#define GREYCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace greycast {

// Error categories map onto CLI exit codes: config=2, data=3, numeric=4.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace greycast

#endif
