#pragma once

#include <stdexcept>
#include <string>

namespace lqrl {

// Error categories map 1:1 onto CLI exit codes:
//   ConfigError -> 2, NumericError -> 3, IoError -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration, agent file content, or violated parameter invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Non-finite state, divergent training, or other numeric failure.
class NumericError : public Error {
public:
    using Error::Error;
};

// File system failures and malformed data files.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lqrl
