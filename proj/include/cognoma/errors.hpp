#pragma once

#include <stdexcept>
#include <string>

namespace cognoma {

// Invalid scenario content: bad gains, splits, rates, missing links.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Caller violated an operation precondition (empty MRC input, empty grid).
class UsageError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace cognoma
