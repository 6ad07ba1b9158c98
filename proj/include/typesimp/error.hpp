#pragma once

#include <stdexcept>
#include <string>

namespace typesimp
{

/// Base class for every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or type invariant.
class invalid_argument : public error
{
public:
    using error::error;
};

/// A computation would exceed a configured size budget.
class budget_exceeded : public error
{
public:
    using error::error;
};

} // namespace typesimp
