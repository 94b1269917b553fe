#pragma once

#include <stdexcept>
#include <string>

namespace x0
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A coefficient was requested beyond the exactness bound of a series.
class PrecisionExceeded : public Error
{
public:
    using Error::Error;
};

/// Series inversion over the integers needs a leading coefficient of +1 or -1.
class NonUnitLeading : public Error
{
public:
    using Error::Error;
};

/// Two routes to the same quantity disagreed. Always an implementation bug.
class InternalInconsistency : public Error
{
public:
    using Error::Error;
};

/// dim M_12 + genus - 1 did not reproduce the index.
class IdentityViolation : public Error
{
public:
    using Error::Error;
};

/// The monomial matrix has full column rank: no relation exists at these bounds.
class KernelEmpty : public Error
{
public:
    using Error::Error;
};

/// The monomial matrix kernel has dimension greater than one.
class KernelTooLarge : public Error
{
public:
    using Error::Error;
};

} // namespace x0
