#pragma once

#include <stdexcept>
#include <string>

namespace lcqp
{

struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Shape, range or finiteness violation in user-supplied data.
struct ValidationError : Error
{
    using Error::Error;
};

// Malformed instance or solution file.
struct ParseError : Error
{
    using Error::Error;
};

// Input is valid but the requested transform does not support it.
struct UnsupportedError : Error
{
    using Error::Error;
};

// Inconsistent solver settings.
struct ConfigError : Error
{
    using Error::Error;
};

// A contraction produced only zeros or non-finite values. Raised by the
// native backends when tau is too large for double range; the log-domain
// backend never raises it.
struct NumericRangeError : Error
{
    using Error::Error;
};

// Brute-force search space exceeds the configured guard.
struct GuardError : Error
{
    using Error::Error;
};

} // namespace lcqp
