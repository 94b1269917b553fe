#pragma once

#include <gmpxx.h>

namespace x0
{

/// Arbitrary-precision integer used for every coefficient.
using Integer = mpz_class;

} // namespace x0
