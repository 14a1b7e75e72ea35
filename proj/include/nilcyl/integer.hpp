#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nilcyl {

using Integer = mpz_class;

// Generalized binomial coefficient; valid for negative n.
Integer binomial(const Integer &n, unsigned k);

inline std::string to_string(const Integer &z) { return z.get_str(); }

inline bool fits_long(const Integer &z) { return z.fits_slong_p(); }

} // namespace nilcyl
