#pragma once

#include <gmpxx.h>

namespace misolab {

/// (n)_k = n(n−1)…(n−k+1); 1 for k = 0 and 0 whenever k > n.
mpz_class falling_factorial(unsigned long n, unsigned long k);

mpz_class binomial(unsigned long n, unsigned long k);

mpz_class factorial(unsigned long n);

}  // namespace misolab
