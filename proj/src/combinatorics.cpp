#include "misolab/combinatorics.hpp"

namespace misolab {

mpz_class falling_factorial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class out = 1;
  for (unsigned long j = 0; j < k; ++j) out *= n - j;
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace misolab
