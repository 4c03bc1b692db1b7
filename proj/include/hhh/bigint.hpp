#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>

namespace hhh {

// GMP-backed integer without expression templates so it composes with Eigen
// and with plain `auto`.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

}  // namespace hhh
