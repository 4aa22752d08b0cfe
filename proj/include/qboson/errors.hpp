#pragma once

#include <stdexcept>
#include <string>

namespace qboson {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// eval_at_one on a scalar whose reduced denominator vanishes at q = 1.
struct PoleAtOneError : Error {
  using Error::Error;
};

// A (1-q)-valuation request on a scalar outside the integral form A.
struct NotInIntegralFormError : Error {
  using Error::Error;
};

// A certified theorem-level property (LS support, divisibility, Jacobi, ...)
// failed on computed data.  Always indicates a bug upstream of the caller.
struct CertificateError : Error {
  using Error::Error;
};

// PBW elements from different bases/sides were mixed.
struct BasisMismatchError : Error {
  using Error::Error;
};

// A braid-constructed root vector kept stray F/K letters.
struct ImpureRootVectorError : Error {
  using Error::Error;
};

}  // namespace qboson
