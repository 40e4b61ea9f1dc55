#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <complex>

#include "hypermono/error.hpp"
#include "hypermono/odeflow/series.hpp"

namespace hypermono::odeflow {

/// z^T = exp((log z) T) on the given sheet of the logarithm: sheet 0 is the
/// principal branch, sheet k adds 2 pi i k (k counterclockwise turns about 0).
inline CMatrix matrix_power(const CMatrix& t, Complex z, int sheet = 0) {
  if (z == Complex(0.0)) fail(ErrorKind::InvalidArgument, "z^T is undefined at z = 0");
  const Complex log_z = std::log(z) + Complex(0.0, kTwoPi * sheet);
  return (log_z * t).exp();
}

/// exp(2 pi i T), the monodromy of z^T around 0.
inline CMatrix exp_two_pi_i(const CMatrix& t) { return (Complex(0.0, kTwoPi) * t).exp(); }

}  // namespace hypermono::odeflow
