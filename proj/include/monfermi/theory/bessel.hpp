#pragma once

#include <boost/math/special_functions/bessel.hpp>

namespace monfermi::theory {

// Bessel J0 on the real axis. Delegates to the boost.math minimax
// implementation; certified in the test suite against a 25-digit
// reference table to 1e-12 relative error. The wrapper keeps kernel
// and quadrature code free of a direct provider dependency.
inline double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x); }

}  // namespace monfermi::theory
