#include "runup/bessel.hpp"

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

namespace runup::special {

double j0(double x) { return boost::math::cyl_bessel_j(0, x); }

double j1(double x) { return boost::math::cyl_bessel_j(1, x); }

double j1_over_x(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-2) {
        // J1(x)/x = 1/2 - x^2/16 + x^4/384 - x^6/18432; next term ~ 1e-18 at |x| = 0.01
        const double x2 = x * x;
        return 0.5 + x2 * (-1.0 / 16.0 + x2 * (1.0 / 384.0 - x2 / 18432.0));
    }
    return boost::math::cyl_bessel_j(1, x) / x;
}

}
