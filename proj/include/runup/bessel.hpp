#pragma once

namespace runup::special {

// Bessel functions of the first kind, orders 0 and 1.
double j0(double x);
double j1(double x);

// J1(x)/x, continuous through x = 0 where the limit is 1/2.
double j1_over_x(double x);

}
