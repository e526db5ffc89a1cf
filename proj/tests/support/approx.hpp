#pragma once

#include <doctest.h>

// doctest's Approx defaults to scale = 1.0, which turns epsilon into an
// absolute floor and makes comparisons of tiny magnitudes (1e-27 J and the
// like) pass vacuously. RelApprox zeroes the scale so epsilon is a true
// relative tolerance.
inline doctest::Approx RelApprox(double value) {
    return doctest::Approx(value).scale(0.0);
}
