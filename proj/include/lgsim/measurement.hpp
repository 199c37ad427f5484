#ifndef LGSIM_MEASUREMENT_HPP
#define LGSIM_MEASUREMENT_HPP

// Two-outcome measurement of M = |g><g| - |e><e|: sharp projectors
// Pi+ = |g><g|, Pi- = |e><e| and their unsharp counterparts
// W+- = ((1 +- xi)/2) Pi+ + ((1 -+ xi)/2) Pi- with sharpness xi in (0, 1].
// xi = 1 recovers the projective pair.

#include "lgsim/density.hpp"
#include "lgsim/smallmat.hpp"

namespace lgsim {

struct MeasurementPair {
    Mat2c pi_plus;   // outcome +1 projector, |g><g|
    Mat2c pi_minus;  // outcome -1 projector, |e><e|
    double xi = 1.0;

    Mat2c w_plus() const;
    Mat2c w_minus() const;
    // Kraus/effect operator for outcome +1/-1 at this sharpness
    // (w_plus/w_minus; equals pi_plus/pi_minus when xi = 1).
    Mat2c effect(int outcome) const;

    static MeasurementPair sharp();
    // Throws InvalidParams unless 0 < xi <= 1.
    static MeasurementPair weak(double xi);
};

}  // namespace lgsim

#endif
