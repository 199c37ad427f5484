#include "lgsim/measurement.hpp"

#include "lgsim/errors.hpp"

namespace lgsim {

Mat2c MeasurementPair::w_plus() const {
    return mat2_add(mat2_scale(pi_plus, 0.5 * (1.0 + xi)),
                    mat2_scale(pi_minus, 0.5 * (1.0 - xi)));
}

Mat2c MeasurementPair::w_minus() const {
    return mat2_add(mat2_scale(pi_plus, 0.5 * (1.0 - xi)),
                    mat2_scale(pi_minus, 0.5 * (1.0 + xi)));
}

Mat2c MeasurementPair::effect(int outcome) const {
    if (xi == 1.0) return outcome > 0 ? pi_plus : pi_minus;
    return outcome > 0 ? w_plus() : w_minus();
}

MeasurementPair MeasurementPair::sharp() {
    MeasurementPair p;
    p.pi_plus = ground_density();    // outcome +1 <-> |g>
    p.pi_minus = excited_density();  // outcome -1 <-> |e>
    p.xi = 1.0;
    return p;
}

MeasurementPair MeasurementPair::weak(double xi) {
    if (!(xi > 0.0 && xi <= 1.0))
        throw InvalidParams("measurement sharpness xi must be in (0, 1]");
    MeasurementPair p = sharp();
    p.xi = xi;
    return p;
}

}  // namespace lgsim
