#ifndef LGSIM_DENSITY_HPP
#define LGSIM_DENSITY_HPP

// 2x2 density matrices in the {|e>, |g>} basis:
//   rho = [[ (1+v3)/2, (v1 - i v2)/2 ],
//          [ (v1 + i v2)/2, (1-v3)/2 ]]
// so rho[0] is the excited population and rho[3] the ground population.

#include "lgsim/bloch.hpp"
#include "lgsim/smallmat.hpp"

namespace lgsim {

Mat2c density_from_bloch(const BlochVector& v);
BlochVector bloch_from_density(const Mat2c& rho);

Mat2c ground_density();   // |g><g|
Mat2c excited_density();  // |e><e|

double ground_population(const Mat2c& rho);

// |trace - 1|
double trace_error(const Mat2c& rho);
// max entry deviation from rho = rho^dagger
double hermiticity_error(const Mat2c& rho);
// smaller eigenvalue of the Hermitian part
double min_eigenvalue(const Mat2c& rho);

struct DensityTolerances {
    double trace = 1e-12;
    double hermiticity = 1e-12;
    double positivity = 1e-10;  // eigenvalues may dip to -positivity
};

// Throws PhysicsError if rho is not a density matrix within tolerances.
void validate_density(const Mat2c& rho, const DensityTolerances& tol = {});

// Coherence parameter C = sum_{i != j} |rho_ij| (= 2 |rho_eg| for a valid
// state). Rejects input whose Hermiticity error exceeds 1e-10.
double coherence(const Mat2c& rho);

// Coherence of the state described by a Bloch vector: |v1 + i v2|.
double coherence(const BlochVector& v);

}  // namespace lgsim

#endif
