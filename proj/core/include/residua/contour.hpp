#ifndef RESIDUA_CONTOUR_HPP
#define RESIDUA_CONTOUR_HPP

#include "residua/residue.hpp"

#include <complex>

namespace residua {

/// Floating-point contour oracle; test-only, never feeds verification
/// verdicts. Torus-product quadrature of the residue integrand around the
/// point, with an error estimate from doubling the sample count.
struct ContourResult {
    std::complex<double> value;
    double error_estimate;
};

ContourResult contour_residue_numeric(const GrothendieckData& data,
                                      const std::vector<double>& radii, unsigned samples);

ContourResult contour_residue_numeric_1d(const OneForm1D& form, const GaussianRational& point,
                                         double radius, unsigned samples);

} // namespace residua

#endif
