#ifndef RESIDUA_RESIDUE_HPP
#define RESIDUA_RESIDUE_HPP

#include "residua/linalg.hpp"
#include "residua/rational_function.hpp"

#include <map>

namespace residua {

/// coefficient * d(variable) on a one-dimensional S.
struct OneForm1D {
    std::string var;
    RationalFunction coeff;
};

/// Coefficient of (y - p)^{-1} in the exact Laurent expansion at p.
GaussianRational residue_at_point_1d(const OneForm1D& form, const GaussianRational& p);

/// Exact sum of the point residues over all roots of `factor` (no root
/// extraction): Hermite-style reduction to simple poles, then the trace
/// form on Q(i)[y]/(factor). `factor` must divide the squarefree part of
/// the denominator.
GaussianRational residue_total_1d(const OneForm1D& form, const Polynomial& factor);

/// Data of a multivariate Grothendieck residue at an isolated common zero.
struct GrothendieckData {
    std::vector<std::string> vars;                  // n - m integration variables
    std::map<std::string, GaussianRational> point;  // common zero of the denominators
    std::vector<Polynomial> denominators;           // regular sequence at the point
    RationalFunction numerator;                     // regular at the point
};

/// Exact Grothendieck residue via the transformation law: find N and a
/// polynomial matrix A with (z_i - p_i)^N = sum_j A_ij a_j, then read the
/// coefficient of prod (z_i - p_i)^{N-1} in numerator * det A. The search
/// cap on N defaults to 12 and can be overridden with RESIDUA_NCAP.
GaussianRational grothendieck_residue(const GrothendieckData& data);

/// Split off the Gaussian-rational roots of a squarefree univariate
/// polynomial. `leftover` receives the product of the factors whose roots
/// are not Gaussian rational (or whose coefficient norms defeat the
/// bounded divisor search); those are handled as clusters by the trace form.
std::vector<GaussianRational> gaussian_rational_roots(const Polynomial& p,
                                                      const std::string& var,
                                                      Polynomial& leftover);

/// Squarefree part of a univariate polynomial.
Polynomial squarefree_part(const Polynomial& p, const std::string& var);

/// Symmetric-polynomial selection: a product of elementary symmetric
/// polynomials e_{k} with multiplicities; degree = sum of the k's.
struct PhiSpec {
    std::vector<unsigned> elementary_factors;  // e.g. {1,1} = e_1^2, {2} = e_2

    unsigned degree() const;
    static PhiSpec c1_power(unsigned d);  // e_1^d
    /// Evaluate on the eigenvalues of C (via exact principal minors).
    RationalFunction evaluate(const Mat<RationalFunction>& c) const;
    std::string to_string() const;
};

} // namespace residua

#endif
