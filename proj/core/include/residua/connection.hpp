#ifndef RESIDUA_CONNECTION_HPP
#define RESIDUA_CONNECTION_HPP

#include "residua/atiyah.hpp"

#include <map>

namespace residua {

/// A splitting morphism psi: F -> A with theta_1 o psi = id, stored by its
/// values on a chosen frame of F per chart. Frame elements are vector
/// fields on S (components over the tangential block).
struct PsiMorphism {
    struct Image {
        std::vector<RationalFunction> frame_field;  // dim S components on S
        AtiyahElement value;
    };
    std::map<std::string, std::vector<Image>> per_chart;

    size_t rank() const;
    const std::vector<Image>& images(const std::string& chart) const;
};

/// Express an S-vector field as a combination of the psi frame in a chart.
std::vector<RationalFunction> frame_coordinates(const Atlas& atlas, const PsiMorphism& psi,
                                                const std::string& chart,
                                                const std::vector<RationalFunction>& field);

/// psi applied to an arbitrary section of F (O_S-linear extension).
AtiyahElement psi_apply(const Atlas& atlas, const PsiMorphism& psi, const std::string& chart,
                        const std::vector<RationalFunction>& field);

/// theta_1 o psi = id: the tangential part of every image must reproduce
/// its frame element. Throws with a witness otherwise.
void check_theta1_section(const PsiMorphism& psi);

/// Cross-chart compatibility: images transform by the A frame change on
/// every overlap. Returns the offending description, or nullopt when fine.
std::optional<std::string> psi_overlap_residual(const Atlas& atlas, const PsiMorphism& psi);

/// Matrix C of the partial holomorphic connection induced by psi in a frame
/// direction, in the normal frame of the chart: C(s,r) carries
/// Xpsi_dir(zeta_r) = C(s,r) zeta_s. Sign fixed so that for a tangent line
/// field a^1 d_1 + a^2 d_2 the 1x1 matrix is a^2 d(a^1/a^2)/dz^1 |_S, the
/// classical Camacho-Sad kernel.
Mat<RationalFunction> connection_matrix(const Atlas& atlas, const PsiMorphism& psi,
                                        const std::string& chart,
                                        const std::vector<RationalFunction>& direction);

/// Curvature of the psi-connection on the frame pair (i, j) of a chart.
/// The frame must be involutive (bracket inside the frame span).
Mat<RationalFunction> curvature(const Atlas& atlas, const PsiMorphism& psi,
                                const std::string& chart, size_t i, size_t j);

/// Bracket of two S-vector fields (components over the tangential block).
std::vector<RationalFunction> s_bracket(const std::vector<std::string>& tangential_vars,
                                        const std::vector<RationalFunction>& u,
                                        const std::vector<RationalFunction>& v);

} // namespace residua

#endif
