#ifndef RESIDUA_SELFMAP_HPP
#define RESIDUA_SELFMAP_HPP

#include "residua/cochain.hpp"
#include "residua/connection.hpp"
#include "residua/residue.hpp"

#include <set>

namespace residua {

/// Holomorphic self-map fixing S pointwise: per chart, the n component
/// functions f^j in chart order. Maps defined only near parts of S are
/// allowed; charts where a push develops poles along S are marked undefined.
struct SelfMap {
    std::string name;
    std::map<std::string, std::vector<RationalFunction>> comps;
    std::set<std::string> undefined_charts;
};

SelfMap make_selfmap(const Atlas& atlas, const std::string& name,
                     const std::map<std::string, std::vector<RationalFunction>>& declared);

/// Order of contact nu_f = min_j ord(f^j - z^j); chart independence is
/// verified. The identity map has no order of contact.
unsigned order_of_contact(const Atlas& atlas, const SelfMap& f);

/// The canonical-section data: g-coefficients with f^j - z^j =
/// sum over ordered tuples g^j_{r_1..r_nu} z^{r_1}..z^{r_nu}, stored per
/// sorted multi-index (symmetric representative), plus the tangential flag.
struct ContactData {
    unsigned nu = 1;
    bool tangential = false;
    // chart -> sorted normal multi-index (size nu) -> n component functions
    std::map<std::string, std::map<std::vector<unsigned>, std::vector<RationalFunction>>> g;

    static unsigned multiplicity(const std::vector<unsigned>& idx);
    static std::vector<std::vector<unsigned>> multi_indices(size_t m, unsigned nu);
};

ContactData canonical_section(const Atlas& atlas, const SelfMap& f);

/// Canonical distribution: per chart, the generators [g]_1 d/dz (for
/// nu = 1 non-tangential maps, twisted by df), with the rank bound check,
/// the transformation residual check, and the dim-S-=-1 degeneracy locus.
struct DistributionReport {
    size_t rank = 0;  // C(m + nu - 1, nu)
    std::map<std::string, std::vector<std::vector<RationalFunction>>> generators;
    std::map<std::string, Polynomial> degeneracy;  // dim S = 1 only
    std::vector<std::string> transformation_failures;
    bool degenerate_everywhere = false;
};

DistributionReport canonical_distribution(const Atlas& atlas, const SelfMap& f,
                                          const ContactData& contact);

/// Frame change of the canonical-distribution frames across charts
/// (symmetrized products of the normal Jacobians).
FrameChange map_frame_change(const Atlas& atlas, const ContactData& contact);

/// Obstruction cocycle m_{AB} (slots Conormal x Normal x Coframe), in the
/// second chart's frames.
CochainValue m_cocycle(const Atlas& atlas, const SelfMap& f, const ContactData& contact,
                       const std::string& a, const std::string& b);

/// The codimension-one 0-cochain x of the explicit coboundary construction.
std::map<std::string, CochainValue> map_x_cochain(const Atlas& atlas, const SelfMap& f,
                                                  const ContactData& contact);

/// psi for codimension-one maps: the local splittings from the g-jets
/// corrected by the x cochain. Cross-chart compatibility is verified; a
/// model whose obstruction does not match is refused with the residual.
PsiMorphism psi_map_codim1(const Atlas& atlas, const SelfMap& f, const ContactData& contact);

} // namespace residua

#endif
