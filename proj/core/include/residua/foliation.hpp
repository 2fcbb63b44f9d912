#ifndef RESIDUA_FOLIATION_HPP
#define RESIDUA_FOLIATION_HPP

#include "residua/cochain.hpp"
#include "residua/connection.hpp"
#include "residua/residue.hpp"

#include <optional>

namespace residua {

/// A holomorphic foliation near S: per chart, l generator fields with
/// rational coefficients (components in chart order, normal block first).
/// Generators are declared in one chart and pushed through the transitions;
/// independence at a generic point and involutivity are checked symbolically.
///
/// The first-order lifting rho is always the standard one adapted to the
/// model's (splitting) atlas, so the atlas itself designates the lifting.
struct Foliation {
    std::string name;
    size_t dim = 1;
    std::map<std::string, std::vector<std::vector<RationalFunction>>> gens;
};

Foliation make_foliation(const Atlas& atlas, const std::string& name, size_t dim,
                         const std::string& declared_chart,
                         const std::vector<std::vector<RationalFunction>>& generators);

struct TangencyReport {
    bool tangent = true;
    std::vector<std::string> witnesses;
};

/// Tangent iff every generator's normal components lie in I_S.
TangencyReport tangency_classify(const Atlas& atlas, const Foliation& f);

struct SigmaReport {
    std::map<std::string, std::vector<std::vector<RationalFunction>>> gens_s;
    size_t generic_rank = 0;
    bool involutive = true;
    bool faithful = false;
    /// dim S = 1 only: per chart, the polynomial whose zeros are the
    /// degeneracy locus of F^sigma.
    std::map<std::string, Polynomial> degeneracy;
};

/// sigma-projection of the foliation under the standard lifting of the
/// atlas: drop normal components and restrict to S.
SigmaReport sigma_project(const Atlas& atlas, const Foliation& f);

/// The unique normalized local frame of the foliation: fields whose first
/// l tangential components form the identity block. The structural
/// frame-change identities are verified on every overlap.
struct CanonicalFrame {
    std::string chart;
    std::vector<std::vector<RationalFunction>> fields;  // l fields, chart components
};

CanonicalFrame canonical_frame(const Atlas& atlas, const Foliation& f, const std::string& chart);

/// Frame cocycle c_{from,to}: v_{from,q'} = sum_p c(p,q) v_{to,p'}, entries
/// near S as functions of to-chart variables.
Mat<RationalFunction> frame_cocycle(const Atlas& atlas, const Foliation& f,
                                    const std::string& from, const std::string& to);

/// Frame-change callback (restricted to S) for cochain transports.
FrameChange foliation_frame_change(const Atlas& atlas, const Foliation& f);

/// Transfer section T in a chart: slots (Coframe, Normal); zero iff tangent.
CochainValue transfer_section(const Atlas& atlas, const Foliation& f, const std::string& chart);

/// Obstruction cocycle f_{AB} (slots Conormal x Frame x Coframe) and its
/// push T_*(f) (slots Conormal x Normal x Coframe). Tangential foliations
/// yield zero. The transversal case needs a comfortable atlas.
CochainValue f_cocycle(const Atlas& atlas, const Foliation& f, const std::string& a,
                       const std::string& b);
CochainValue f_cocycle_pushed(const Atlas& atlas, const Foliation& f, const std::string& a,
                              const std::string& b);

/// psi for tangential foliations from the canonical frames; global without
/// any hypothesis on the embedding, flat along the foliation.
PsiMorphism psi_tangential(const Atlas& atlas, const Foliation& f);

/// psi from global generators through pi~; needs a comfortable atlas and a
/// faithful sigma-projection.
PsiMorphism psi_from_global_generators(const Atlas& atlas, const Foliation& f);

struct CsIndex {
    GaussianRational value;
    std::optional<std::string> warning;
};

/// Camacho-Sad index at a point of S (dim S = 1, m = 1, tangent line
/// field): Res_p( d(a^1/a^2)/dz^1 |_S dz^2 ).
CsIndex camacho_sad_index(const Atlas& atlas, const Foliation& f, const std::string& chart,
                          const GaussianRational& p);

/// Localized residue at an isolated zero of the direction field via the
/// Grothendieck engine: phi(C) over the tangential components of the
/// direction. phi must have degree dim S (and more than dim S - l).
GaussianRational localized_residue(const Atlas& atlas, const PsiMorphism& psi,
                                   const std::string& chart,
                                   const std::vector<RationalFunction>& direction,
                                   const PhiSpec& phi, size_t rank,
                                   const std::map<std::string, GaussianRational>& point);

} // namespace residua

#endif
