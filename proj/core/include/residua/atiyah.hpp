#ifndef RESIDUA_ATIYAH_HPP
#define RESIDUA_ATIYAH_HPP

#include "residua/atlas.hpp"
#include "residua/linalg.hpp"

namespace residua {

/// Element of the Atiyah sheaf A = T^S_{M,S(1)} / I_S T^S_{M,S(1)} in the
/// canonical local frame: b^p are the coefficients of pi(d/dz^p) over the
/// tangential block, e(r,s) the coefficients of pi([z^s]_2 d/dz^r) over the
/// normal block. ker(theta_1) = Hom(N_S, N_S) is literally the e matrix.
struct AtiyahElement {
    std::string chart;
    std::vector<RationalFunction> b;  // dim S entries, functions on S
    Mat<RationalFunction> e;          // m x m

    bool is_zero() const;
    friend AtiyahElement operator+(const AtiyahElement& x, const AtiyahElement& y);
    friend AtiyahElement operator-(const AtiyahElement& x, const AtiyahElement& y);
    AtiyahElement scaled(const RationalFunction& f) const;
    friend bool operator==(const AtiyahElement& x, const AtiyahElement& y) {
        return x.chart == y.chart && x.b == y.b && x.e == y.e;
    }
    std::string to_string() const;
};

/// Quotient projection pi applied to a vector field along S, given by exact
/// rational components in chart order (normal block first). The normal
/// components must vanish on S; offenders are named.
AtiyahElement atiyah_project(const Atlas& atlas, const std::string& chart,
                             const std::vector<RationalFunction>& comps);

/// The extension pi~ of pi to all first-order jet fields, available when S
/// is comfortably embedded (checked; refusal carries the classification).
/// Agrees with atiyah_project on fields tangent along S.
AtiyahElement tilde_pi(const Atlas& atlas, const std::string& chart,
                       const std::vector<RationalFunction>& comps);

/// A representative jet field of the element: b^p d/dz^p + e(r,s) z^s d/dz^r.
std::vector<RationalFunction> atiyah_representative(const Atlas& atlas, const AtiyahElement& q);

/// The A frame change across an overlap (representative transport + re-projection).
AtiyahElement transport_atiyah(const Atlas& atlas, const AtiyahElement& q,
                               const std::string& to_chart);

/// Universal holomorphic theta_1-connection evaluated on the normal frame:
/// the m components of Xtilde_q(zeta_r) = p_2([v, d/dz^r]) with pi(v) = q.
std::vector<RationalFunction> universal_connection(const AtiyahElement& q, size_t r);

} // namespace residua

#endif
