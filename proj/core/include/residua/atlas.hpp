#ifndef RESIDUA_ATLAS_HPP
#define RESIDUA_ATLAS_HPP

#include "residua/rational_function.hpp"

#include <map>
#include <string>
#include <vector>

namespace residua {

/// Adapted chart: variables split into the normal block z' (cutting out S)
/// and the tangential block z''.
struct Chart {
    std::string name;
    std::vector<std::string> normal_vars;
    std::vector<std::string> tangential_vars;

    std::vector<std::string> all_vars() const;
    size_t codim() const { return normal_vars.size(); }
    size_t dim_s() const { return tangential_vars.size(); }
};

/// Invertible rational transition between two charts. `forward` maps each
/// target-chart variable to a rational function of the source variables.
struct TransitionMap {
    std::string from, to;
    std::map<std::string, RationalFunction> forward;
    std::map<std::string, RationalFunction> backward;
};

/// The manifold model: adapted charts plus invertible transitions, closed
/// under inversion. Overlaps are formal (a transition defines the overlap).
class Atlas {
public:
    Atlas(std::vector<Chart> charts, std::vector<TransitionMap> transitions);

    size_t codim() const { return codim_; }
    const std::vector<Chart>& charts() const { return charts_; }
    const Chart& chart(const std::string& name) const;
    bool has_chart(const std::string& name) const;

    bool has_transition(const std::string& from, const std::string& to) const;
    const TransitionMap& transition(const std::string& from, const std::string& to) const;
    /// All ordered pairs with a transition.
    std::vector<std::pair<std::string, std::string>> overlaps() const;

    /// d (to-chart variable) / d (from-chart variable), as a function of the
    /// from-chart variables.
    RationalFunction jacobian(const std::string& from, const std::string& to,
                              const std::string& target_var, const std::string& source_var) const;

    /// Restriction to S in a chart (normal variables set to zero).
    RationalFunction on_s(const RationalFunction& f, const std::string& chart) const;

    /// Re-express a function on S given in `from`'s tangential coordinates
    /// in `to`'s tangential coordinates (via the overlap transition).
    RationalFunction s_to_chart(const RationalFunction& f, const std::string& from,
                                const std::string& to) const;

    /// Push a vector field (components in from-chart order, functions of
    /// from-chart vars) through the transition; result components are in
    /// to-chart order as functions of to-chart vars.
    std::vector<RationalFunction> push_field(const std::vector<RationalFunction>& comps,
                                             const std::string& from,
                                             const std::string& to) const;

private:
    void validate();
    std::vector<Chart> charts_;
    std::map<std::pair<std::string, std::string>, TransitionMap> transitions_;
    size_t codim_ = 0;
};

/// Embedding classification with failure witnesses.
struct EmbeddingReport {
    bool adapted = true;
    bool splitting = true;
    bool two_splitting = true;
    bool comfortable = true;
    bool two_linearizable = true;

    struct Witness {
        std::string flag;  // which check failed
        std::string from, to;
        std::string detail;  // the offending derivative expression
    };
    std::vector<Witness> witnesses;

    std::string to_string() const;
};

/// Splitting: d(target tangential)/d(source normal) vanishes on S.
/// 2-splitting: same derivative lies in I_S^2.
/// Comfortable: splitting plus second normal derivatives of target normals in I_S.
/// 2-linearizable: 2-splitting and comfortable.
EmbeddingReport classify_atlas(const Atlas& atlas);

/// Degree of N_S for a two-chart rational-curve model (m = 1, dim S = 1,
/// tangential transition w = 1/y): order of vanishing at w = 0 of the
/// normal-frame change c with d_{1,from} = c * d_{1,to}.
/// Anchors: blow-up exceptional divisor -> -1, line in P^2 -> +1.
int normal_bundle_degree(const Atlas& atlas);

} // namespace residua

#endif
