#ifndef RESIDUA_JET_HPP
#define RESIDUA_JET_HPP

#include "residua/rational_function.hpp"

namespace residua {

/// Element of O_M/I_S^k in an adapted chart: a polynomial of normal-degree
/// < k in the normal variables whose coefficients are rational functions of
/// the tangential variables. Tangential directions are never truncated.
class NormalJet {
public:
    using Exponents = std::vector<unsigned>;

    NormalJet(std::vector<std::string> normal_vars, unsigned order);

    const std::vector<std::string>& normal_vars() const { return normal_vars_; }
    unsigned order() const { return order_; }
    const std::map<Exponents, RationalFunction>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient at the given normal exponents (zero if absent).
    RationalFunction coeff(const Exponents& e) const;
    void set_coeff(const Exponents& e, RationalFunction v);
    /// Restriction to S: the constant-normal-degree coefficient.
    RationalFunction restrict_to_s() const { return coeff(Exponents(normal_vars_.size(), 0)); }
    /// Least normal degree present; nullopt for the zero jet.
    std::optional<unsigned> order_of_vanishing() const;

    NormalJet operator-() const;
    NormalJet& operator+=(const NormalJet& o);
    NormalJet& operator-=(const NormalJet& o);
    friend NormalJet operator+(NormalJet a, const NormalJet& b) { return a += b; }
    friend NormalJet operator-(NormalJet a, const NormalJet& b) { return a -= b; }
    NormalJet mul(const NormalJet& o) const;      // truncates at min(order, o.order)
    NormalJet scale(const RationalFunction& c) const;
    NormalJet truncate(unsigned order) const;     // project to lower order

    friend bool operator==(const NormalJet& a, const NormalJet& b) {
        return a.normal_vars_ == b.normal_vars_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    /// As one rational function (coefficients times normal monomials).
    RationalFunction to_rational() const;

    std::string to_string() const;

private:
    void drop_zeros();
    std::vector<std::string> normal_vars_;
    unsigned order_;
    std::map<Exponents, RationalFunction> coeffs_;  // total degree < order_
};

/// Taylor-expand p to normal-degree < k along {normal_vars = 0} (theta_k).
/// Throws "not regular along S" when the denominator vanishes on S.
NormalJet jet_project(const RationalFunction& p, const std::vector<std::string>& normal_vars,
                      unsigned order);

/// Multiplicative inverse modulo I^k; requires the restriction to S to be
/// a nonzero rational function.
NormalJet jet_invert(const NormalJet& j);

} // namespace residua

#endif
