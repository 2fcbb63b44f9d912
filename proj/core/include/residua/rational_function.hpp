#ifndef RESIDUA_RATIONAL_FUNCTION_HPP
#define RESIDUA_RATIONAL_FUNCTION_HPP

#include "residua/polynomial.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace residua {

/// Exact rational function over Q(i): numerator/denominator pair kept
/// content-reduced with a grlex-monic denominator, so representations are
/// canonical and equality is structural.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(GaussianRational(1)) {}
    RationalFunction(const Polynomial& p) : num_(p), den_(GaussianRational(1)) {}
    RationalFunction(Polynomial num, Polynomial den);
    explicit RationalFunction(const GaussianRational& c)
        : num_(c), den_(GaussianRational(1)) {}
    explicit RationalFunction(long n) : num_(GaussianRational(n)), den_(GaussianRational(1)) {}

    static RationalFunction variable(const std::string& name) {
        return RationalFunction(Polynomial::variable(name));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GaussianRational constant_value() const;
    bool is_polynomial() const { return den_.is_constant(); }

    std::vector<std::string> vars() const;

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    RationalFunction inverse() const;
    RationalFunction pow(int k) const;

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string to_string() const;

    /// Numeric evaluation for the floating-point contour oracle only.
    std::complex<double> eval_double(const std::map<std::string, std::complex<double>>& point) const;

private:
    void normalize();
    Polynomial num_, den_;
};

// --- exact-algebra operations -----------------------------------------------

/// Exact formal partial derivative (quotient rule, normalized).
RationalFunction differentiate(const RationalFunction& p, const std::string& var);

/// Exact composition; `assignment` must cover every variable of p.
/// Throws if the composed denominator is identically zero.
RationalFunction substitute(const RationalFunction& p,
                            const std::map<std::string, RationalFunction>& assignment);

/// Restrict to {vars = 0}; throws when the denominator vanishes there.
RationalFunction restrict_zero(const RationalFunction& p, const std::vector<std::string>& vars);

/// Largest mu with p in I^mu for the monomial ideal (normal_vars);
/// nullopt encodes infinity (p = 0). Requires p regular along {normal_vars=0}.
std::optional<unsigned> ideal_order(const RationalFunction& p,
                                    const std::vector<std::string>& normal_vars);

/// Exact evaluation at a Gaussian-rational point (partial assignments allowed:
/// unassigned variables remain symbolic). Throws when a denominator vanishes.
RationalFunction evaluate(const RationalFunction& p,
                          const std::map<std::string, GaussianRational>& point);

} // namespace residua

#endif
