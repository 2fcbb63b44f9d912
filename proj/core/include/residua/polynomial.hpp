#ifndef RESIDUA_POLYNOMIAL_HPP
#define RESIDUA_POLYNOMIAL_HPP

#include "residua/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace residua {

/// Sparse multivariate polynomial over Q(i).
///
/// Variables are kept sorted by name; exponent vectors are aligned to that
/// list and trailing unused variables are trimmed, so equal polynomials
/// have identical representations. Term order everywhere is graded lex on
/// the sorted variable list.
class Polynomial {
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, GaussianRational>;

    Polynomial() = default;
    explicit Polynomial(const GaussianRational& c);
    explicit Polynomial(long n) : Polynomial(GaussianRational(n)) {}

    static Polynomial variable(const std::string& name);
    static Polynomial monomial(const std::vector<std::string>& vars, const Exponents& e,
                               const GaussianRational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussianRational constant_value() const;  // 0 for the zero polynomial
    bool uses(const std::string& var) const;

    unsigned total_degree() const;  // 0 for constants and zero
    unsigned degree_in(const std::string& var) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial operator*(const GaussianRational& c) const;
    Polynomial pow(unsigned k) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial derivative(const std::string& var) const;
    /// Substitute polynomials for variables. Unassigned variables stay.
    Polynomial substitute_poly(const std::map<std::string, Polynomial>& a) const;
    /// Set the given variables to zero.
    Polynomial restrict_zero(const std::vector<std::string>& vars) const;

    /// Least total degree in `nvars` over all terms; nullopt for zero.
    std::optional<unsigned> order_in(const std::vector<std::string>& nvars) const;
    /// Expansion as a polynomial in `nvars`: exponent vector (aligned to
    /// nvars) -> coefficient polynomial in the remaining variables.
    std::map<Exponents, Polynomial> expand_in(const std::vector<std::string>& nvars) const;

    /// Leading coefficient/term in graded lex.
    GaussianRational leading_coefficient() const;

    static Polynomial gcd(const Polynomial& a, const Polynomial& b);
    /// Exact division; nullopt when b does not divide a.
    static std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

    /// Align this polynomial's variable list to a superset list (sorted).
    Polynomial aligned_to(const std::vector<std::string>& vars) const;

private:
    void normalize();  // drop zero terms, trim unused variables
    static void align(Polynomial& a, Polynomial& b);

    std::vector<std::string> vars_;  // sorted, unique
    TermMap terms_;                  // exponents aligned to vars_
};

/// true if a comes before b in graded lex (total degree, then lex).
bool grlex_less(const Polynomial::Exponents& a, const Polynomial::Exponents& b);

} // namespace residua

#endif
