#ifndef RESIDUA_RATIONAL_HPP
#define RESIDUA_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace residua {

/// Error type for all domain violations raised by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Exact complex scalar a + b*i with rational a, b. The coefficient field
/// for every symbolic object in the engine; nothing here ever rounds.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(const mpq_class& re) : re_(re), im_(0) { canon(); }
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) { canon(); }
    GaussianRational(long num, long den);

    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational operator-() const { return GaussianRational(mpq_class(-re_), mpq_class(-im_)); }
    GaussianRational conj() const { return GaussianRational(re_, mpq_class(-im_)); }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    GaussianRational inverse() const;

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    /// Total order (re, then im); used only as a container key.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    /// Canonical wire form "p/q+r/si", e.g. "1/2-3/4i", "2/1+0/1i".
    std::string to_wire() const;
    static GaussianRational from_wire(const std::string& s);

    /// Human form used by the expression serializer: "2", "-3/2", "i",
    /// "2i", "1/2i", or "(1/2+1/2i)" for mixed values.
    std::string to_pretty() const;

    double re_double() const { return re_.get_d(); }
    double im_double() const { return im_.get_d(); }

private:
    void canon() { re_.canonicalize(); im_.canonicalize(); }
    mpq_class re_, im_;
};

/// Parse "p", "p/q", with optional sign, into an exact rational.
mpq_class parse_rational(const std::string& s);
std::string rational_to_string(const mpq_class& q);

/// gcd in the Gaussian integers (up to units), by Euclidean division.
void gaussian_int_gcd(mpz_class& gr, mpz_class& gi, const mpz_class& br, const mpz_class& bi);

/// A scalar c such that dividing the values by c leaves primitive Gaussian
/// integers; used to keep pseudo-remainder sequences small. Zero inputs
/// yield one.
GaussianRational scalar_content(const std::vector<GaussianRational>& values);

} // namespace residua

#endif
