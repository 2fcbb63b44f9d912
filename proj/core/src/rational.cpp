#include "residua/rational.hpp"

namespace residua {

GaussianRational::GaussianRational(long num, long den) : re_(num, den), im_(0) {
    if (den == 0) throw Error("rational with zero denominator");
    re_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    im_ = i;
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw Error("division by zero (Gaussian rational)");
    mpq_class n = re_ * re_ + im_ * im_;
    return GaussianRational(mpq_class(re_ / n), mpq_class(-im_ / n));
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

std::string rational_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::to_wire() const {
    std::string s = re_.get_num().get_str() + "/" + re_.get_den().get_str();
    if (sgn(im_) >= 0) s += "+";
    s += im_.get_num().get_str() + "/" + im_.get_den().get_str() + "i";
    return s;
}

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    if (q.get_den() == 0) throw Error("rational with zero denominator: " + s);
    q.canonicalize();
    return q;
}

GaussianRational GaussianRational::from_wire(const std::string& s) {
    if (s.empty() || s.back() != 'i') throw Error("bad Gaussian rational: " + s);
    // split at the last top-level +/- that is not the leading sign
    std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) throw Error("bad Gaussian rational: " + s);
    mpq_class re = parse_rational(body.substr(0, split));
    std::string ims = body.substr(split);
    if (ims[0] == '+') ims = ims.substr(1);
    mpq_class im = parse_rational(ims);
    return GaussianRational(re, im);
}

namespace {

// nearest-integer quotient component for Euclidean division in Z[i]
mpz_class rounded_div(const mpz_class& num, const mpz_class& den) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    return q;
}

} // namespace

void gaussian_int_gcd(mpz_class& ar, mpz_class& ai, const mpz_class& br_in,
                      const mpz_class& bi_in) {
    mpz_class br = br_in, bi = bi_in;
    while (br != 0 || bi != 0) {
        mpz_class n = br * br + bi * bi;
        mpz_class qr = rounded_div(ar * br + ai * bi, n);
        mpz_class qi = rounded_div(ai * br - ar * bi, n);
        mpz_class rr = ar - (qr * br - qi * bi);
        mpz_class ri = ai - (qr * bi + qi * br);
        ar = br;
        ai = bi;
        br = rr;
        bi = ri;
    }
}

GaussianRational scalar_content(const std::vector<GaussianRational>& values) {
    mpz_class den_lcm(1);
    bool any = false;
    for (const auto& v : values) {
        if (v.is_zero()) continue;
        any = true;
        den_lcm = lcm(den_lcm, v.re().get_den());
        den_lcm = lcm(den_lcm, v.im().get_den());
    }
    if (!any) return GaussianRational(1);
    mpz_class gr(0), gi(0);
    for (const auto& v : values) {
        if (v.is_zero()) continue;
        mpq_class re = v.re() * den_lcm, im = v.im() * den_lcm;
        gaussian_int_gcd(gr, gi, re.get_num(), im.get_num());
    }
    if (gr == 0 && gi == 0) return GaussianRational(1);
    return GaussianRational(mpq_class(gr, den_lcm), mpq_class(gi, den_lcm));
}

std::string GaussianRational::to_pretty() const {
    if (is_zero()) return "0";
    if (sgn(im_) == 0) return rational_to_string(re_);
    std::string imag;
    if (im_ == 1) imag = "i";
    else if (im_ == -1) imag = "-i";
    else imag = rational_to_string(im_) + "i";
    if (sgn(re_) == 0) return imag;
    std::string out = "(" + rational_to_string(re_);
    if (sgn(im_) > 0) out += "+";
    out += (im_ == 1 ? std::string("i") : im_ == -1 ? std::string("-i") : rational_to_string(im_) + "i");
    return out + ")";
}

} // namespace residua
