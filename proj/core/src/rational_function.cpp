#include "residua/rational_function.hpp"

#include <algorithm>
#include <complex>

namespace residua {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(GaussianRational(1));
        return;
    }
    Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *Polynomial::try_divide(num_, g);
        den_ = *Polynomial::try_divide(den_, g);
    }
    GaussianRational lc = den_.leading_coefficient();
    if (!lc.is_one()) {
        GaussianRational inv = lc.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

GaussianRational RationalFunction::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

std::vector<std::string> RationalFunction::vars() const {
    std::vector<std::string> u;
    std::set_union(num_.vars().begin(), num_.vars().end(), den_.vars().begin(),
                   den_.vars().end(), std::back_inserter(u));
    return u;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RationalFunction RationalFunction::inverse() const {
    if (num_.is_zero()) throw Error("division by the zero rational function");
    return RationalFunction(den_, num_);
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    return *this *= o.inverse();
}

RationalFunction RationalFunction::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    return RationalFunction(num_.pow(unsigned(k)), den_.pow(unsigned(k)));
}

std::string RationalFunction::to_string() const {
    if (is_polynomial()) {
        if (den_.constant_value().is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/" + den_.constant_value().to_pretty();
    }
    std::string n = num_.to_string();
    if (num_.terms().size() > 1) n = "(" + n + ")";
    return n + "/(" + den_.to_string() + ")";
}

std::complex<double>
RationalFunction::eval_double(const std::map<std::string, std::complex<double>>& point) const {
    auto eval_poly = [&](const Polynomial& p) {
        std::complex<double> acc = 0.0;
        for (const auto& [e, c] : p.terms()) {
            std::complex<double> t(c.re_double(), c.im_double());
            for (size_t k = 0; k < e.size(); ++k) {
                auto it = point.find(p.vars()[k]);
                if (it == point.end()) throw Error("eval_double: unassigned variable " + p.vars()[k]);
                for (unsigned j = 0; j < e[k]; ++j) t *= it->second;
            }
            acc += t;
        }
        return acc;
    };
    return eval_poly(num_) / eval_poly(den_);
}

RationalFunction differentiate(const RationalFunction& p, const std::string& var) {
    Polynomial dn = p.num().derivative(var);
    Polynomial dd = p.den().derivative(var);
    if (dd.is_zero()) return RationalFunction(dn, p.den());
    return RationalFunction(dn * p.den() - p.num() * dd, p.den() * p.den());
}

RationalFunction substitute(const RationalFunction& p,
                            const std::map<std::string, RationalFunction>& assignment) {
    for (const auto& v : p.vars())
        if (!assignment.count(v)) throw Error("substitute: no assignment for variable " + v);

    auto subst_poly = [&](const Polynomial& poly) {
        RationalFunction acc;
        for (const auto& [e, c] : poly.terms()) {
            RationalFunction term{c};
            for (size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                term *= assignment.at(poly.vars()[k]).pow(int(e[k]));
            }
            acc += term;
        }
        return acc;
    };
    RationalFunction den = subst_poly(p.den());
    if (den.is_zero()) throw Error("substitute: pole everywhere (denominator collapses to zero)");
    return subst_poly(p.num()) / den;
}

RationalFunction restrict_zero(const RationalFunction& p, const std::vector<std::string>& vars) {
    Polynomial d = p.den().restrict_zero(vars);
    if (d.is_zero())
        throw Error("not regular along S: denominator vanishes identically on {" +
                    (vars.empty() ? std::string() : vars[0]) + "... = 0}");
    return RationalFunction(p.num().restrict_zero(vars), d);
}

std::optional<unsigned> ideal_order(const RationalFunction& p,
                                    const std::vector<std::string>& normal_vars) {
    if (p.is_zero()) return std::nullopt;
    auto dord = p.den().order_in(normal_vars);
    if (!dord || *dord > 0) throw Error("ideal_order: not regular along S");
    return p.num().order_in(normal_vars);
}

RationalFunction evaluate(const RationalFunction& p,
                          const std::map<std::string, GaussianRational>& point) {
    std::map<std::string, RationalFunction> a;
    for (const auto& v : p.vars()) {
        auto it = point.find(v);
        a.emplace(v, it == point.end() ? RationalFunction::variable(v)
                                       : RationalFunction(it->second));
    }
    return substitute(p, a);
}

} // namespace residua
