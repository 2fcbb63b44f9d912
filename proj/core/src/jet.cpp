#include "residua/jet.hpp"

#include <algorithm>
#include <sstream>

namespace residua {

NormalJet::NormalJet(std::vector<std::string> normal_vars, unsigned order)
    : normal_vars_(std::move(normal_vars)), order_(order) {
    if (order_ < 1) throw Error("jet order must be >= 1");
}

RationalFunction NormalJet::coeff(const Exponents& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? RationalFunction() : it->second;
}

void NormalJet::set_coeff(const Exponents& e, RationalFunction v) {
    unsigned d = 0;
    for (unsigned k : e) d += k;
    if (d >= order_) throw Error("jet coefficient beyond truncation order");
    if (v.is_zero())
        coeffs_.erase(e);
    else
        coeffs_[e] = std::move(v);
}

std::optional<unsigned> NormalJet::order_of_vanishing() const {
    if (coeffs_.empty()) return std::nullopt;
    unsigned best = ~0u;
    for (const auto& [e, c] : coeffs_) {
        unsigned d = 0;
        for (unsigned k : e) d += k;
        best = std::min(best, d);
    }
    return best;
}

void NormalJet::drop_zeros() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
}

NormalJet NormalJet::operator-() const {
    NormalJet out = *this;
    for (auto& [e, c] : out.coeffs_) c = -c;
    return out;
}

NormalJet& NormalJet::operator+=(const NormalJet& o) {
    if (normal_vars_ != o.normal_vars_) throw Error("jet normal blocks differ");
    if (order_ != o.order_) throw Error("jet orders differ");
    for (const auto& [e, c] : o.coeffs_) {
        auto [it, inserted] = coeffs_.emplace(e, c);
        if (!inserted) it->second += c;
    }
    drop_zeros();
    return *this;
}

NormalJet& NormalJet::operator-=(const NormalJet& o) { return *this += -o; }

NormalJet NormalJet::mul(const NormalJet& o) const {
    if (normal_vars_ != o.normal_vars_) throw Error("jet normal blocks differ");
    unsigned k = std::min(order_, o.order_);
    NormalJet out(normal_vars_, k);
    for (const auto& [ea, ca] : coeffs_)
        for (const auto& [eb, cb] : o.coeffs_) {
            Exponents e(ea.size());
            unsigned d = 0;
            for (size_t j = 0; j < e.size(); ++j) {
                e[j] = ea[j] + eb[j];
                d += e[j];
            }
            if (d >= k) continue;
            auto [it, inserted] = out.coeffs_.emplace(e, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    out.drop_zeros();
    return out;
}

NormalJet NormalJet::scale(const RationalFunction& c) const {
    NormalJet out = *this;
    for (auto& [e, v] : out.coeffs_) v *= c;
    out.drop_zeros();
    return out;
}

NormalJet NormalJet::truncate(unsigned order) const {
    if (order > order_) throw Error("jet truncation must lower the order");
    NormalJet out(normal_vars_, order);
    for (const auto& [e, c] : coeffs_) {
        unsigned d = 0;
        for (unsigned k : e) d += k;
        if (d < order) out.coeffs_[e] = c;
    }
    return out;
}

RationalFunction NormalJet::to_rational() const {
    RationalFunction acc;
    for (const auto& [e, c] : coeffs_) {
        RationalFunction term = c;
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k] > 0)
                term *= RationalFunction::variable(normal_vars_[k]).pow(int(e[k]));
        acc += term;
    }
    return acc;
}

std::string NormalJet::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            os << "*" << normal_vars_[k];
            if (e[k] > 1) os << "^" << e[k];
        }
    }
    os << "  [mod I^" << order_ << "]";
    return os.str();
}

NormalJet jet_project(const RationalFunction& p, const std::vector<std::string>& normal_vars,
                      unsigned order) {
    NormalJet out(normal_vars, order);
    if (p.is_zero()) return out;

    auto expand = [&](const Polynomial& poly) {
        NormalJet j(normal_vars, order);
        for (const auto& [e, coeff_poly] : poly.expand_in(normal_vars)) {
            unsigned d = 0;
            for (unsigned k : e) d += k;
            if (d >= order) continue;
            j.set_coeff(e, RationalFunction(coeff_poly));
        }
        return j;
    };

    NormalJet num = expand(p.num());
    NormalJet den = expand(p.den());
    if (den.restrict_to_s().is_zero())
        throw Error("not regular along S: denominator vanishes on the normal locus");
    return num.mul(jet_invert(den));
}

NormalJet jet_invert(const NormalJet& j) {
    RationalFunction c0 = j.restrict_to_s();
    if (c0.is_zero()) throw Error("not a unit along S: jet has vanishing restriction");
    unsigned k = j.order();
    NormalJet one(j.normal_vars(), k);
    one.set_coeff(NormalJet::Exponents(j.normal_vars().size(), 0), RationalFunction(1));
    // j = c0 (1 + u) with u nilpotent: inverse = c0^-1 sum (-u)^t
    NormalJet u = j.scale(c0.inverse()) - one;
    NormalJet acc = one, power = one;
    for (unsigned t = 1; t < k; ++t) {
        power = power.mul(u);
        if (power.is_zero()) break;
        acc += (t % 2 ? -power : power);
    }
    return acc.scale(c0.inverse());
}

} // namespace residua
