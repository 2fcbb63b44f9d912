#include "residua/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace residua {

bool grlex_less(const Polynomial::Exponents& a, const Polynomial::Exponents& b) {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(const GaussianRational& c) {
    if (!c.is_zero()) terms_[{}] = c;
}

Polynomial Polynomial::variable(const std::string& name) {
    Polynomial p;
    p.vars_ = {name};
    p.terms_[{1u}] = GaussianRational(1);
    return p;
}

Polynomial Polynomial::monomial(const std::vector<std::string>& vars, const Exponents& e,
                                const GaussianRational& c) {
    Polynomial p;
    p.vars_ = vars;
    p.terms_[e] = c;
    p.normalize();
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussianRational Polynomial::constant_value() const {
    if (terms_.empty()) return GaussianRational(0);
    if (!is_constant()) throw Error("polynomial is not constant: " + to_string());
    return terms_.begin()->second;
}

bool Polynomial::uses(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return false;
    size_t idx = it - vars_.begin();
    for (const auto& [e, c] : terms_)
        if (e[idx] > 0) return true;
    return false;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned t = 0;
        for (unsigned k : e) t += k;
        d = std::max(d, t);
    }
    return d;
}

unsigned Polynomial::degree_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t idx = it - vars_.begin();
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
    return d;
}

void Polynomial::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    if (vars_.empty()) return;
    if (!std::is_sorted(vars_.begin(), vars_.end())) {
        std::vector<size_t> perm(vars_.size());
        for (size_t k = 0; k < perm.size(); ++k) perm[k] = k;
        std::sort(perm.begin(), perm.end(),
                  [&](size_t a, size_t b) { return vars_[a] < vars_[b]; });
        std::vector<std::string> nv(vars_.size());
        for (size_t k = 0; k < perm.size(); ++k) nv[k] = vars_[perm[k]];
        TermMap nt;
        for (const auto& [e, c] : terms_) {
            Exponents ne(e.size());
            for (size_t k = 0; k < perm.size(); ++k) ne[k] = e[perm[k]];
            nt[ne] = c;
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (size_t k = 0; k < e.size(); ++k)
            if (e[k] > 0) used[k] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> nv;
    std::vector<size_t> keep;
    for (size_t k = 0; k < vars_.size(); ++k)
        if (used[k]) {
            nv.push_back(vars_[k]);
            keep.push_back(k);
        }
    TermMap nt;
    for (const auto& [e, c] : terms_) {
        Exponents ne(keep.size());
        for (size_t k = 0; k < keep.size(); ++k) ne[k] = e[keep[k]];
        nt[ne] = c;
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
}

Polynomial Polynomial::aligned_to(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    Polynomial out;
    out.vars_ = vars;
    std::vector<size_t> pos(vars_.size());
    for (size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::lower_bound(vars.begin(), vars.end(), vars_[k]);
        if (it == vars.end() || *it != vars_[k])
            throw Error("variable alignment lost " + vars_[k]);
        pos[k] = it - vars.begin();
    }
    for (const auto& [e, c] : terms_) {
        Exponents ne(vars.size(), 0);
        for (size_t k = 0; k < e.size(); ++k) ne[pos[k]] = e[k];
        out.terms_[ne] = c;
    }
    return out;
}

void Polynomial::align(Polynomial& a, Polynomial& b) {
    if (a.vars_ == b.vars_) return;
    std::vector<std::string> u;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                   std::back_inserter(u));
    a = a.aligned_to(u);
    b = b.aligned_to(u);
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    Polynomial rhs = o;
    align(*this, rhs);
    for (const auto& [e, c] : rhs.terms_) {
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) it->second += c;
    }
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    Polynomial::align(x, y);
    Polynomial out;
    out.vars_ = x.vars_;
    for (const auto& [ea, ca] : x.terms_)
        for (const auto& [eb, cb] : y.terms_) {
            Polynomial::Exponents e(ea.size());
            for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            GaussianRational c = ca * cb;
            auto [it, inserted] = out.terms_.emplace(std::move(e), c);
            if (!inserted) it->second += c;
        }
    out.normalize();
    return out;
}

Polynomial Polynomial::operator*(const GaussianRational& c) const {
    Polynomial out = *this;
    for (auto& [e, v] : out.terms_) v *= c;
    out.normalize();
    return out;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial out{GaussianRational(1)};
    Polynomial base = *this;
    while (k) {
        if (k & 1u) out = out * base;
        base = base * base;
        k >>= 1u;
    }
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return Polynomial();
    size_t idx = it - vars_.begin();
    Polynomial out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents ne = e;
        ne[idx] -= 1;
        out.terms_[ne] = c * GaussianRational(long(e[idx]));
    }
    out.normalize();
    return out;
}

Polynomial Polynomial::substitute_poly(const std::map<std::string, Polynomial>& a) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
        Polynomial term{c};
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            auto it = a.find(vars_[k]);
            Polynomial base = (it != a.end()) ? it->second : Polynomial::variable(vars_[k]);
            term = term * base.pow(e[k]);
        }
        out += term;
    }
    return out;
}

Polynomial Polynomial::restrict_zero(const std::vector<std::string>& vars) const {
    std::map<std::string, Polynomial> a;
    for (const auto& v : vars) a.emplace(v, Polynomial());
    return substitute_poly(a);
}

std::optional<unsigned> Polynomial::order_in(const std::vector<std::string>& nvars) const {
    if (terms_.empty()) return std::nullopt;
    std::vector<size_t> idx;
    for (const auto& v : nvars) {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        if (it != vars_.end()) idx.push_back(it - vars_.begin());
    }
    unsigned best = ~0u;
    for (const auto& [e, c] : terms_) {
        unsigned d = 0;
        for (size_t k : idx) d += e[k];
        best = std::min(best, d);
    }
    return best;
}

std::map<Polynomial::Exponents, Polynomial>
Polynomial::expand_in(const std::vector<std::string>& nvars) const {
    std::vector<long> where(nvars.size(), -1);
    for (size_t k = 0; k < nvars.size(); ++k) {
        auto it = std::find(vars_.begin(), vars_.end(), nvars[k]);
        if (it != vars_.end()) where[k] = long(it - vars_.begin());
    }
    std::vector<bool> is_normal(vars_.size(), false);
    for (long w : where)
        if (w >= 0) is_normal[size_t(w)] = true;
    std::vector<std::string> rest;
    std::vector<size_t> rest_idx;
    for (size_t k = 0; k < vars_.size(); ++k)
        if (!is_normal[k]) {
            rest.push_back(vars_[k]);
            rest_idx.push_back(k);
        }
    std::map<Exponents, Polynomial> out;
    for (const auto& [e, c] : terms_) {
        Exponents ne(nvars.size(), 0);
        for (size_t k = 0; k < nvars.size(); ++k)
            if (where[k] >= 0) ne[k] = e[size_t(where[k])];
        Exponents re(rest.size());
        for (size_t k = 0; k < rest.size(); ++k) re[k] = e[rest_idx[k]];
        Polynomial& slot = out[ne];
        slot += Polynomial::monomial(rest, re, c);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

GaussianRational Polynomial::leading_coefficient() const {
    if (terms_.empty()) return GaussianRational(0);
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (grlex_less(best->first, it->first)) best = it;
    return best->second;
}

// ---------------------------------------------------------------------------
// gcd and exact division

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Polynomial();
    if (b.is_constant()) return a * b.constant_value().inverse();
    Polynomial x = a, y = b;
    align(x, y);
    // leading term of the divisor in graded lex
    auto lead = y.terms_.begin();
    for (auto it = std::next(y.terms_.begin()); it != y.terms_.end(); ++it)
        if (grlex_less(lead->first, it->first)) lead = it;
    Exponents le = lead->first;
    GaussianRational lc = lead->second;

    const std::vector<std::string> basis = x.vars_;
    Polynomial r = x, q;
    while (!r.terms_.empty()) {
        // arithmetic trims unused variables; re-align to the fixed basis
        r = r.aligned_to(basis);
        if (r.terms_.empty()) break;
        auto rl = r.terms_.begin();
        for (auto it = std::next(r.terms_.begin()); it != r.terms_.end(); ++it)
            if (grlex_less(rl->first, it->first)) rl = it;
        Exponents qe(le.size());
        for (size_t k = 0; k < le.size(); ++k) {
            if (rl->first[k] < le[k]) return std::nullopt;
            qe[k] = rl->first[k] - le[k];
        }
        GaussianRational qc = rl->second / lc;
        Polynomial mono = Polynomial::monomial(basis, qe, qc);
        q += mono;
        r -= mono * y;
    }
    return q;
}

namespace {

// view as univariate in vars_[idx] with Polynomial coefficients
std::vector<Polynomial> uni_view(const Polynomial& p, const std::string& var) {
    std::vector<Polynomial> coeffs(p.degree_in(var) + 1);
    auto parts = p.expand_in({var});
    for (auto& [e, c] : parts) coeffs[e[0]] = c;
    return coeffs;
}

Polynomial uni_assemble(const std::vector<Polynomial>& coeffs, const std::string& var) {
    Polynomial out, x = Polynomial::variable(var);
    for (size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero()) out += coeffs[k] * x.pow(unsigned(k));
    return out;
}

int uni_deg(const std::vector<Polynomial>& c) {
    for (size_t k = c.size(); k-- > 0;)
        if (!c[k].is_zero()) return int(k);
    return -1;
}

// pseudo-remainder of f by g in the main variable
std::vector<Polynomial> uni_prem(std::vector<Polynomial> f, const std::vector<Polynomial>& g) {
    int df = uni_deg(f), dg = uni_deg(g);
    const Polynomial& lg = g[size_t(dg)];
    while (df >= dg && df >= 0) {
        Polynomial lf = f[size_t(df)];
        for (int k = 0; k <= df; ++k) f[size_t(k)] = f[size_t(k)] * lg;
        for (int k = 0; k <= dg; ++k) f[size_t(df - dg + k)] -= lf * g[size_t(k)];
        f[size_t(df)] = Polynomial();
        df = uni_deg(f);
    }
    f.resize(df < 0 ? 0 : size_t(df) + 1);
    return f;
}

} // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
    auto monic = [](Polynomial p) {
        if (p.is_zero()) return p;
        return p * p.leading_coefficient().inverse();
    };
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Polynomial(GaussianRational(1));

    Polynomial x = a, y = b;
    align(x, y);
    std::string v;
    for (const auto& name : x.vars_)
        if (x.uses(name) || y.uses(name)) {
            v = name;
            break;
        }
    if (!x.uses(v) || !y.uses(v)) {
        // main variable absent from one side: gcd divides its content
        const Polynomial& flat = x.uses(v) ? y : x;
        const Polynomial& tall = x.uses(v) ? x : y;
        auto coeffs = uni_view(tall, v);
        Polynomial g = flat;
        for (const auto& c : coeffs)
            if (!c.is_zero()) g = gcd(g, c);
        return g;
    }

    auto fa = uni_view(x, v), fb = uni_view(y, v);
    auto content = [&](const std::vector<Polynomial>& c) {
        Polynomial g;
        for (const auto& p : c)
            if (!p.is_zero()) g = g.is_zero() ? p : gcd(g, p);
        return monic(g);
    };
    Polynomial ca = content(fa), cb = content(fb);
    Polynomial cg = gcd(ca, cb);
    auto divide_out = [&](std::vector<Polynomial>& c, const Polynomial& d) {
        for (auto& p : c)
            if (!p.is_zero()) {
                auto q = try_divide(p, d);
                if (!q) throw Error("internal: content division failed");
                p = *q;
            }
    };
    // one common scalar for the whole coefficient vector
    auto scalar_reduce = [](std::vector<Polynomial>& c) {
        std::vector<GaussianRational> cs;
        for (const auto& p : c)
            for (const auto& [e, val] : p.terms()) cs.push_back(val);
        if (cs.empty()) return;
        GaussianRational inv = scalar_content(cs).inverse();
        for (auto& p : c) p = p * inv;
    };
    divide_out(fa, ca);
    divide_out(fb, cb);
    scalar_reduce(fa);
    scalar_reduce(fb);

    // primitive PRS
    if (uni_deg(fa) < uni_deg(fb)) std::swap(fa, fb);
    while (true) {
        auto r = uni_prem(fa, fb);
        if (uni_deg(r) < 0) break;
        scalar_reduce(r);
        Polynomial cr = content(r);
        divide_out(r, cr);
        scalar_reduce(r);
        fa = std::move(fb);
        fb = std::move(r);
        if (uni_deg(fb) == 0) {
            fb = {Polynomial(GaussianRational(1))};
            break;
        }
    }
    Polynomial g = cg * uni_assemble(fb, v);
    return monic(g);
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> ordered;
    for (const auto& t : terms_) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(),
              [](auto* a, auto* b) { return grlex_less(b->first, a->first); });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ordered) {
        const auto& [e, c] = *t;
        std::string coeff = c.to_pretty();
        bool negated = false;
        if (!first && coeff.size() && coeff[0] == '-' && coeff.find('(') == std::string::npos) {
            negated = true;
            coeff = coeff.substr(1);
        }
        os << (first ? "" : negated ? " - " : " + ");
        first = false;
        std::string monos;
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!monos.empty()) monos += "*";
            monos += vars_[k];
            if (e[k] > 1) monos += "^" + std::to_string(e[k]);
        }
        if (monos.empty()) {
            os << coeff;
        } else if (coeff == "1") {
            os << monos;
        } else if (coeff == "-1") {
            os << "-" << monos;
        } else {
            os << coeff << "*" << monos;
        }
    }
    return os.str();
}

} // namespace residua
