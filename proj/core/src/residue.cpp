#include "residua/residue.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace residua {

namespace {

// --- dense univariate layer over Q(i) ---------------------------------------

struct UniPoly {
    std::vector<GaussianRational> c;  // c[k] is the coefficient of y^k

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    GaussianRational lead() const { return c.back(); }

    static UniPoly constant(const GaussianRational& v) {
        UniPoly p;
        if (!v.is_zero()) p.c = {v};
        return p;
    }
};

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly out;
    out.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t k = 0; k < out.c.size(); ++k) {
        if (k < a.c.size()) out.c[k] += a.c[k];
        if (k < b.c.size()) out.c[k] += b.c[k];
    }
    out.trim();
    return out;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    UniPoly nb = b;
    for (auto& v : nb.c) v = -v;
    return a + nb;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly out;
    out.c.assign(a.c.size() + b.c.size() - 1, GaussianRational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    out.trim();
    return out;
}

UniPoly scale(const UniPoly& a, const GaussianRational& s) {
    UniPoly out = a;
    for (auto& v : out.c) v *= s;
    out.trim();
    return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error("univariate division by zero");
    UniPoly r = a, q;
    if (a.deg() >= b.deg()) q.c.assign(size_t(a.deg() - b.deg()) + 1, GaussianRational(0));
    GaussianRational inv = b.lead().inverse();
    while (!r.is_zero() && r.deg() >= b.deg()) {
        size_t shift = size_t(r.deg() - b.deg());
        GaussianRational f = r.lead() * inv;
        q.c[shift] += f;
        for (size_t k = 0; k < b.c.size(); ++k) r.c[shift + k] -= f * b.c[k];
        r.trim();
    }
    q.trim();
    return {q, r};
}

UniPoly derivative(const UniPoly& a) {
    UniPoly out;
    if (a.c.size() <= 1) return out;
    out.c.resize(a.c.size() - 1);
    for (size_t k = 1; k < a.c.size(); ++k) out.c[k - 1] = a.c[k] * GaussianRational(long(k));
    return out;
}

UniPoly monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    return scale(a, a.lead().inverse());
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// g = s*a + t*b via extended Euclid
void ext_gcd(const UniPoly& a, const UniPoly& b, UniPoly& g, UniPoly& s, UniPoly& t) {
    UniPoly r0 = a, r1 = b;
    UniPoly s0 = UniPoly::constant(GaussianRational(1)), s1;
    UniPoly t0, t1 = UniPoly::constant(GaussianRational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UniPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) throw Error("extended gcd of zero polynomials");
    GaussianRational inv = r0.lead().inverse();
    g = scale(r0, inv);
    s = scale(s0, inv);
    t = scale(t0, inv);
}

UniPoly from_polynomial(const Polynomial& p, const std::string& var) {
    for (const auto& v : p.vars())
        if (v != var) throw Error("polynomial is not univariate in " + var + " (uses " + v + ")");
    UniPoly out;
    out.c.assign(p.degree_in(var) + 1, GaussianRational(0));
    for (const auto& [e, coeff] : p.terms()) out.c[e.empty() ? 0 : e[0]] = coeff;
    out.trim();
    return out;
}

Polynomial to_polynomial(const UniPoly& p, const std::string& var) {
    Polynomial out;
    Polynomial y = Polynomial::variable(var);
    for (size_t k = 0; k < p.c.size(); ++k)
        if (!p.c[k].is_zero()) out += y.pow(unsigned(k)) * Polynomial(p.c[k]);
    return out;
}

UniPoly shift(const UniPoly& p, const GaussianRational& a) {
    // p(y + a) by Horner
    UniPoly out;
    UniPoly lin;
    lin.c = {a, GaussianRational(1)};
    lin.trim();
    for (size_t k = p.c.size(); k-- > 0;) {
        out = out * lin + UniPoly::constant(p.c[k]);
    }
    return out;
}

// Yun squarefree decomposition: returns q_1, q_2, ... with p ~ prod q_i^i
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
    std::vector<UniPoly> out;
    UniPoly a = monic(p);
    if (a.deg() <= 0) return out;
    UniPoly da = derivative(a);
    UniPoly g = uni_gcd(a, da);
    if (g.deg() == 0) {
        out.push_back(a);
        return out;
    }
    UniPoly w = divmod(a, g).first;
    UniPoly z = divmod(da, g).first;
    while (true) {
        UniPoly h = z - derivative(w);
        UniPoly q = uni_gcd(w, h);
        out.push_back(q);
        UniPoly w2 = divmod(w, q).first;
        if (w2.deg() == 0) break;
        w = std::move(w2);
        z = divmod(h, q).first;
    }
    return out;
}

// trace of multiplication by g on Q(i)[y]/(f), f monic squarefree
GaussianRational trace_form(const UniPoly& g, const UniPoly& f) {
    size_t k = size_t(f.deg());
    UniPoly r = divmod(g, f).second;
    GaussianRational tr(0);
    // columns: r * y^j mod f; trace adds the coefficient of y^j
    UniPoly col = r;
    for (size_t j = 0; j < k; ++j) {
        if (j > 0) {
            // col = col * y mod f
            UniPoly shifted;
            shifted.c.assign(col.c.size() + 1, GaussianRational(0));
            for (size_t t = 0; t < col.c.size(); ++t) shifted.c[t + 1] = col.c[t];
            shifted.trim();
            col = divmod(shifted, f).second;
        }
        if (j < col.c.size()) tr += col.c[j];
    }
    return tr;
}

UniPoly inverse_mod(const UniPoly& g, const UniPoly& f) {
    UniPoly gg, s, t;
    ext_gcd(g, f, gg, s, t);
    if (gg.deg() != 0) throw Error("element not invertible modulo the factor");
    return divmod(scale(s, gg.lead().inverse()), f).second;
}

struct Form1DParts {
    UniPoly num, den;  // proper fraction, den monic
    std::string var;
};

Form1DParts prepare(const OneForm1D& form) {
    if (form.coeff.den().is_zero()) throw Error("one-form with zero denominator");
    Form1DParts parts;
    parts.var = form.var;
    UniPoly num = from_polynomial(form.coeff.num(), form.var);
    UniPoly den = from_polynomial(form.coeff.den(), form.var);
    GaussianRational inv = den.lead().inverse();
    num = scale(num, inv);
    den = monic(den);
    // drop the polynomial part; residues live in the proper part
    parts.num = divmod(num, den).second;
    parts.den = den;
    return parts;
}

} // namespace

GaussianRational residue_at_point_1d(const OneForm1D& form, const GaussianRational& p) {
    Form1DParts parts = prepare(form);
    if (parts.num.is_zero()) return GaussianRational(0);
    UniPoly num = shift(parts.num, p);
    UniPoly den = shift(parts.den, p);
    // den = y^k * u with u(0) != 0; residue = coeff of y^{k-1} in num / u
    size_t k = 0;
    while (k < den.c.size() && den.c[k].is_zero()) ++k;
    if (k == 0) return GaussianRational(0);  // regular point
    UniPoly u;
    u.c.assign(den.c.begin() + long(k), den.c.end());
    // invert u as a series to order k
    std::vector<GaussianRational> inv(k, GaussianRational(0));
    GaussianRational u0 = u.c[0].inverse();
    inv[0] = u0;
    for (size_t t = 1; t < k; ++t) {
        GaussianRational acc(0);
        for (size_t j = 1; j <= t && j < u.c.size(); ++j) acc += u.c[j] * inv[t - j];
        inv[t] = -(u0 * acc);
    }
    GaussianRational res(0);
    for (size_t j = 0; j < k; ++j) {
        size_t need = k - 1 - j;
        if (j < num.c.size()) res += num.c[j] * inv[need];
    }
    return res;
}

GaussianRational residue_total_1d(const OneForm1D& form, const Polynomial& factor) {
    Form1DParts parts = prepare(form);
    UniPoly fac = monic(from_polynomial(factor, form.var));
    if (fac.deg() < 1) throw Error("residue_total_1d: factor must be nonconstant");
    if (parts.num.is_zero()) return GaussianRational(0);

    auto sqf = squarefree_decomposition(parts.den);
    // the factor must divide the squarefree part of the denominator
    {
        UniPoly rad = UniPoly::constant(GaussianRational(1));
        for (const auto& q : sqf)
            if (q.deg() > 0) rad = rad * q;
        if (uni_gcd(fac, rad).deg() != fac.deg())
            throw Error("residue_total_1d: factor does not divide the squarefree denominator");
    }

    GaussianRational total(0);
    UniPoly remaining_num = parts.num;
    UniPoly remaining_den = parts.den;
    for (size_t i = 0; i < sqf.size(); ++i) {
        const UniPoly& qi = sqf[i];
        if (qi.deg() < 1) continue;
        unsigned power = unsigned(i + 1);
        // split remaining = part / qi^power + rest / (remaining_den / qi^power)
        UniPoly qp = qi;
        for (unsigned t = 1; t < power; ++t) qp = qp * qi;
        UniPoly rest_den = divmod(remaining_den, qp).first;
        UniPoly part_num, rest_num;
        if (rest_den.deg() == 0) {
            part_num = remaining_num;
            rest_num = UniPoly();
        } else {
            UniPoly g, s, t;
            ext_gcd(qp, rest_den, g, s, t);
            if (g.deg() != 0) throw Error("internal: squarefree parts not coprime");
            // num/(qp*rest) = num*t/qp + num*s/rest
            part_num = divmod(remaining_num * t, qp).second;
            // keep the rest exact: rest_num = (remaining_num - part_num*rest_den)/qp
            UniPoly delta = remaining_num - part_num * rest_den;
            auto [quo, rem] = divmod(delta, qp);
            if (!rem.is_zero()) throw Error("internal: partial fraction split failed");
            rest_num = quo;
        }
        // reduce part_num/qi^power to a simple pole via Hermite steps
        UniPoly cur = part_num;
        for (unsigned j = power; j >= 2; --j) {
            // cur/qi^j = d/dy(-t/((j-1) qi^{j-1})) + (s + t'/(j-1))/qi^{j-1}
            UniPoly g, s, t;
            ext_gcd(qi, derivative(qi), g, s, t);
            if (g.deg() != 0) throw Error("internal: squarefree factor not separable");
            // write cur = s2*qi + t2*qi' with s2 = cur*s, t2 = cur*t (mod adjustments)
            UniPoly t2 = divmod(cur * t, qi).second;
            UniPoly s2 = divmod(cur - t2 * derivative(qi), qi).first;
            GaussianRational invj = GaussianRational(long(j) - 1).inverse();
            cur = s2 + scale(derivative(t2), invj);
        }
        UniPoly fi = uni_gcd(fac, qi);
        if (fi.deg() > 0) {
            UniPoly g = divmod(cur * inverse_mod(derivative(qi), fi), fi).second;
            total += trace_form(g, fi);
        }
        remaining_num = rest_num;
        remaining_den = rest_den;
        if (remaining_num.is_zero() || remaining_den.deg() == 0) break;
    }
    return total;
}

// ---------------------------------------------------------------------------

namespace {

Polynomial truncate_total_degree(const Polynomial& p, unsigned maxdeg) {
    Polynomial out;
    for (const auto& [e, c] : p.terms()) {
        unsigned d = 0;
        for (unsigned k : e) d += k;
        if (d <= maxdeg) out += Polynomial::monomial(p.vars(), e, c);
    }
    return out;
}

// Taylor coefficient of the monomial `target` (aligned to vars) of f at 0.
GaussianRational taylor_coefficient(const RationalFunction& f,
                                    const std::vector<std::string>& vars,
                                    const std::vector<unsigned>& target) {
    unsigned total = 0;
    for (unsigned k : target) total += k;
    Polynomial num = truncate_total_degree(f.num(), total);
    Polynomial den = f.den();
    GaussianRational d0 = den.restrict_zero(vars).constant_value();
    if (d0.is_zero()) throw Error("taylor series: denominator vanishes at the point");
    // series inverse of den up to degree `total`
    Polynomial u = den * d0.inverse() - Polynomial(GaussianRational(1));
    Polynomial inv{GaussianRational(1)};
    Polynomial upow{GaussianRational(1)};
    for (unsigned t = 1; t <= total; ++t) {
        upow = truncate_total_degree(upow * u, total);
        if (upow.is_zero()) break;
        inv += (t % 2 ? -upow : upow);
    }
    Polynomial series = truncate_total_degree(truncate_total_degree(num * inv, total) *
                                                  Polynomial(d0.inverse()),
                                              total);
    // read the coefficient
    Polynomial aligned = series.aligned_to(  // ensure full variable list
        [&] {
            std::vector<std::string> u2 = series.vars();
            for (const auto& v : vars) {
                auto it = std::lower_bound(u2.begin(), u2.end(), v);
                if (it == u2.end() || *it != v) u2.insert(it, v);
            }
            return u2;
        }());
    std::vector<unsigned> idx(aligned.vars().size(), 0);
    for (size_t k = 0; k < aligned.vars().size(); ++k) {
        auto it = std::find(vars.begin(), vars.end(), aligned.vars()[k]);
        if (it != vars.end()) idx[k] = target[size_t(it - vars.begin())];
    }
    auto it = aligned.terms().find(idx);
    return it == aligned.terms().end() ? GaussianRational(0) : it->second;
}

unsigned ncap_from_env() {
    if (const char* s = std::getenv("RESIDUA_NCAP")) {
        int v = std::atoi(s);
        if (v >= 1) return unsigned(v);
    }
    return 12;
}

} // namespace

GaussianRational grothendieck_residue(const GrothendieckData& data) {
    size_t k = data.denominators.size();
    if (k == 0 || data.vars.size() != k)
        throw Error("grothendieck_residue: need as many denominators as variables");

    // translate the point to the origin
    std::map<std::string, Polynomial> shift_map;
    std::map<std::string, RationalFunction> shift_map_rf;
    for (const auto& v : data.vars) {
        auto it = data.point.find(v);
        GaussianRational pv = it == data.point.end() ? GaussianRational(0) : it->second;
        shift_map.emplace(v, Polynomial::variable(v) + Polynomial(pv));
        shift_map_rf.emplace(v, RationalFunction::variable(v) + RationalFunction(pv));
    }
    std::vector<Polynomial> dens;
    unsigned maxdeg = 0;
    for (const auto& d : data.denominators) {
        Polynomial s = d.substitute_poly(shift_map);
        if (!s.restrict_zero(data.vars).is_zero())
            throw Error("grothendieck_residue: the point is not a common zero of the denominators");
        maxdeg = std::max(maxdeg, s.total_degree());
        dens.push_back(std::move(s));
    }
    std::map<std::string, RationalFunction> shift_all;
    for (const auto& v : data.numerator.vars()) {
        auto it = shift_map_rf.find(v);
        shift_all.emplace(v, it == shift_map_rf.end() ? RationalFunction::variable(v) : it->second);
    }
    RationalFunction numer = data.numerator.vars().empty()
                                 ? data.numerator
                                 : substitute(data.numerator, shift_all);

    unsigned cap = ncap_from_env();
    for (unsigned n = 1; n <= cap; ++n) {
        unsigned bound = n + maxdeg + 2;
        // membership is solved in the local ring: equations live below the
        // truncation order, which always clears the extraction degree k(n-1)
        unsigned trunc = k == 1 ? n + maxdeg + 3
                                : unsigned(k) * (n - 1) + maxdeg + 2;
        // monomial basis for the entries of A
        std::vector<Polynomial::Exponents> basis;
        {
            std::vector<unsigned> e(k, 0);
            // enumerate all exponent vectors with total degree <= bound
            std::function<void(size_t, unsigned)> rec = [&](size_t pos, unsigned left) {
                if (pos == k) {
                    basis.push_back(e);
                    return;
                }
                for (unsigned t = 0; t <= left; ++t) {
                    e[pos] = t;
                    rec(pos + 1, left - t);
                }
                e[pos] = 0;
            };
            rec(0, bound);
        }
        unsigned eqdeg = std::min(bound + maxdeg, trunc > 0 ? trunc - 1 : 0u);
        std::vector<Polynomial::Exponents> eqs;
        {
            std::vector<unsigned> e(k, 0);
            std::function<void(size_t, unsigned)> rec = [&](size_t pos, unsigned left) {
                if (pos == k) {
                    eqs.push_back(e);
                    return;
                }
                for (unsigned t = 0; t <= left; ++t) {
                    e[pos] = t;
                    rec(pos + 1, left - t);
                }
                e[pos] = 0;
            };
            rec(0, eqdeg);
        }
        std::map<Polynomial::Exponents, size_t> eq_index;
        for (size_t t = 0; t < eqs.size(); ++t) eq_index.emplace(eqs[t], t);

        bool all_solved = true;
        Mat<RationalFunction> amat(k, k);
        for (size_t i = 0; i < k && all_solved; ++i) {
            Mat<GaussianRational> sys(eqs.size(), basis.size() * k);
            for (size_t j = 0; j < k; ++j) {
                Polynomial dj = dens[j].aligned_to(data.vars);
                for (size_t bidx = 0; bidx < basis.size(); ++bidx) {
                    for (const auto& [de, dc] : dj.terms()) {
                        Polynomial::Exponents e(k);
                        unsigned tot = 0;
                        for (size_t t2 = 0; t2 < k; ++t2) {
                            e[t2] = basis[bidx][t2] + (de.empty() ? 0u : de[t2]);
                            tot += e[t2];
                        }
                        if (tot > eqdeg) continue;
                        sys(eq_index.at(e), j * basis.size() + bidx) += dc;
                    }
                }
            }
            std::vector<GaussianRational> rhs(eqs.size(), GaussianRational(0));
            Polynomial::Exponents target(k, 0);
            target[i] = n;
            rhs[eq_index.at(target)] = GaussianRational(1);
            auto sol = solve_linear(sys, rhs);
            if (!sol) {
                all_solved = false;
                break;
            }
            for (size_t j = 0; j < k; ++j) {
                Polynomial entry;
                for (size_t bidx = 0; bidx < basis.size(); ++bidx) {
                    const GaussianRational& cv = (*sol)[j * basis.size() + bidx];
                    if (cv.is_zero()) continue;
                    entry += Polynomial::monomial(data.vars, basis[bidx], cv);
                }
                amat(i, j) = RationalFunction(entry);
            }
        }
        if (!all_solved) continue;

        RationalFunction integrand = numer * amat.det();
        std::vector<unsigned> target(k, n - 1);
        return taylor_coefficient(integrand, data.vars, target);
    }
    throw Error("grothendieck_residue: not an isolated complete intersection at the point "
                "(or raise the cap via RESIDUA_NCAP)");
}

namespace {

std::vector<std::pair<mpz_class, mpz_class>> gaussian_divisors(const mpz_class& re,
                                                               const mpz_class& im) {
    std::vector<std::pair<mpz_class, mpz_class>> out;
    mpz_class norm = re * re + im * im;
    if (norm == 0 || norm > 1000000) return out;  // bounded search; callers fall back
    mpz_class root = sqrt(norm);
    long bound = root.get_si();
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b) {
            if (a == 0 && b == 0) continue;
            mpz_class dn = mpz_class(a) * a + mpz_class(b) * b;
            if (dn == 0 || !mpz_divisible_p(norm.get_mpz_t(), dn.get_mpz_t())) continue;
            // (re + im i)/(a + b i) must be a Gaussian integer
            mpz_class qr = re * a + im * b, qi = im * a - re * b;
            if (mpz_divisible_p(qr.get_mpz_t(), dn.get_mpz_t()) &&
                mpz_divisible_p(qi.get_mpz_t(), dn.get_mpz_t()))
                out.emplace_back(a, b);
        }
    return out;
}

} // namespace

Polynomial squarefree_part(const Polynomial& p, const std::string& var) {
    UniPoly u = monic(from_polynomial(p, var));
    if (u.deg() <= 0) return Polynomial(GaussianRational(1));
    UniPoly g = uni_gcd(u, derivative(u));
    return to_polynomial(divmod(u, g).first, var);
}

std::vector<GaussianRational> gaussian_rational_roots(const Polynomial& p,
                                                      const std::string& var,
                                                      Polynomial& leftover) {
    UniPoly u = monic(from_polynomial(p, var));
    std::vector<GaussianRational> roots;
    bool progress = true;
    while (progress && u.deg() >= 1) {
        progress = false;
        if (u.deg() == 1) {
            roots.push_back(-u.c[0]);
            u = UniPoly::constant(GaussianRational(1));
            break;
        }
        if (!u.c[0].is_zero()) {
            // clear denominators to land in Z[i]
            mpz_class den(1);
            for (const auto& c : u.c) {
                den = lcm(den, c.re().get_den());
                den = lcm(den, c.im().get_den());
            }
            mpq_class scale_q(den);
            std::vector<std::pair<mpz_class, mpz_class>> zc;
            for (const auto& c : u.c) {
                mpq_class r = c.re() * scale_q, i = c.im() * scale_q;
                zc.emplace_back(r.get_num(), i.get_num());
            }
            auto low = gaussian_divisors(zc.front().first, zc.front().second);
            auto high = gaussian_divisors(zc.back().first, zc.back().second);
            for (const auto& [lr, li] : low) {
                if (progress) break;
                for (const auto& [hr, hi] : high) {
                    GaussianRational cand =
                        GaussianRational(mpq_class(lr), mpq_class(li)) /
                        GaussianRational(mpq_class(hr), mpq_class(hi));
                    // evaluate by Horner
                    GaussianRational acc(0);
                    for (size_t k = u.c.size(); k-- > 0;) acc = acc * cand + u.c[k];
                    if (acc.is_zero()) {
                        roots.push_back(cand);
                        UniPoly lin;
                        lin.c = {-cand, GaussianRational(1)};
                        u = divmod(u, lin).first;
                        progress = true;
                        break;
                    }
                }
            }
        } else {
            roots.push_back(GaussianRational(0));
            UniPoly lin;
            lin.c = {GaussianRational(0), GaussianRational(1)};
            u = divmod(u, lin).first;
            progress = true;
        }
    }
    leftover = to_polynomial(u, var);
    return roots;
}

unsigned PhiSpec::degree() const {
    unsigned d = 0;
    for (unsigned k : elementary_factors) d += k;
    return d;
}

PhiSpec PhiSpec::c1_power(unsigned d) {
    PhiSpec out;
    out.elementary_factors.assign(d, 1u);
    return out;
}

std::string PhiSpec::to_string() const {
    if (elementary_factors.empty()) return "1";
    std::ostringstream os;
    for (size_t k = 0; k < elementary_factors.size(); ++k)
        os << (k ? "*" : "") << "e" << elementary_factors[k];
    return os.str();
}

RationalFunction PhiSpec::evaluate(const Mat<RationalFunction>& c) const {
    size_t m = c.rows();
    auto elementary = [&](unsigned k) -> RationalFunction {
        if (k == 0) return RationalFunction(1);
        if (k > m) return RationalFunction();
        // sum of principal k x k minors
        std::vector<size_t> pick(k);
        RationalFunction acc;
        std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
            if (pos == k) {
                Mat<RationalFunction> sub(k, k);
                for (size_t r = 0; r < k; ++r)
                    for (size_t s = 0; s < k; ++s) sub(r, s) = c(pick[r], pick[s]);
                acc += sub.det();
                return;
            }
            for (size_t t = start; t < m; ++t) {
                pick[pos] = t;
                rec(pos + 1, t + 1);
            }
        };
        rec(0, 0);
        return acc;
    };
    RationalFunction out(1);
    for (unsigned k : elementary_factors) out *= elementary(k);
    return out;
}

} // namespace residua
