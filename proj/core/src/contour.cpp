#include "residua/contour.hpp"

#include <cmath>

namespace residua {

namespace {

using Cplx = std::complex<double>;

Cplx eval_at(const RationalFunction& f, const std::vector<std::string>& vars,
             const std::vector<Cplx>& z, const std::map<std::string, GaussianRational>& center) {
    std::map<std::string, Cplx> point;
    for (size_t k = 0; k < vars.size(); ++k) {
        Cplx c = 0.0;
        auto it = center.find(vars[k]);
        if (it != center.end()) c = Cplx(it->second.re_double(), it->second.im_double());
        point[vars[k]] = c + z[k];
    }
    return f.eval_double(point);
}

// z-torus quadrature: valid for k = 1 (plain winding integral) and for
// monomial denominators, where the coordinate torus is the residue cycle.
Cplx torus_sum(const GrothendieckData& data, const std::vector<double>& radii,
               unsigned samples) {
    size_t k = data.vars.size();
    const double tau = 2.0 * M_PI;
    std::vector<unsigned> idx(k, 0);
    Cplx acc = 0.0;
    std::vector<RationalFunction> dens;
    for (const auto& d : data.denominators) dens.emplace_back(d);
    while (true) {
        std::vector<Cplx> off(k);
        Cplx jac = 1.0;  // dz/(2 pi i) = (z - p) dtheta/(2 pi) per factor
        for (size_t t = 0; t < k; ++t) {
            double th = tau * double(idx[t]) / double(samples);
            off[t] = std::polar(radii[t], th);
            jac *= off[t];
        }
        Cplx den = 1.0;
        for (const auto& d : dens) den *= eval_at(d, data.vars, off, data.point);
        Cplx val = eval_at(data.numerator, data.vars, off, data.point) / den * jac;
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw Error("contour oracle hit a non-finite sample; choose other radii");
        acc += val;
        size_t t = 0;
        while (t < k && ++idx[t] == samples) {
            idx[t] = 0;
            ++t;
        }
        if (t == k) break;
    }
    return acc / std::pow(double(samples), double(k));
}

// a-torus quadrature for denominator maps that are biholomorphic near the
// point: parametrize |a_i| = r_i, follow the single solution sheet of
// a(z) = w by Newton continuation; the integrand becomes h / det(da/dz).
Cplx pullback_sum(const GrothendieckData& data, const std::vector<double>& radii,
                  unsigned samples) {
    size_t k = data.vars.size();
    const double tau = 2.0 * M_PI;
    std::vector<RationalFunction> dens;
    for (const auto& d : data.denominators) dens.emplace_back(d);
    std::vector<std::vector<RationalFunction>> jac(k, std::vector<RationalFunction>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) jac[i][j] = differentiate(dens[i], data.vars[j]);

    auto newton = [&](std::vector<Cplx> z, const std::vector<Cplx>& target)
        -> std::optional<std::vector<Cplx>> {
        for (int it = 0; it < 60; ++it) {
            std::vector<Cplx> f(k);
            double err = 0;
            for (size_t i = 0; i < k; ++i) {
                f[i] = eval_at(dens[i], data.vars, z, data.point) - target[i];
                err += std::abs(f[i]);
            }
            if (err < 1e-13) return z;
            // solve J dz = -f (tiny k: Gaussian elimination on doubles)
            std::vector<std::vector<Cplx>> m(k, std::vector<Cplx>(k + 1));
            for (size_t i = 0; i < k; ++i) {
                for (size_t j = 0; j < k; ++j)
                    m[i][j] = eval_at(jac[i][j], data.vars, z, data.point);
                m[i][k] = -f[i];
            }
            for (size_t c = 0; c < k; ++c) {
                size_t piv = c;
                for (size_t r = c + 1; r < k; ++r)
                    if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
                if (std::abs(m[piv][c]) < 1e-300) return std::nullopt;
                std::swap(m[piv], m[c]);
                for (size_t r = 0; r < k; ++r) {
                    if (r == c) continue;
                    Cplx fac = m[r][c] / m[c][c];
                    for (size_t col = c; col <= k; ++col) m[r][col] -= fac * m[c][col];
                }
            }
            for (size_t i = 0; i < k; ++i) z[i] += m[i][k] / m[i][i];
        }
        return std::nullopt;
    };

    // seed at angles 0 from the linearization
    auto target_at = [&](const std::vector<unsigned>& idx) {
        std::vector<Cplx> w(k);
        for (size_t t = 0; t < k; ++t)
            w[t] = std::polar(radii[t], tau * double(idx[t]) / double(samples));
        return w;
    };

    std::vector<unsigned> idx(k, 0);
    std::vector<Cplx> z(k, 0.0);
    {
        auto seeded = newton(z, target_at(idx));
        if (!seeded) throw Error("contour oracle: Newton seed failed; choose other radii");
        z = *seeded;
    }
    Cplx acc = 0.0;
    while (true) {
        auto sol = newton(z, target_at(idx));
        if (!sol) throw Error("contour oracle: Newton continuation failed; choose other radii");
        z = *sol;
        // det of da/dz at z
        std::vector<std::vector<Cplx>> m(k, std::vector<Cplx>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) m[i][j] = eval_at(jac[i][j], data.vars, z, data.point);
        Cplx det = 1.0;
        for (size_t c = 0; c < k; ++c) {
            size_t piv = c;
            for (size_t r = c + 1; r < k; ++r)
                if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
            if (std::abs(m[piv][c]) < 1e-300)
                throw Error("contour oracle: degenerate Jacobian on the cycle");
            if (piv != c) {
                std::swap(m[piv], m[c]);
                det = -det;
            }
            det *= m[c][c];
            for (size_t r = c + 1; r < k; ++r) {
                Cplx fac = m[r][c] / m[c][c];
                for (size_t col = c; col < k; ++col) m[r][col] -= fac * m[c][col];
            }
        }
        Cplx val = eval_at(data.numerator, data.vars, z, data.point) / det;
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw Error("contour oracle hit a non-finite sample; choose other radii");
        acc += val;

        size_t t = 0;
        while (t < k && ++idx[t] == samples) {
            idx[t] = 0;
            ++t;
        }
        if (t == k) break;
    }
    return acc / std::pow(double(samples), double(k));
}

bool monomial_denominators(const GrothendieckData& data) {
    for (const auto& d : data.denominators)
        if (d.terms().size() != 1) return false;
    return true;
}

Cplx one_pass(const GrothendieckData& data, const std::vector<double>& radii, unsigned samples) {
    if (data.vars.size() == 1 || monomial_denominators(data))
        return torus_sum(data, radii, samples);
    return pullback_sum(data, radii, samples);
}

} // namespace

ContourResult contour_residue_numeric(const GrothendieckData& data,
                                      const std::vector<double>& radii, unsigned samples) {
    if (radii.size() != data.vars.size())
        throw Error("contour oracle: one radius per variable");
    Cplx coarse = one_pass(data, radii, samples);
    Cplx fine = one_pass(data, radii, samples * 2);
    return {fine, std::abs(fine - coarse)};
}

ContourResult contour_residue_numeric_1d(const OneForm1D& form, const GaussianRational& point,
                                         double radius, unsigned samples) {
    GrothendieckData d;
    d.vars = {form.var};
    d.point = {{form.var, point}};
    d.denominators = {form.coeff.den()};
    d.numerator = RationalFunction(form.coeff.num());
    return contour_residue_numeric(d, {radius}, samples);
}

} // namespace residua
