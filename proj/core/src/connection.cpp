#include "residua/connection.hpp"

namespace residua {

size_t PsiMorphism::rank() const {
    if (per_chart.empty()) return 0;
    return per_chart.begin()->second.size();
}

const std::vector<PsiMorphism::Image>& PsiMorphism::images(const std::string& chart) const {
    auto it = per_chart.find(chart);
    if (it == per_chart.end()) throw Error("psi has no images in chart " + chart);
    return it->second;
}

std::vector<RationalFunction> frame_coordinates(const Atlas& atlas, const PsiMorphism& psi,
                                                const std::string& chart,
                                                const std::vector<RationalFunction>& field) {
    (void)atlas;
    const auto& imgs = psi.images(chart);
    size_t d = field.size();
    Mat<RationalFunction> a(d, imgs.size());
    std::vector<RationalFunction> rhs = field;
    for (size_t i = 0; i < imgs.size(); ++i)
        for (size_t p = 0; p < d; ++p) a(p, i) = imgs[i].frame_field[p];
    auto sol = solve_linear(a, rhs);
    if (!sol) throw Error("field is not a section of the psi frame in chart " + chart);
    return *sol;
}

AtiyahElement psi_apply(const Atlas& atlas, const PsiMorphism& psi, const std::string& chart,
                        const std::vector<RationalFunction>& field) {
    auto lambda = frame_coordinates(atlas, psi, chart, field);
    const auto& imgs = psi.images(chart);
    AtiyahElement acc = imgs[0].value.scaled(lambda[0]);
    for (size_t i = 1; i < imgs.size(); ++i)
        acc = acc + imgs[i].value.scaled(lambda[i]);
    return acc;
}

void check_theta1_section(const PsiMorphism& psi) {
    for (const auto& [chart, imgs] : psi.per_chart)
        for (size_t i = 0; i < imgs.size(); ++i)
            for (size_t p = 0; p < imgs[i].frame_field.size(); ++p)
                if (imgs[i].value.b[p] != imgs[i].frame_field[p])
                    throw Error("theta_1 o psi != id in chart " + chart + " on frame element " +
                                std::to_string(i + 1) + " (component " + std::to_string(p + 1) +
                                ": " + imgs[i].value.b[p].to_string() + " vs " +
                                imgs[i].frame_field[p].to_string() + ")");
}

std::optional<std::string> psi_overlap_residual(const Atlas& atlas, const PsiMorphism& psi) {
    for (const auto& [a, b] : atlas.overlaps()) {
        if (!psi.per_chart.count(a) || !psi.per_chart.count(b)) continue;
        const Chart& cb = atlas.chart(b);
        for (size_t i = 0; i < psi.images(b).size(); ++i) {
            const auto& img = psi.images(b)[i];
            // the frame field of chart b expressed in chart a (as an S field)
            std::vector<RationalFunction> field_b_full(atlas.codim(), RationalFunction());
            for (const auto& f : img.frame_field) field_b_full.push_back(f);
            std::vector<RationalFunction> moved = atlas.push_field(field_b_full, b, a);
            std::vector<RationalFunction> s_field;
            for (size_t p = 0; p < cb.dim_s(); ++p)
                s_field.push_back(atlas.on_s(moved[atlas.codim() + p], a));
            AtiyahElement via_a = psi_apply(atlas, psi, a, s_field);
            AtiyahElement direct = transport_atiyah(atlas, img.value, a);
            if (!(via_a == direct))
                return "psi images disagree across " + a + " -> " + b + " on frame element " +
                       std::to_string(i + 1) + ": " + via_a.to_string() + " vs " +
                       direct.to_string();
        }
    }
    return std::nullopt;
}

Mat<RationalFunction> connection_matrix(const Atlas& atlas, const PsiMorphism& psi,
                                        const std::string& chart,
                                        const std::vector<RationalFunction>& direction) {
    AtiyahElement q = psi_apply(atlas, psi, chart, direction);
    // C(s,r) = e(s,r); the universal connection in the normal frame carries
    // the opposite sign, and the Chern data localizes through this one.
    return q.e;
}

std::vector<RationalFunction> s_bracket(const std::vector<std::string>& tangential_vars,
                                        const std::vector<RationalFunction>& u,
                                        const std::vector<RationalFunction>& v) {
    size_t d = tangential_vars.size();
    std::vector<RationalFunction> out(d);
    for (size_t p = 0; p < d; ++p) {
        RationalFunction acc;
        for (size_t q = 0; q < d; ++q) {
            acc += u[q] * differentiate(v[p], tangential_vars[q]);
            acc -= v[q] * differentiate(u[p], tangential_vars[q]);
        }
        out[p] = acc;
    }
    return out;
}

Mat<RationalFunction> curvature(const Atlas& atlas, const PsiMorphism& psi,
                                const std::string& chart, size_t i, size_t j) {
    const Chart& c = atlas.chart(chart);
    const auto& imgs = psi.images(chart);
    if (i >= imgs.size() || j >= imgs.size()) throw Error("curvature: frame index out of range");
    size_t m = c.codim();

    // matrices of the universal connection: A_w = -e(psi(w))
    auto conn = [&](const AtiyahElement& q) { return q.e.scaled(RationalFunction(-1)); };
    auto derive = [&](const std::vector<RationalFunction>& w, const Mat<RationalFunction>& mat) {
        Mat<RationalFunction> out(m, m);
        for (size_t r = 0; r < m; ++r)
            for (size_t s = 0; s < m; ++s) {
                RationalFunction acc;
                for (size_t p = 0; p < c.dim_s(); ++p)
                    acc += w[p] * differentiate(mat(r, s), c.tangential_vars[p]);
                out(r, s) = acc;
            }
        return out;
    };

    const auto& u = imgs[i].frame_field;
    const auto& v = imgs[j].frame_field;
    Mat<RationalFunction> au = conn(imgs[i].value);
    Mat<RationalFunction> av = conn(imgs[j].value);

    std::vector<RationalFunction> uv = s_bracket(c.tangential_vars, u, v);
    std::vector<RationalFunction> lambda;
    try {
        lambda = frame_coordinates(atlas, psi, chart, uv);
    } catch (const Error&) {
        throw Error("curvature: frame is not involutive in chart " + chart +
                    " (bracket of elements " + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + " leaves the span)");
    }
    Mat<RationalFunction> auv(m, m);
    for (size_t k = 0; k < imgs.size(); ++k)
        auv = auv + conn(imgs[k].value).scaled(lambda[k]);

    return derive(u, av) - derive(v, au) + au * av - av * au - auv;
}

} // namespace residua
