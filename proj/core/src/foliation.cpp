#include "residua/foliation.hpp"

#include <algorithm>
#include <set>

namespace residua {

namespace {

// ambient bracket of two fields given by chart components
std::vector<RationalFunction> ambient_bracket(const std::vector<std::string>& vars,
                                              const std::vector<RationalFunction>& u,
                                              const std::vector<RationalFunction>& v) {
    std::vector<RationalFunction> out(vars.size());
    for (size_t j = 0; j < vars.size(); ++j) {
        RationalFunction acc;
        for (size_t h = 0; h < vars.size(); ++h) {
            acc += u[h] * differentiate(v[j], vars[h]);
            acc -= v[h] * differentiate(u[j], vars[h]);
        }
        out[j] = acc;
    }
    return out;
}

// solve sum_k lambda_k gens_k = field over the rational-function field
std::optional<std::vector<RationalFunction>>
in_span(const std::vector<std::vector<RationalFunction>>& gens,
        const std::vector<RationalFunction>& field) {
    size_t n = field.size();
    Mat<RationalFunction> a(n, gens.size());
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < n; ++j) a(j, i) = gens[i][j];
    return solve_linear(a, field);
}

size_t generic_rank_of(const std::vector<std::vector<RationalFunction>>& gens) {
    if (gens.empty()) return 0;
    size_t n = gens[0].size();
    Mat<RationalFunction> a(n, gens.size());
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < n; ++j) a(j, i) = gens[i][j];
    return matrix_rank(a);
}

} // namespace

Foliation make_foliation(const Atlas& atlas, const std::string& name, size_t dim,
                         const std::string& declared_chart,
                         const std::vector<std::vector<RationalFunction>>& generators) {
    if (generators.size() != dim)
        throw Error("foliation " + name + ": expected " + std::to_string(dim) + " generators");
    const Chart& c0 = atlas.chart(declared_chart);
    for (const auto& g : generators)
        if (g.size() != c0.all_vars().size())
            throw Error("foliation " + name + ": generator component count mismatch");

    Foliation f;
    f.name = name;
    f.dim = dim;
    f.gens[declared_chart] = generators;

    // push to every chart reachable through transitions (breadth first)
    std::vector<std::string> frontier{declared_chart};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& from : frontier)
            for (const auto& c : atlas.charts()) {
                if (f.gens.count(c.name) || !atlas.has_transition(from, c.name)) continue;
                std::vector<std::vector<RationalFunction>> pushed;
                for (const auto& g : f.gens.at(from))
                    pushed.push_back(atlas.push_field(g, from, c.name));
                f.gens[c.name] = std::move(pushed);
                next.push_back(c.name);
            }
        frontier = std::move(next);
    }
    if (f.gens.size() != atlas.charts().size())
        throw Error("foliation " + name + ": some charts are unreachable from " + declared_chart);

    // generic independence and involutivity, checked symbolically per chart
    for (const auto& [chart, gens] : f.gens) {
        if (generic_rank_of(gens) != dim)
            throw Error("foliation " + name + ": generators are dependent in chart " + chart);
        auto vars = atlas.chart(chart).all_vars();
        for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = i + 1; j < gens.size(); ++j) {
                auto br = ambient_bracket(vars, gens[i], gens[j]);
                if (!in_span(gens, br))
                    throw Error("foliation " + name + ": generators are not involutive in chart " +
                                chart);
            }
    }
    return f;
}

TangencyReport tangency_classify(const Atlas& atlas, const Foliation& f) {
    TangencyReport rep;
    size_t m = atlas.codim();
    for (const auto& [chart, gens] : f.gens) {
        const Chart& c = atlas.chart(chart);
        bool all_zero_on_s = true;
        for (const auto& g : gens) {
            for (size_t j = 0; j < g.size(); ++j)
                if (!atlas.on_s(g[j], chart).is_zero()) all_zero_on_s = false;
            for (size_t r = 0; r < m; ++r) {
                RationalFunction rs = atlas.on_s(g[r], chart);
                if (!rs.is_zero()) {
                    rep.tangent = false;
                    rep.witnesses.push_back("chart " + chart + ": normal component d/d" +
                                            c.normal_vars[r] + " restricts to " + rs.to_string());
                }
            }
        }
        if (all_zero_on_s)
            throw Error("foliation " + f.name + ": S lies inside the singular locus (chart " +
                        chart + ")");
    }
    return rep;
}

SigmaReport sigma_project(const Atlas& atlas, const Foliation& f) {
    SigmaReport rep;
    size_t rank = 0;
    for (const auto& [chart, gens] : f.gens) {
        const Chart& c = atlas.chart(chart);
        std::vector<std::vector<RationalFunction>> projected;
        for (const auto& g : gens) {
            std::vector<RationalFunction> s_field;
            for (size_t p = 0; p < c.dim_s(); ++p)
                s_field.push_back(atlas.on_s(g[c.codim() + p], chart));
            projected.push_back(std::move(s_field));
        }
        rank = std::max(rank, generic_rank_of(projected));
        // involutivity of the projection
        for (size_t i = 0; i < projected.size() && rep.involutive; ++i)
            for (size_t j = i + 1; j < projected.size() && rep.involutive; ++j) {
                auto br = s_bracket(c.tangential_vars, projected[i], projected[j]);
                if (!in_span(projected, br)) rep.involutive = false;
            }
        if (c.dim_s() == 1 && f.dim == 1) {
            RationalFunction coeff = projected[0][0];
            rep.degeneracy[chart] = coeff.num();
        }
        rep.gens_s[chart] = std::move(projected);
    }
    rep.generic_rank = rank;
    rep.faithful = (rank == f.dim) && rep.involutive;
    if (rank == 0)
        throw Error("foliation " + f.name + ": lifting is not F-faithful anywhere (the "
                    "sigma-projection collapses)");
    return rep;
}

CanonicalFrame canonical_frame(const Atlas& atlas, const Foliation& f,
                               const std::string& chart) {
    const Chart& c = atlas.chart(chart);
    size_t m = c.codim(), l = f.dim, n = c.all_vars().size();
    if (l > c.dim_s()) throw Error("foliation rank exceeds dim S");
    const auto& gens = f.gens.at(chart);
    // the (b)-matrix: first-l tangential block of the generators
    Mat<RationalFunction> b(l, l);
    for (size_t i = 0; i < l; ++i)
        for (size_t q = 0; q < l; ++q) b(q, i) = gens[i][m + q];
    auto binv = b.inverse();
    if (!binv) throw Error("atlas not adapted to F: the frame block is singular along S in chart " +
                           chart);
    // check it is a unit along S
    Mat<RationalFunction> bs(l, l);
    for (size_t i = 0; i < l; ++i)
        for (size_t q = 0; q < l; ++q) bs(q, i) = atlas.on_s(b(q, i), chart);
    if (bs.det().is_zero())
        throw Error("atlas not adapted to F: the frame block vanishes along S in chart " + chart);

    CanonicalFrame frame;
    frame.chart = chart;
    for (size_t i = 0; i < l; ++i) {
        std::vector<RationalFunction> v(n);
        for (size_t j = 0; j < n; ++j) {
            RationalFunction acc;
            for (size_t k = 0; k < l; ++k) acc += (*binv)(k, i) * gens[k][j];
            v[j] = acc;
        }
        frame.fields.push_back(std::move(v));
    }
    // normalized tangential block is the identity; the remaining tangential
    // components must lie in I_S (the atlas is adapted to F^sigma)
    for (size_t i = 0; i < l; ++i)
        for (size_t p = l; p < c.dim_s(); ++p) {
            RationalFunction rs = atlas.on_s(frame.fields[i][m + p], chart);
            if (!rs.is_zero())
                throw Error("atlas not adapted to F: component d/d" + c.tangential_vars[p] +
                            " of the normalized frame survives on S in chart " + chart);
        }
    return frame;
}

Mat<RationalFunction> frame_cocycle(const Atlas& atlas, const Foliation& f,
                                    const std::string& from, const std::string& to) {
    CanonicalFrame vf = canonical_frame(atlas, f, from);
    CanonicalFrame vt = canonical_frame(atlas, f, to);
    const Chart& cf = atlas.chart(from);
    const Chart& ct = atlas.chart(to);
    size_t l = f.dim;
    const TransitionMap& t = atlas.transition(from, to);
    // c(p,q) = v_{from,q} applied to the to-chart tangential coordinate p,
    // expressed in to-chart variables
    Mat<RationalFunction> c(l, l);
    auto fvars = cf.all_vars();
    for (size_t q = 0; q < l; ++q)
        for (size_t p = 0; p < l; ++p) {
            RationalFunction acc;
            for (size_t j = 0; j < fvars.size(); ++j)
                acc += vf.fields[q][j] *
                       differentiate(t.forward.at(ct.tangential_vars[p]), fvars[j]);
            std::map<std::string, RationalFunction> back;
            for (const auto& v : acc.vars()) back.emplace(v, t.backward.at(v));
            c(p, q) = substitute(acc, back);
        }
    // verify the remaining frame-change identities: v_{from,q} = sum_p c(p,q) v_{to,p}
    // on every component (lines two and three of the structural relations)
    for (size_t q = 0; q < l; ++q) {
        std::vector<RationalFunction> lhs = atlas.push_field(vf.fields[q], from, to);
        for (size_t j = 0; j < ct.all_vars().size(); ++j) {
            RationalFunction rhs;
            for (size_t p = 0; p < l; ++p) rhs += c(p, q) * vt.fields[p][j];
            if (lhs[j] != rhs)
                throw Error("canonical frame cocycle identity fails on " + from + " -> " + to +
                            " component " + ct.all_vars()[j] + ": " + lhs[j].to_string() +
                            " vs " + rhs.to_string());
        }
    }
    return c;
}

FrameChange foliation_frame_change(const Atlas& atlas, const Foliation& f) {
    return [&atlas, &f](const std::string& from, const std::string& to) {
        Mat<RationalFunction> c = frame_cocycle(atlas, f, from, to);
        Mat<RationalFunction> out(c.rows(), c.cols());
        for (size_t r = 0; r < c.rows(); ++r)
            for (size_t s = 0; s < c.cols(); ++s) out(r, s) = atlas.on_s(c(r, s), to);
        return out;
    };
}

CochainValue transfer_section(const Atlas& atlas, const Foliation& f, const std::string& chart) {
    CanonicalFrame frame = canonical_frame(atlas, f, chart);
    size_t m = atlas.codim(), l = f.dim;
    CochainValue t;
    t.chart = chart;
    t.shape = {Slot::Coframe, Slot::Normal};
    t.dims = {l, m};
    for (size_t p = 0; p < l; ++p)
        for (size_t r = 0; r < m; ++r)
            t.set({unsigned(p), unsigned(r)}, atlas.on_s(frame.fields[p][r], chart));
    return t;
}

CochainValue f_cocycle(const Atlas& atlas, const Foliation& f, const std::string& a,
                       const std::string& b) {
    size_t m = atlas.codim(), l = f.dim;
    CochainValue out;
    out.chart = b;
    out.pair_first = a;
    out.shape = {Slot::Conormal, Slot::Frame, Slot::Coframe};
    out.dims = {m, l, l};
    if (tangency_classify(atlas, f).tangent) return out;  // zero in the tangential case

    EmbeddingReport rep = classify_atlas(atlas);
    if (!rep.comfortable)
        throw Error("f_cocycle needs a comfortable atlas in the transversal case; " +
                    rep.to_string());
    const Chart& cb = atlas.chart(b);
    // c_{ab}: v_{a,q'} = sum c(p,q) v_{b,p'}, functions of b-vars
    Mat<RationalFunction> c = frame_cocycle(atlas, f, a, b);
    for (size_t t = 0; t < m; ++t)
        for (size_t pt = 0; pt < l; ++pt)
            for (size_t p = 0; p < l; ++p) {
                RationalFunction acc;
                for (size_t q = 0; q < l; ++q) {
                    // (d z_a^{q'} / d z_b^{p'})|_S in b-coords
                    RationalFunction j1 = atlas.on_s(
                        atlas.jacobian(b, a, atlas.chart(a).tangential_vars[q],
                                       cb.tangential_vars[p]),
                        b);
                    RationalFunction j2 = atlas.on_s(
                        differentiate(c(pt, q), cb.normal_vars[t]), b);
                    acc += j1 * j2;
                }
                out.set({unsigned(t), unsigned(pt), unsigned(p)}, acc);
            }
    return out;
}

CochainValue f_cocycle_pushed(const Atlas& atlas, const Foliation& f, const std::string& a,
                              const std::string& b) {
    CochainValue fc = f_cocycle(atlas, f, a, b);
    CochainValue tr = transfer_section(atlas, f, b);
    size_t m = atlas.codim(), l = f.dim;
    CochainValue out;
    out.chart = b;
    out.pair_first = a;
    out.shape = {Slot::Conormal, Slot::Normal, Slot::Coframe};
    out.dims = {m, m, l};
    for (size_t t = 0; t < m; ++t)
        for (size_t r = 0; r < m; ++r)
            for (size_t p = 0; p < l; ++p) {
                RationalFunction acc;
                for (size_t pt = 0; pt < l; ++pt)
                    acc += tr.comp({unsigned(pt), unsigned(r)}) *
                           fc.comp({unsigned(t), unsigned(pt), unsigned(p)});
                out.set({unsigned(t), unsigned(r), unsigned(p)}, acc);
            }
    return out;
}

namespace {

// psi image of a canonical-frame field: b-part is the restricted tangential
// block, e-part the first normal derivatives of the normal components
// (the rho~ expansion of the a-coefficients).
PsiMorphism::Image frame_image(const Atlas& atlas, const std::string& chart,
                               const std::vector<RationalFunction>& field) {
    const Chart& c = atlas.chart(chart);
    size_t m = c.codim();
    PsiMorphism::Image img;
    for (size_t p = 0; p < c.dim_s(); ++p)
        img.frame_field.push_back(atlas.on_s(field[m + p], chart));
    img.value.chart = chart;
    img.value.b = img.frame_field;
    img.value.e = Mat<RationalFunction>(m, m);
    for (size_t r = 0; r < m; ++r)
        for (size_t s = 0; s < m; ++s)
            img.value.e(r, s) = atlas.on_s(differentiate(field[r], c.normal_vars[s]), chart);
    return img;
}

} // namespace

PsiMorphism psi_tangential(const Atlas& atlas, const Foliation& f) {
    TangencyReport tan = tangency_classify(atlas, f);
    if (!tan.tangent)
        throw Error("psi_tangential: foliation is not tangent to S (" + tan.witnesses[0] + ")");
    PsiMorphism psi;
    for (const auto& c : atlas.charts()) {
        CanonicalFrame frame = canonical_frame(atlas, f, c.name);
        std::vector<PsiMorphism::Image> imgs;
        for (const auto& field : frame.fields)
            imgs.push_back(frame_image(atlas, c.name, field));
        psi.per_chart[c.name] = std::move(imgs);
    }
    check_theta1_section(psi);
    if (auto bad = psi_overlap_residual(atlas, psi))
        throw Error("psi_tangential: " + *bad);
    return psi;
}

PsiMorphism psi_from_global_generators(const Atlas& atlas, const Foliation& f) {
    EmbeddingReport rep = classify_atlas(atlas);
    if (!rep.comfortable)
        throw Error("psi_from_global_generators needs a comfortable atlas; " + rep.to_string());
    PsiMorphism psi;
    for (const auto& c : atlas.charts()) {
        const auto& gens = f.gens.at(c.name);
        std::vector<PsiMorphism::Image> imgs;
        std::vector<std::vector<RationalFunction>> hat;
        for (const auto& g : gens) {
            PsiMorphism::Image img = frame_image(atlas, c.name, g);
            hat.push_back(img.frame_field);
            imgs.push_back(std::move(img));
        }
        if (generic_rank_of(hat) != f.dim)
            throw Error("psi_from_global_generators: generators do not span rank " +
                        std::to_string(f.dim) + " after projection in chart " + c.name);
        psi.per_chart[c.name] = std::move(imgs);
    }
    check_theta1_section(psi);
    if (auto bad = psi_overlap_residual(atlas, psi))
        throw Error("psi_from_global_generators: " + *bad);
    return psi;
}

CsIndex camacho_sad_index(const Atlas& atlas, const Foliation& f, const std::string& chart,
                          const GaussianRational& p) {
    const Chart& c = atlas.chart(chart);
    if (atlas.codim() != 1 || c.dim_s() != 1 || f.dim != 1)
        throw Error("camacho_sad_index needs m = 1, dim S = 1, l = 1");
    const auto& g = f.gens.at(chart)[0];
    RationalFunction a1 = g[0], a2 = g[1];
    if (!atlas.on_s(a1, chart).is_zero())
        throw Error("camacho_sad_index: foliation is not tangent to S in chart " + chart);
    RationalFunction a2s = atlas.on_s(a2, chart);
    if (a2s.is_zero())
        throw Error("camacho_sad_index: S lies inside the singular locus in chart " + chart);
    const std::string x = c.normal_vars[0], y = c.tangential_vars[0];
    RationalFunction kernel = atlas.on_s(differentiate(a1 / a2, x), chart);
    OneForm1D form{y, kernel};
    CsIndex out{residue_at_point_1d(form, p), std::nullopt};
    RationalFunction at = evaluate(a2s, {{y, p}});
    if (!at.is_zero())
        out.warning = "point is not a singular point of the projected foliation; index 0";
    return out;
}

GaussianRational localized_residue(const Atlas& atlas, const PsiMorphism& psi,
                                   const std::string& chart,
                                   const std::vector<RationalFunction>& direction,
                                   const PhiSpec& phi, size_t rank,
                                   const std::map<std::string, GaussianRational>& point) {
    const Chart& c = atlas.chart(chart);
    size_t d = c.dim_s();
    if (phi.degree() != d)
        throw Error("phi must have degree dim S = " + std::to_string(d) + " (got " +
                    std::to_string(phi.degree()) + ")");
    if (phi.degree() + rank <= d)
        throw Error("phi degree must exceed dim S - rank of the frame");
    Mat<RationalFunction> cm = connection_matrix(atlas, psi, chart, direction);
    RationalFunction numerator = phi.evaluate(cm);

    GrothendieckData data;
    data.vars = c.tangential_vars;
    data.point = point;
    data.numerator = numerator;
    for (size_t p = 0; p < d; ++p) {
        const RationalFunction& a = direction[p];
        // clear the rational denominator into the numerator (a unit at the point)
        RationalFunction den_at = evaluate(RationalFunction(a.den()), point);
        if (den_at.is_zero())
            throw Error("direction component has a pole at the point");
        data.denominators.push_back(a.num());
        data.numerator = data.numerator * RationalFunction(a.den());
    }
    return grothendieck_residue(data);
}

} // namespace residua
