#include "residua/selfmap.hpp"

#include <algorithm>

namespace residua {

namespace {

std::optional<unsigned> component_order(const Atlas& atlas, const std::string& chart,
                                        const RationalFunction& diff) {
    if (diff.is_zero()) return std::nullopt;  // infinite order
    return ideal_order(diff, atlas.chart(chart).normal_vars);
}

std::vector<RationalFunction> push_map(const Atlas& atlas, const std::string& from,
                                       const std::string& to,
                                       const std::vector<RationalFunction>& f_from) {
    // f_to = T_{from->to} o f_from o T_{to->from}
    const Chart& cf = atlas.chart(from);
    const Chart& ct = atlas.chart(to);
    const TransitionMap& t = atlas.transition(from, to);
    std::map<std::string, RationalFunction> into_from;  // from-vars of the point
    {
        auto fv = cf.all_vars();
        for (size_t j = 0; j < fv.size(); ++j) into_from.emplace(fv[j], t.backward.at(fv[j]));
    }
    std::map<std::string, RationalFunction> mapped_from;  // f in from coords of a to-point
    {
        auto fv = cf.all_vars();
        for (size_t j = 0; j < fv.size(); ++j) {
            std::map<std::string, RationalFunction> needed;
            for (const auto& v : f_from[j].vars()) needed.emplace(v, into_from.at(v));
            mapped_from.emplace(fv[j], substitute(f_from[j], needed));
        }
    }
    std::vector<RationalFunction> out;
    for (const auto& u : ct.all_vars()) {
        const RationalFunction& expr = t.forward.at(u);
        std::map<std::string, RationalFunction> needed;
        for (const auto& v : expr.vars()) needed.emplace(v, mapped_from.at(v));
        out.push_back(substitute(expr, needed));
    }
    return out;
}

} // namespace

SelfMap make_selfmap(const Atlas& atlas, const std::string& name,
                     const std::map<std::string, std::vector<RationalFunction>>& declared) {
    if (declared.empty()) throw Error("self-map " + name + " has no chart data");
    SelfMap f;
    f.name = name;
    for (const auto& [chart, comps] : declared) {
        if (comps.size() != atlas.chart(chart).all_vars().size())
            throw Error("self-map " + name + ": component count mismatch in chart " + chart);
        f.comps[chart] = comps;
    }
    // push to the remaining charts where the composition stays regular along S
    std::vector<std::string> frontier;
    for (const auto& [chart, c] : f.comps) frontier.push_back(chart);
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& from : frontier)
            for (const auto& c : atlas.charts()) {
                if (f.comps.count(c.name) || f.undefined_charts.count(c.name) ||
                    !atlas.has_transition(from, c.name))
                    continue;
                try {
                    f.comps[c.name] = push_map(atlas, from, c.name, f.comps.at(from));
                    next.push_back(c.name);
                } catch (const Error&) {
                    f.undefined_charts.insert(c.name);
                }
            }
        frontier = std::move(next);
    }
    for (const auto& c : atlas.charts())
        if (!f.comps.count(c.name)) f.undefined_charts.insert(c.name);

    // invariants: fixes S pointwise; chart compatibility where both defined
    for (const auto& [chart, comps] : f.comps) {
        auto vars = atlas.chart(chart).all_vars();
        for (size_t j = 0; j < vars.size(); ++j) {
            RationalFunction diff = comps[j] - RationalFunction::variable(vars[j]);
            auto ord = component_order(atlas, chart, diff);
            if (ord && *ord < 1)
                throw Error("self-map " + name + " does not fix S pointwise: component " +
                            vars[j] + " in chart " + chart);
        }
    }
    for (const auto& [a, b] : atlas.overlaps()) {
        if (!f.comps.count(a) || !f.comps.count(b)) continue;
        std::vector<RationalFunction> via = push_map(atlas, a, b, f.comps.at(a));
        const auto& direct = f.comps.at(b);
        for (size_t j = 0; j < direct.size(); ++j)
            if (via[j] != direct[j])
                throw Error("self-map " + name + ": chart data disagree across " + a + " -> " + b);
    }
    return f;
}

unsigned order_of_contact(const Atlas& atlas, const SelfMap& f) {
    std::optional<unsigned> nu;
    for (const auto& [chart, comps] : f.comps) {
        auto vars = atlas.chart(chart).all_vars();
        std::optional<unsigned> chart_nu;
        for (size_t j = 0; j < vars.size(); ++j) {
            RationalFunction diff = comps[j] - RationalFunction::variable(vars[j]);
            auto ord = component_order(atlas, chart, diff);
            if (ord) chart_nu = chart_nu ? std::min(*chart_nu, *ord) : *ord;
        }
        if (!chart_nu) throw Error("order of contact undefined: the map is the identity");
        if (nu && *nu != *chart_nu)
            throw Error("order of contact differs across charts (" + std::to_string(*nu) +
                        " vs " + std::to_string(*chart_nu) + " in " + chart + ")");
        nu = chart_nu;
    }
    if (!nu || *nu < 1) throw Error("order of contact undefined");
    return *nu;
}

unsigned ContactData::multiplicity(const std::vector<unsigned>& idx) {
    // number of distinct orderings of the multi-index
    unsigned long num = 1;
    for (unsigned k = 2; k <= idx.size(); ++k) num *= k;
    unsigned long den = 1;
    size_t run = 1;
    for (size_t k = 1; k <= idx.size(); ++k) {
        if (k < idx.size() && idx[k] == idx[k - 1]) {
            ++run;
        } else {
            for (size_t t = 2; t <= run; ++t) den *= t;
            run = 1;
        }
    }
    return unsigned(num / den);
}

std::vector<std::vector<unsigned>> ContactData::multi_indices(size_t m, unsigned nu) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(nu, 0);
    std::function<void(size_t, unsigned)> rec = [&](size_t pos, unsigned start) {
        if (pos == nu) {
            out.push_back(cur);
            return;
        }
        for (unsigned r = start; r < m; ++r) {
            cur[pos] = r;
            rec(pos + 1, r);
        }
    };
    rec(0, 0);
    return out;
}

ContactData canonical_section(const Atlas& atlas, const SelfMap& f) {
    ContactData data;
    data.nu = order_of_contact(atlas, f);
    size_t m = atlas.codim();
    data.tangential = true;

    for (const auto& [chart, comps] : f.comps) {
        const Chart& c = atlas.chart(chart);
        auto vars = c.all_vars();
        // tangential iff the normal components sit one order deeper
        for (size_t r = 0; r < m; ++r) {
            RationalFunction diff = comps[r] - RationalFunction::variable(vars[r]);
            auto ord = component_order(atlas, chart, diff);
            if (ord && *ord < data.nu + 1) data.tangential = false;
        }
    }

    auto indices = ContactData::multi_indices(m, data.nu);
    for (const auto& [chart, comps] : f.comps) {
        const Chart& c = atlas.chart(chart);
        auto vars = c.all_vars();
        std::map<std::vector<unsigned>, std::vector<RationalFunction>> slot;
        for (const auto& idx : indices)
            slot[idx] = std::vector<RationalFunction>(vars.size(), RationalFunction());
        for (size_t j = 0; j < vars.size(); ++j) {
            RationalFunction diff = comps[j] - RationalFunction::variable(vars[j]);
            if (diff.is_zero()) continue;
            // peel a degree-nu normal monomial off every term of the numerator
            Polynomial den = diff.den();
            if (!den.order_in(c.normal_vars).has_value() || *den.order_in(c.normal_vars) > 0)
                throw Error("canonical_section: component not regular along S");
            for (const auto& [e, coeff_poly] : diff.num().expand_in(c.normal_vars)) {
                unsigned total = 0;
                for (unsigned k : e) total += k;
                if (total < data.nu)
                    throw Error("canonical_section: residual below the contact order "
                                "(internal division error)");
                // pick the nu lexicographically-first entries of e
                std::vector<unsigned> pick;
                Polynomial::Exponents rest = e;
                for (size_t r = 0; r < m && pick.size() < data.nu; ++r)
                    while (rest[r] > 0 && pick.size() < data.nu) {
                        pick.push_back(unsigned(r));
                        rest[r] -= 1;
                    }
                Polynomial mono = Polynomial::monomial(c.normal_vars, rest, GaussianRational(1));
                RationalFunction contrib =
                    RationalFunction(coeff_poly * mono, den) *
                    RationalFunction(GaussianRational(
                        mpq_class(1, long(ContactData::multiplicity(pick)))));
                slot[pick][j] += contrib;
            }
        }
        data.g[chart] = std::move(slot);
    }

    // reconstruction identity: sum mult * g * z^idx == f - id, exactly
    for (const auto& [chart, slot] : data.g) {
        const Chart& c = atlas.chart(chart);
        auto vars = c.all_vars();
        for (size_t j = 0; j < vars.size(); ++j) {
            RationalFunction acc;
            for (const auto& [idx, comps_g] : slot) {
                RationalFunction mono(1);
                for (unsigned r : idx) mono *= RationalFunction::variable(c.normal_vars[r]);
                acc += comps_g[j] * mono *
                       RationalFunction(GaussianRational(long(ContactData::multiplicity(idx))));
            }
            RationalFunction diff = f.comps.at(chart)[j] - RationalFunction::variable(vars[j]);
            if (acc != diff)
                throw Error("canonical_section: reconstruction identity failed for " + vars[j] +
                            " in chart " + chart);
        }
    }
    return data;
}

DistributionReport canonical_distribution(const Atlas& atlas, const SelfMap& f,
                                          const ContactData& contact) {
    (void)f;
    size_t m = atlas.codim();
    DistributionReport rep;
    auto indices = ContactData::multi_indices(m, contact.nu);
    rep.rank = indices.size();

    for (const auto& [chart, slot] : contact.g) {
        const Chart& c = atlas.chart(chart);
        if (rep.rank > c.dim_s())
            throw Error("canonical distribution rank bound violated: C(m+nu-1,nu) = " +
                        std::to_string(rep.rank) + " > dim S");
        std::vector<std::vector<RationalFunction>> gens;
        for (const auto& idx : indices) {
            const auto& g = slot.at(idx);
            std::vector<RationalFunction> v;
            if (contact.nu == 1 && !contact.tangential) {
                // v^sigma_r = (delta^s_r + g^s_r) g^p_s restricted, tangential part
                for (size_t j = 0; j < c.all_vars().size(); ++j) {
                    RationalFunction acc;
                    for (size_t s = 0; s < m; ++s) {
                        RationalFunction factor =
                            (s == idx[0] ? RationalFunction(1) : RationalFunction()) +
                            slot.at({unsigned(s)})[idx[0]];
                        acc += atlas.on_s(factor * slot.at({unsigned(s)})[j], chart);
                    }
                    // the twisted frame lives in T_S: drop normal parts
                    v.push_back(j < m ? RationalFunction() : acc);
                }
            } else {
                for (size_t j = 0; j < c.all_vars().size(); ++j)
                    v.push_back(atlas.on_s(g[j], chart));
            }
            gens.push_back(std::move(v));
        }
        if (c.dim_s() == 1 && rep.rank == 1) {
            RationalFunction coeff = gens[0][m];
            rep.degeneracy[chart] = coeff.num();
        }
        rep.generators[chart] = std::move(gens);
    }

    // transformation residuals across overlaps
    for (const auto& [a, b] : atlas.overlaps()) {
        if (!rep.generators.count(a) || !rep.generators.count(b)) continue;
        const Chart& ca = atlas.chart(a);
        for (size_t ia = 0; ia < indices.size(); ++ia) {
            // v_{idx,a} = sum_{idx_b} M(idx_b, idx_a) v_{idx_b, b} with M the
            // symmetrized product of normal Jacobians
            std::vector<RationalFunction> rhs(ca.all_vars().size(), RationalFunction());
            for (size_t ib = 0; ib < indices.size(); ++ib) {
                // coefficient: sum over ordered tuples sorting to indices[ib]
                RationalFunction coeff = [&] {
                    std::vector<unsigned> tuple(contact.nu);
                    RationalFunction acc;
                    std::function<void(size_t)> rec = [&](size_t pos) {
                        if (pos == contact.nu) {
                            std::vector<unsigned> sorted = tuple;
                            std::sort(sorted.begin(), sorted.end());
                            if (sorted != indices[ib]) return;
                            RationalFunction prod(1);
                            for (size_t t = 0; t < contact.nu; ++t)
                                prod *= atlas.on_s(
                                    atlas.jacobian(a, b,
                                                   atlas.chart(b).normal_vars[tuple[t]],
                                                   ca.normal_vars[indices[ia][t]]),
                                    a);
                            acc += prod;
                            return;
                        }
                        for (unsigned r = 0; r < m; ++r) {
                            tuple[pos] = r;
                            rec(pos + 1);
                        }
                    };
                    rec(0);
                    return acc;
                }();
                if (coeff.is_zero()) continue;
                // transport v_{ib,b} to chart a on S
                const auto& vb = rep.generators.at(b)[ib];
                for (size_t j = 0; j < ca.all_vars().size(); ++j) {
                    RationalFunction acc;
                    for (size_t k = 0; k < vb.size(); ++k) {
                        if (vb[k].is_zero()) continue;
                        RationalFunction jac = atlas.on_s(
                            atlas.jacobian(b, a, ca.all_vars()[j],
                                           atlas.chart(b).all_vars()[k]),
                            b);
                        acc += atlas.s_to_chart(vb[k] * jac, b, a);
                    }
                    rhs[j] += coeff * acc;
                }
            }
            for (size_t j = 0; j < ca.all_vars().size(); ++j)
                if (rep.generators.at(a)[ia][j] != rhs[j])
                    rep.transformation_failures.push_back(
                        "generator transformation residual on " + a + " -> " + b +
                        " component " + ca.all_vars()[j]);
        }
    }

    bool all_zero = true;
    for (const auto& [chart, gens] : rep.generators)
        for (const auto& g : gens)
            for (const auto& comp : g)
                if (!comp.is_zero()) all_zero = false;
    rep.degenerate_everywhere = all_zero;
    return rep;
}

FrameChange map_frame_change(const Atlas& atlas, const ContactData& contact) {
    size_t m = atlas.codim();
    unsigned nu = contact.nu;
    auto indices = ContactData::multi_indices(m, nu);
    return [&atlas, m, nu, indices](const std::string& from, const std::string& to) {
        Mat<RationalFunction> M(indices.size(), indices.size());
        for (size_t col = 0; col < indices.size(); ++col)
            for (size_t row = 0; row < indices.size(); ++row) {
                std::vector<unsigned> tuple(nu);
                RationalFunction acc;
                std::function<void(size_t)> rec = [&](size_t pos) {
                    if (pos == nu) {
                        std::vector<unsigned> sorted = tuple;
                        std::sort(sorted.begin(), sorted.end());
                        if (sorted != indices[row]) return;
                        RationalFunction prod(1);
                        for (size_t t = 0; t < nu; ++t)
                            prod *= atlas.s_to_chart(
                                atlas.on_s(atlas.jacobian(from, to,
                                                          atlas.chart(to).normal_vars[tuple[t]],
                                                          atlas.chart(from)
                                                              .normal_vars[indices[col][t]]),
                                           from),
                                from, to);
                        acc += prod;
                        return;
                    }
                    for (unsigned r = 0; r < m; ++r) {
                        tuple[pos] = r;
                        rec(pos + 1);
                    }
                };
                rec(0);
                M(row, col) = acc;
            }
        return M;
    };
}

CochainValue m_cocycle(const Atlas& atlas, const SelfMap& f, const ContactData& contact,
                       const std::string& a, const std::string& b) {
    size_t m = atlas.codim();
    auto indices = ContactData::multi_indices(m, contact.nu);
    const Chart& ca = atlas.chart(a);
    const Chart& cb = atlas.chart(b);
    CochainValue out;
    out.chart = b;
    out.pair_first = a;
    out.shape = {Slot::Conormal, Slot::Normal, Slot::Coframe};
    out.dims = {m, m, indices.size()};
    if (!f.comps.count(a) || !f.comps.count(b)) return out;

    const auto& slot_b = contact.g.at(b);
    for (size_t s = 0; s < m; ++s)
        for (size_t r = 0; r < m; ++r)
            for (size_t ridx = 0; ridx < indices.size(); ++ridx) {
                RationalFunction acc;
                for (size_t p = 0; p < cb.dim_s(); ++p) {
                    // the g factor: tangential component of the (possibly
                    // df-twisted) canonical section in chart b
                    RationalFunction gfac;
                    if (contact.nu == 1 && !contact.tangential) {
                        for (size_t u = 0; u < m; ++u) {
                            RationalFunction factor =
                                (u == indices[ridx][0] ? RationalFunction(1)
                                                       : RationalFunction()) +
                                slot_b.at({unsigned(u)})[indices[ridx][0]];
                            gfac += factor * slot_b.at({unsigned(u)})[m + p];
                        }
                    } else {
                        gfac = slot_b.at(indices[ridx])[m + p];
                    }
                    gfac = atlas.on_s(gfac, b);
                    if (gfac.is_zero()) continue;
                    RationalFunction inner;
                    for (size_t q = 0; q < ca.dim_s(); ++q)
                        for (size_t t = 0; t < m; ++t) {
                            RationalFunction j1 = atlas.on_s(
                                atlas.jacobian(b, a, ca.tangential_vars[q],
                                               cb.tangential_vars[p]),
                                b);
                            RationalFunction d2 = atlas.s_to_chart(
                                atlas.on_s(
                                    differentiate(atlas.jacobian(a, b, cb.normal_vars[r],
                                                                 ca.tangential_vars[q]),
                                                  ca.normal_vars[t]),
                                    a),
                                a, b);
                            RationalFunction j3 = atlas.on_s(
                                atlas.jacobian(b, a, ca.normal_vars[t], cb.normal_vars[s]),
                                b);
                            inner += j1 * d2 * j3;
                        }
                    acc += inner * gfac;
                }
                out.set({unsigned(s), unsigned(r), unsigned(ridx)}, acc);
            }
    return out;
}

std::map<std::string, CochainValue> map_x_cochain(const Atlas& atlas, const SelfMap& f,
                                                  const ContactData& contact) {
    if (atlas.codim() != 1) throw Error("the explicit x cochain needs codimension 1");
    std::map<std::string, CochainValue> out;
    for (const auto& c : atlas.charts()) {
        CochainValue v;
        v.chart = c.name;
        v.shape = {Slot::Conormal, Slot::Normal, Slot::Coframe};
        v.dims = {1, 1, 1};
        if (f.comps.count(c.name)) {
            const auto& g1 = contact.g.at(c.name).at(std::vector<unsigned>(contact.nu, 0u));
            RationalFunction e = atlas.on_s(differentiate(g1[0], c.normal_vars[0]), c.name);
            v.set({0, 0, 0}, e);
        }
        out.emplace(c.name, std::move(v));
    }
    return out;
}

PsiMorphism psi_map_codim1(const Atlas& atlas, const SelfMap& f, const ContactData& contact) {
    if (atlas.codim() != 1)
        throw Error("psi_map_codim1: obstruction mode for m > 1: supply a cochain");
    if (!contact.tangential) {
        EmbeddingReport rep = classify_atlas(atlas);
        if (!rep.comfortable)
            throw Error("psi_map_codim1: the non-tangential case needs a comfortable atlas; " +
                        rep.to_string());
    }
    DistributionReport dist = canonical_distribution(atlas, f, contact);
    auto x = map_x_cochain(atlas, f, contact);
    PsiMorphism psi;
    for (const auto& [chart, gens] : dist.generators) {
        const Chart& c = atlas.chart(chart);
        PsiMorphism::Image img;
        for (size_t p = 0; p < c.dim_s(); ++p) img.frame_field.push_back(gens[0][1 + p]);
        img.value.chart = chart;
        img.value.b = img.frame_field;
        img.value.e = Mat<RationalFunction>(1, 1);
        img.value.e(0, 0) = -x.at(chart).comp({0, 0, 0});
        psi.per_chart[chart] = {img};
    }
    check_theta1_section(psi);
    if (auto bad = psi_overlap_residual(atlas, psi))
        throw Error("psi_map_codim1: " + *bad);
    return psi;
}

} // namespace residua
