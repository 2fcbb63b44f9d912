#include "residua/cochain.hpp"

#include <sstream>

namespace residua {

RationalFunction CochainValue::comp(const std::vector<unsigned>& idx) const {
    auto it = comps.find(idx);
    return it == comps.end() ? RationalFunction() : it->second;
}

void CochainValue::set(const std::vector<unsigned>& idx, RationalFunction v) {
    if (idx.size() != shape.size()) throw Error("cochain index arity mismatch");
    for (size_t k = 0; k < idx.size(); ++k)
        if (idx[k] >= dims[k]) throw Error("cochain index out of range");
    if (v.is_zero())
        comps.erase(idx);
    else
        comps[idx] = std::move(v);
}

CochainValue CochainValue::operator-() const {
    CochainValue out = *this;
    for (auto& [i, v] : out.comps) v = -v;
    return out;
}

CochainValue operator+(const CochainValue& a, const CochainValue& b) {
    if (a.shape != b.shape || a.chart != b.chart) throw Error("cochain shape mismatch");
    CochainValue out = a;
    for (const auto& [i, v] : b.comps) {
        RationalFunction s = out.comp(i) + v;
        out.set(i, s);
    }
    return out;
}

CochainValue operator-(const CochainValue& a, const CochainValue& b) { return a + (-b); }

std::string CochainValue::to_string() const {
    if (comps.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, v] : comps) {
        if (!first) os << ", ";
        first = false;
        os << "(";
        for (size_t k = 0; k < i.size(); ++k) os << (k ? "," : "") << i[k] + 1;
        os << ") = " << v.to_string();
    }
    return os.str();
}

namespace {

// Per-slot frame change matrix M: index_from  = sum_j M(j, i) index_to.
// All entries are functions on S in to-chart tangential variables.
Mat<RationalFunction> slot_matrix(const Atlas& atlas, Slot slot, const std::string& from,
                                  const std::string& to, const FrameChange& frame_change) {
    const Chart& cf = atlas.chart(from);
    const Chart& ct = atlas.chart(to);
    auto jac_on_s = [&](const std::string& src, const std::string& dst,
                        const std::string& tv, const std::string& sv) {
        // d z_dst^tv / d z_src^sv restricted to S, expressed in `to` coords
        RationalFunction d = atlas.on_s(atlas.jacobian(src, dst, tv, sv), src);
        return atlas.s_to_chart(d, src, to);
    };
    switch (slot) {
    case Slot::Conormal: {
        // omega_from^s = (d z_from^s / d z_to^r)|_S omega_to^r ; M(r, s)
        size_t m = cf.codim();
        Mat<RationalFunction> M(m, m);
        for (size_t r = 0; r < m; ++r)
            for (size_t s = 0; s < m; ++s)
                M(r, s) = jac_on_s(to, from, cf.normal_vars[s], ct.normal_vars[r]);
        return M;
    }
    case Slot::Normal: {
        // d_{r,from} = (d z_to^t / d z_from^r)|_S d_{t,to} ; M(t, r)
        size_t m = cf.codim();
        Mat<RationalFunction> M(m, m);
        for (size_t t = 0; t < m; ++t)
            for (size_t r = 0; r < m; ++r)
                M(t, r) = jac_on_s(from, to, ct.normal_vars[t], cf.normal_vars[r]);
        return M;
    }
    case Slot::TangentS: {
        size_t d = cf.dim_s();
        Mat<RationalFunction> M(d, d);
        for (size_t q = 0; q < d; ++q)
            for (size_t p = 0; p < d; ++p)
                M(q, p) = jac_on_s(from, to, ct.tangential_vars[q], cf.tangential_vars[p]);
        return M;
    }
    case Slot::CotangentS: {
        size_t d = cf.dim_s();
        Mat<RationalFunction> M(d, d);
        for (size_t q = 0; q < d; ++q)
            for (size_t p = 0; p < d; ++p)
                M(q, p) = jac_on_s(to, from, cf.tangential_vars[p], ct.tangential_vars[q]);
        return M;
    }
    case Slot::Frame: {
        if (!frame_change) throw Error("cochain transport needs a frame change");
        return frame_change(from, to);
    }
    case Slot::Coframe: {
        if (!frame_change) throw Error("cochain transport needs a frame change");
        auto inv = frame_change(to, from);  // to-frame in from-frame, entries in from coords
        Mat<RationalFunction> M(inv.rows(), inv.cols());
        for (size_t r = 0; r < inv.rows(); ++r)
            for (size_t c = 0; c < inv.cols(); ++c)
                M(r, c) = atlas.s_to_chart(inv(c, r), from, to);
        return M;
    }
    }
    throw Error("unreachable slot");
}

} // namespace

CochainValue transport_cochain(const Atlas& atlas, const CochainValue& value,
                               const std::string& to_chart, const FrameChange& frame_change) {
    if (value.chart == to_chart) return value;
    std::vector<Mat<RationalFunction>> mats;
    for (Slot s : value.shape)
        mats.push_back(slot_matrix(atlas, s, value.chart, to_chart, frame_change));

    CochainValue out;
    out.chart = to_chart;
    out.pair_first = value.pair_first;
    out.shape = value.shape;
    out.dims = value.dims;
    for (const auto& [idx, v] : value.comps) {
        RationalFunction base = atlas.s_to_chart(v, value.chart, to_chart);
        // expand over all target indices
        std::vector<unsigned> tgt(idx.size(), 0);
        std::function<void(size_t, RationalFunction)> emit = [&](size_t k, RationalFunction acc) {
            if (acc.is_zero()) return;
            if (k == idx.size()) {
                out.set(tgt, out.comp(tgt) + acc);
                return;
            }
            for (unsigned j = 0; j < out.dims[k]; ++j) {
                tgt[k] = j;
                emit(k + 1, acc * mats[k](j, idx[k]));
            }
        };
        emit(0, base);
    }
    return out;
}

CochainValue conormal_cocycle(const Atlas& atlas, const std::string& a, const std::string& b) {
    const Chart& ca = atlas.chart(a);
    const Chart& cb = atlas.chart(b);
    size_t m = atlas.codim(), d = cb.dim_s();
    CochainValue out;
    out.chart = b;
    out.pair_first = a;
    out.shape = {Slot::Conormal, Slot::TangentS};
    out.dims = {m, d};
    for (size_t s = 0; s < m; ++s)
        for (size_t p = 0; p < d; ++p) {
            RationalFunction acc;
            for (size_t r = 0; r < m; ++r) {
                // (d z_a^r / d z_b^s)|_S in b-coords
                RationalFunction f1 =
                    atlas.on_s(atlas.jacobian(b, a, ca.normal_vars[r], cb.normal_vars[s]), b);
                // (d z_b^p / d z_a^r)|_S in a-coords -> b-coords
                RationalFunction f2 = atlas.s_to_chart(
                    atlas.on_s(atlas.jacobian(a, b, cb.tangential_vars[p], ca.normal_vars[r]), a),
                    a, b);
                acc += f1 * f2;
            }
            out.set({unsigned(s), unsigned(p)}, -acc);
        }
    return out;
}

CochainValue atiyah_cocycle(const Atlas& atlas, const std::string& a, const std::string& b) {
    const Chart& ca = atlas.chart(a);
    const Chart& cb = atlas.chart(b);
    size_t m = atlas.codim(), d = cb.dim_s();
    CochainValue out;
    out.chart = b;
    out.pair_first = a;
    out.shape = {Slot::CotangentS, Slot::Conormal, Slot::Normal};
    out.dims = {d, m, m};
    // g = (dz_a^t/dz_b^s . d2 z_b^r / dz_a^p dz_a^t)|_S dz_a^p ox omega_b^s ox d_{r,b},
    // with dz_a^p re-expressed in the b cotangent frame.
    for (size_t q = 0; q < d; ++q)
        for (size_t s = 0; s < m; ++s)
            for (size_t r = 0; r < m; ++r) {
                RationalFunction acc;
                for (size_t p = 0; p < ca.dim_s(); ++p) {
                    RationalFunction inner;
                    for (size_t t = 0; t < m; ++t) {
                        RationalFunction f1 = atlas.on_s(
                            atlas.jacobian(b, a, ca.normal_vars[t], cb.normal_vars[s]), b);
                        RationalFunction d2 = atlas.on_s(
                            differentiate(
                                atlas.jacobian(a, b, cb.normal_vars[r], ca.tangential_vars[p]),
                                ca.normal_vars[t]),
                            a);
                        inner += f1 * atlas.s_to_chart(d2, a, b);
                    }
                    // dz_a^p -> (d z_a^p / d z_b^q)|_S dz_b^q
                    RationalFunction co = atlas.on_s(
                        atlas.jacobian(b, a, ca.tangential_vars[p], cb.tangential_vars[q]), b);
                    acc += inner * co;
                }
                out.set({unsigned(q), unsigned(s), unsigned(r)}, acc);
            }
    return out;
}

CochainValue coboundary_residual(const Atlas& atlas, const CochainValue& cocycle,
                                 const std::map<std::string, CochainValue>& cochain,
                                 const FrameChange& frame_change) {
    // cocycle is indexed by the ordered pair (A, B) and expressed in B
    const std::string& b = cocycle.chart;
    const std::string& a = cocycle.pair_first;
    if (a.empty()) throw Error("coboundary_residual: cocycle has no chart pair");
    auto ita = cochain.find(a);
    auto itb = cochain.find(b);
    if (ita == cochain.end() || itb == cochain.end())
        throw Error("coboundary_residual: cochain must cover both charts");
    if (ita->second.shape != cocycle.shape || itb->second.shape != cocycle.shape)
        throw Error("coboundary_residual: shape mismatch");
    CochainValue moved = transport_cochain(atlas, ita->second, b, frame_change);
    return cocycle - (moved - itb->second);
}

Atlas apply_splitting_correction(const Atlas& atlas,
                                 const std::map<std::string, CochainValue>& cochain) {
    size_t m = atlas.codim();
    for (const auto& c : atlas.charts()) {
        auto it = cochain.find(c.name);
        if (it == cochain.end())
            throw Error("apply_splitting_correction: missing cochain for chart " + c.name);
        const CochainValue& v = it->second;
        if (v.shape != std::vector<Slot>{Slot::Conormal, Slot::TangentS} ||
            v.dims != std::vector<size_t>{m, c.dim_s()})
            throw Error("apply_splitting_correction: cochain has the wrong shape");
    }
    // the cochain must be a primitive of the conormal cocycle on every overlap
    for (const auto& [a, b] : atlas.overlaps()) {
        CochainValue s = conormal_cocycle(atlas, a, b);
        CochainValue res = coboundary_residual(atlas, s, cochain, nullptr);
        if (!res.is_zero())
            throw Error("apply_splitting_correction: cochain is not a primitive of the "
                        "conormal cocycle on " + a + " -> " + b + "; residual: " +
                        res.to_string());
    }

    // hat coordinates: z^p -> z^p - c^p_r z^r, normal block unchanged
    auto hat_forward = [&](const Chart& c) {
        std::map<std::string, RationalFunction> h;
        for (const auto& nv : c.normal_vars) h.emplace(nv, RationalFunction::variable(nv));
        const CochainValue& cv = cochain.at(c.name);
        for (size_t p = 0; p < c.dim_s(); ++p) {
            RationalFunction expr = RationalFunction::variable(c.tangential_vars[p]);
            for (size_t r = 0; r < m; ++r)
                expr -= cv.comp({unsigned(r), unsigned(p)}) *
                        RationalFunction::variable(c.normal_vars[r]);
            h.emplace(c.tangential_vars[p], expr);
        }
        return h;
    };
    auto hat_inverse = [&](const Chart& c) {
        // z^p = hat z^p + c^p_r(z'') hat z^r; exact when c is constant,
        // otherwise a verified Newton step.
        const CochainValue& cv = cochain.at(c.name);
        std::map<std::string, RationalFunction> inv;
        for (const auto& nv : c.normal_vars) inv.emplace(nv, RationalFunction::variable(nv));
        bool constant = true;
        for (const auto& [i, val] : cv.comps)
            if (!val.is_constant()) constant = false;
        std::map<std::string, RationalFunction> guess = inv;
        for (size_t p = 0; p < c.dim_s(); ++p) {
            RationalFunction expr = RationalFunction::variable(c.tangential_vars[p]);
            for (size_t r = 0; r < m; ++r)
                expr += cv.comp({unsigned(r), unsigned(p)}) *
                        RationalFunction::variable(c.normal_vars[r]);
            guess.emplace(c.tangential_vars[p], expr);
        }
        if (!constant) {
            // refine once: substitute the guess into the c arguments
            std::map<std::string, RationalFunction> refined = inv;
            for (size_t p = 0; p < c.dim_s(); ++p) {
                RationalFunction expr = RationalFunction::variable(c.tangential_vars[p]);
                for (size_t r = 0; r < m; ++r) {
                    RationalFunction coeff = cv.comp({unsigned(r), unsigned(p)});
                    std::map<std::string, RationalFunction> needed;
                    for (const auto& var : coeff.vars()) needed.emplace(var, guess.at(var));
                    expr += substitute(coeff, needed) * RationalFunction::variable(c.normal_vars[r]);
                }
                refined[c.tangential_vars[p]] = expr;
            }
            guess = refined;
        }
        // verify H(guess) == id
        auto h = hat_forward(c);
        for (const auto& v : c.all_vars()) {
            std::map<std::string, RationalFunction> needed;
            for (const auto& hv : h.at(v).vars()) needed.emplace(hv, guess.at(hv));
            if (substitute(h.at(v), needed) != RationalFunction::variable(v))
                throw Error("apply_splitting_correction: corrective coordinates are not "
                            "rationally invertible in chart " + c.name);
        }
        return guess;
    };

    std::vector<TransitionMap> new_transitions;
    for (const auto& [a, b] : atlas.overlaps()) {
        if (a > b) continue;  // one orientation; the constructor closes inverses
        const TransitionMap& t = atlas.transition(a, b);
        auto ha_inv = hat_inverse(atlas.chart(a));
        auto hb = hat_forward(atlas.chart(b));
        auto hb_inv = hat_inverse(atlas.chart(b));
        auto ha = hat_forward(atlas.chart(a));
        auto compose = [&](const std::map<std::string, RationalFunction>& outer_hat,
                           const std::map<std::string, RationalFunction>& mid,
                           const std::map<std::string, RationalFunction>& inner_inv) {
            // outer_hat(mid(inner_inv(z)))
            std::map<std::string, RationalFunction> out;
            for (const auto& [var, hat_expr] : outer_hat) {
                std::map<std::string, RationalFunction> stage1;
                for (const auto& mv : hat_expr.vars()) stage1.emplace(mv, mid.at(mv));
                RationalFunction in_mid = substitute(hat_expr, stage1);
                std::map<std::string, RationalFunction> stage2;
                for (const auto& iv : in_mid.vars()) stage2.emplace(iv, inner_inv.at(iv));
                out.emplace(var, substitute(in_mid, stage2));
            }
            return out;
        };
        std::map<std::string, RationalFunction> fwd_map, bwd_map;
        for (const auto& [var, e] : t.forward) fwd_map.emplace(var, e);
        for (const auto& [var, e] : t.backward) bwd_map.emplace(var, e);
        TransitionMap nt;
        nt.from = a;
        nt.to = b;
        nt.forward = compose(hb, fwd_map, ha_inv);
        nt.backward = compose(ha, bwd_map, hb_inv);
        new_transitions.push_back(std::move(nt));
    }
    return Atlas(atlas.charts(), std::move(new_transitions));
}

} // namespace residua
