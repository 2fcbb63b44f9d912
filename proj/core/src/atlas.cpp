#include "residua/atlas.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace residua {

std::vector<std::string> Chart::all_vars() const {
    std::vector<std::string> out = normal_vars;
    out.insert(out.end(), tangential_vars.begin(), tangential_vars.end());
    return out;
}

Atlas::Atlas(std::vector<Chart> charts, std::vector<TransitionMap> transitions)
    : charts_(std::move(charts)) {
    if (charts_.empty()) throw Error("atlas needs at least one chart");
    codim_ = charts_[0].codim();
    for (auto& t : transitions) {
        TransitionMap rev{t.to, t.from, t.backward, t.forward};
        for (auto* m : {&t, &rev}) {
            auto key = std::make_pair(m->from, m->to);
            if (transitions_.count(key))
                throw Error("duplicate transition " + m->from + " -> " + m->to);
            transitions_.emplace(key, *m);
        }
    }
    validate();
}

void Atlas::validate() {
    std::set<std::string> names;
    for (const auto& c : charts_) {
        if (!names.insert(c.name).second) throw Error("duplicate chart name " + c.name);
        if (c.codim() != codim_)
            throw Error("inconsistent codimension in chart " + c.name);
        std::set<std::string> vars;
        for (const auto& v : c.all_vars())
            if (!vars.insert(v).second)
                throw Error("duplicate variable " + v + " in chart " + c.name);
    }
    for (const auto& [key, t] : transitions_) {
        const Chart& from = chart(t.from);
        const Chart& to = chart(t.to);
        for (const auto& v : to.all_vars())
            if (!t.forward.count(v))
                throw Error("transition " + t.from + " -> " + t.to + " misses component " + v);
        for (const auto& v : from.all_vars())
            if (!t.backward.count(v))
                throw Error("transition " + t.from + " -> " + t.to + " misses inverse component " + v);
        // backward o forward = identity, symbolically
        std::map<std::string, RationalFunction> fwd;
        for (const auto& [var, expr] : t.forward) fwd.emplace(var, expr);
        for (const auto& v : from.all_vars()) {
            std::map<std::string, RationalFunction> needed;
            for (const auto& fv : t.backward.at(v).vars()) {
                auto it = fwd.find(fv);
                if (it == fwd.end())
                    throw Error("transition " + t.from + " -> " + t.to +
                                ": inverse block uses foreign variable " + fv);
                needed.emplace(fv, it->second);
            }
            RationalFunction composed = substitute(t.backward.at(v), needed);
            if (composed != RationalFunction::variable(v))
                throw Error("transition " + t.from + " -> " + t.to +
                            " is not inverted by its inverse block on " + v +
                            " (got " + composed.to_string() + ")");
        }
    }
}

const Chart& Atlas::chart(const std::string& name) const {
    for (const auto& c : charts_)
        if (c.name == name) return c;
    throw Error("unknown chart " + name);
}

bool Atlas::has_chart(const std::string& name) const {
    return std::any_of(charts_.begin(), charts_.end(),
                       [&](const Chart& c) { return c.name == name; });
}

bool Atlas::has_transition(const std::string& from, const std::string& to) const {
    return transitions_.count({from, to}) != 0;
}

const TransitionMap& Atlas::transition(const std::string& from, const std::string& to) const {
    auto it = transitions_.find({from, to});
    if (it == transitions_.end()) throw Error("no transition " + from + " -> " + to);
    return it->second;
}

std::vector<std::pair<std::string, std::string>> Atlas::overlaps() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, t] : transitions_) out.push_back(key);
    return out;
}

RationalFunction Atlas::jacobian(const std::string& from, const std::string& to,
                                 const std::string& target_var,
                                 const std::string& source_var) const {
    return differentiate(transition(from, to).forward.at(target_var), source_var);
}

RationalFunction Atlas::on_s(const RationalFunction& f, const std::string& chart_name) const {
    return restrict_zero(f, chart(chart_name).normal_vars);
}

RationalFunction Atlas::s_to_chart(const RationalFunction& f, const std::string& from,
                                   const std::string& to) const {
    if (from == to) return f;
    const TransitionMap& t = transition(to, from);  // expresses from-vars in to-vars
    std::map<std::string, RationalFunction> assign;
    for (const auto& v : chart(from).tangential_vars)
        assign.emplace(v, on_s(t.forward.at(v), to));
    for (const auto& v : chart(from).normal_vars) assign.emplace(v, RationalFunction());
    std::map<std::string, RationalFunction> needed;
    for (const auto& v : f.vars()) {
        auto it = assign.find(v);
        if (it == assign.end()) throw Error("s_to_chart: " + v + " is not a " + from + " variable");
        needed.emplace(v, it->second);
    }
    return substitute(f, needed);
}

std::vector<RationalFunction> Atlas::push_field(const std::vector<RationalFunction>& comps,
                                                const std::string& from,
                                                const std::string& to) const {
    const Chart& cf = chart(from);
    const Chart& ct = chart(to);
    auto from_vars = cf.all_vars();
    if (comps.size() != from_vars.size()) throw Error("push_field: component count mismatch");
    const TransitionMap& t = transition(from, to);
    std::vector<RationalFunction> out;
    for (const auto& u : ct.all_vars()) {
        RationalFunction acc;
        for (size_t j = 0; j < from_vars.size(); ++j) {
            if (comps[j].is_zero()) continue;
            acc += comps[j] * differentiate(t.forward.at(u), from_vars[j]);
        }
        // expressed in from-vars; convert to to-vars
        std::map<std::string, RationalFunction> needed;
        for (const auto& v : acc.vars()) needed.emplace(v, t.backward.at(v));
        out.push_back(substitute(acc, needed));
    }
    return out;
}

namespace {

bool in_ideal_power(const RationalFunction& f, const std::vector<std::string>& nvars,
                    unsigned k) {
    if (f.is_zero()) return true;
    return *ideal_order(f, nvars) >= k;
}

} // namespace

EmbeddingReport classify_atlas(const Atlas& atlas) {
    EmbeddingReport rep;
    auto fail = [&](bool& flag, const std::string& name, const std::string& from,
                    const std::string& to, const std::string& detail) {
        flag = false;
        rep.witnesses.push_back({name, from, to, detail});
    };

    for (const auto& [from, to] : atlas.overlaps()) {
        const Chart& cf = atlas.chart(from);
        const Chart& ct = atlas.chart(to);
        const TransitionMap& t = atlas.transition(from, to);

        for (const auto& nr : ct.normal_vars) {
            RationalFunction restricted = atlas.on_s(t.forward.at(nr), from);
            if (!restricted.is_zero())
                fail(rep.adapted, "adapted", from, to, nr + "|_S = " + restricted.to_string());
        }
        if (!rep.adapted) continue;

        for (const auto& tp : ct.tangential_vars) {
            for (const auto& nr : cf.normal_vars) {
                RationalFunction d = atlas.jacobian(from, to, tp, nr);
                if (!in_ideal_power(d, cf.normal_vars, 1))
                    fail(rep.splitting, "splitting", from, to,
                         "d" + tp + "/d" + nr + "|_S = " + atlas.on_s(d, from).to_string());
                if (!in_ideal_power(d, cf.normal_vars, 2))
                    fail(rep.two_splitting, "two_splitting", from, to,
                         "d" + tp + "/d" + nr + " not in I^2: " + d.to_string());
            }
        }
        for (const auto& nr : ct.normal_vars) {
            for (const auto& s1 : cf.normal_vars)
                for (const auto& s2 : cf.normal_vars) {
                    RationalFunction d2 = differentiate(atlas.jacobian(from, to, nr, s1), s2);
                    if (!in_ideal_power(d2, cf.normal_vars, 1))
                        fail(rep.comfortable, "comfortable", from, to,
                             "d2 " + nr + "/d" + s1 + " d" + s2 + "|_S = " +
                                 atlas.on_s(d2, from).to_string());
                }
        }
    }
    if (!rep.adapted) {
        rep.splitting = rep.two_splitting = rep.comfortable = rep.two_linearizable = false;
        return rep;
    }
    if (!rep.splitting) rep.two_splitting = false;
    rep.comfortable = rep.comfortable && rep.splitting;
    rep.two_linearizable = rep.two_splitting && rep.comfortable;
    return rep;
}

std::string EmbeddingReport::to_string() const {
    std::ostringstream os;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    os << "adapted=" << yn(adapted) << " splitting=" << yn(splitting)
       << " two_splitting=" << yn(two_splitting) << " comfortable=" << yn(comfortable)
       << " two_linearizable=" << yn(two_linearizable);
    for (const auto& w : witnesses)
        os << "\n  [" << w.flag << "] " << w.from << " -> " << w.to << ": " << w.detail;
    return os.str();
}

int normal_bundle_degree(const Atlas& atlas) {
    if (atlas.charts().size() != 2 || atlas.codim() != 1 ||
        atlas.charts()[0].dim_s() != 1)
        throw Error("normal_bundle_degree: need a two-chart rational-curve model "
                    "(declare the degree in the manifest instead)");
    const Chart& a = atlas.charts()[0];
    const Chart& b = atlas.charts()[1];
    if (!atlas.has_transition(a.name, b.name))
        throw Error("normal_bundle_degree: the two charts do not overlap");
    const std::string y = a.tangential_vars[0], w = b.tangential_vars[0];
    RationalFunction wt = atlas.on_s(atlas.transition(a.name, b.name).forward.at(w), a.name);
    if (wt != RationalFunction::variable(y).inverse())
        throw Error("normal_bundle_degree: tangential transition must be " + w + " = 1/" + y);
    // frame change: d_{1,a} = c * d_{1,b} with c = d(normal_b)/d(normal_a)|_S
    RationalFunction c = atlas.on_s(
        atlas.jacobian(a.name, b.name, b.normal_vars[0], a.normal_vars[0]), a.name);
    if (c.is_zero()) throw Error("normal_bundle_degree: degenerate normal frame change");
    RationalFunction cw = atlas.s_to_chart(c, a.name, b.name);
    auto num_ord = cw.num().order_in({w});
    auto den_ord = cw.den().order_in({w});
    return int(num_ord.value_or(0)) - int(den_ord.value_or(0));
}

} // namespace residua
