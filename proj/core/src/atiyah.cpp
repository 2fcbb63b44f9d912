#include "residua/atiyah.hpp"

#include <sstream>

namespace residua {

bool AtiyahElement::is_zero() const {
    for (const auto& f : b)
        if (!f.is_zero()) return false;
    return e.is_zero();
}

AtiyahElement operator+(const AtiyahElement& x, const AtiyahElement& y) {
    if (x.chart != y.chart) throw Error("Atiyah elements live in different charts");
    AtiyahElement out = x;
    for (size_t k = 0; k < out.b.size(); ++k) out.b[k] += y.b[k];
    out.e = out.e + y.e;
    return out;
}

AtiyahElement operator-(const AtiyahElement& x, const AtiyahElement& y) {
    if (x.chart != y.chart) throw Error("Atiyah elements live in different charts");
    AtiyahElement out = x;
    for (size_t k = 0; k < out.b.size(); ++k) out.b[k] -= y.b[k];
    out.e = out.e - y.e;
    return out;
}

AtiyahElement AtiyahElement::scaled(const RationalFunction& f) const {
    AtiyahElement out = *this;
    for (auto& v : out.b) v *= f;
    out.e = out.e.scaled(f);
    return out;
}

std::string AtiyahElement::to_string() const {
    std::ostringstream os;
    os << "b = (";
    for (size_t k = 0; k < b.size(); ++k) os << (k ? ", " : "") << b[k].to_string();
    os << "); e = [";
    for (size_t r = 0; r < e.rows(); ++r) {
        os << (r ? "; " : "");
        for (size_t s = 0; s < e.cols(); ++s) os << (s ? ", " : "") << e(r, s).to_string();
    }
    os << "]";
    return os.str();
}

AtiyahElement atiyah_project(const Atlas& atlas, const std::string& chart,
                             const std::vector<RationalFunction>& comps) {
    const Chart& c = atlas.chart(chart);
    size_t m = c.codim();
    if (comps.size() != m + c.dim_s()) throw Error("atiyah_project: component count mismatch");
    for (size_t r = 0; r < m; ++r) {
        RationalFunction rs = atlas.on_s(comps[r], chart);
        if (!rs.is_zero())
            throw Error("atiyah_project: field is not tangent along S; normal component " +
                        c.normal_vars[r] + " restricts to " + rs.to_string());
    }
    AtiyahElement q;
    q.chart = chart;
    q.e = Mat<RationalFunction>(m, m);
    for (size_t p = 0; p < c.dim_s(); ++p) q.b.push_back(atlas.on_s(comps[m + p], chart));
    for (size_t r = 0; r < m; ++r)
        for (size_t s = 0; s < m; ++s)
            q.e(r, s) = atlas.on_s(differentiate(comps[r], c.normal_vars[s]), chart);
    return q;
}

AtiyahElement tilde_pi(const Atlas& atlas, const std::string& chart,
                       const std::vector<RationalFunction>& comps) {
    EmbeddingReport rep = classify_atlas(atlas);
    if (!rep.comfortable)
        throw Error("tilde_pi needs a comfortable atlas; classification: " + rep.to_string());
    const Chart& c = atlas.chart(chart);
    size_t m = c.codim();
    if (comps.size() != m + c.dim_s()) throw Error("tilde_pi: component count mismatch");
    AtiyahElement q;
    q.chart = chart;
    q.e = Mat<RationalFunction>(m, m);
    for (size_t p = 0; p < c.dim_s(); ++p) q.b.push_back(atlas.on_s(comps[m + p], chart));
    for (size_t r = 0; r < m; ++r)
        for (size_t s = 0; s < m; ++s)
            q.e(r, s) = atlas.on_s(differentiate(comps[r], c.normal_vars[s]), chart);
    return q;
}

std::vector<RationalFunction> atiyah_representative(const Atlas& atlas, const AtiyahElement& q) {
    const Chart& c = atlas.chart(q.chart);
    size_t m = c.codim();
    std::vector<RationalFunction> comps;
    for (size_t r = 0; r < m; ++r) {
        RationalFunction acc;
        for (size_t s = 0; s < m; ++s)
            acc += q.e(r, s) * RationalFunction::variable(c.normal_vars[s]);
        comps.push_back(acc);
    }
    for (size_t p = 0; p < c.dim_s(); ++p) comps.push_back(q.b[p]);
    return comps;
}

AtiyahElement transport_atiyah(const Atlas& atlas, const AtiyahElement& q,
                               const std::string& to_chart) {
    if (q.chart == to_chart) return q;
    std::vector<RationalFunction> rep = atiyah_representative(atlas, q);
    std::vector<RationalFunction> pushed = atlas.push_field(rep, q.chart, to_chart);
    return atiyah_project(atlas, to_chart, pushed);
}

std::vector<RationalFunction> universal_connection(const AtiyahElement& q, size_t r) {
    std::vector<RationalFunction> out;
    for (size_t s = 0; s < q.e.rows(); ++s) out.push_back(-q.e(s, r));
    return out;
}

} // namespace residua
