#include "residua/manifest.hpp"

#include <fstream>
#include <sstream>

namespace residua {

namespace {

std::string join_diags(const std::vector<ParseDiagnostic>& diags) {
    std::ostringstream os;
    os << "manifest has " << diags.size() << " diagnostic(s):";
    for (const auto& d : diags) os << "\n  " << d.to_string();
    return os.str();
}

struct Cursor {
    const std::string& src;
    size_t pos = 0;
    int line = 1, col = 1;

    bool eof() const { return pos >= src.size(); }
    char peek() const { return src[pos]; }
    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws() {
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }
    std::string read_word() {
        skip_ws();
        std::string out;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            out += src[pos], advance();
        return out;
    }
    bool try_char(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            advance();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!try_char(c))
            throw ParseError({line, col, std::string("expected '") + c + "'"});
    }
    std::string rest_of_line() {
        std::string out;
        while (!eof() && peek() != '\n') out += src[pos], advance();
        return out;
    }
    // text up to the matching close of the '{' just consumed
    struct Snippet {
        std::string text;
        int line, col;
    };
    Snippet read_block_body() {
        skip_ws();
        Snippet s;
        s.line = line;
        s.col = col;
        int depth = 0;
        while (!eof()) {
            char c = peek();
            if (c == '{') ++depth;
            if (c == '}') {
                if (depth == 0) {
                    advance();
                    return s;
                }
                --depth;
            }
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
                s.text += ' ';
                continue;
            }
            s.text += c;
            advance();
        }
        throw ParseError({s.line, s.col, "unterminated block"});
    }
};

// split at top-level occurrences of sep (parentheses tracked), keeping
// per-piece start offsets
std::vector<std::pair<std::string, size_t>> split_top(const std::string& text, char sep) {
    std::vector<std::pair<std::string, size_t>> out;
    int depth = 0;
    size_t start = 0;
    for (size_t k = 0; k < text.size(); ++k) {
        char c = text[k];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.emplace_back(text.substr(start, k - start), start);
            start = k + 1;
        }
    }
    out.emplace_back(text.substr(start), start);
    return out;
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

// absolute position of an offset inside a snippet
std::pair<int, int> offset_pos(const Cursor::Snippet& s, size_t off) {
    int line = s.line, col = s.col;
    for (size_t k = 0; k < off && k < s.text.size(); ++k) {
        if (s.text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

ManifestError::ManifestError(std::vector<ParseDiagnostic> diags)
    : Error(join_diags(diags)), diagnostics(std::move(diags)) {}

ModelBundle parse_manifest(const std::string& text) {
    ModelBundle bundle;
    std::vector<ParseDiagnostic> diags;
    std::vector<Chart> charts;
    std::vector<TransitionMap> transitions;
    std::optional<size_t> declared_codim;

    Cursor cur{text};
    auto chart_by_name = [&](const std::string& name) -> const Chart* {
        for (const auto& c : charts)
            if (c.name == name) return &c;
        return nullptr;
    };
    auto parse_snippet_expr = [&](const Cursor::Snippet& snip, size_t off, size_t len,
                                  const std::vector<std::string>& vars) {
        auto [l, c] = offset_pos(snip, off);
        return parse_expression_at(snip.text.substr(off, len), vars, l, c);
    };

    while (true) {
        cur.skip_ws();
        if (cur.eof()) break;
        int stmt_line = cur.line, stmt_col = cur.col;
        std::string kw = cur.read_word();
        try {
            if (kw == "model") {
                bundle.name = cur.read_word();
                if (bundle.name.empty())
                    throw ParseError({stmt_line, stmt_col, "model needs a name"});
            } else if (kw == "description") {
                cur.skip_ws();
                bundle.description = cur.rest_of_line();
            } else if (kw == "chart") {
                Chart c;
                c.name = cur.read_word();
                if (c.name.empty()) throw ParseError({cur.line, cur.col, "chart needs a name"});
                for (int block = 0; block < 2; ++block) {
                    std::string which = cur.read_word();
                    bool normal = which == "normal";
                    if (!normal && which != "tangential")
                        throw ParseError({cur.line, cur.col,
                                          "expected normal(...) or tangential(...)"});
                    cur.expect('(');
                    auto& dst = normal ? c.normal_vars : c.tangential_vars;
                    while (true) {
                        std::string v = cur.read_word();
                        if (v.empty())
                            throw ParseError({cur.line, cur.col, "expected a variable name"});
                        dst.push_back(v);
                        if (cur.try_char(')')) break;
                        cur.expect(',');
                    }
                }
                charts.push_back(std::move(c));
            } else if (kw == "transition") {
                std::string from = cur.read_word();
                cur.expect('-');
                cur.expect('>');
                std::string to = cur.read_word();
                const Chart* cf = chart_by_name(from);
                const Chart* ct = chart_by_name(to);
                if (!cf)
                    throw ParseError({stmt_line, stmt_col, "unknown chart '" + from + "'"});
                if (!ct) throw ParseError({stmt_line, stmt_col, "unknown chart '" + to + "'"});
                TransitionMap t;
                t.from = from;
                t.to = to;
                auto read_assignments = [&](const std::vector<std::string>& target_vars,
                                            const std::vector<std::string>& source_vars,
                                            std::map<std::string, RationalFunction>& into) {
                    cur.expect('{');
                    Cursor::Snippet body = cur.read_block_body();
                    for (auto& [piece, off] : split_top(body.text, ';')) {
                        if (blank(piece)) continue;
                        size_t eq = piece.find('=');
                        if (eq == std::string::npos) {
                            auto [l, c2] = offset_pos(body, off);
                            throw ParseError({l, c2, "expected '<var> = <expr>;'"});
                        }
                        std::string var = piece.substr(0, eq);
                        var.erase(0, var.find_first_not_of(" \t\r\n"));
                        var.erase(var.find_last_not_of(" \t\r\n") + 1);
                        if (std::find(target_vars.begin(), target_vars.end(), var) ==
                            target_vars.end()) {
                            auto [l, c2] = offset_pos(body, off);
                            throw ParseError({l, c2, "'" + var + "' is not a target variable"});
                        }
                        into[var] = parse_snippet_expr(body, off + eq + 1,
                                                       piece.size() - eq - 1, source_vars);
                    }
                };
                read_assignments(ct->all_vars(), cf->all_vars(), t.forward);
                std::string inv = cur.read_word();
                if (inv != "inverse")
                    throw ParseError({cur.line, cur.col, "transition needs an inverse block"});
                read_assignments(cf->all_vars(), ct->all_vars(), t.backward);
                transitions.push_back(std::move(t));
            } else if (kw == "submanifold") {
                std::string codim_kw = cur.read_word();
                if (codim_kw != "codim")
                    throw ParseError({cur.line, cur.col, "expected 'codim <int>'"});
                std::string n = cur.read_word();
                declared_codim = size_t(std::stoul(n));
            } else if (kw == "foliation") {
                ModelBundle::FoliationDecl decl;
                decl.name = cur.read_word();
                if (cur.read_word() != "in")
                    throw ParseError({cur.line, cur.col, "expected 'in <chart>'"});
                decl.chart = cur.read_word();
                const Chart* c = chart_by_name(decl.chart);
                if (!c)
                    throw ParseError({stmt_line, stmt_col, "unknown chart '" + decl.chart + "'"});
                if (cur.read_word() != "generators")
                    throw ParseError({cur.line, cur.col, "expected 'generators { ... }'"});
                cur.expect('{');
                Cursor::Snippet body = cur.read_block_body();
                auto vars = c->all_vars();
                for (auto& [gen_text, gen_off] : split_top(body.text, ';')) {
                    if (blank(gen_text)) continue;
                    std::vector<RationalFunction> comps(vars.size(), RationalFunction());
                    // terms: <coeff> * d/d<var>, separated by top-level +/-
                    size_t pos = 0;
                    bool any = false;
                    while (pos < gen_text.size()) {
                        size_t dpos = gen_text.find("d/d", pos);
                        if (dpos == std::string::npos) {
                            if (!blank(gen_text.substr(pos))) {
                                auto [l, c2] = offset_pos(body, gen_off + pos);
                                throw ParseError({l, c2, "trailing text in generator"});
                            }
                            break;
                        }
                        size_t vstart = dpos + 3;
                        size_t vend = vstart;
                        while (vend < gen_text.size() &&
                               (std::isalnum(static_cast<unsigned char>(gen_text[vend])) ||
                                gen_text[vend] == '_'))
                            ++vend;
                        std::string var = gen_text.substr(vstart, vend - vstart);
                        auto vit = std::find(vars.begin(), vars.end(), var);
                        if (vit == vars.end()) {
                            auto [l, c2] = offset_pos(body, gen_off + dpos);
                            throw ParseError({l, c2, "unknown variable 'd/d" + var + "'"});
                        }
                        std::string coeff = gen_text.substr(pos, dpos - pos);
                        // strip a trailing '*'
                        size_t last = coeff.find_last_not_of(" \t\r\n");
                        if (last != std::string::npos && coeff[last] == '*')
                            coeff = coeff.substr(0, last);
                        RationalFunction val;
                        if (blank(coeff) || coeff.find_first_not_of(" \t\r\n+") ==
                                                std::string::npos) {
                            val = RationalFunction(1);
                        } else if (coeff.find_first_not_of(" \t\r\n-") == std::string::npos) {
                            val = RationalFunction(-1);
                        } else {
                            auto [l, c2] = offset_pos(body, gen_off + pos);
                            val = parse_expression_at(coeff, vars, l, c2);
                        }
                        comps[size_t(vit - vars.begin())] += val;
                        pos = vend;
                        any = true;
                    }
                    if (!any) {
                        auto [l, c2] = offset_pos(body, gen_off);
                        throw ParseError({l, c2, "generator has no d/d<var> term"});
                    }
                    decl.generators.push_back(std::move(comps));
                }
                if (decl.generators.empty())
                    throw ParseError({stmt_line, stmt_col, "foliation has no generators"});
                bundle.foliations.push_back(std::move(decl));
            } else if (kw == "map") {
                std::string name = cur.read_word();
                if (cur.read_word() != "in")
                    throw ParseError({cur.line, cur.col, "expected 'in <chart>'"});
                std::string chart = cur.read_word();
                const Chart* c = chart_by_name(chart);
                if (!c) throw ParseError({stmt_line, stmt_col, "unknown chart '" + chart + "'"});
                cur.expect('{');
                Cursor::Snippet body = cur.read_block_body();
                auto vars = c->all_vars();
                std::vector<RationalFunction> comps;
                for (const auto& v : vars) comps.push_back(RationalFunction::variable(v));
                for (auto& [piece, off] : split_top(body.text, ';')) {
                    if (blank(piece)) continue;
                    size_t eq = piece.find('=');
                    size_t prime = piece.find('\'');
                    if (eq == std::string::npos || prime == std::string::npos || prime > eq) {
                        auto [l, c2] = offset_pos(body, off);
                        throw ParseError({l, c2, "expected '<var>' = <expr>;'"});
                    }
                    std::string var = piece.substr(0, prime);
                    var.erase(0, var.find_first_not_of(" \t\r\n"));
                    var.erase(var.find_last_not_of(" \t\r\n") + 1);
                    auto vit = std::find(vars.begin(), vars.end(), var);
                    if (vit == vars.end()) {
                        auto [l, c2] = offset_pos(body, off);
                        throw ParseError({l, c2, "'" + var + "' is not a chart variable"});
                    }
                    comps[size_t(vit - vars.begin())] =
                        parse_snippet_expr(body, off + eq + 1, piece.size() - eq - 1, vars);
                }
                bool merged = false;
                for (auto& m : bundle.maps)
                    if (m.name == name) {
                        m.comps[chart] = comps;
                        merged = true;
                    }
                if (!merged) {
                    ModelBundle::MapDecl decl;
                    decl.name = name;
                    decl.comps[chart] = comps;
                    bundle.maps.push_back(std::move(decl));
                }
            } else if (kw == "points") {
                std::string chart = cur.read_word();
                if (!chart_by_name(chart))
                    throw ParseError({stmt_line, stmt_col, "unknown chart '" + chart + "'"});
                cur.expect('{');
                Cursor::Snippet body = cur.read_block_body();
                for (auto& [piece, off] : split_top(body.text, ',')) {
                    if (blank(piece)) continue;
                    RationalFunction v = parse_snippet_expr(body, off, piece.size(), {});
                    bundle.declared_points.emplace_back(chart, v.constant_value());
                }
            } else if (kw == "expect") {
                std::string what = cur.read_word();
                if (what == "degree") {
                    cur.skip_ws();
                    if (std::isalpha(static_cast<unsigned char>(cur.peek()))) {
                        std::string mode = cur.read_word();
                        if (mode != "compute")
                            throw ParseError({cur.line, cur.col,
                                              "expected an integer or 'compute'"});
                        bundle.compute_degree = true;
                    } else {
                        std::string n = cur.rest_of_line();
                        bundle.expected_degree = std::stoi(n);
                    }
                } else if (what == "sum") {
                    cur.skip_ws();
                    int l = cur.line, c2 = cur.col;
                    std::string rest = cur.rest_of_line();
                    RationalFunction v = parse_expression_at(rest, {}, l, c2);
                    bundle.expected_sum = v.constant_value();
                } else {
                    throw ParseError({cur.line, cur.col, "expected 'degree' or 'sum'"});
                }
            } else {
                throw ParseError({stmt_line, stmt_col, "unknown section '" + kw + "'"});
            }
        } catch (const ParseError& e) {
            diags.push_back(e.diagnostic);
            // resynchronize: skip to end of line
            cur.rest_of_line();
        } catch (const Error& e) {
            diags.push_back({stmt_line, stmt_col, e.what()});
            cur.rest_of_line();
        }
    }

    if (declared_codim)
        for (const auto& c : charts)
            if (c.codim() != *declared_codim)
                diags.push_back({1, 1, "chart " + c.name + " has codimension " +
                                           std::to_string(c.codim()) + ", manifest declares " +
                                           std::to_string(*declared_codim)});
    if (charts.empty()) diags.push_back({1, 1, "manifest declares no charts"});

    if (diags.empty()) {
        try {
            bundle.atlas.emplace(std::move(charts), std::move(transitions));
        } catch (const Error& e) {
            diags.push_back({1, 1, e.what()});
        }
    }
    if (!diags.empty()) throw ManifestError(std::move(diags));
    return bundle;
}

ModelBundle load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    ModelBundle b = parse_manifest(ss.str());
    if (b.name.empty()) b.name = path;
    return b;
}

} // namespace residua
