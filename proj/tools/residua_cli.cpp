// Command-line front end: verify models, classify atlases, evaluate single
// residues, list the bundled corpus. Exit codes: 0 all PASS, 1 any FAIL,
// 2 usage or parse errors.

#include "residua/foliation.hpp"
#include "residua/selfmap.hpp"
#include "residua/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace residua;

namespace {

fs::path corpus_dir() {
    if (const char* env = std::getenv("RESIDUA_CORPUS")) return env;
    for (const char* cand : {"corpus", "../corpus", "../../corpus"})
        if (fs::is_directory(cand)) return cand;
#ifdef RESIDUA_SOURCE_CORPUS
    if (fs::is_directory(RESIDUA_SOURCE_CORPUS)) return RESIDUA_SOURCE_CORPUS;
#endif
    throw Error("no corpus directory found (set RESIDUA_CORPUS)");
}

int cmd_verify(const std::vector<std::string>& paths, bool json, const std::string& out) {
    std::ostringstream os;
    bool all_pass = true;
    bool first = true;
    if (json) os << "[";
    for (const auto& path : paths) {
        ModelBundle bundle = load_model(path);
        VerificationReport rep = run_verification(bundle);
        all_pass = all_pass && rep.pass;
        if (json) {
            os << (first ? "\n" : ",\n") << report_json(rep);
        } else {
            os << (first ? "" : "\n") << report_text(rep);
        }
        first = false;
    }
    if (json) os << "\n]\n";
    if (out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream sink(out);
        if (!sink) throw Error("cannot write " + out);
        sink << os.str();
    }
    return all_pass ? 0 : 1;
}

int cmd_check_atlas(const std::string& path) {
    ModelBundle bundle = load_model(path);
    EmbeddingReport rep = classify_atlas(*bundle.atlas);
    std::cout << bundle.name << ": " << rep.to_string() << "\n";
    return 0;
}

int cmd_residue(const std::string& path, const std::string& point_text,
                const std::string& chart_opt, const std::string& object_opt) {
    ModelBundle bundle = load_model(path);
    const Atlas& atlas = *bundle.atlas;
    std::string chart = chart_opt.empty() ? atlas.charts()[0].name : chart_opt;
    GaussianRational p = parse_expression(point_text, {}).constant_value();

    for (const auto& decl : bundle.foliations) {
        if (!object_opt.empty() && decl.name != object_opt) continue;
        Foliation fol = make_foliation(atlas, decl.name, decl.generators.size(), decl.chart,
                                       decl.generators);
        CsIndex idx = camacho_sad_index(atlas, fol, chart, p);
        std::cout << decl.name << " at " << chart << ":" << p.to_pretty() << " = "
                  << idx.value.to_pretty();
        if (idx.warning) std::cout << "   (" << *idx.warning << ")";
        std::cout << "\n";
        return 0;
    }
    for (const auto& decl : bundle.maps) {
        if (!object_opt.empty() && decl.name != object_opt) continue;
        SelfMap f = make_selfmap(atlas, decl.name, decl.comps);
        ContactData contact = canonical_section(atlas, f);
        DistributionReport dist = canonical_distribution(atlas, f, contact);
        PsiMorphism psi = psi_map_codim1(atlas, f, contact);
        std::vector<RationalFunction> dir{dist.generators.at(chart)[0][1]};
        GaussianRational v = localized_residue(atlas, psi, chart, dir, PhiSpec::c1_power(1),
                                               dist.rank,
                                               {{atlas.chart(chart).tangential_vars[0], p}});
        std::cout << decl.name << " at " << chart << ":" << p.to_pretty() << " = "
                  << v.to_pretty() << "\n";
        return 0;
    }
    throw Error("no matching object in " + path);
}

int cmd_list_corpus() {
    fs::path dir = corpus_dir();
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".man") names.push_back(entry.path().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) {
        ModelBundle b = load_model(n);
        std::cout << b.name << "  (" << n << ")";
        if (!b.description.empty()) std::cout << "  -- " << b.description;
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact localization residues for foliations and self-maps on chart atlases"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run full verification on model manifests");
    std::vector<std::string> paths;
    bool json = false;
    std::string out;
    verify->add_option("paths", paths, "manifest files")->required()->expected(-1);
    verify->add_flag("--json", json, "emit machine-readable JSON");
    verify->add_option("--out", out, "write the report to a file");

    auto* check = app.add_subcommand("check-atlas", "classify the embedding of a model's atlas");
    std::string check_path;
    check->add_option("path", check_path, "manifest file")->required();

    auto* residue = app.add_subcommand("residue", "evaluate one localized residue");
    std::string res_path, res_point, res_chart, res_object;
    residue->add_option("path", res_path, "manifest file")->required();
    residue->add_option("--point", res_point, "point coordinate (Gaussian rational)")->required();
    residue->add_option("--chart", res_chart, "chart name (default: first chart)");
    residue->add_option("--object", res_object, "object name (default: first object)");

    auto* list = app.add_subcommand("list-corpus", "list the bundled model corpus");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(verify)) return cmd_verify(paths, json, out);
        if (app.got_subcommand(check)) return cmd_check_atlas(check_path);
        if (app.got_subcommand(residue))
            return cmd_residue(res_path, res_point, res_chart, res_object);
        if (app.got_subcommand(list)) return cmd_list_corpus();
    } catch (const ManifestError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
