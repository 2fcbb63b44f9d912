#ifndef RESIDUA_MANIFEST_HPP
#define RESIDUA_MANIFEST_HPP

#include "residua/atlas.hpp"
#include "residua/expr.hpp"

#include <optional>

namespace residua {

/// A fully resolved model manifest: the atlas, the declared objects, the
/// declared singular points, and the expected invariants.
struct ModelBundle {
    std::string name;
    std::string description;
    std::optional<Atlas> atlas;

    struct FoliationDecl {
        std::string name;
        std::string chart;
        std::vector<std::vector<RationalFunction>> generators;
    };
    struct MapDecl {
        std::string name;
        std::map<std::string, std::vector<RationalFunction>> comps;
    };
    std::vector<FoliationDecl> foliations;
    std::vector<MapDecl> maps;

    /// Declared singular/degeneracy points (dim S = 1): chart + coordinate.
    std::vector<std::pair<std::string, GaussianRational>> declared_points;

    bool compute_degree = false;
    std::optional<int> expected_degree;
    std::optional<GaussianRational> expected_sum;
};

class ManifestError : public Error {
public:
    explicit ManifestError(std::vector<ParseDiagnostic> diags);
    std::vector<ParseDiagnostic> diagnostics;
};

/// Parse a sectioned manifest (see docs/manifest-format.md). All diagnostics
/// are aggregated; any error-severity diagnostic raises ManifestError.
ModelBundle parse_manifest(const std::string& text);

/// Read and parse a manifest file.
ModelBundle load_model(const std::string& path);

} // namespace residua

#endif
