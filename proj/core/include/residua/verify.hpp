#ifndef RESIDUA_VERIFY_HPP
#define RESIDUA_VERIFY_HPP

#include "residua/manifest.hpp"

namespace residua {

/// Outcome of one verification run over a model: the atlas classification,
/// per-object summaries, every symbolic identity check, the localized
/// residues with their exact sum, and the PASS/FAIL verdict. The verdict is
/// PASS exactly when every check holds and the residue sum matches the
/// declared/computed expectations.
struct VerificationReport {
    std::string model;

    struct Flags {
        bool adapted = false, splitting = false, two_splitting = false, comfortable = false,
             two_linearizable = false;
    } classification;
    std::vector<std::string> classification_witnesses;

    struct ObjectSummary {
        std::string name;
        std::string kind;  // "foliation" or "map"
        std::string details;
    };
    std::vector<ObjectSummary> objects;

    struct Check {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Check> checks;

    struct Residue {
        std::string object;
        std::string chart;
        std::string location;  // point or factor description
        GaussianRational value;
    };
    std::vector<Residue> residues;
    GaussianRational residue_sum;

    std::optional<int> degree;  // computed or declared
    std::optional<GaussianRational> expected_sum;
    bool sum_checked = false;

    bool pass = false;
    double seconds = 0.0;  // text report only; never serialized to JSON
};

VerificationReport run_verification(const ModelBundle& bundle);

std::string report_text(const VerificationReport& rep);
std::string report_json(const VerificationReport& rep);

} // namespace residua

#endif
