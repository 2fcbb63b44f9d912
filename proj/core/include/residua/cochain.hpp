#ifndef RESIDUA_COCHAIN_HPP
#define RESIDUA_COCHAIN_HPP

#include "residua/atlas.hpp"
#include "residua/linalg.hpp"

#include <functional>
#include <map>
#include <optional>

namespace residua {

/// Tensor slot kinds for cochain values. Conormal/Normal index the frames
/// omega^s / d_r of N*_S / N_S; TangentS/CotangentS index d/dz^p / dz^p on S;
/// Frame/Coframe index a rank-l sub-bundle frame supplied by the caller.
enum class Slot { Conormal, Normal, TangentS, CotangentS, Frame, Coframe };

/// A chart-local tensor on S: components (functions of the chart's
/// tangential variables) indexed by the frames named in `shape`.
/// Overlap-indexed values (1-cochains) also record the first chart of
/// their ordered pair in `pair_first`; 0-cochain values leave it empty.
struct CochainValue {
    std::string chart;
    std::string pair_first;
    std::vector<Slot> shape;
    std::vector<size_t> dims;
    std::map<std::vector<unsigned>, RationalFunction> comps;

    RationalFunction comp(const std::vector<unsigned>& idx) const;
    void set(const std::vector<unsigned>& idx, RationalFunction v);
    bool is_zero() const { return comps.empty(); }
    CochainValue operator-() const;
    friend CochainValue operator-(const CochainValue& a, const CochainValue& b);
    friend CochainValue operator+(const CochainValue& a, const CochainValue& b);
    std::string to_string() const;
};

/// Supplies the frame-change matrices for Frame/Coframe slots: entry (j,i)
/// expresses frame_i of `from` as a combination of frame_j of `to`, as a
/// function of to-chart tangential variables on S.
using FrameChange =
    std::function<Mat<RationalFunction>(const std::string& from, const std::string& to)>;

/// Re-express a cochain value in another chart's frames and coordinates.
CochainValue transport_cochain(const Atlas& atlas, const CochainValue& value,
                               const std::string& to_chart,
                               const FrameChange& frame_change = nullptr);

/// Conormal-sequence obstruction cocycle s_{AB} for an ordered chart pair,
/// in the second chart's frames (shape: Conormal x TangentS). Vanishes for
/// every pair exactly when the atlas is splitting.
CochainValue conormal_cocycle(const Atlas& atlas, const std::string& a, const std::string& b);

/// Atiyah-extension cocycle g_{AB} (shape: CotangentS x Conormal x Normal)
/// in the second chart's frames.
CochainValue atiyah_cocycle(const Atlas& atlas, const std::string& a, const std::string& b);

/// residual_{AB} = cocycle_{AB} - (transport(cochain_A) - cochain_B),
/// everything expressed in B's frames.
CochainValue coboundary_residual(const Atlas& atlas, const CochainValue& cocycle,
                                 const std::map<std::string, CochainValue>& cochain,
                                 const FrameChange& frame_change = nullptr);

/// Corrective coordinates z^p -> z^p - c^p_r z^r from a 0-cochain solving
/// s = delta(c); the returned atlas classifies as splitting. The cochain is
/// verified first; a non-primitive cochain is an error carrying the residual.
Atlas apply_splitting_correction(const Atlas& atlas,
                                 const std::map<std::string, CochainValue>& cochain);

} // namespace residua

#endif
