#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "courant/algebroid.hpp"
#include "courant/metric.hpp"

namespace courant {

/// Frame-generated isotropic subbundle K = e^{-B}(span{Z_i : i in S} + 0),
/// whose anchor image spans exactly the declared fiber coordinate directions.
/// Involutivity and the anchor-span condition are verified at construction.
class FoliationSubbundle {
public:
    FoliationSubbundle(Frame frame, std::vector<int> span_indices, std::optional<BFieldMap> shift,
                       std::vector<int> fiber_coords);

    const Frame& frame() const { return frame_; }
    const std::vector<int>& span_indices() const { return span_indices_; }
    const std::optional<BFieldMap>& shift() const { return shift_; }
    const std::vector<int>& fiber_coords() const { return fiber_coords_; }
    int rank() const { return static_cast<int>(span_indices_.size()); }
    const Chart& chart() const { return frame_.chart(); }

    /// K generators as generalized sections Z_s - i_{Z_s} B.
    std::vector<GeneralizedSection> generators() const;
    /// Anchor generators rho(k_s) = Z_s.
    std::vector<VectorField> anchor_generators() const;
    /// Frame-component B matrix of the shift (zero when unshifted).
    PolyMatrix shift_frame_matrix() const;
    /// Is the coordinate in the fiber set.
    bool is_fiber_coord(int i) const { return fiber_set_.count(i) > 0; }

    /// Coordinates surviving to the quotient, in source order.
    std::vector<int> base_coords() const;
    /// Frame indices surviving to the quotient (complement of span), in order.
    std::vector<int> complement_indices() const;

    /// Quotient chart with the given names (one per base coordinate).
    Chart quotient_chart(const std::vector<std::string>& names) const;

    /// The reduced frame on the quotient chart: complements of the span,
    /// projected along the fibers.
    Frame reduced_frame(const Chart& quotient) const;

    /// natural(): reduce a section of K-perp to the quotient; throws if the
    /// section is not in K-perp or not basic.
    GeneralizedSection reduce_section(const GeneralizedSection& e, const Chart& quotient) const;

    /// Pull a quotient section back to its canonical frame lift on M.
    GeneralizedSection lift_section(const GeneralizedSection& e_quotient, const Chart& quotient) const;

private:
    Frame frame_;
    std::vector<int> span_indices_;
    std::optional<BFieldMap> shift_;
    std::vector<int> fiber_coords_;
    std::set<int> fiber_set_;
    std::set<int> span_set_;
};

struct ReducibilityReport {
    bool involutive = false;        // re-checked, with offending brackets reported
    bool anchor_span = false;
    bool interior_condition = false;   // i_X H' == 0 for anchor generators
    bool basic_condition = false;      // H' components independent of fiber coords
    std::vector<std::string> details;
    bool pass() const { return involutive && anchor_span && interior_condition && basic_condition; }
};

/// Reducibility of (TM, H) with respect to K; for shifted K the condition is
/// evaluated on H' = H - dB after transporting K to a tangent subbundle.
ReducibilityReport reducibility_check(const TwistedCourant& e, const FoliationSubbundle& k);

struct ReducedAlgebroid {
    Chart quotient_chart;
    DifferentialForm h_reduced;
};

/// Reduced three-form on the quotient chart; the pullback identity
/// pi^*(H_red) = H - dB is re-verified exactly.
ReducedAlgebroid reduce_H(const TwistedCourant& e, const FoliationSubbundle& k,
                          const std::vector<std::string>& quotient_names);

/// Reduce a K-transverse metric, given in components of K's frame, to the
/// quotient (matrices in components of the reduced frame).
struct ReducedMetric {
    Chart quotient_chart;
    PolyMatrix g;
    PolyMatrix b;
};

ReducedMetric reduce_metric(const TransverseGeneralisedMetric& w, const FoliationSubbundle& k,
                            const std::vector<std::string>& quotient_names);

/// Basicness of a section: [[k_s, e]] in Gamma(K) for every generator, decided
/// by an exact membership test in frame components.
bool basic_section_check(const TwistedCourant& e, const FoliationSubbundle& k, const GeneralizedSection& section);

/// Adapted-splitting consistency sigma(rho(K)) subset K for the frame
/// inclusion sigma.
bool adapted_splitting_check(const FoliationSubbundle& k);

}  // namespace courant
