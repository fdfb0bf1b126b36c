#pragma once

#include <optional>
#include <string>
#include <vector>

#include "courant/algebroid.hpp"
#include "courant/fiber.hpp"

namespace courant {

/// Positivity is semi-decided: leading principal minors are evaluated exactly
/// at seeded sample points (a "sampled" certificate).
struct PositivityCertificate {
    bool pass = false;
    int points_checked = 0;
    std::uint64_t seed = 0;
    std::string failure;  // first failing point/minor, if any
};

PositivityCertificate positivity_sample_certificate(const PolyMatrix& g, const SamplePlan& plan);

/// Generalised metric (g, b): symmetric invertible g with constant-rational
/// determinant and antisymmetric b, either in coordinates or in components of
/// a declared frame.
class GeneralisedMetric {
public:
    GeneralisedMetric(Chart chart, PolyMatrix g, PolyMatrix b, std::optional<Frame> frame = std::nullopt);

    const Chart& chart() const { return chart_; }
    const PolyMatrix& g() const { return g_; }
    const PolyMatrix& b() const { return b_; }
    const PolyMatrix& g_inverse() const { return g_inv_; }
    const std::optional<Frame>& frame() const { return frame_; }
    bool in_frame() const { return frame_.has_value(); }

    /// Coordinate-basis matrices (transporting frame components if needed).
    PolyMatrix g_coords() const;
    PolyMatrix b_coords() const;

    /// The 2n x 2n generalised-metric block matrix
    /// [[g - b g^-1 b, b g^-1], [-g^-1 b, g^-1]].
    PolyMatrix gm_matrix() const;

    /// V+ generators (basis_i, i_{basis_i}(g+b)) in the metric's basis.
    std::vector<GeneralizedSection> vplus_graph() const;

    /// tau(X + alpha), the involution with +1-eigenbundle gr(g+b).
    GeneralizedSection tau_apply(const GeneralizedSection& e) const;

    /// G(e1, e2) = <e1, tau e2>.
    Polynomial metric_eval(const GeneralizedSection& e1, const GeneralizedSection& e2) const;

    /// Exact fiber data at a sample point (frame components if framed).
    QMat g_at(const std::vector<Rational>& point) const;
    QMat b_at(const std::vector<Rational>& point) const;

    PositivityCertificate certify_positive(const SamplePlan& plan) const;

private:
    Chart chart_;
    PolyMatrix g_, b_, g_inv_;
    Rational g_det_;
    std::optional<Frame> frame_;
};

struct ClassicalIsometryReport {
    bool pullback_g = false;       // phi* g2 == g1
    bool pullback_b = false;       // phi* b2 == b1 + B
    bool tau_conjugation = false;  // tau2 o Phi == Phi o tau1 on basis sections
    std::string residual;          // first nonzero residual, printed
    bool pass() const { return pullback_g && pullback_b && tau_conjugation; }
    bool routes_agree() const { return (pullback_g && pullback_b) == tau_conjugation; }
};

/// Prop: Phi = phibar o e^B is a generalised isometry iff phi* g2 = g1 and
/// phi* b2 = b1 + B; both this route and tau-conjugation are evaluated.
ClassicalIsometryReport classical_isometry_check(const CourantIso& iso, const GeneralisedMetric& g1,
                                                 const GeneralisedMetric& g2);

/// Transverse generalised metric: degenerate (g, b) in components of a frame
/// adapted to K, with ker(g) spanned by the K rows.
class TransverseGeneralisedMetric {
public:
    TransverseGeneralisedMetric(Frame frame, std::vector<int> kernel_indices, PolyMatrix g, PolyMatrix b);

    const Frame& frame() const { return frame_; }
    const std::vector<int>& kernel_indices() const { return kernel_indices_; }
    const PolyMatrix& g() const { return g_; }
    const PolyMatrix& b() const { return b_; }

private:
    Frame frame_;
    std::vector<int> kernel_indices_;
    PolyMatrix g_, b_;
};

struct TransverseCheckReport {
    bool lie_g = false;   // L_X g == 0 per anchor generator
    bool lie_b = false;
    bool interior_h = false;  // i_X H == 0 per anchor generator
    bool positive_complement = true;  // <w,w> > 0 off the kernel, sample-certified
    std::vector<std::string> violations;
    bool pass() const { return lie_g && lie_b && interior_h && positive_complement; }
};

/// The invariance conditions are symbolic; positivity of the complement block
/// is sample-certified when a plan is supplied.
TransverseCheckReport transverse_check(const TransverseGeneralisedMetric& w, const DifferentialForm& h,
                                       const SamplePlan* plan = nullptr);

}  // namespace courant
