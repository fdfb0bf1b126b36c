#pragma once

#include <optional>
#include <string>
#include <vector>

#include "courant/reduction.hpp"

namespace courant {

/// Full input for the T-duality pipeline: the doubled algebroid, the two
/// frame-generated subbundles (K2 carrying the B-shift), the background
/// (g1, b1) in reduced-frame-1 components, the declared isometry generators
/// (constant coefficients in the reduced frame), quotient chart names, and a
/// sample plan for the pointwise certificates.
struct TDualityProblem {
    TwistedCourant e;
    FoliationSubbundle k1;
    FoliationSubbundle k2;
    std::vector<std::string> quotient1_names;
    std::vector<std::string> quotient2_names;
    PolyMatrix g1;  // reduced-frame-1 components on the quotient-1 chart
    PolyMatrix b1;
    std::vector<QVec> iso_generators;  // constant coefficients in the reduced frame 1
    SamplePlan plan;

    TDualityProblem(TwistedCourant e_, FoliationSubbundle k1_, FoliationSubbundle k2_,
                    std::vector<std::string> q1_names, std::vector<std::string> q2_names, PolyMatrix g1_,
                    PolyMatrix b1_, std::vector<QVec> iso, SamplePlan plan_);

    Chart quotient1() const { return k1.quotient_chart(quotient1_names); }
    Chart quotient2() const { return k2.quotient_chart(quotient2_names); }

    /// Frame indices split by role: duality directions seen from side 1
    /// (S2 minus S1), from side 2 (S1 minus S2), shared fibers, horizontal.
    std::vector<int> duality1_indices() const;
    std::vector<int> duality2_indices() const;
    std::vector<int> common_indices() const;
    std::vector<int> horizontal_indices() const;

    /// Frame-component matrix of the problem B-field (K2's shift).
    PolyMatrix b_frame() const;

    /// Evaluate a chart point of the sample plan on the two quotients.
    std::vector<Rational> project1(const std::vector<Rational>& m) const;
    std::vector<Rational> project2(const std::vector<Rational>& m) const;
};

struct RelateReport {
    bool ok = false;
    std::string error;
    /// Generator pairs (natural_1(w), natural_2(w)) as quotient sections.
    std::vector<std::pair<GeneralizedSection, GeneralizedSection>> generators;
    int expected_rank = 0;  // rk(E) - 2 rk(K1)
    std::vector<int> rank_per_point;
    std::vector<int> k1_cap_k2_rank_per_point;
    bool rank_constant = false;
    bool rank_matches_formula = false;
    bool isotropic_everywhere = false;
    std::string certificate;  // "symbolic" when generators are constant, else "sampled"
    bool pass() const { return ok && rank_constant && rank_matches_formula && isotropic_everywhere; }
};

/// Build R = Q(K2) o Q(K1)^t from K1-perp cap K2-perp, with rank and isotropy
/// certificates over the sample plan.
RelateReport relate(const TDualityProblem& p);

struct BDecompositionReport {
    bool cross_blocks_vanish = false;
    bool mixing_nondegenerate = false;
    bool inclusion_i = false;   // K1 cap K2-perp subset K2 at sample points
    bool inclusion_ii = false;  // K2 cap K1-perp subset K1 at sample points
    bool inclusions_agree = false;
    std::vector<std::string> details;
    bool pass() const { return cross_blocks_vanish && mixing_nondegenerate && inclusion_i && inclusion_ii; }
};

BDecompositionReport b_decomposition_check(const TDualityProblem& p);

struct InvarianceReport {
    bool metric_invariant = false;      // L_X (g1 + b1) == 0 per generator
    bool spans_duality = false;         // generators span D1 pointwise
    bool subalgebra_closed = false;     // brackets close with constant coefficients
    bool b_invariant = false;           // L_X B == 0 for Iso(W1) lifts
    std::vector<std::string> details;
    bool pass() const { return metric_invariant && spans_duality && subalgebra_closed && b_invariant; }
};

InvarianceReport invariance_checks(const TDualityProblem& p);

struct DualBackground {
    Chart quotient2;
    PolyMatrix g2;  // reduced-frame-2 components
    PolyMatrix b2;
    PolyMatrix g2_coords;
    PolyMatrix b2_coords;
};

/// Buscher block transformation with the mixing block of B; exact, with the
/// result restricted to the quotient-2 chart.
DualBackground dual_background(const TDualityProblem& p);

struct GeometricCertificate {
    bool ok = false;
    std::string error;
    int points = 0;
    bool decomposition_all_points = false;  // Def of generalised isometry, per point
    bool rank_law_all_points = false;
    bool dirac_all_points = false;
    bool pass() const { return ok && decomposition_all_points && rank_law_all_points && dirac_all_points; }
};

GeometricCertificate verify_geometric_tduality(const TDualityProblem& p, const PolyMatrix& g2, const PolyMatrix& b2);

/// The Fourier-Mukai-free section transport: lift a quotient-1 section to the
/// unique representative orthogonal to K2, then reduce on the other side.
GeneralizedSection lift_project_section(const TDualityProblem& p, const GeneralizedSection& e1);
/// Transpose direction.
GeneralizedSection lift_project_section_back(const TDualityProblem& p, const GeneralizedSection& e2);

struct TDualityReport {
    RelateReport relation;
    BDecompositionReport b_decomposition;
    InvarianceReport invariance;
    std::optional<DualBackground> dual;
    std::optional<DifferentialForm> h2_reduced;
    std::optional<DifferentialForm> h1_reduced;
    GeometricCertificate certificate;
    bool pass() const {
        return relation.pass() && b_decomposition.pass() && invariance.pass() && dual.has_value() &&
               certificate.pass();
    }
};

/// The end-to-end pipeline.
TDualityReport tdualize(const TDualityProblem& p);

}  // namespace courant
