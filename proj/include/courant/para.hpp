#pragma once

#include <set>
#include <string>
#include <vector>

#include "courant/frame.hpp"

namespace courant {

/// Generalised fluxes of a diagonalising frame, indexed by the first-half
/// frame labels: f[i][j][k] and H[i][j][k] from [Z_i, Z_j], Q[a][b][c] from
/// the mixed bracket, R[i][j][k] from [Zt^i, Zt^j].
struct FluxData {
    int n = 0;
    std::vector<std::vector<std::vector<Polynomial>>> f, h, q, r;
    /// Mixed brackets match the f/Q form (eta-compatibility of the frame).
    bool bracket_form_consistent = true;

    bool all_zero_q() const;
    bool all_zero_r() const;
};

/// Almost para-Hermitian structure presented by a diagonalising frame
/// {Z_1..Z_n, Zt^1..Zt^n}; eta, K and omega are derived and the compatibility
/// identities verified symbolically at construction.
class ParaHermitianFrame {
public:
    explicit ParaHermitianFrame(Frame frame);

    const Frame& frame() const { return frame_; }
    int half() const { return n_; }
    const Chart& chart() const { return frame_.chart(); }

    /// Coordinate component matrices.
    const PolyMatrix& eta() const { return eta_; }
    const PolyMatrix& para_map() const { return kmat_; }  // K as a (1,1)-tensor
    const DifferentialForm& omega() const { return omega_; }

    FluxData flux_extract() const;
    /// H := (dw)^{+3,-0} as a coordinate three-form, with the bracket-route
    /// cross-check (1/2) H_ijk Theta^i Theta^j Theta^k.
    DifferentialForm hcan_flux() const;
    DifferentialForm hcan_flux_bracket_route() const;

private:
    Frame frame_;
    int n_ = 0;
    PolyMatrix eta_;
    PolyMatrix kmat_;
    DifferentialForm omega_;
};

struct SfClauseReport {
    std::string clause;
    bool pass = false;
    std::string detail;
};

struct SfConditionsReport {
    std::vector<SfClauseReport> clauses;
    bool pass() const {
        for (const auto& c : clauses)
            if (!c.pass) return false;
        return true;
    }
};

/// Clause-by-clause structure-function conditions for the chosen duality
/// directions (indices into the first half).
SfConditionsReport sf_conditions_check(const FluxData& flux, const std::vector<int>& duality);

/// The swapped frame on the target chart: duality directions are exchanged
/// between the two halves under phi; phi* eta_2 = eta_1 is verified.
ParaHermitianFrame swap_frame(const ParaHermitianFrame& f, const std::vector<int>& duality, const DiffeoMap& phi);

/// The dual twist in its displayed local form, assembled from the original
/// frame's fluxes and the swapped coframe; equals the transported
/// (phi^{-1})^*(H_1 - dB) whenever the structure-function conditions hold.
DifferentialForm dual_twist_formula(const ParaHermitianFrame& f1, const ParaHermitianFrame& f2_swapped,
                                    const std::vector<int>& duality, const DiffeoMap& phi);

/// Generalised para-Hermitian metric data (g+, b+) in first-half frame
/// components.
struct GenParaMetric {
    PolyMatrix g_plus;
    PolyMatrix b_plus;
};

/// The 2n x 2n Riemannian block matrix in frame components, with
/// g- = (g+)^{-1} transported by eta.
PolyMatrix gen_para_metric_matrix(const GenParaMetric& g, const ParaHermitianFrame& f);

/// Component Buscher rules along the duality directions, expressed on the
/// target chart in swapped-frame components.
GenParaMetric para_buscher(const GenParaMetric& g, const ParaHermitianFrame& f, const std::vector<int>& duality,
                           const DiffeoMap& phi);

/// Independent route: transport the 2n x 2n matrix, reindex by the swap, and
/// read off (g2+, b2+) from the blocks.
GenParaMetric para_buscher_matrix_route(const GenParaMetric& g, const ParaHermitianFrame& f,
                                        const std::vector<int>& duality, const DiffeoMap& phi);

/// phi* H2 == H1 for the coordinate tensors of the two metrics.
bool pullback_identity_check(const GenParaMetric& g1, const ParaHermitianFrame& f1, const GenParaMetric& g2,
                             const ParaHermitianFrame& f2, const DiffeoMap& phi);

}  // namespace courant
