#pragma once

#include <optional>
#include <string>
#include <vector>

#include "courant/exterior.hpp"

namespace courant {

/// Invertible polynomial frame Z_I = A_I^J d/dx^J with constant nonzero
/// rational determinant, its dual coframe and structure functions
/// [Z_I, Z_J] = C_IJ^K Z_K.  All identities are verified symbolically at
/// construction.
class Frame {
public:
    Frame() = default;  // placeholder; every operation expects a constructed frame
    /// Coordinate frame {d/dx^i}.
    static Frame coordinate(const Chart& chart);
    /// rows[I] = components of Z_I; optional names label the frame fields.
    Frame(Chart chart, PolyMatrix rows, std::vector<std::string> names = {});

    const Chart& chart() const { return chart_; }
    int size() const { return static_cast<int>(rows_.size()); }
    const PolyMatrix& rows() const { return rows_; }
    const std::vector<std::string>& names() const { return names_; }
    int index_of(const std::string& name) const;

    VectorField field(int i) const;
    /// Dual coframe element Theta^I as a one-form.
    DifferentialForm coframe(int i) const;
    /// Coframe component matrix: coframe(i) = sum_j coframe_rows()[i][j] dx^j.
    const PolyMatrix& coframe_rows() const { return coframe_rows_; }
    const Rational& det() const { return det_; }

    /// C_IJK with [Z_I, Z_J] = sum_K C_IJK Z_K.
    const Polynomial& structure_function(int i, int j, int k) const { return struct_fns_[i][j][k]; }

    /// Frame components of a vector field: X = sum_I comps[I] Z_I.
    std::vector<Polynomial> vector_components(const VectorField& x) const;
    /// Frame components of a one-form: alpha = sum_I comps[I] Theta^I,
    /// i.e. comps[I] = alpha(Z_I).
    std::vector<Polynomial> one_form_components(const DifferentialForm& alpha) const;
    /// p-form components T_{I1..Ip} = w(Z_I1, .., Z_Ip) for I1 < .. < Ip.
    std::map<IndexTuple, Polynomial> form_components(const DifferentialForm& w) const;

    VectorField from_vector_components(const std::vector<Polynomial>& comps) const;
    DifferentialForm from_one_form_components(const std::vector<Polynomial>& comps) const;

    /// Transform a coordinate bilinear matrix to frame components:
    /// T^f_{IJ} = T(Z_I, Z_J).
    PolyMatrix to_frame_bilinear(const PolyMatrix& t_coords) const;
    /// Inverse of to_frame_bilinear.
    PolyMatrix from_frame_bilinear(const PolyMatrix& t_frame) const;

private:
    Chart chart_;
    PolyMatrix rows_;
    PolyMatrix coframe_rows_;
    PolyMatrix inverse_rows_;  // A^{-1}, polynomial since det is constant
    Rational det_;
    std::vector<std::string> names_;
    std::vector<std::vector<std::vector<Polynomial>>> struct_fns_;
};

/// Polynomial diffeomorphism with a supplied polynomial inverse; the
/// round-trip identities are verified symbolically at construction.
class DiffeoMap {
public:
    DiffeoMap(Chart source, Chart target, std::vector<Polynomial> forward, std::vector<Polynomial> inverse);
    static DiffeoMap identity(const Chart& chart);

    const Chart& source() const { return fwd_.source; }
    const Chart& target() const { return fwd_.target; }
    const PolyMap& forward_map() const { return fwd_; }
    const PolyMap& inverse_map() const { return inv_; }
    /// Jacobian d forward^i / d x^j on the source chart.
    const PolyMatrix& jacobian() const { return jac_; }

    VectorField pushforward(const VectorField& x) const;
    VectorField pullback_field(const VectorField& x_on_target) const;
    DifferentialForm pullback(const DifferentialForm& w_on_target) const;
    /// (phi^{-1})^* of a form on the source.
    DifferentialForm pushforward(const DifferentialForm& w_on_source) const;
    Polynomial pullback_scalar(const Polynomial& f_on_target) const;

private:
    PolyMap fwd_;
    PolyMap inv_;
    PolyMatrix jac_;
};

}  // namespace courant
