#pragma once

#include <map>
#include <vector>

#include "courant/chart.hpp"
#include "courant/polynomial.hpp"

namespace courant {

/// Vector field with polynomial components in the coordinate basis.
class VectorField {
public:
    VectorField() = default;
    VectorField(Chart chart, std::vector<Polynomial> components);
    static VectorField zero(const Chart& chart);
    static VectorField coordinate(const Chart& chart, int i);

    const Chart& chart() const { return chart_; }
    const std::vector<Polynomial>& components() const { return comps_; }
    const Polynomial& component(int i) const { return comps_.at(i); }

    bool is_zero() const;
    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    VectorField operator*(const Polynomial& f) const;
    VectorField operator*(const Rational& c) const;
    bool operator==(const VectorField& o) const { return chart_ == o.chart_ && comps_ == o.comps_; }

    /// Directional derivative X·f.
    Polynomial apply(const Polynomial& f) const;

    std::string str() const;

private:
    Chart chart_;
    std::vector<Polynomial> comps_;
};

/// Strictly increasing index tuple.
using IndexTuple = std::vector<int>;

/// Differential form of fixed degree with polynomial coefficients.
/// Degree-0 forms are polynomials with a single empty-tuple slot.
class DifferentialForm {
public:
    DifferentialForm() = default;
    DifferentialForm(Chart chart, int degree);
    static DifferentialForm zero(const Chart& chart, int degree);
    static DifferentialForm from_function(const Chart& chart, const Polynomial& f);
    static DifferentialForm coordinate_one_form(const Chart& chart, int i);

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    const std::map<IndexTuple, Polynomial>& coeffs() const { return coeffs_; }
    Polynomial coeff(const IndexTuple& idx) const;

    bool is_zero() const { return coeffs_.empty(); }
    DifferentialForm operator+(const DifferentialForm& o) const;
    DifferentialForm operator-(const DifferentialForm& o) const;
    DifferentialForm operator-() const;
    DifferentialForm operator*(const Polynomial& f) const;
    DifferentialForm operator*(const Rational& c) const;
    bool operator==(const DifferentialForm& o) const {
        return chart_ == o.chart_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const DifferentialForm& o) const { return !(*this == o); }

    /// Add c * dx^{idx}; idx need not be sorted, the sign is worked out.
    void add_term(const IndexTuple& idx, const Polynomial& c);

    /// Evaluate on degree() vector fields.
    Polynomial apply(const std::vector<VectorField>& fields) const;

    std::string str() const;

private:
    Chart chart_;
    int degree_ = 0;
    std::map<IndexTuple, Polynomial> coeffs_;
};

inline DifferentialForm operator*(const Polynomial& f, const DifferentialForm& w) { return w * f; }

VectorField lie_bracket(const VectorField& x, const VectorField& y);
DifferentialForm ext_d(const DifferentialForm& w);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm interior(const VectorField& x, const DifferentialForm& w);
DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& w);
VectorField lie_derivative(const VectorField& x, const VectorField& y);

/// Polynomial map between charts: target coordinates expressed in source ones.
struct PolyMap {
    Chart source;
    Chart target;
    std::vector<Polynomial> exprs;  // one per target coordinate, on source chart

    PolyMap() = default;
    PolyMap(Chart src, Chart tgt, std::vector<Polynomial> e);
    Polynomial compose_scalar(const Polynomial& f_on_target) const;
};

/// Pullback of a form along a polynomial map.
DifferentialForm pullback(const PolyMap& map, const DifferentialForm& w);

/// Bilinear (0,2)-tensors as component matrices T_{ij}; contraction puts the
/// vector in the first slot: ap(T, v)_j = v^i T_{ij}.
DifferentialForm apply_bilinear(const PolyMatrix& t, const VectorField& v);
Polynomial bilinear_eval(const PolyMatrix& t, const VectorField& v, const VectorField& w);
/// (£_X T)_{ij} = X^k d_k T_{ij} + d_i X^k T_{kj} + d_j X^k T_{ik}.
PolyMatrix lie_derivative_bilinear(const VectorField& x, const PolyMatrix& t);
/// phi^* T with T on the map's target chart.
PolyMatrix pullback_bilinear(const PolyMap& map, const PolyMatrix& t);

/// Antisymmetric matrix <-> 2-form conversions.
DifferentialForm two_form_from_matrix(const Chart& chart, const PolyMatrix& b);
PolyMatrix matrix_from_two_form(const DifferentialForm& b);

int merge_sign(IndexTuple& idx);  // sorts idx, returns permutation sign (0 on repeats)

}  // namespace courant
