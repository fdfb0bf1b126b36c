#include "courant/frame.hpp"

#include <functional>
#include <sstream>

namespace courant {

Frame Frame::coordinate(const Chart& chart) {
    return Frame(chart, poly_matrix_identity(chart.dim(), chart.dim()));
}

Frame::Frame(Chart chart, PolyMatrix rows, std::vector<std::string> names)
    : chart_(std::move(chart)), rows_(std::move(rows)), names_(std::move(names)) {
    int n = chart_.dim();
    if (static_cast<int>(rows_.size()) != n) throw std::invalid_argument("frame must have chart-dim fields");
    for (const auto& r : rows_)
        if (static_cast<int>(r.size()) != n) throw std::invalid_argument("frame row has wrong length");
    if (names_.empty()) {
        for (int i = 0; i < n; ++i) names_.push_back("Z" + std::to_string(i));
    }
    if (static_cast<int>(names_.size()) != n) throw std::invalid_argument("frame needs one name per field");

    Polynomial det = poly_matrix_det(rows_);
    if (!det.is_constant() || det.constant_value() == 0)
        throw std::invalid_argument("frame determinant must be a nonzero rational constant");
    det_ = det.constant_value();

    PolyMatrix adj = poly_matrix_adjugate(rows_);
    Rational inv_det = Rational(1) / det_;
    inverse_rows_ = adj;
    for (auto& row : inverse_rows_)
        for (auto& p : row) p = p * inv_det;
    coframe_rows_ = poly_matrix_transpose(inverse_rows_);

    // Duality check Theta^I(Z_J) = delta^I_J.
    PolyMatrix prod = poly_matrix_mul(rows_, poly_matrix_transpose(coframe_rows_));
    if (!poly_matrix_equal(prod, poly_matrix_identity(n, n)))
        throw std::logic_error("frame duality check failed");

    // Structure functions and the symbolic bracket identity.
    struct_fns_.assign(n, std::vector<std::vector<Polynomial>>(n, std::vector<Polynomial>(n, Polynomial(n))));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            VectorField br = lie_bracket(field(i), field(j));
            std::vector<Polynomial> comps = vector_components(br);
            VectorField rebuilt = VectorField::zero(chart_);
            for (int k = 0; k < n; ++k) {
                struct_fns_[i][j][k] = comps[k];
                struct_fns_[j][i][k] = -comps[k];
                rebuilt = rebuilt + field(k) * comps[k];
            }
            if (!(rebuilt == br)) throw std::logic_error("frame bracket not expressible in the frame");
        }
    }
}

int Frame::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    throw std::invalid_argument("no frame field named '" + name + "'");
}

VectorField Frame::field(int i) const { return VectorField(chart_, rows_.at(i)); }

DifferentialForm Frame::coframe(int i) const {
    DifferentialForm w(chart_, 1);
    for (int j = 0; j < chart_.dim(); ++j) w.add_term({j}, coframe_rows_.at(i).at(j));
    return w;
}

std::vector<Polynomial> Frame::vector_components(const VectorField& x) const {
    // X = c^I Z_I  <=>  c^I = Theta^I(X).
    int n = chart_.dim();
    std::vector<Polynomial> comps(n, Polynomial(n));
    for (int i = 0; i < n; ++i) {
        Polynomial acc(n);
        for (int j = 0; j < n; ++j) acc += coframe_rows_[i][j] * x.component(j);
        comps[i] = acc;
    }
    return comps;
}

std::vector<Polynomial> Frame::one_form_components(const DifferentialForm& alpha) const {
    if (alpha.degree() != 1) throw std::invalid_argument("one_form_components: degree != 1");
    int n = chart_.dim();
    std::vector<Polynomial> comps(n, Polynomial(n));
    for (int i = 0; i < n; ++i) {
        Polynomial acc(n);
        for (int j = 0; j < n; ++j) acc += rows_[i][j] * alpha.coeff({j});
        comps[i] = acc;
    }
    return comps;
}

std::map<IndexTuple, Polynomial> Frame::form_components(const DifferentialForm& w) const {
    int n = chart_.dim();
    int p = w.degree();
    std::map<IndexTuple, Polynomial> out;
    IndexTuple idx(p);
    // Iterate strictly increasing tuples.
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == p) {
            std::vector<VectorField> fields;
            fields.reserve(p);
            for (int i : idx) fields.push_back(field(i));
            Polynomial c = w.apply(fields);
            if (!c.is_zero()) out.emplace(idx, c);
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

VectorField Frame::from_vector_components(const std::vector<Polynomial>& comps) const {
    VectorField x = VectorField::zero(chart_);
    for (int i = 0; i < size(); ++i) x = x + field(i) * comps.at(i);
    return x;
}

DifferentialForm Frame::from_one_form_components(const std::vector<Polynomial>& comps) const {
    DifferentialForm w(chart_, 1);
    for (int i = 0; i < size(); ++i) {
        for (int j = 0; j < chart_.dim(); ++j) w.add_term({j}, comps.at(i) * coframe_rows_[i][j]);
    }
    return w;
}

PolyMatrix Frame::to_frame_bilinear(const PolyMatrix& t_coords) const {
    // T(Z_I, Z_J) = A T A^t.
    return poly_matrix_mul(rows_, poly_matrix_mul(t_coords, poly_matrix_transpose(rows_)));
}

PolyMatrix Frame::from_frame_bilinear(const PolyMatrix& t_frame) const {
    // T_coords = A^{-1} T_frame A^{-t}.
    return poly_matrix_mul(inverse_rows_, poly_matrix_mul(t_frame, coframe_rows_));
}

DiffeoMap::DiffeoMap(Chart source, Chart target, std::vector<Polynomial> forward, std::vector<Polynomial> inverse)
    : fwd_(source, target, std::move(forward)), inv_(target, source, std::move(inverse)) {
    // Round-trip identities, verified symbolically.
    for (int i = 0; i < fwd_.source.dim(); ++i) {
        Polynomial roundtrip = inv_.exprs[i].compose(fwd_.exprs);
        if (roundtrip != Polynomial::variable(fwd_.source.dim(), i))
            throw std::invalid_argument("diffeo: inverse(forward) != identity");
    }
    for (int i = 0; i < fwd_.target.dim(); ++i) {
        Polynomial roundtrip = fwd_.exprs[i].compose(inv_.exprs);
        if (roundtrip != Polynomial::variable(fwd_.target.dim(), i))
            throw std::invalid_argument("diffeo: forward(inverse) != identity");
    }
    int ns = fwd_.source.dim(), nt = fwd_.target.dim();
    jac_ = poly_matrix_zero(nt, ns, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) jac_[i][j] = fwd_.exprs[i].derivative(j);
}

DiffeoMap DiffeoMap::identity(const Chart& chart) {
    std::vector<Polynomial> id;
    for (int i = 0; i < chart.dim(); ++i) id.push_back(Polynomial::variable(chart.dim(), i));
    return DiffeoMap(chart, chart, id, id);
}

VectorField DiffeoMap::pushforward(const VectorField& x) const {
    require_same_chart(x.chart(), source(), "pushforward");
    int nt = target().dim(), ns = source().dim();
    // (phi_* X)^i = (J^i_j X^j) o phi^{-1}.
    std::vector<Polynomial> comps(nt, Polynomial(nt));
    for (int i = 0; i < nt; ++i) {
        Polynomial acc(ns);
        for (int j = 0; j < ns; ++j) acc += jac_[i][j] * x.component(j);
        comps[i] = acc.compose(inv_.exprs);
    }
    return VectorField(target(), comps);
}

VectorField DiffeoMap::pullback_field(const VectorField& x_on_target) const {
    require_same_chart(x_on_target.chart(), target(), "pullback_field");
    int ns = source().dim(), nt = target().dim();
    // (phi^{-1})_* via the inverse Jacobian.
    std::vector<Polynomial> comps(ns, Polynomial(ns));
    for (int i = 0; i < ns; ++i) {
        Polynomial acc(nt);
        for (int j = 0; j < nt; ++j) acc += inv_.exprs[i].derivative(j) * x_on_target.component(j);
        comps[i] = acc.compose(fwd_.exprs);
    }
    return VectorField(source(), comps);
}

DifferentialForm DiffeoMap::pullback(const DifferentialForm& w_on_target) const {
    return courant::pullback(fwd_, w_on_target);
}

DifferentialForm DiffeoMap::pushforward(const DifferentialForm& w_on_source) const {
    return courant::pullback(inv_, w_on_source);
}

Polynomial DiffeoMap::pullback_scalar(const Polynomial& f_on_target) const { return fwd_.compose_scalar(f_on_target); }

}  // namespace courant
