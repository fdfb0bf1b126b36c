#include "courant/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace courant {

VectorField::VectorField(Chart chart, std::vector<Polynomial> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
    if (static_cast<int>(comps_.size()) != chart_.dim())
        throw std::invalid_argument("vector field component count != chart dim");
    for (const auto& p : comps_)
        if (p.nvars() != chart_.dim()) throw std::invalid_argument("vector field component arity mismatch");
}

VectorField VectorField::zero(const Chart& chart) {
    return VectorField(chart, std::vector<Polynomial>(chart.dim(), Polynomial(chart.dim())));
}

VectorField VectorField::coordinate(const Chart& chart, int i) {
    auto comps = std::vector<Polynomial>(chart.dim(), Polynomial(chart.dim()));
    comps.at(i) = Polynomial(chart.dim(), Rational(1));
    return VectorField(chart, comps);
}

bool VectorField::is_zero() const {
    for (const auto& p : comps_)
        if (!p.is_zero()) return false;
    return true;
}

VectorField VectorField::operator+(const VectorField& o) const {
    require_same_chart(chart_, o.chart_, "vector field sum");
    auto comps = comps_;
    for (int i = 0; i < chart_.dim(); ++i) comps[i] += o.comps_[i];
    return VectorField(chart_, comps);
}

VectorField VectorField::operator-(const VectorField& o) const {
    require_same_chart(chart_, o.chart_, "vector field difference");
    auto comps = comps_;
    for (int i = 0; i < chart_.dim(); ++i) comps[i] -= o.comps_[i];
    return VectorField(chart_, comps);
}

VectorField VectorField::operator*(const Polynomial& f) const {
    auto comps = comps_;
    for (auto& c : comps) c = c * f;
    return VectorField(chart_, comps);
}

VectorField VectorField::operator*(const Rational& c) const {
    auto comps = comps_;
    for (auto& p : comps) p = p * c;
    return VectorField(chart_, comps);
}

Polynomial VectorField::apply(const Polynomial& f) const {
    Polynomial acc(chart_.dim());
    for (int i = 0; i < chart_.dim(); ++i) acc += comps_[i] * f.derivative(i);
    return acc;
}

std::string VectorField::str() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < chart_.dim(); ++i) {
        if (comps_[i].is_zero()) continue;
        if (!first) out << " + ";
        out << "(" << comps_[i].str(chart_) << ")*d/d" << chart_.name(i);
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

int merge_sign(IndexTuple& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i]) return 0;
    return sign;
}

DifferentialForm::DifferentialForm(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree_ < 0) throw std::invalid_argument("negative form degree");
    // degree > dim is permitted; such forms are identically zero.
}

DifferentialForm DifferentialForm::zero(const Chart& chart, int degree) { return DifferentialForm(chart, degree); }

DifferentialForm DifferentialForm::from_function(const Chart& chart, const Polynomial& f) {
    DifferentialForm w(chart, 0);
    w.add_term({}, f);
    return w;
}

DifferentialForm DifferentialForm::coordinate_one_form(const Chart& chart, int i) {
    DifferentialForm w(chart, 1);
    w.add_term({i}, Polynomial(chart.dim(), Rational(1)));
    return w;
}

Polynomial DifferentialForm::coeff(const IndexTuple& idx) const {
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) return Polynomial(chart_.dim());
    return it->second;
}

void DifferentialForm::add_term(const IndexTuple& idx, const Polynomial& c) {
    if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("index tuple length != form degree");
    if (c.is_zero()) return;
    IndexTuple sorted = idx;
    int sign = merge_sign(sorted);
    if (sign == 0) return;
    for (int i : sorted)
        if (i < 0 || i >= chart_.dim()) throw std::invalid_argument("form index out of range");
    Polynomial add = sign == 1 ? c : -c;
    auto it = coeffs_.find(sorted);
    if (it == coeffs_.end()) {
        coeffs_.emplace(sorted, add);
    } else {
        it->second += add;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
    require_same_chart(chart_, o.chart_, "form sum");
    if (degree_ != o.degree_) throw std::invalid_argument("form sum: degree mismatch");
    DifferentialForm r = *this;
    for (const auto& [idx, c] : o.coeffs_) r.add_term(idx, c);
    return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const { return *this + (-o); }

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm r(chart_, degree_);
    for (const auto& [idx, c] : coeffs_) r.coeffs_[idx] = -c;
    return r;
}

DifferentialForm DifferentialForm::operator*(const Polynomial& f) const {
    DifferentialForm r(chart_, degree_);
    for (const auto& [idx, c] : coeffs_) r.add_term(idx, c * f);
    return r;
}

DifferentialForm DifferentialForm::operator*(const Rational& c) const {
    DifferentialForm r(chart_, degree_);
    if (c == 0) return r;
    for (const auto& [idx, k] : coeffs_) r.coeffs_[idx] = k * c;
    return r;
}

Polynomial DifferentialForm::apply(const std::vector<VectorField>& fields) const {
    if (static_cast<int>(fields.size()) != degree_) throw std::invalid_argument("form applied to wrong field count");
    DifferentialForm w = *this;
    for (const auto& x : fields) {
        DifferentialForm next = interior(x, w);
        w = next;
    }
    return w.coeff({});
}

std::string DifferentialForm::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, c] : coeffs_) {
        if (!first) out << " + ";
        out << "(" << c.str(chart_) << ")";
        for (int i : idx) out << "*d" << chart_.name(i);
        first = false;
    }
    return out.str();
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
    require_same_chart(x.chart(), y.chart(), "lie_bracket");
    const Chart& chart = x.chart();
    std::vector<Polynomial> comps(chart.dim(), Polynomial(chart.dim()));
    for (int i = 0; i < chart.dim(); ++i) {
        comps[i] = x.apply(y.component(i)) - y.apply(x.component(i));
    }
    return VectorField(chart, comps);
}

DifferentialForm ext_d(const DifferentialForm& w) {
    const Chart& chart = w.chart();
    DifferentialForm r(chart, w.degree() + 1);
    for (const auto& [idx, c] : w.coeffs()) {
        for (int v = 0; v < chart.dim(); ++v) {
            Polynomial dc = c.derivative(v);
            if (dc.is_zero()) continue;
            IndexTuple ext;
            ext.reserve(idx.size() + 1);
            ext.push_back(v);
            ext.insert(ext.end(), idx.begin(), idx.end());
            r.add_term(ext, dc);
        }
    }
    return r;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    const Chart& chart = a.chart();
    int deg = a.degree() + b.degree();
    // Degree overflow past the chart dimension collapses to the zero form.
    DifferentialForm r(chart, deg);
    for (const auto& [ia, ca] : a.coeffs()) {
        for (const auto& [ib, cb] : b.coeffs()) {
            IndexTuple idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add_term(idx, ca * cb);
        }
    }
    return r;
}

DifferentialForm interior(const VectorField& x, const DifferentialForm& w) {
    require_same_chart(x.chart(), w.chart(), "interior");
    const Chart& chart = w.chart();
    if (w.degree() == 0) return DifferentialForm::zero(chart, 0);
    DifferentialForm r(chart, w.degree() - 1);
    for (const auto& [idx, c] : w.coeffs()) {
        for (size_t pos = 0; pos < idx.size(); ++pos) {
            const Polynomial& xc = x.component(idx[pos]);
            if (xc.is_zero()) continue;
            IndexTuple rest;
            rest.reserve(idx.size() - 1);
            for (size_t k = 0; k < idx.size(); ++k)
                if (k != pos) rest.push_back(idx[k]);
            Polynomial term = c * xc;
            if (pos % 2 == 1) term = -term;
            r.add_term(rest, term);
        }
    }
    return r;
}

DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& w) {
    // Cartan formula.
    if (w.degree() == 0) {
        return DifferentialForm::from_function(w.chart(), x.apply(w.coeff({})));
    }
    return interior(x, ext_d(w)) + ext_d(interior(x, w));
}

VectorField lie_derivative(const VectorField& x, const VectorField& y) { return lie_bracket(x, y); }

PolyMap::PolyMap(Chart src, Chart tgt, std::vector<Polynomial> e)
    : source(std::move(src)), target(std::move(tgt)), exprs(std::move(e)) {
    if (static_cast<int>(exprs.size()) != target.dim())
        throw std::invalid_argument("polynomial map needs one expression per target coordinate");
    for (const auto& p : exprs)
        if (p.nvars() != source.dim()) throw std::invalid_argument("polynomial map expression arity mismatch");
}

Polynomial PolyMap::compose_scalar(const Polynomial& f_on_target) const {
    if (f_on_target.nvars() != target.dim()) throw std::invalid_argument("compose_scalar arity mismatch");
    return f_on_target.compose(exprs);
}

DifferentialForm pullback(const PolyMap& map, const DifferentialForm& w) {
    if (w.chart() != map.target) throw std::invalid_argument("pullback: form not on map target");
    if (w.degree() == 0) return DifferentialForm::from_function(map.source, map.compose_scalar(w.coeff({})));
    // d(F^i) expressed on the source chart, for each target coordinate.
    std::vector<DifferentialForm> dF;
    dF.reserve(map.target.dim());
    for (int i = 0; i < map.target.dim(); ++i) {
        DifferentialForm df(map.source, 1);
        for (int j = 0; j < map.source.dim(); ++j) df.add_term({j}, map.exprs[i].derivative(j));
        dF.push_back(df);
    }
    DifferentialForm r(map.source, w.degree());
    for (const auto& [idx, c] : w.coeffs()) {
        DifferentialForm term = DifferentialForm::from_function(map.source, map.compose_scalar(c));
        DifferentialForm acc = dF[idx[0]];
        for (size_t k = 1; k < idx.size(); ++k) acc = wedge(acc, dF[idx[k]]);
        r = r + acc * term.coeff({});
    }
    return r;
}

DifferentialForm apply_bilinear(const PolyMatrix& t, const VectorField& v) {
    const Chart& chart = v.chart();
    int n = chart.dim();
    DifferentialForm r(chart, 1);
    for (int j = 0; j < n; ++j) {
        Polynomial c(n);
        for (int i = 0; i < n; ++i) c += v.component(i) * t[i][j];
        r.add_term({j}, c);
    }
    return r;
}

Polynomial bilinear_eval(const PolyMatrix& t, const VectorField& v, const VectorField& w) {
    int n = v.chart().dim();
    Polynomial acc(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += v.component(i) * t[i][j] * w.component(j);
    return acc;
}

PolyMatrix lie_derivative_bilinear(const VectorField& x, const PolyMatrix& t) {
    int n = x.chart().dim();
    PolyMatrix r = poly_matrix_zero(n, n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Polynomial acc = x.apply(t[i][j]);
            for (int k = 0; k < n; ++k) {
                acc += x.component(k).derivative(i) * t[k][j];
                acc += x.component(k).derivative(j) * t[i][k];
            }
            r[i][j] = acc;
        }
    }
    return r;
}

PolyMatrix pullback_bilinear(const PolyMap& map, const PolyMatrix& t) {
    int ns = map.source.dim();
    int nt = map.target.dim();
    PolyMatrix r = poly_matrix_zero(ns, ns, ns);
    // Jacobian J[i][j] = d F^i / d x^j on the source chart.
    PolyMatrix jac = poly_matrix_zero(nt, ns, ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) jac[i][j] = map.exprs[i].derivative(j);
    for (int a = 0; a < ns; ++a) {
        for (int b = 0; b < ns; ++b) {
            Polynomial acc(ns);
            for (int i = 0; i < nt; ++i)
                for (int j = 0; j < nt; ++j) acc += jac[i][a] * jac[j][b] * map.compose_scalar(t[i][j]);
            r[a][b] = acc;
        }
    }
    return r;
}

DifferentialForm two_form_from_matrix(const Chart& chart, const PolyMatrix& b) {
    int n = chart.dim();
    DifferentialForm w(chart, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w.add_term({i, j}, b[i][j]);
    return w;
}

PolyMatrix matrix_from_two_form(const DifferentialForm& b) {
    if (b.degree() != 2) throw std::invalid_argument("matrix_from_two_form: degree != 2");
    int n = b.chart().dim();
    PolyMatrix m = poly_matrix_zero(n, n, n);
    for (const auto& [idx, c] : b.coeffs()) {
        m[idx[0]][idx[1]] = c;
        m[idx[1]][idx[0]] = -c;
    }
    return m;
}

}  // namespace courant
