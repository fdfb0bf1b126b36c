#include "courant/metric.hpp"

#include <sstream>

namespace courant {

namespace {

QMat eval_matrix(const PolyMatrix& m, const std::vector<Rational>& point) {
    QMat out(m.size(), QVec(m.empty() ? 0 : m[0].size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out[i][j] = m[i][j].eval(point);
    return out;
}

void require_symmetry(const PolyMatrix& g, const PolyMatrix& b) {
    for (size_t i = 0; i < g.size(); ++i) {
        for (size_t j = 0; j < g.size(); ++j) {
            if (g[i][j] != g[j][i]) throw std::invalid_argument("metric g must be symmetric");
            if (b[i][j] != -b[j][i]) throw std::invalid_argument("metric b must be antisymmetric");
        }
    }
}

}  // namespace

PositivityCertificate positivity_sample_certificate(const PolyMatrix& g, const SamplePlan& plan) {
    PositivityCertificate cert;
    cert.seed = plan.seed;
    int n = g.size();
    for (const auto& p : plan.points) {
        QMat gp = eval_matrix(g, p);
        // Leading principal minors via fraction-free elimination on copies.
        for (int k = 1; k <= n; ++k) {
            QMat sub(k, QVec(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub[i][j] = gp[i][j];
            // Rational determinant by elimination.
            Rational det(1);
            for (int c = 0; c < k; ++c) {
                int piv = -1;
                for (int r = c; r < k; ++r)
                    if (sub[r][c] != 0) {
                        piv = r;
                        break;
                    }
                if (piv < 0) {
                    det = 0;
                    break;
                }
                if (piv != c) {
                    std::swap(sub[piv], sub[c]);
                    det = -det;
                }
                det *= sub[c][c];
                Rational inv = Rational(1) / sub[c][c];
                for (int r = c + 1; r < k; ++r) {
                    Rational f = sub[r][c] * inv;
                    if (f == 0) continue;
                    for (int j = c; j < k; ++j) sub[r][j] -= f * sub[c][j];
                }
            }
            if (det <= 0) {
                std::ostringstream msg;
                msg << "minor " << k << " nonpositive at point " << cert.points_checked;
                cert.failure = msg.str();
                cert.pass = false;
                return cert;
            }
        }
        ++cert.points_checked;
    }
    cert.pass = true;
    return cert;
}

GeneralisedMetric::GeneralisedMetric(Chart chart, PolyMatrix g, PolyMatrix b, std::optional<Frame> frame)
    : chart_(std::move(chart)), g_(std::move(g)), b_(std::move(b)), frame_(std::move(frame)) {
    int n = chart_.dim();
    if (static_cast<int>(g_.size()) != n || static_cast<int>(b_.size()) != n)
        throw std::invalid_argument("metric matrices must be chart-dim square");
    require_symmetry(g_, b_);
    if (frame_ && frame_->chart() != chart_) throw std::invalid_argument("metric frame on wrong chart");
    Polynomial det = poly_matrix_det(g_);
    if (!det.is_constant() || det.constant_value() == 0)
        throw std::invalid_argument("metric g must have a nonzero constant-rational determinant");
    g_det_ = det.constant_value();
    g_inv_ = poly_matrix_adjugate(g_);
    Rational inv_det = Rational(1) / g_det_;
    for (auto& row : g_inv_)
        for (auto& p : row) p = p * inv_det;
}

PolyMatrix GeneralisedMetric::g_coords() const { return frame_ ? frame_->from_frame_bilinear(g_) : g_; }
PolyMatrix GeneralisedMetric::b_coords() const { return frame_ ? frame_->from_frame_bilinear(b_) : b_; }

PolyMatrix GeneralisedMetric::gm_matrix() const {
    int n = chart_.dim();
    PolyMatrix out = poly_matrix_zero(2 * n, 2 * n, n);
    PolyMatrix bginv = poly_matrix_mul(b_, g_inv_);
    PolyMatrix ginvb = poly_matrix_mul(g_inv_, b_);
    PolyMatrix upper_left = poly_matrix_sub(g_, poly_matrix_mul(bginv, b_));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out[i][j] = upper_left[i][j];
            out[i][n + j] = bginv[i][j];
            out[n + i][j] = -ginvb[i][j];
            out[n + i][n + j] = g_inv_[i][j];
        }
    }
    return out;
}

std::vector<GeneralizedSection> GeneralisedMetric::vplus_graph() const {
    int n = chart_.dim();
    std::vector<GeneralizedSection> gens;
    gens.reserve(n);
    PolyMatrix h = poly_matrix_add(g_, b_);
    for (int i = 0; i < n; ++i) {
        VectorField base = frame_ ? frame_->field(i) : VectorField::coordinate(chart_, i);
        // i_{basis_i}(g + b) = sum_j h[i][j] (dual basis)_j.
        DifferentialForm form(chart_, 1);
        if (frame_) {
            std::vector<Polynomial> comps(n, Polynomial(n));
            for (int j = 0; j < n; ++j) comps[j] = h[i][j];
            form = frame_->from_one_form_components(comps);
        } else {
            for (int j = 0; j < n; ++j) form.add_term({j}, h[i][j]);
        }
        gens.emplace_back(base, form);
    }
    return gens;
}

GeneralizedSection GeneralisedMetric::tau_apply(const GeneralizedSection& e) const {
    require_same_chart(chart_, e.chart(), "tau_apply");
    int n = chart_.dim();
    // Work in the metric's basis components.
    std::vector<Polynomial> x(n), alpha(n);
    if (frame_) {
        x = frame_->vector_components(e.vec());
        alpha = frame_->one_form_components(e.form());
    } else {
        for (int i = 0; i < n; ++i) {
            x[i] = e.vec().component(i);
            alpha[i] = e.form().coeff({i});
        }
    }
    // e = v + w with v in gr(g+b), w in gr(-g+b):
    //   u := v - w solves u g = alpha - x b;  tau(e) = (u, x g + u b).
    std::vector<Polynomial> rhs(n, Polynomial(n));
    for (int j = 0; j < n; ++j) {
        rhs[j] = alpha[j];
        for (int i = 0; i < n; ++i) rhs[j] -= x[i] * b_[i][j];
    }
    std::vector<Polynomial> u(n, Polynomial(n));
    for (int i = 0; i < n; ++i) {
        // u = rhs g^{ -1 } with contraction in the first slot; g symmetric.
        Polynomial acc(n);
        for (int j = 0; j < n; ++j) acc += rhs[j] * g_inv_[j][i];
        u[i] = acc;
    }
    std::vector<Polynomial> beta(n, Polynomial(n));
    for (int j = 0; j < n; ++j) {
        Polynomial acc(n);
        for (int i = 0; i < n; ++i) acc += x[i] * g_[i][j] + u[i] * b_[i][j];
        beta[j] = acc;
    }
    if (frame_) {
        return GeneralizedSection(frame_->from_vector_components(u), frame_->from_one_form_components(beta));
    }
    std::vector<Polynomial> ucomp = u;
    DifferentialForm form(chart_, 1);
    for (int j = 0; j < n; ++j) form.add_term({j}, beta[j]);
    return GeneralizedSection(VectorField(chart_, ucomp), form);
}

Polynomial GeneralisedMetric::metric_eval(const GeneralizedSection& e1, const GeneralizedSection& e2) const {
    return pairing(e1, tau_apply(e2));
}

QMat GeneralisedMetric::g_at(const std::vector<Rational>& point) const { return eval_matrix(g_, point); }
QMat GeneralisedMetric::b_at(const std::vector<Rational>& point) const { return eval_matrix(b_, point); }

PositivityCertificate GeneralisedMetric::certify_positive(const SamplePlan& plan) const {
    return positivity_sample_certificate(g_, plan);
}

ClassicalIsometryReport classical_isometry_check(const CourantIso& iso, const GeneralisedMetric& g1,
                                                 const GeneralisedMetric& g2) {
    ClassicalIsometryReport report;
    const DiffeoMap& phi = iso.phi();
    PolyMatrix g2_pulled = pullback_bilinear(phi.forward_map(), g2.g_coords());
    PolyMatrix b2_pulled = pullback_bilinear(phi.forward_map(), g2.b_coords());
    PolyMatrix b_shift = matrix_from_two_form(iso.bfield().b());
    report.pullback_g = poly_matrix_equal(g2_pulled, g1.g_coords());
    report.pullback_b = poly_matrix_equal(b2_pulled, poly_matrix_add(g1.b_coords(), b_shift));
    if (!report.pullback_g) {
        PolyMatrix res = poly_matrix_sub(g2_pulled, g1.g_coords());
        for (size_t i = 0; i < res.size() && report.residual.empty(); ++i)
            for (size_t j = 0; j < res.size(); ++j)
                if (!res[i][j].is_zero()) {
                    report.residual = "phi*g2 - g1 at (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") = " + res[i][j].str(g1.chart());
                    break;
                }
    }
    // Second route: tau2 o Phi == Phi o tau1 on the coordinate basis sections.
    report.tau_conjugation = true;
    const Chart& c1 = g1.chart();
    std::vector<GeneralizedSection> basis;
    for (int i = 0; i < c1.dim(); ++i) basis.push_back(GeneralizedSection::from_field(VectorField::coordinate(c1, i)));
    for (int i = 0; i < c1.dim(); ++i)
        basis.push_back(GeneralizedSection::from_form(DifferentialForm::coordinate_one_form(c1, i)));
    for (const auto& e : basis) {
        GeneralizedSection lhs = g2.tau_apply(iso.apply(e));
        GeneralizedSection rhs = iso.apply(g1.tau_apply(e));
        if (!(lhs == rhs)) {
            report.tau_conjugation = false;
            break;
        }
    }
    return report;
}

TransverseGeneralisedMetric::TransverseGeneralisedMetric(Frame frame, std::vector<int> kernel_indices, PolyMatrix g,
                                                         PolyMatrix b)
    : frame_(std::move(frame)), kernel_indices_(std::move(kernel_indices)), g_(std::move(g)), b_(std::move(b)) {
    int n = frame_.chart().dim();
    if (static_cast<int>(g_.size()) != n || static_cast<int>(b_.size()) != n)
        throw std::invalid_argument("transverse metric matrices must be chart-dim square");
    require_symmetry(g_, b_);
    for (int k : kernel_indices_) {
        for (int j = 0; j < n; ++j) {
            if (!g_[k][j].is_zero() || !b_[k][j].is_zero())
                throw std::invalid_argument("transverse metric: kernel rows of g and b must vanish");
        }
    }
}

TransverseCheckReport transverse_check(const TransverseGeneralisedMetric& w, const DifferentialForm& h,
                                       const SamplePlan* plan) {
    TransverseCheckReport report;
    report.lie_g = report.lie_b = report.interior_h = true;
    const Frame& fr = w.frame();
    if (plan) {
        // <w,w> = 2 g(v,v) on the graph, so positivity off the kernel is the
        // complement block of g being positive-definite.
        std::set<int> kernel(w.kernel_indices().begin(), w.kernel_indices().end());
        std::vector<int> comp;
        for (int i = 0; i < fr.chart().dim(); ++i)
            if (!kernel.count(i)) comp.push_back(i);
        PolyMatrix block;
        for (int i : comp) {
            std::vector<Polynomial> row;
            for (int j : comp) row.push_back(w.g()[i][j]);
            block.push_back(row);
        }
        PositivityCertificate cert = positivity_sample_certificate(block, *plan);
        report.positive_complement = cert.pass;
        if (!cert.pass) report.violations.push_back("complement block of g not positive: " + cert.failure);
    }
    PolyMatrix g_coords = fr.from_frame_bilinear(w.g());
    PolyMatrix b_coords = fr.from_frame_bilinear(w.b());
    for (int k : w.kernel_indices()) {
        VectorField x = fr.field(k);
        if (!poly_matrix_is_zero(lie_derivative_bilinear(x, g_coords))) {
            report.lie_g = false;
            report.violations.push_back("L_X g != 0 for kernel generator " + fr.names()[k]);
        }
        if (!poly_matrix_is_zero(lie_derivative_bilinear(x, b_coords))) {
            report.lie_b = false;
            report.violations.push_back("L_X b != 0 for kernel generator " + fr.names()[k]);
        }
        if (!interior(x, h).is_zero()) {
            report.interior_h = false;
            report.violations.push_back("i_X H != 0 for kernel generator " + fr.names()[k]);
        }
    }
    return report;
}

}  // namespace courant
