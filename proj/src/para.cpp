#include "courant/para.hpp"

#include <sstream>

namespace courant {

namespace {

using Cube = std::vector<std::vector<std::vector<Polynomial>>>;

Cube cube_zero(int n, int nvars) {
    return Cube(n, std::vector<std::vector<Polynomial>>(n, std::vector<Polynomial>(n, Polynomial(nvars))));
}

PolyMatrix inverse_constant_det(const PolyMatrix& m, const char* what) {
    Polynomial det = poly_matrix_det(m);
    if (!det.is_constant() || det.constant_value() == 0)
        throw std::domain_error(std::string(what) + ": block must have a nonzero constant-rational determinant");
    PolyMatrix inv = poly_matrix_adjugate(m);
    Rational inv_det = Rational(1) / det.constant_value();
    for (auto& row : inv)
        for (auto& p : row) p = p * inv_det;
    return inv;
}

}  // namespace

bool FluxData::all_zero_q() const {
    for (const auto& a : q)
        for (const auto& b : a)
            for (const auto& c : b)
                if (!c.is_zero()) return false;
    return true;
}

bool FluxData::all_zero_r() const {
    for (const auto& a : r)
        for (const auto& b : a)
            for (const auto& c : b)
                if (!c.is_zero()) return false;
    return true;
}

ParaHermitianFrame::ParaHermitianFrame(Frame frame) : frame_(std::move(frame)) {
    int dim = frame_.chart().dim();
    if (dim % 2 != 0) throw std::invalid_argument("para-Hermitian frame needs an even-dimensional chart");
    n_ = dim / 2;
    int d = dim;
    // eta = Theta^i (x) Thetat_i + Thetat_i (x) Theta^i.
    eta_ = poly_matrix_zero(d, d, d);
    const PolyMatrix& co = frame_.coframe_rows();
    for (int i = 0; i < n_; ++i) {
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                eta_[a][b] += co[i][a] * co[n_ + i][b] + co[n_ + i][a] * co[i][b];
            }
        }
    }
    // K = Theta^i (x) Z_i - Thetat_i (x) Zt^i as a (1,1)-tensor.
    kmat_ = poly_matrix_zero(d, d, d);
    const PolyMatrix& rows = frame_.rows();
    for (int i = 0; i < n_; ++i) {
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                kmat_[a][b] += rows[i][a] * co[i][b] - rows[n_ + i][a] * co[n_ + i][b];
            }
        }
    }
    // K^2 = 1.
    if (!poly_matrix_equal(poly_matrix_mul(kmat_, kmat_), poly_matrix_identity(d, d)))
        throw std::logic_error("para-Hermitian frame: K^2 != 1");
    // eta(K., K.) = -eta: K^t eta K = -eta.
    PolyMatrix kt = poly_matrix_transpose(kmat_);
    PolyMatrix lhs = poly_matrix_mul(kt, poly_matrix_mul(eta_, kmat_));
    PolyMatrix neg = eta_;
    for (auto& row : neg)
        for (auto& p : row) p = -p;
    if (!poly_matrix_equal(lhs, neg)) throw std::logic_error("para-Hermitian frame: eta(K.,K.) != -eta");
    // omega = Theta^i wedge Thetat_i; check omega = eta o K.
    omega_ = DifferentialForm(frame_.chart(), 2);
    for (int i = 0; i < n_; ++i) omega_ = omega_ + wedge(frame_.coframe(i), frame_.coframe(n_ + i));
    PolyMatrix omega_mat = matrix_from_two_form(omega_);
    // (eta o K)(X, Y) = eta(K X, Y): components sum_c K[c][a] eta[c][b].
    PolyMatrix etak = poly_matrix_zero(d, d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Polynomial acc(d);
            for (int c = 0; c < d; ++c) acc += kmat_[c][a] * eta_[c][b];
            etak[a][b] = acc;
        }
    if (!poly_matrix_equal(omega_mat, etak)) throw std::logic_error("para-Hermitian frame: omega != eta o K");
}

FluxData ParaHermitianFrame::flux_extract() const {
    FluxData flux;
    flux.n = n_;
    int d = 2 * n_;
    flux.f = cube_zero(n_, d);
    flux.h = cube_zero(n_, d);
    flux.q = cube_zero(n_, d);
    flux.r = cube_zero(n_, d);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            for (int k = 0; k < n_; ++k) {
                flux.f[i][j][k] = frame_.structure_function(i, j, k);
                flux.h[i][j][k] = frame_.structure_function(i, j, n_ + k);
                flux.q[i][j][k] = frame_.structure_function(i, n_ + j, k);
                flux.r[i][j][k] = frame_.structure_function(n_ + i, n_ + j, k);
            }
        }
    }
    // Mixed-bracket consistency: [Z_i, Zt^j] = f_ki^j Zt^k + Q_i^jk Z_k and
    // the Zt-part of [Zt^i, Zt^j] matches Q.
    for (int i = 0; i < n_ && flux.bracket_form_consistent; ++i) {
        for (int j = 0; j < n_; ++j) {
            for (int k = 0; k < n_; ++k) {
                if (frame_.structure_function(i, n_ + j, n_ + k) != flux.f[k][i][j])
                    flux.bracket_form_consistent = false;
                if (frame_.structure_function(n_ + i, n_ + j, n_ + k) != flux.q[k][i][j])
                    flux.bracket_form_consistent = false;
            }
        }
    }
    return flux;
}

DifferentialForm ParaHermitianFrame::hcan_flux() const {
    DifferentialForm domega = ext_d(omega_);
    auto comps = frame_.form_components(domega);
    DifferentialForm h(frame_.chart(), 3);
    for (const auto& [idx, c] : comps) {
        if (idx[0] < n_ && idx[1] < n_ && idx[2] < n_) {
            DifferentialForm term = wedge(wedge(frame_.coframe(idx[0]), frame_.coframe(idx[1])), frame_.coframe(idx[2]));
            h = h + term * c;
        }
    }
    return h;
}

DifferentialForm ParaHermitianFrame::hcan_flux_bracket_route() const {
    FluxData flux = flux_extract();
    DifferentialForm h(frame_.chart(), 3);
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            for (int k = 0; k < n_; ++k) {
                if (flux.h[i][j][k].is_zero()) continue;
                DifferentialForm term = wedge(wedge(frame_.coframe(i), frame_.coframe(j)), frame_.coframe(k));
                h = h + term * flux.h[i][j][k];
            }
        }
    }
    return h;
}

SfConditionsReport sf_conditions_check(const FluxData& flux, const std::vector<int>& duality) {
    SfConditionsReport report;
    int n = flux.n;
    std::set<int> barred(duality.begin(), duality.end());
    for (int b : duality)
        if (b < 0 || b >= n) throw std::invalid_argument("duality index out of range");
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        report.clauses.push_back({name, pass, detail});
    };

    bool r_zero = flux.all_zero_r();
    add("R = 0", r_zero, r_zero ? "" : "nonzero R flux");
    bool q_zero = flux.all_zero_q();
    add("Q = 0", q_zero, q_zero ? "" : "nonzero Q flux");
    add("bracket form", flux.bracket_form_consistent, flux.bracket_form_consistent ? "" : "mixed brackets inconsistent");

    bool f_bb = true, f_bu = true, h_bbb = true, h_sym = true, h_binv = true, h_pair = true;
    std::string d_f_bb, d_f_bu, d_h_bbb, d_h_sym, d_h_binv, d_h_pair;
    for (int m1 : duality) {
        for (int m2 : duality) {
            for (int i = 0; i < n; ++i) {
                if (!flux.f[m1][m2][i].is_zero()) {
                    f_bb = false;
                    d_f_bb = "f with two duality lower indices is nonzero";
                }
            }
            for (int u = 0; u < n; ++u) {
                if (barred.count(u)) continue;
                if (flux.h[m1][m2][u] != flux.h[m1][u][m2]) {
                    h_binv = false;
                    d_h_binv = "H_{duality,duality,other} != H_{duality,other,duality}";
                }
                if (flux.h[u][m1][m2] != flux.h[u][m2][m1]) {
                    h_pair = false;
                    d_h_pair = "H_{other,duality,duality} not symmetric in the duality pair";
                }
            }
            for (int m3 : duality) {
                if (!flux.h[m1][m2][m3].is_zero()) {
                    h_bbb = false;
                    d_h_bbb = "H with three duality indices is nonzero";
                }
            }
        }
        for (int u = 0; u < n; ++u) {
            if (barred.count(u)) continue;
            for (int i = 0; i < n; ++i) {
                if (!flux.f[m1][u][i].is_zero() || !flux.f[u][m1][i].is_zero()) {
                    f_bu = false;
                    d_f_bu = "f mixing a duality and a non-duality lower index is nonzero";
                }
            }
            for (int i = 0; i < n; ++i) {
                if (flux.h[i][m1][u] != flux.h[i][u][m1]) {
                    h_sym = false;
                    d_h_sym = "H_{i,duality,other} != H_{i,other,duality}";
                }
            }
        }
    }
    add("f_{dd}^i = 0", f_bb, d_f_bb);
    add("f_{d,other}^i = 0", f_bu, d_f_bu);
    add("H_{ddd} = 0", h_bbb, d_h_bbb);
    add("H_{i,d,other} symmetric", h_sym, d_h_sym);
    add("H_{other,dd} symmetric", h_pair, d_h_pair);
    add("L_X B = 0 clause", h_binv, d_h_binv);
    return report;
}

ParaHermitianFrame swap_frame(const ParaHermitianFrame& f, const std::vector<int>& duality, const DiffeoMap& phi) {
    require_same_chart(phi.source(), f.chart(), "swap_frame");
    int n = f.half();
    std::set<int> barred(duality.begin(), duality.end());
    int d = 2 * n;
    PolyMatrix rows = poly_matrix_zero(d, d, d);
    std::vector<std::string> names;
    auto push_row = [&](int out_idx, int src_idx) {
        VectorField pushed = phi.pushforward(f.frame().field(src_idx));
        for (int c = 0; c < d; ++c) rows[out_idx][c] = pushed.component(c);
    };
    for (int i = 0; i < n; ++i) {
        push_row(i, barred.count(i) ? n + i : i);
        names.push_back(f.frame().names()[i] + "'");
    }
    for (int i = 0; i < n; ++i) {
        push_row(n + i, barred.count(i) ? i : n + i);
        names.push_back(f.frame().names()[n + i] + "'");
    }
    ParaHermitianFrame out(Frame(phi.target(), rows, names));
    // phi* eta_2 == eta_1.
    PolyMatrix pulled = pullback_bilinear(phi.forward_map(), out.eta());
    if (!poly_matrix_equal(pulled, f.eta())) throw std::logic_error("swap_frame: phi* eta2 != eta1");
    return out;
}

DifferentialForm dual_twist_formula(const ParaHermitianFrame& f1, const ParaHermitianFrame& f2_swapped,
                                    const std::vector<int>& duality, const DiffeoMap& phi) {
    int n = f1.half();
    std::set<int> barred(duality.begin(), duality.end());
    FluxData flux = f1.flux_extract();
    DifferentialForm h2(f2_swapped.chart(), 3);
    for (int mu = 0; mu < n; ++mu) {
        if (barred.count(mu)) continue;
        for (int nu = mu + 1; nu < n; ++nu) {
            if (barred.count(nu)) continue;
            DifferentialForm base = wedge(f2_swapped.frame().coframe(mu), f2_swapped.frame().coframe(nu));
            for (int d : duality) {
                if (flux.f[mu][nu][d].is_zero()) continue;
                Polynomial coeff = phi.inverse_map().compose_scalar(flux.f[mu][nu][d]);
                h2 = h2 + wedge(base, f2_swapped.frame().coframe(d)) * coeff;
            }
            for (int al = 0; al < n; ++al) {
                if (barred.count(al) || flux.h[mu][nu][al].is_zero()) continue;
                Polynomial coeff = phi.inverse_map().compose_scalar(flux.h[mu][nu][al]);
                h2 = h2 + wedge(base, f2_swapped.frame().coframe(al)) * coeff;
            }
        }
    }
    return h2;
}

PolyMatrix gen_para_metric_matrix(const GenParaMetric& g, const ParaHermitianFrame& f) {
    int n = f.half();
    int d = 2 * n;
    int nvars = f.chart().dim();
    if (static_cast<int>(g.g_plus.size()) != n || static_cast<int>(g.b_plus.size()) != n)
        throw std::invalid_argument("gen_para_metric_matrix: block size mismatch");
    PolyMatrix ginv = inverse_constant_det(g.g_plus, "gen_para_metric_matrix g+");
    PolyMatrix out = poly_matrix_zero(d, d, nvars);
    // g- = (g+)^{-1} in frame components; gamma = b^t.
    PolyMatrix b = g.b_plus;
    PolyMatrix bginv = poly_matrix_mul(b, ginv);
    PolyMatrix bginv_t = poly_matrix_transpose(bginv);
    PolyMatrix ul = poly_matrix_sub(g.g_plus, poly_matrix_mul(bginv, b));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out[i][j] = ul[i][j];
            out[i][n + j] = -bginv[i][j];
            out[n + i][j] = -bginv_t[i][j];
            out[n + i][n + j] = ginv[i][j];
        }
    }
    return out;
}

namespace {

std::vector<int> block_positions(int n, const std::vector<int>& duality, bool in_duality) {
    std::set<int> barred(duality.begin(), duality.end());
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (barred.count(i) == static_cast<size_t>(in_duality ? 1 : 0)) out.push_back(i);
    return out;
}

PolyMatrix take_block(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    PolyMatrix out;
    for (int r : rows) {
        std::vector<Polynomial> row;
        for (int c : cols) row.push_back(m[r][c]);
        out.push_back(row);
    }
    return out;
}

}  // namespace

GenParaMetric para_buscher(const GenParaMetric& g, const ParaHermitianFrame& f, const std::vector<int>& duality,
                           const DiffeoMap& phi) {
    int n = f.half();
    std::vector<int> v = block_positions(n, duality, true);
    std::vector<int> h = block_positions(n, duality, false);
    PolyMatrix hm = poly_matrix_add(g.g_plus, g.b_plus);
    PolyMatrix hvv = take_block(hm, v, v);
    PolyMatrix hvh = take_block(hm, v, h);
    PolyMatrix hhv = take_block(hm, h, v);
    PolyMatrix hhh = take_block(hm, h, h);
    int nvars = f.chart().dim();
    PolyMatrix h2 = poly_matrix_zero(n, n, nvars);
    if (!v.empty()) {
        PolyMatrix inv = inverse_constant_det(hvv, "para_buscher duality block");
        PolyMatrix h2vv = inv;
        PolyMatrix h2vh = poly_matrix_mul(inv, hvh);
        PolyMatrix h2hv = poly_matrix_mul(hhv, inv);
        for (auto& row : h2hv)
            for (auto& p : row) p = -p;
        PolyMatrix h2hh = poly_matrix_sub(hhh, poly_matrix_mul(hhv, poly_matrix_mul(inv, hvh)));
        for (size_t a = 0; a < v.size(); ++a) {
            for (size_t b = 0; b < v.size(); ++b) h2[v[a]][v[b]] = h2vv[a][b];
            for (size_t b = 0; b < h.size(); ++b) {
                h2[v[a]][h[b]] = h2vh[a][b];
                h2[h[b]][v[a]] = h2hv[b][a];
            }
        }
        for (size_t a = 0; a < h.size(); ++a)
            for (size_t b = 0; b < h.size(); ++b) h2[h[a]][h[b]] = h2hh[a][b];
    } else {
        h2 = hm;
    }
    GenParaMetric out;
    out.g_plus = poly_matrix_zero(n, n, nvars);
    out.b_plus = poly_matrix_zero(n, n, nvars);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Polynomial sym = (h2[i][j] + h2[j][i]) * Rational(1, 2);
            Polynomial anti = (h2[i][j] - h2[j][i]) * Rational(1, 2);
            out.g_plus[i][j] = phi.inverse_map().compose_scalar(sym);
            out.b_plus[i][j] = phi.inverse_map().compose_scalar(anti);
        }
    }
    return out;
}

GenParaMetric para_buscher_matrix_route(const GenParaMetric& g, const ParaHermitianFrame& f,
                                        const std::vector<int>& duality, const DiffeoMap& phi) {
    int n = f.half();
    int d = 2 * n;
    std::set<int> barred(duality.begin(), duality.end());
    PolyMatrix h1 = gen_para_metric_matrix(g, f);
    // Swapped index map: primed frame field I' came from original sigma(I').
    std::vector<int> sigma(d);
    for (int i = 0; i < n; ++i) {
        sigma[i] = barred.count(i) ? n + i : i;
        sigma[n + i] = barred.count(i) ? i : n + i;
    }
    PolyMatrix h2 = poly_matrix_zero(d, d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) h2[a][b] = phi.inverse_map().compose_scalar(h1[sigma[a]][sigma[b]]);
    // Read off (g2+, b2+): LR block is (g2+)^{-1}, UR block is -b2 (g2+)^{-1}.
    PolyMatrix lr(n, std::vector<Polynomial>(n)), ur(n, std::vector<Polynomial>(n)),
        ul(n, std::vector<Polynomial>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            lr[i][j] = h2[n + i][n + j];
            ur[i][j] = h2[i][n + j];
            ul[i][j] = h2[i][j];
        }
    GenParaMetric out;
    out.g_plus = inverse_constant_det(lr, "para matrix route g2-");
    PolyMatrix minus_b = poly_matrix_mul(ur, out.g_plus);
    out.b_plus = minus_b;
    for (auto& row : out.b_plus)
        for (auto& p : row) p = -p;
    // Consistency: UL must match g2+ - b2 (g2+)^{-1} b2.
    PolyMatrix ginv = inverse_constant_det(out.g_plus, "para matrix route g2+");
    PolyMatrix check = poly_matrix_sub(out.g_plus,
                                       poly_matrix_mul(out.b_plus, poly_matrix_mul(ginv, out.b_plus)));
    if (!poly_matrix_equal(check, ul))
        throw std::logic_error("para matrix route: transported matrix is not of generalised para-metric form");
    return out;
}

bool pullback_identity_check(const GenParaMetric& g1, const ParaHermitianFrame& f1, const GenParaMetric& g2,
                             const ParaHermitianFrame& f2, const DiffeoMap& phi) {
    PolyMatrix h1_coords = f1.frame().from_frame_bilinear(gen_para_metric_matrix(g1, f1));
    PolyMatrix h2_coords = f2.frame().from_frame_bilinear(gen_para_metric_matrix(g2, f2));
    PolyMatrix pulled = pullback_bilinear(phi.forward_map(), h2_coords);
    return poly_matrix_equal(pulled, h1_coords);
}

}  // namespace courant
