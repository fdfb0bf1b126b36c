#include "courant/tduality.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace courant {

namespace {

QMat eval_poly_matrix(const PolyMatrix& m, const std::vector<Rational>& point) {
    QMat out(m.size(), QVec(m.empty() ? 0 : m[0].size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out[i][j] = m[i][j].eval(point);
    return out;
}

bool poly_matrix_constant(const PolyMatrix& m) {
    for (const auto& row : m)
        for (const auto& p : row)
            if (!p.is_constant()) return false;
    return true;
}

/// Solve lambda A = rhs for a polynomial row vector lambda, with A a constant
/// rational matrix; solved monomial-by-monomial.
std::vector<Polynomial> poly_solve_constant_system(const QMat& a, const std::vector<Polynomial>& rhs, int nvars,
                                                   bool& ok) {
    int k = a.size();
    std::set<Monomial, GradedLexLess> monomials;
    for (const auto& p : rhs)
        for (const auto& [m, c] : p.terms()) monomials.insert(m);
    std::vector<Polynomial> lambda(k, Polynomial(nvars));
    ok = true;
    for (const auto& mono : monomials) {
        QVec target(rhs.size(), Rational(0));
        for (size_t j = 0; j < rhs.size(); ++j) {
            auto it = rhs[j].terms().find(mono);
            if (it != rhs[j].terms().end()) target[j] = it->second;
        }
        bool solvable = false;
        QVec coeffs = solve_row(a, target, solvable);
        if (!solvable) {
            ok = false;
            return {};
        }
        for (int i = 0; i < k; ++i)
            if (coeffs[i] != 0) lambda[i].add_term(mono, coeffs[i]);
    }
    return lambda;
}

std::vector<int> positions_in(const std::vector<int>& items, const std::vector<int>& ordered_universe) {
    std::vector<int> out;
    for (int x : items) {
        auto it = std::find(ordered_universe.begin(), ordered_universe.end(), x);
        if (it == ordered_universe.end()) throw std::logic_error("index not found in universe");
        out.push_back(static_cast<int>(it - ordered_universe.begin()));
    }
    return out;
}

PolyMatrix poly_block(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    PolyMatrix out;
    for (int r : rows) {
        std::vector<Polynomial> row;
        for (int c : cols) row.push_back(m[r][c]);
        out.push_back(row);
    }
    return out;
}

}  // namespace

TDualityProblem::TDualityProblem(TwistedCourant e_, FoliationSubbundle k1_, FoliationSubbundle k2_,
                                 std::vector<std::string> q1_names, std::vector<std::string> q2_names, PolyMatrix g1_,
                                 PolyMatrix b1_, std::vector<QVec> iso, SamplePlan plan_)
    : e(std::move(e_)),
      k1(std::move(k1_)),
      k2(std::move(k2_)),
      quotient1_names(std::move(q1_names)),
      quotient2_names(std::move(q2_names)),
      g1(std::move(g1_)),
      b1(std::move(b1_)),
      iso_generators(std::move(iso)),
      plan(std::move(plan_)) {
    require_same_chart(e.chart(), k1.chart(), "TDualityProblem K1");
    require_same_chart(e.chart(), k2.chart(), "TDualityProblem K2");
    if (k1.rank() != k2.rank()) throw std::invalid_argument("TDualityProblem: rk(K1) != rk(K2)");
    if (k1.shift()) throw std::invalid_argument("TDualityProblem: K1 must be unshifted (B is K2's shift)");
    int q1 = e.chart().dim() - k1.rank();
    if (static_cast<int>(g1.size()) != q1 || static_cast<int>(b1.size()) != q1)
        throw std::invalid_argument("TDualityProblem: background matrices must be quotient-1 sized");
    for (int i = 0; i < q1; ++i) {
        for (int j = 0; j < q1; ++j) {
            if (g1[i][j] != g1[j][i]) throw std::invalid_argument("TDualityProblem: g1 must be symmetric");
            if (b1[i][j] != -b1[j][i]) throw std::invalid_argument("TDualityProblem: b1 must be antisymmetric");
        }
    }
    ReducibilityReport r1 = reducibility_check(e, k1);
    if (!r1.pass()) throw std::invalid_argument("TDualityProblem: (TM, H) is not reducible by K1");
    ReducibilityReport r2 = reducibility_check(e, k2);
    if (!r2.pass()) throw std::invalid_argument("TDualityProblem: (TM, H) is not reducible by K2");
}

std::vector<int> TDualityProblem::duality1_indices() const {
    std::set<int> s1(k1.span_indices().begin(), k1.span_indices().end());
    std::vector<int> out;
    for (int i : k2.span_indices())
        if (!s1.count(i)) out.push_back(i);
    return out;
}

std::vector<int> TDualityProblem::duality2_indices() const {
    std::set<int> s2(k2.span_indices().begin(), k2.span_indices().end());
    std::vector<int> out;
    for (int i : k1.span_indices())
        if (!s2.count(i)) out.push_back(i);
    return out;
}

std::vector<int> TDualityProblem::common_indices() const {
    std::set<int> s1(k1.span_indices().begin(), k1.span_indices().end());
    std::vector<int> out;
    for (int i : k2.span_indices())
        if (s1.count(i)) out.push_back(i);
    return out;
}

std::vector<int> TDualityProblem::horizontal_indices() const {
    std::set<int> used(k1.span_indices().begin(), k1.span_indices().end());
    used.insert(k2.span_indices().begin(), k2.span_indices().end());
    std::vector<int> out;
    for (int i = 0; i < e.chart().dim(); ++i)
        if (!used.count(i)) out.push_back(i);
    return out;
}

PolyMatrix TDualityProblem::b_frame() const { return k2.shift_frame_matrix(); }

std::vector<Rational> TDualityProblem::project1(const std::vector<Rational>& m) const {
    std::vector<Rational> out;
    for (int i : k1.base_coords()) out.push_back(m[i]);
    return out;
}

std::vector<Rational> TDualityProblem::project2(const std::vector<Rational>& m) const {
    std::vector<Rational> out;
    for (int i : k2.base_coords()) out.push_back(m[i]);
    return out;
}

RelateReport relate(const TDualityProblem& p) {
    RelateReport report;
    int n = p.e.chart().dim();
    int r = p.k1.rank();
    report.expected_rank = 2 * n - 2 * r;
    PolyMatrix bf = p.b_frame();
    const std::vector<int> common = p.common_indices();
    const std::vector<int> dual1 = p.duality1_indices();

    // Tangent generators are constrained by B(v, Z_c) = 0 for shared fibers;
    // the constraint matrix must be constant for a free symbolic description.
    PolyMatrix constraint;  // rows: frame index I; cols: common c
    for (int i = 0; i < n; ++i) {
        std::vector<Polynomial> row;
        for (int c : common) row.push_back(bf[i][c]);
        constraint.push_back(row);
    }
    if (!poly_matrix_constant(constraint)) {
        report.error = "relate: B pairing against shared fibers is non-constant; no free generator module";
        return report;
    }
    QMat vkernel;
    if (common.empty()) {
        vkernel = qmat_identity(n);
    } else {
        // v with v . cmat = 0, i.e. cmat^t v^t = 0.
        QMat cmat(n, QVec(common.size()));
        for (int i = 0; i < n; ++i)
            for (size_t c = 0; c < common.size(); ++c) cmat[i][c] = constraint[i][c].constant_value();
        vkernel = kernel(qmat_transpose(cmat));
    }

    // Assemble the K1-perp cap K2-perp generators (v, zeta) in frame components.
    struct Gen {
        QVec tangent;                   // constant frame components
        std::vector<Polynomial> form;   // frame coframe components
    };
    std::vector<Gen> gens;
    for (const auto& v : vkernel) {
        Gen g;
        g.tangent = v;
        g.form.assign(n, Polynomial(n));
        for (int u : dual1) {
            Polynomial acc(n);
            for (int i = 0; i < n; ++i) acc += bf[i][u] * Polynomial(n, v[i]);
            g.form[u] = -acc;
        }
        gens.push_back(std::move(g));
    }
    for (int h : p.horizontal_indices()) {
        Gen g;
        g.tangent.assign(n, Rational(0));
        g.form.assign(n, Polynomial(n));
        g.form[h] = Polynomial(n, Rational(1));
        gens.push_back(std::move(g));
    }

    // Project both ways; null pairs (K1 cap K2 directions) are dropped.
    Chart q1 = p.quotient1();
    Chart q2 = p.quotient2();
    const Frame& fr = p.k1.frame();
    for (const auto& g : gens) {
        std::vector<Polynomial> vcomp(n, Polynomial(n));
        for (int i = 0; i < n; ++i) vcomp[i] = Polynomial(n, g.tangent[i]);
        GeneralizedSection w(fr.from_vector_components(vcomp), fr.from_one_form_components(g.form));
        GeneralizedSection w1 = p.k1.reduce_section(w, q1);
        GeneralizedSection w2 = p.k2.reduce_section(w, q2);
        if (w1.is_zero() && w2.is_zero()) continue;
        report.generators.emplace_back(w1, w2);
    }

    // Rank and isotropy certificates over the sample plan.
    report.certificate = "symbolic";
    int q1d = q1.dim(), q2d = q2.dim();
    FiberSpace prod({FiberFactor{q1d, +1}, FiberFactor{q2d, -1}});
    report.rank_constant = true;
    report.rank_matches_formula = true;
    report.isotropic_everywhere = true;
    Frame red1 = p.k1.reduced_frame(q1);
    Frame red2 = p.k2.reduced_frame(q2);
    struct GenComponents {
        std::vector<Polynomial> v1, f1, v2, f2;
    };
    std::vector<GenComponents> comps;
    for (const auto& [w1, w2] : report.generators) {
        GenComponents gc{red1.vector_components(w1.vec()), red1.one_form_components(w1.form()),
                         red2.vector_components(w2.vec()), red2.one_form_components(w2.form())};
        if (!poly_matrix_constant(PolyMatrix{gc.v1}) || !poly_matrix_constant(PolyMatrix{gc.f1}) ||
            !poly_matrix_constant(PolyMatrix{gc.v2}) || !poly_matrix_constant(PolyMatrix{gc.f2}))
            report.certificate = "sampled";
        comps.push_back(std::move(gc));
    }
    for (const auto& m : p.plan.points) {
        std::vector<Rational> p1 = p.project1(m);
        std::vector<Rational> p2 = p.project2(m);
        QMat rows;
        for (const auto& gc : comps) {
            QVec row(2 * q1d + 2 * q2d, Rational(0));
            for (int i = 0; i < q1d; ++i) {
                row[i] = gc.v1[i].eval(p1);
                row[q1d + i] = gc.f1[i].eval(p1);
            }
            for (int i = 0; i < q2d; ++i) {
                row[2 * q1d + i] = gc.v2[i].eval(p2);
                row[2 * q1d + q2d + i] = gc.f2[i].eval(p2);
            }
            rows.push_back(row);
        }
        FiberSubspace rel(prod, rows);
        report.rank_per_point.push_back(rel.dim());
        if (rel.dim() != report.expected_rank) report.rank_matches_formula = false;
        if (!is_isotropic(rel)) report.isotropic_everywhere = false;
        // K1 cap K2 rank at the point.
        QMat bf_at = eval_poly_matrix(bf, m);
        FiberSubspace k1f = tangent_span_fiber(n, p.k1.span_indices(), std::nullopt);
        FiberSubspace k2f = tangent_span_fiber(n, p.k2.span_indices(), bf_at);
        report.k1_cap_k2_rank_per_point.push_back(intersect(k1f, k2f).dim());
    }
    for (size_t i = 1; i < report.rank_per_point.size(); ++i)
        if (report.rank_per_point[i] != report.rank_per_point[0]) report.rank_constant = false;
    for (size_t i = 1; i < report.k1_cap_k2_rank_per_point.size(); ++i)
        if (report.k1_cap_k2_rank_per_point[i] != report.k1_cap_k2_rank_per_point[0]) {
            report.rank_constant = false;
            report.error = "relate: K1 cap K2 has non-constant rank over the sample plan";
        }
    report.ok = report.error.empty();
    return report;
}

BDecompositionReport b_decomposition_check(const TDualityProblem& p) {
    BDecompositionReport report;
    PolyMatrix bf = p.b_frame();
    const auto dual1 = p.duality1_indices();
    const auto dual2 = p.duality2_indices();
    const auto common = p.common_indices();
    const auto hor = p.horizontal_indices();
    const auto& names = p.k1.frame().names();

    report.cross_blocks_vanish = true;
    auto check_zero_block = [&](const std::vector<int>& rows, const std::vector<int>& cols, const char* label) {
        for (int i : rows) {
            for (int j : cols) {
                if (!bf[i][j].is_zero()) {
                    report.cross_blocks_vanish = false;
                    report.details.push_back(std::string("B(") + names[i] + "," + names[j] + ") != 0 [" + label +
                                             " block]");
                }
            }
        }
    };
    check_zero_block(dual1, hor, "duality1-horizontal");
    check_zero_block(dual2, hor, "duality2-horizontal");
    check_zero_block(common, hor, "shared-horizontal");
    check_zero_block(common, dual1, "shared-duality1");
    check_zero_block(common, dual2, "shared-duality2");

    PolyMatrix mix = poly_block(bf, dual1, dual2);
    if (mix.empty()) {
        report.mixing_nondegenerate = true;  // no duality directions: vacuous
    } else {
        Polynomial det = poly_matrix_det(mix);
        report.mixing_nondegenerate = det.is_constant() && det.constant_value() != 0;
        if (!report.mixing_nondegenerate)
            report.details.push_back("mixing block determinant is not a nonzero rational constant: " +
                                     det.str(p.e.chart()));
    }

    // Fiber-level inclusions (i) and (ii) over the sample plan.
    int n = p.e.chart().dim();
    report.inclusion_i = true;
    report.inclusion_ii = true;
    for (const auto& m : p.plan.points) {
        QMat bf_at = eval_poly_matrix(bf, m);
        FiberSubspace k1f = tangent_span_fiber(n, p.k1.span_indices(), std::nullopt);
        FiberSubspace k2f = tangent_span_fiber(n, p.k2.span_indices(), bf_at);
        FiberSubspace k1p = perp(k1f);
        FiberSubspace k2p = perp(k2f);
        if (!subspace_subset(intersect(k1f, k2p).basis(), k2f.basis())) report.inclusion_i = false;
        if (!subspace_subset(intersect(k2f, k1p).basis(), k1f.basis())) report.inclusion_ii = false;
    }
    report.inclusions_agree = report.inclusion_i == report.inclusion_ii;
    return report;
}

InvarianceReport invariance_checks(const TDualityProblem& p) {
    InvarianceReport report;
    Chart q1 = p.quotient1();
    Frame red1 = p.k1.reduced_frame(q1);
    int q1d = q1.dim();

    // Generator fields on the quotient.
    std::vector<VectorField> gens;
    for (const auto& coeffs : p.iso_generators) {
        if (static_cast<int>(coeffs.size()) != q1d)
            throw std::invalid_argument("invariance_checks: iso generator has wrong coefficient count");
        VectorField x = VectorField::zero(q1);
        for (int i = 0; i < q1d; ++i) x = x + red1.field(i) * coeffs[i];
        gens.push_back(x);
    }

    // Metric invariance in quotient coordinates.
    PolyMatrix g_coords = red1.from_frame_bilinear(p.g1);
    PolyMatrix b_coords = red1.from_frame_bilinear(p.b1);
    report.metric_invariant = true;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (!poly_matrix_is_zero(lie_derivative_bilinear(gens[i], g_coords)) ||
            !poly_matrix_is_zero(lie_derivative_bilinear(gens[i], b_coords))) {
            report.metric_invariant = false;
            report.details.push_back("L_X (g1 + b1) != 0 for isometry generator " + std::to_string(i));
        }
    }

    // D1 support and pointwise span: D1 is spanned by the reduced duality
    // frame fields; generators must lie in D1 and their coefficient rows must
    // cover it.
    std::vector<int> comp1 = p.k1.complement_indices();
    std::vector<int> dual_positions = positions_in(p.duality1_indices(), comp1);
    std::set<int> dual_pos_set(dual_positions.begin(), dual_positions.end());
    report.spans_duality = true;
    QMat coeff_rows;
    for (const auto& coeffs : p.iso_generators) {
        for (int i = 0; i < q1d; ++i) {
            if (!dual_pos_set.count(i) && coeffs[i] != 0) {
                report.spans_duality = false;
                report.details.push_back("isometry generator leaves the duality distribution");
            }
        }
        coeff_rows.push_back(coeffs);
    }
    {
        QMat dual_basis;
        for (int pos : dual_positions) {
            QVec v(q1d, Rational(0));
            v[pos] = 1;
            dual_basis.push_back(v);
        }
        if (!subspace_subset(dual_basis, row_space(coeff_rows))) {
            report.spans_duality = false;
            report.details.push_back("isometry generators do not span the duality directions");
        }
    }

    // Subalgebra closure on generators, with constant coefficients.
    report.subalgebra_closed = true;
    QMat gen_mat = coeff_rows;
    for (size_t i = 0; i < gens.size() && report.subalgebra_closed; ++i) {
        for (size_t j = i + 1; j < gens.size(); ++j) {
            VectorField br = lie_bracket(gens[i], gens[j]);
            std::vector<Polynomial> comps = red1.vector_components(br);
            bool constant = true;
            QVec target(q1d, Rational(0));
            for (int c = 0; c < q1d; ++c) {
                if (!comps[c].is_constant()) constant = false;
                else target[c] = comps[c].constant_value();
            }
            bool solvable = false;
            if (constant) solve_row(gen_mat, target, solvable);
            if (!constant || !solvable) {
                report.subalgebra_closed = false;
                report.details.push_back("bracket of isometry generators leaves their constant span");
                break;
            }
        }
    }

    // Compatible splittings: L_X B = 0 for the T F_2 lifts of the duality
    // generators and for the shared fiber directions.
    report.b_invariant = true;
    const Frame& fr = p.k1.frame();
    DifferentialForm bform = p.k2.shift() ? p.k2.shift()->b() : DifferentialForm::zero(p.e.chart(), 2);
    std::vector<VectorField> lifts;
    for (const auto& coeffs : p.iso_generators) {
        VectorField lift = VectorField::zero(p.e.chart());
        for (size_t pos = 0; pos < dual_positions.size(); ++pos) {
            // Lift the duality component to the matching frame field on M.
            lift = lift + fr.field(p.duality1_indices()[pos]) * coeffs[dual_positions[pos]];
        }
        lifts.push_back(lift);
    }
    for (int c : p.common_indices()) lifts.push_back(fr.field(c));
    for (const auto& x : lifts) {
        if (!lie_derivative(x, bform).is_zero()) {
            report.b_invariant = false;
            report.details.push_back("L_X B != 0 for a lifted isometry generator");
        }
    }
    return report;
}

DualBackground dual_background(const TDualityProblem& p) {
    int n = p.e.chart().dim();
    const auto dual1 = p.duality1_indices();
    const auto dual2 = p.duality2_indices();
    const auto hor = p.horizontal_indices();
    std::vector<int> comp1 = p.k1.complement_indices();
    std::vector<int> comp2 = p.k2.complement_indices();
    std::vector<int> base1 = p.k1.base_coords();
    std::vector<int> base2 = p.k2.base_coords();

    // h1 = g1 + b1 injected to the doubled chart.
    int q1d = comp1.size();
    PolyMatrix h1m = poly_matrix_zero(q1d, q1d, n);
    for (int i = 0; i < q1d; ++i)
        for (int j = 0; j < q1d; ++j) h1m[i][j] = poly_inject(p.g1[i][j] + p.b1[i][j], base1, n);

    std::vector<int> upos = positions_in(dual1, comp1);
    std::vector<int> hpos1 = positions_in(hor, comp1);
    PolyMatrix hvv = poly_block(h1m, upos, upos);
    PolyMatrix hvh = poly_block(h1m, upos, hpos1);
    PolyMatrix hhv = poly_block(h1m, hpos1, upos);
    PolyMatrix hhh = poly_block(h1m, hpos1, hpos1);

    PolyMatrix bf = p.b_frame();
    PolyMatrix bmix = poly_block(bf, dual1, dual2);
    PolyMatrix buu = poly_block(bf, dual1, dual1);
    PolyMatrix btt = poly_block(bf, dual2, dual2);

    int d = dual1.size();
    PolyMatrix g2_frame, b2_frame;
    int q2d = comp2.size();
    PolyMatrix h2m = poly_matrix_zero(q2d, q2d, n);
    if (d > 0) {
        PolyMatrix gmat = poly_matrix_add(hvv, buu);
        Polynomial det = poly_matrix_det(gmat);
        if (!det.is_constant() || det.constant_value() == 0)
            throw std::domain_error("dual_background: duality block of g1 + b1 + B is not invertible");
        PolyMatrix ginv = poly_matrix_adjugate(gmat);
        Rational inv_det = Rational(1) / det.constant_value();
        for (auto& row : ginv)
            for (auto& q : row) q = q * inv_det;
        PolyMatrix bmix_t = poly_matrix_transpose(bmix);
        PolyMatrix h2vv = poly_matrix_add(poly_matrix_mul(bmix_t, poly_matrix_mul(ginv, bmix)), btt);
        PolyMatrix h2vh = poly_matrix_mul(bmix_t, poly_matrix_mul(ginv, hvh));
        PolyMatrix h2hv = poly_matrix_mul(hhv, poly_matrix_mul(ginv, bmix));
        for (auto& row : h2hv)
            for (auto& q : row) q = -q;
        PolyMatrix h2hh = poly_matrix_sub(hhh, poly_matrix_mul(hhv, poly_matrix_mul(ginv, hvh)));

        std::vector<int> tpos = positions_in(dual2, comp2);
        std::vector<int> hpos2 = positions_in(hor, comp2);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) h2m[tpos[a]][tpos[b]] = h2vv[a][b];
            for (size_t b = 0; b < hpos2.size(); ++b) {
                h2m[tpos[a]][hpos2[b]] = h2vh[a][b];
                h2m[hpos2[b]][tpos[a]] = h2hv[b][a];
            }
        }
        for (size_t a = 0; a < hpos2.size(); ++a)
            for (size_t b = 0; b < hpos2.size(); ++b) h2m[hpos2[a]][hpos2[b]] = h2hh[a][b];
    } else {
        // No duality directions: the background passes through.
        std::vector<int> hpos2 = positions_in(hor, comp2);
        for (size_t a = 0; a < hpos2.size(); ++a)
            for (size_t b = 0; b < hpos2.size(); ++b) h2m[hpos2[a]][hpos2[b]] = hhh[a][b];
    }

    DualBackground out;
    out.quotient2 = p.quotient2();
    int q2 = out.quotient2.dim();
    out.g2 = poly_matrix_zero(q2, q2, q2);
    out.b2 = poly_matrix_zero(q2, q2, q2);
    for (int i = 0; i < q2; ++i) {
        for (int j = 0; j < q2; ++j) {
            Polynomial sym = (h2m[i][j] + h2m[j][i]) * Rational(1, 2);
            Polynomial anti = (h2m[i][j] - h2m[j][i]) * Rational(1, 2);
            try {
                out.g2[i][j] = poly_restrict(sym, base2, q2);
                out.b2[i][j] = poly_restrict(anti, base2, q2);
            } catch (const std::domain_error&) {
                throw std::domain_error("dual_background: result depends on a quotient-2 fiber coordinate");
            }
        }
    }
    Frame red2 = p.k2.reduced_frame(out.quotient2);
    out.g2_coords = red2.from_frame_bilinear(out.g2);
    out.b2_coords = red2.from_frame_bilinear(out.b2);
    return out;
}

GeometricCertificate verify_geometric_tduality(const TDualityProblem& p, const PolyMatrix& g2, const PolyMatrix& b2) {
    GeometricCertificate cert;
    int n = p.e.chart().dim();
    int r = p.k1.rank();
    int q1d = n - r, q2d = n - r;
    PolyMatrix bf = p.b_frame();
    cert.decomposition_all_points = true;
    cert.rank_law_all_points = true;
    cert.dirac_all_points = true;
    for (const auto& m : p.plan.points) {
        QMat bf_at = eval_poly_matrix(bf, m);
        std::optional<QMat> shift2 = p.k2.shift() ? std::optional<QMat>(bf_at) : std::nullopt;
        FiberSubspace qk1 = qk_fiber(n, p.k1.span_indices(), std::nullopt);
        FiberSubspace qk2 = qk_fiber(n, p.k2.span_indices(), shift2);
        ComposeResult comp = compose(transpose_relation(qk1), qk2);
        const FiberSubspace& rel = comp.composition;
        if (rel.dim() != 2 * n - 2 * r) cert.rank_law_all_points = false;
        if (!dirac_check(rel)) cert.dirac_all_points = false;

        std::vector<Rational> p1 = p.project1(m);
        std::vector<Rational> p2 = p.project2(m);
        QMat g1p(q1d, QVec(q1d)), b1p(q1d, QVec(q1d)), g2p(q2d, QVec(q2d)), b2p(q2d, QVec(q2d));
        for (int i = 0; i < q1d; ++i)
            for (int j = 0; j < q1d; ++j) {
                g1p[i][j] = p.g1[i][j].eval(p1);
                b1p[i][j] = p.b1[i][j].eval(p1);
            }
        for (int i = 0; i < q2d; ++i)
            for (int j = 0; j < q2d; ++j) {
                g2p[i][j] = g2[i][j].eval(p2);
                b2p[i][j] = b2[i][j].eval(p2);
            }
        FiberSubspace v1p = metric_graph(q1d, g1p, b1p, +1);
        FiberSubspace v1m = metric_graph(q1d, g1p, b1p, -1);
        FiberSubspace v2p = metric_graph(q2d, g2p, b2p, +1);
        FiberSubspace v2m = metric_graph(q2d, g2p, b2p, -1);
        if (!isometry_decomposition_check(rel, v1p, v1m, v2p, v2m)) cert.decomposition_all_points = false;
        ++cert.points;
    }
    cert.ok = true;
    return cert;
}

namespace {

GeneralizedSection lift_then_reduce(const TDualityProblem& p, const GeneralizedSection& section,
                                    const FoliationSubbundle& from, const FoliationSubbundle& to,
                                    const std::vector<std::string>& from_names,
                                    const std::vector<std::string>& to_names) {
    Chart from_chart = from.quotient_chart(from_names);
    Chart to_chart = to.quotient_chart(to_names);
    GeneralizedSection base_lift = from.lift_section(section, from_chart);
    int n = p.e.chart().dim();
    const Frame& fr = from.frame();
    // Unknown tangent correction in from-span directions, fixed by
    // orthogonality to every generator of the target subbundle.
    std::vector<GeneralizedSection> togens = to.generators();
    const auto& fromspan = from.span_indices();
    QMat a(fromspan.size(), QVec(togens.size(), Rational(0)));
    std::vector<Polynomial> rhs;
    for (size_t t = 0; t < togens.size(); ++t) {
        rhs.push_back(-pairing(base_lift, togens[t]));
        for (size_t s = 0; s < fromspan.size(); ++s) {
            GeneralizedSection ks = GeneralizedSection::from_field(fr.field(fromspan[s]));
            if (from.shift()) ks = GeneralizedSection(ks.vec(), ks.form() - interior(ks.vec(), from.shift()->b()));
            Polynomial entry = pairing(ks, togens[t]);
            if (!entry.is_constant())
                throw std::domain_error("lift_project: correction system is not constant-coefficient");
            a[s][t] = entry.constant_value();
        }
    }
    bool ok = false;
    std::vector<Polynomial> lambda = poly_solve_constant_system(a, rhs, n, ok);
    if (!ok) throw std::domain_error("lift_project: no lift orthogonal to the target subbundle");
    GeneralizedSection lifted = base_lift;
    for (size_t s = 0; s < fromspan.size(); ++s) {
        GeneralizedSection ks = GeneralizedSection::from_field(fr.field(fromspan[s]));
        if (from.shift()) ks = GeneralizedSection(ks.vec(), ks.form() - interior(ks.vec(), from.shift()->b()));
        lifted = lifted + ks * lambda[s];
    }
    return to.reduce_section(lifted, to_chart);
}

}  // namespace

GeneralizedSection lift_project_section(const TDualityProblem& p, const GeneralizedSection& e1) {
    return lift_then_reduce(p, e1, p.k1, p.k2, p.quotient1_names, p.quotient2_names);
}

GeneralizedSection lift_project_section_back(const TDualityProblem& p, const GeneralizedSection& e2) {
    return lift_then_reduce(p, e2, p.k2, p.k1, p.quotient2_names, p.quotient1_names);
}

TDualityReport tdualize(const TDualityProblem& p) {
    TDualityReport report;
    report.relation = relate(p);
    report.b_decomposition = b_decomposition_check(p);
    report.invariance = invariance_checks(p);
    report.h1_reduced = reduce_H(p.e, p.k1, p.quotient1_names).h_reduced;
    report.h2_reduced = reduce_H(p.e, p.k2, p.quotient2_names).h_reduced;
    if (report.relation.pass() && report.b_decomposition.pass() && report.invariance.pass()) {
        DualBackground dual = dual_background(p);
        report.certificate = verify_geometric_tduality(p, dual.g2, dual.b2);
        report.dual = std::move(dual);
    }
    return report;
}

}  // namespace courant
