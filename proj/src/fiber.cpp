#include "courant/fiber.hpp"

#include <set>
#include <stdexcept>

namespace courant {

FiberSpace::FiberSpace(std::vector<FiberFactor> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_) {
        offsets_.push_back(dim_);
        dim_ += 2 * f.n;
    }
    pairing_ = qmat_zero(dim_, dim_);
    for (size_t k = 0; k < factors_.size(); ++k) {
        int off = offsets_[k];
        int n = factors_[k].n;
        Rational s(factors_[k].sign);
        for (int i = 0; i < n; ++i) {
            pairing_[off + i][off + n + i] = s;
            pairing_[off + n + i][off + i] = s;
        }
    }
}

bool FiberSpace::operator==(const FiberSpace& o) const {
    if (factors_.size() != o.factors_.size()) return false;
    for (size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].n != o.factors_[i].n || factors_[i].sign != o.factors_[i].sign) return false;
    return true;
}

FiberSubspace::FiberSubspace(FiberSpace ambient, QMat basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    for (const auto& row : basis_)
        if (static_cast<int>(row.size()) != ambient_.dim())
            throw std::invalid_argument("fiber subspace basis vector has wrong dimension");
    rref(basis_);
}

FiberSubspace perp(const FiberSubspace& s) {
    // v in S-perp iff (basis * P) v^t = 0.
    QMat bp = qmat_mul(s.basis(), s.ambient().pairing());
    if (s.dim() == 0) {
        return FiberSubspace(s.ambient(), qmat_identity(s.ambient().dim()));
    }
    return FiberSubspace(s.ambient(), kernel(bp));
}

FiberSubspace intersect(const FiberSubspace& a, const FiberSubspace& b) {
    if (!(a.ambient() == b.ambient())) throw std::invalid_argument("intersect: ambient mismatch");
    return FiberSubspace(a.ambient(), subspace_intersection(a.basis(), b.basis()));
}

FiberSubspace subspace_add(const FiberSubspace& a, const FiberSubspace& b) {
    if (!(a.ambient() == b.ambient())) throw std::invalid_argument("subspace_add: ambient mismatch");
    return FiberSubspace(a.ambient(), subspace_sum(a.basis(), b.basis()));
}

bool is_isotropic(const FiberSubspace& s) {
    QMat gram = qmat_mul(qmat_mul(s.basis(), s.ambient().pairing()), qmat_transpose(s.basis()));
    for (const auto& row : gram)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

bool dirac_check(const FiberSubspace& s) { return is_isotropic(s) && 2 * s.dim() == s.ambient().dim(); }

FiberSubspace product_subspace(const FiberSubspace& a, const FiberSubspace& b, const FiberSpace& product) {
    int da = a.ambient().dim(), db = b.ambient().dim();
    if (product.dim() != da + db) throw std::invalid_argument("product_subspace: dimension mismatch");
    QMat rows;
    for (const auto& v : a.basis()) {
        QVec row(da + db, Rational(0));
        for (int i = 0; i < da; ++i) row[i] = v[i];
        rows.push_back(row);
    }
    for (const auto& v : b.basis()) {
        QVec row(da + db, Rational(0));
        for (int i = 0; i < db; ++i) row[da + i] = v[i];
        rows.push_back(row);
    }
    return FiberSubspace(product, rows);
}

ComposeResult compose(const FiberSubspace& r, const FiberSubspace& rprime) {
    const auto& fr = r.ambient().factors();
    const auto& frp = rprime.ambient().factors();
    if (fr.size() != 2 || frp.size() != 2) throw std::invalid_argument("compose: relations must live in pair fibers");
    if (fr[1].n != frp[0].n) throw std::invalid_argument("compose: middle fiber dimension mismatch");
    int d1 = 2 * fr[0].n, d2 = 2 * fr[1].n, d3 = 2 * frp[1].n;
    int ka = r.dim(), kb = rprime.dim();
    // (lambda, mu) with lambda B_r|_2 = mu B_r'|_1.
    QMat sys = qmat_zero(ka + kb, d2);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < d2; ++j) sys[i][j] = r.basis()[i][d1 + j];
    for (int i = 0; i < kb; ++i)
        for (int j = 0; j < d2; ++j) sys[ka + i][j] = -rprime.basis()[i][j];
    QMat combos = kernel(qmat_transpose(sys));

    ComposeResult out;
    out.diamond_dim = static_cast<int>(combos.size());
    QMat comp_rows;
    for (const auto& lm : combos) {
        QVec row(d1 + d3, Rational(0));
        for (int i = 0; i < ka; ++i) {
            if (lm[i] == 0) continue;
            for (int j = 0; j < d1; ++j) row[j] += lm[i] * r.basis()[i][j];
        }
        for (int i = 0; i < kb; ++i) {
            if (lm[ka + i] == 0) continue;
            for (int j = 0; j < d3; ++j) row[d1 + j] += lm[ka + i] * rprime.basis()[i][d2 + j];
        }
        comp_rows.push_back(row);
    }
    FiberSpace target({FiberFactor{fr[0].n, +1}, FiberFactor{frp[1].n, -1}});
    out.composition = FiberSubspace(target, comp_rows);
    out.projection_kernel = out.diamond_dim - out.composition.dim();
    return out;
}

FiberSubspace transpose_relation(const FiberSubspace& r) {
    const auto& f = r.ambient().factors();
    if (f.size() != 2) throw std::invalid_argument("transpose_relation: needs a pair fiber");
    int d1 = 2 * f[0].n, d2 = 2 * f[1].n;
    QMat rows;
    for (const auto& v : r.basis()) {
        QVec row(d1 + d2, Rational(0));
        for (int j = 0; j < d2; ++j) row[j] = v[d1 + j];
        for (int j = 0; j < d1; ++j) row[d2 + j] = v[j];
        rows.push_back(row);
    }
    return FiberSubspace(FiberSpace::pair(f[1].n, f[0].n), rows);
}

FiberSubspace graph_relation(const FiberSpace& pair_space, const QMat& m) {
    int d1 = 2 * pair_space.factors()[0].n;
    int d2 = 2 * pair_space.factors()[1].n;
    if (static_cast<int>(m.size()) != d1 || (d1 && static_cast<int>(m[0].size()) != d2))
        throw std::invalid_argument("graph_relation: map shape mismatch");
    QMat rows;
    for (int i = 0; i < d1; ++i) {
        QVec row(d1 + d2, Rational(0));
        row[i] = 1;
        for (int j = 0; j < d2; ++j) row[d1 + j] = m[i][j];
        rows.push_back(row);
    }
    return FiberSubspace(pair_space, rows);
}

FiberSubspace bfield_graph(int n, const QMat& b) {
    QMat rows;
    for (int i = 0; i < n; ++i) {
        QVec row(2 * n, Rational(0));
        row[i] = 1;
        for (int j = 0; j < n; ++j) row[n + j] = b[i][j];
        rows.push_back(row);
    }
    return FiberSubspace(FiberSpace::single(n), rows);
}

FiberSubspace metric_graph(int n, const QMat& g, const QMat& b, int sign) {
    QMat rows;
    for (int i = 0; i < n; ++i) {
        QVec row(2 * n, Rational(0));
        row[i] = 1;
        for (int j = 0; j < n; ++j) row[n + j] = Rational(sign) * g[i][j] + b[i][j];
        rows.push_back(row);
    }
    return FiberSubspace(FiberSpace::single(n), rows);
}

FiberSubspace bfield_transform(const FiberSubspace& s, const QMat& b) {
    if (s.ambient().factors().size() != 1) throw std::invalid_argument("bfield_transform: single fiber only");
    int n = s.ambient().factors()[0].n;
    QMat rows = s.basis();
    for (auto& row : rows) {
        for (int j = 0; j < n; ++j) {
            Rational add(0);
            for (int i = 0; i < n; ++i) add += row[i] * b[i][j];
            row[n + j] += add;
        }
    }
    return FiberSubspace(s.ambient(), rows);
}

FiberSubspace tangent_span_fiber(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b) {
    QMat rows;
    for (int s : span_indices) {
        QVec row(2 * n, Rational(0));
        row[s] = 1;
        rows.push_back(row);
    }
    FiberSubspace k(FiberSpace::single(n), rows);
    if (shift_b) {
        QMat minus_b = *shift_b;
        for (auto& r : minus_b)
            for (auto& x : r) x = -x;
        k = bfield_transform(k, minus_b);
    }
    return k;
}

namespace {

// natural() data: surviving tangent/form indices in order.
struct QkLayout {
    std::vector<int> keep;  // complement of span indices
    int n = 0;
    int q = 0;
};

QkLayout qk_layout(int n, const std::vector<int>& span) {
    QkLayout l;
    l.n = n;
    std::set<int> dead(span.begin(), span.end());
    for (int i = 0; i < n; ++i)
        if (!dead.count(i)) l.keep.push_back(i);
    l.q = static_cast<int>(l.keep.size());
    return l;
}

}  // namespace

QVec qk_project(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b, const QVec& e) {
    QkLayout l = qk_layout(n, span_indices);
    QVec shifted = e;
    if (shift_b) {
        // Undo the shift: e^B e has form part alpha + i_X B.
        for (int j = 0; j < n; ++j) {
            Rational add(0);
            for (int i = 0; i < n; ++i) add += e[i] * (*shift_b)[i][j];
            shifted[n + j] += add;
        }
    }
    for (int s : span_indices) {
        if (shifted[n + s] != 0) throw std::domain_error("qk_project: element not in K-perp");
    }
    QVec out(2 * l.q, Rational(0));
    for (int i = 0; i < l.q; ++i) {
        out[i] = shifted[l.keep[i]];
        out[l.q + i] = shifted[n + l.keep[i]];
    }
    return out;
}

FiberSubspace qk_fiber(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b) {
    QkLayout l = qk_layout(n, span_indices);
    FiberSubspace k = tangent_span_fiber(n, span_indices, shift_b);
    FiberSubspace kperp = perp(k);
    FiberSpace prod({FiberFactor{n, +1}, FiberFactor{l.q, -1}});
    QMat rows;
    for (const auto& e : kperp.basis()) {
        QVec nat = qk_project(n, span_indices, shift_b, e);
        QVec row(2 * n + 2 * l.q, Rational(0));
        for (int i = 0; i < 2 * n; ++i) row[i] = e[i];
        for (int i = 0; i < 2 * l.q; ++i) row[2 * n + i] = nat[i];
        rows.push_back(row);
    }
    return FiberSubspace(prod, rows);
}

bool qk_perp_decomposition_check(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b) {
    FiberSubspace qk = qk_fiber(n, span_indices, shift_b);
    FiberSubspace qk_perp = perp(qk);
    FiberSubspace k = tangent_span_fiber(n, span_indices, shift_b);
    // K x {0} inside the product fiber.
    int q = qk.ambient().factors()[1].n;
    QMat rows;
    for (const auto& v : k.basis()) {
        QVec row(2 * n + 2 * q, Rational(0));
        for (int i = 0; i < 2 * n; ++i) row[i] = v[i];
        rows.push_back(row);
    }
    FiberSubspace k_times_zero(qk.ambient(), rows);
    return subspace_equal(qk_perp.basis(), subspace_sum(k_times_zero.basis(), qk.basis()));
}

bool isometry_decomposition_check(const FiberSubspace& r, const FiberSubspace& v1p, const FiberSubspace& v1m,
                                  const FiberSubspace& v2p, const FiberSubspace& v2m) {
    FiberSubspace vplus = product_subspace(v1p, v2p, r.ambient());
    FiberSubspace vminus = product_subspace(v1m, v2m, r.ambient());
    int dp = intersect(vplus, r).dim();
    int dm = intersect(vminus, r).dim();
    return dp + dm == r.dim();
}

namespace {

bool transverse_decomposition_holds(const FiberSubspace& r, const FiberSubspace& wp, const FiberSubspace& wm) {
    FiberSubspace wsum = subspace_add(wp, wm);
    FiberSubspace lhs = intersect(r, wsum);
    FiberSubspace rhs = subspace_add(intersect(r, wp), intersect(r, wm));
    return subspace_equal(lhs.basis(), rhs.basis());
}

}  // namespace

TransverseIsometryResult transverse_isometry_check(const FiberSubspace& r, const FiberSubspace& w1p,
                                                   const FiberSubspace& w1m, const FiberSubspace& w2p,
                                                   const FiberSubspace& w2m, const FiberSubspace& k1,
                                                   const FiberSubspace& k2, bool search_lifts) {
    TransverseIsometryResult out;
    FiberSubspace wp = product_subspace(w1p, w2p, r.ambient());
    FiberSubspace wm = product_subspace(w1m, w2m, r.ambient());
    if (transverse_decomposition_holds(r, wp, wm)) {
        out.pass = true;
        return out;
    }
    if (!search_lifts) return out;
    // Bounded search: shift each W1+ basis vector by a single K1 generator.
    const Rational coeffs[4] = {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2)};
    for (size_t bi = 0; bi < w1p.basis().size(); ++bi) {
        for (const auto& kgen : k1.basis()) {
            for (const auto& c : coeffs) {
                QMat shifted = w1p.basis();
                for (size_t j = 0; j < kgen.size(); ++j) shifted[bi][j] += c * kgen[j];
                FiberSubspace w1p_shift(w1p.ambient(), shifted);
                FiberSubspace wp_shift = product_subspace(w1p_shift, w2p, r.ambient());
                if (transverse_decomposition_holds(r, wp_shift, wm)) {
                    out.pass = true;
                    out.lift_shifted = true;
                    return out;
                }
            }
        }
    }
    (void)k2;
    return out;
}

bool splitting_compat_check(const FiberSubspace& r1, const FiberSubspace& r2, const FiberSubspace& d_in_e2,
                            const FiberSubspace& k1, const FiberSubspace& k3) {
    // pr1(R1 cap (E1 x D)) subset K1.
    const auto& f1 = r1.ambient().factors();
    int d1 = 2 * f1[0].n, d2 = 2 * f1[1].n;
    QMat e1_x_d;
    {
        QMat rows;
        for (int i = 0; i < d1; ++i) {
            QVec row(d1 + d2, Rational(0));
            row[i] = 1;
            rows.push_back(row);
        }
        for (const auto& v : d_in_e2.basis()) {
            QVec row(d1 + d2, Rational(0));
            for (int j = 0; j < d2; ++j) row[d1 + j] = v[j];
            rows.push_back(row);
        }
        e1_x_d = rows;
    }
    QMat inter = subspace_intersection(r1.basis(), row_space(e1_x_d));
    QMat pr1;
    for (const auto& v : inter) {
        QVec p(d1);
        for (int j = 0; j < d1; ++j) p[j] = v[j];
        pr1.push_back(p);
    }
    bool first = subspace_subset(row_space(pr1), k1.basis());
    if (first) return true;
    // Mirrored condition on R2.
    const auto& f2 = r2.ambient().factors();
    int e2d = 2 * f2[0].n, e3d = 2 * f2[1].n;
    QMat d_x_e3;
    {
        QMat rows;
        for (const auto& v : d_in_e2.basis()) {
            QVec row(e2d + e3d, Rational(0));
            for (int j = 0; j < e2d; ++j) row[j] = v[j];
            rows.push_back(row);
        }
        for (int i = 0; i < e3d; ++i) {
            QVec row(e2d + e3d, Rational(0));
            row[e2d + i] = 1;
            rows.push_back(row);
        }
        d_x_e3 = rows;
    }
    QMat inter2 = subspace_intersection(r2.basis(), row_space(d_x_e3));
    QMat pr2;
    for (const auto& v : inter2) {
        QVec p(e3d);
        for (int j = 0; j < e3d; ++j) p[j] = v[j + e2d];
        pr2.push_back(p);
    }
    return subspace_subset(row_space(pr2), k3.basis());
}

SamplePlan SamplePlan::make(int dim, int count, std::uint64_t seed, const Rational& lo, const Rational& hi) {
    SamplePlan plan;
    plan.seed = seed;
    Rng rng(seed);
    std::set<std::vector<std::string>> seen;
    int guard = 0;
    while (static_cast<int>(plan.points.size()) < count && guard < 100 * count + 100) {
        ++guard;
        std::vector<Rational> p;
        std::vector<std::string> key;
        for (int i = 0; i < dim; ++i) {
            Rational x = rng.rational_in_box(lo, hi);
            p.push_back(x);
            key.push_back(x.get_str());
        }
        if (seen.insert(key).second) plan.points.push_back(p);
    }
    if (static_cast<int>(plan.points.size()) < count)
        throw std::runtime_error("sample plan: could not generate enough distinct points");
    return plan;
}

}  // namespace courant
