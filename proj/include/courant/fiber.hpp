#pragma once

#include <optional>
#include <string>
#include <vector>

#include "courant/linalg.hpp"

namespace courant {

/// One split-signature factor E with pairing sign +1 or -1 (for E-bar), fiber
/// dimension 2n in tangent-then-form component order.
struct FiberFactor {
    int n = 0;
    int sign = +1;
};

/// Product of split-signature fibers, e.g. E1 x E2-bar.
class FiberSpace {
public:
    FiberSpace() = default;
    explicit FiberSpace(std::vector<FiberFactor> factors);
    static FiberSpace single(int n) { return FiberSpace({FiberFactor{n, +1}}); }
    static FiberSpace pair(int n1, int n2) { return FiberSpace({FiberFactor{n1, +1}, FiberFactor{n2, -1}}); }

    int dim() const { return dim_; }
    const std::vector<FiberFactor>& factors() const { return factors_; }
    const QMat& pairing() const { return pairing_; }
    int factor_offset(int i) const { return offsets_.at(i); }

    bool operator==(const FiberSpace& o) const;

private:
    std::vector<FiberFactor> factors_;
    std::vector<int> offsets_;
    int dim_ = 0;
    QMat pairing_;
};

/// Exact subspace of a fiber, stored as a reduced row-echelon basis.
class FiberSubspace {
public:
    FiberSubspace() = default;
    FiberSubspace(FiberSpace ambient, QMat basis);

    const FiberSpace& ambient() const { return ambient_; }
    const QMat& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    bool contains(const QVec& v) const { return subspace_contains(basis_, v); }
    bool operator==(const FiberSubspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
    FiberSpace ambient_;
    QMat basis_;
};

/// Annihilator with respect to the fiber pairing.
FiberSubspace perp(const FiberSubspace& s);
FiberSubspace intersect(const FiberSubspace& a, const FiberSubspace& b);
FiberSubspace subspace_add(const FiberSubspace& a, const FiberSubspace& b);
bool is_isotropic(const FiberSubspace& s);
/// Maximal isotropy: s subset of s-perp and dim == half the ambient dimension.
bool dirac_check(const FiberSubspace& s);

/// Product subspace a x b inside the product fiber space.
FiberSubspace product_subspace(const FiberSubspace& a, const FiberSubspace& b, const FiberSpace& product);

struct ComposeResult {
    FiberSubspace composition;   // R' o R in E1 x E3-bar
    int diamond_dim = 0;         // dim(R' diamond R)
    int projection_kernel = 0;   // dim of the kernel of the projection
};

/// Composition of relations R in E1 x E2-bar and R' in E2 x E3-bar.
ComposeResult compose(const FiberSubspace& r, const FiberSubspace& rprime);

FiberSubspace transpose_relation(const FiberSubspace& r);

/// Graph of a linear map from the first factor of a pair fiber: {(v, m(v))}.
FiberSubspace graph_relation(const FiberSpace& pair_space, const QMat& m);

/// gr(B) = {(v, B-flat v)} inside a single fiber for antisymmetric b.
FiberSubspace bfield_graph(int n, const QMat& b);
/// gr(+-g + b) for a metric fiber.
FiberSubspace metric_graph(int n, const QMat& g, const QMat& b, int sign);

/// e^B conjugation of a single-fiber subspace, with antisymmetric b acting on
/// the tangent part.
FiberSubspace bfield_transform(const FiberSubspace& s, const QMat& b);

/// K = e^{-B}(span of tangent directions S) in a 2n fiber.
FiberSubspace tangent_span_fiber(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b);

/// The reduction relation fiber Q(K) = {(e, natural(e)) : e in K-perp} inside
/// E x E-reduced-bar, for frame-adapted K given by tangent span indices and an
/// optional B-shift.  natural() drops the S tangent and form components after
/// undoing the shift.
FiberSubspace qk_fiber(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b);

/// natural() of a single fiber element (must lie in K-perp).
QVec qk_project(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b, const QVec& e);

/// Q(K)-perp == K x {0} + Q(K) (exact).
bool qk_perp_decomposition_check(int n, const std::vector<int>& span_indices, const std::optional<QMat>& shift_b);

/// Def of generalised isometry: dim(V+ cap R) + dim(V- cap R) == dim R, where
/// V+- are products of the +-1 metric graphs.
bool isometry_decomposition_check(const FiberSubspace& r, const FiberSubspace& v1p, const FiberSubspace& v1m,
                                  const FiberSubspace& v2p, const FiberSubspace& v2m);

struct TransverseIsometryResult {
    bool pass = false;
    bool lift_shifted = false;  // a shifted lift from the bounded search was used
};

/// Transverse generalised isometry test with supplied lifts; optionally
/// searches lifts shifted by single K-generators with small coefficients.
TransverseIsometryResult transverse_isometry_check(const FiberSubspace& r, const FiberSubspace& w1p,
                                                   const FiberSubspace& w1m, const FiberSubspace& w2p,
                                                   const FiberSubspace& w2m, const FiberSubspace& k1,
                                                   const FiberSubspace& k2, bool search_lifts);

/// Appendix condition: pr1(R1 cap (E1 x D)) subset K1, or the mirrored check
/// pr2(R2 cap (D x E3)) subset K3.
bool splitting_compat_check(const FiberSubspace& r1, const FiberSubspace& r2, const FiberSubspace& d_in_e2,
                            const FiberSubspace& k1, const FiberSubspace& k3);

/// Seeded list of pairwise distinct rational sample points in a box.
struct SamplePlan {
    std::vector<std::vector<Rational>> points;
    std::uint64_t seed = 0;

    static SamplePlan make(int dim, int count, std::uint64_t seed, const Rational& lo, const Rational& hi);
};

}  // namespace courant
