#pragma once

#include <optional>
#include <string>
#include <vector>

#include "courant/frame.hpp"

namespace courant {

/// Section X + alpha of the generalised tangent bundle.
class GeneralizedSection {
public:
    GeneralizedSection() = default;
    GeneralizedSection(VectorField vec, DifferentialForm form);
    static GeneralizedSection zero(const Chart& chart);
    static GeneralizedSection from_field(const VectorField& x);
    static GeneralizedSection from_form(const DifferentialForm& alpha);

    const Chart& chart() const { return vec_.chart(); }
    const VectorField& vec() const { return vec_; }
    const DifferentialForm& form() const { return form_; }

    bool is_zero() const { return vec_.is_zero() && form_.is_zero(); }
    GeneralizedSection operator+(const GeneralizedSection& o) const;
    GeneralizedSection operator-(const GeneralizedSection& o) const;
    GeneralizedSection operator*(const Polynomial& f) const;
    GeneralizedSection operator*(const Rational& c) const;
    bool operator==(const GeneralizedSection& o) const { return vec_ == o.vec_ && form_ == o.form_; }

    std::string str() const;

private:
    VectorField vec_;
    DifferentialForm form_;
};

/// The H-twisted standard Courant algebroid on a chart; dH = 0 is verified at
/// construction.
class TwistedCourant {
public:
    TwistedCourant(Chart chart, DifferentialForm h);
    static TwistedCourant untwisted(const Chart& chart);

    const Chart& chart() const { return chart_; }
    const DifferentialForm& h() const { return h_; }

private:
    Chart chart_;
    DifferentialForm h_;
};

GeneralizedSection dorfman(const TwistedCourant& e, const GeneralizedSection& a, const GeneralizedSection& b);
Polynomial pairing(const GeneralizedSection& a, const GeneralizedSection& b);
/// D f = (0, df).
GeneralizedSection derivation_D(const TwistedCourant& e, const Polynomial& f);
VectorField anchor(const GeneralizedSection& a);

struct AxiomResiduals {
    GeneralizedSection metric_compat_lhs_minus_rhs_unused;  // placeholder for ABI stability
};

/// Exact residuals of the Courant algebroid axioms and both Leibniz rules on
/// one sample tuple (e, e1, e2, f).
struct AxiomSample {
    Polynomial metric_compat;          // rho(e).<e1,e2> - <[[e,e1]],e2> - <e1,[[e,e2]]>
    GeneralizedSection bracket_self;   // [[e,e]] - (1/2) D<e,e>
    GeneralizedSection jacobi;         // [[e,[[e1,e2]]]] - [[[[e,e1]],e2]] - [[e1,[[e,e2]]]]
    GeneralizedSection leibniz_right;  // [[e1, f e2]] - f [[e1,e2]] - (rho(e1).f) e2
    GeneralizedSection leibniz_left;   // [[f e1, e2]] - f [[e1,e2]] + (rho(e2).f) e1 - <e1,e2> D f
    bool all_zero() const;
};

AxiomSample courant_axiom_residuals(const TwistedCourant& e, const GeneralizedSection& e0,
                                    const GeneralizedSection& e1, const GeneralizedSection& e2, const Polynomial& f);

struct AxiomsReport {
    int samples = 0;
    int failures = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> failure_details;
    bool pass() const { return failures == 0; }
};

/// Runs the axiom suite on seeded random polynomial sections (degree <= 2
/// coefficients).
AxiomsReport courant_axioms_check(const TwistedCourant& e, int samples, std::uint64_t seed);

GeneralizedSection random_section(const Chart& chart, Rng& rng, int max_degree = 2, int terms_per_entry = 2);
Polynomial random_polynomial(int nvars, Rng& rng, int max_degree = 2, int terms = 2);

/// B-field transformation e^B (X + alpha) = X + i_X B + alpha.
class BFieldMap {
public:
    explicit BFieldMap(DifferentialForm b);
    const DifferentialForm& b() const { return b_; }
    const Chart& chart() const { return b_.chart(); }
    bool closed() const;

    GeneralizedSection apply(const GeneralizedSection& e) const;
    GeneralizedSection apply_inverse(const GeneralizedSection& e) const;

private:
    DifferentialForm b_;
};

/// [[e^B e1, e^B e2]]_H - e^B [[e1, e2]]_H; equals (0, i_Y i_X dB).
GeneralizedSection bfield_bracket_defect(const TwistedCourant& e, const BFieldMap& b, const GeneralizedSection& e1,
                                         const GeneralizedSection& e2);

/// Classical isomorphism Phi = phibar o e^B between twisted standard Courant
/// algebroids; phi* H2 = H1 - dB is verified at construction.
class CourantIso {
public:
    CourantIso(DiffeoMap phi, BFieldMap b, TwistedCourant source, TwistedCourant target);

    const DiffeoMap& phi() const { return phi_; }
    const BFieldMap& bfield() const { return b_; }
    const TwistedCourant& source() const { return source_; }
    const TwistedCourant& target() const { return target_; }

    GeneralizedSection apply(const GeneralizedSection& e) const;
    GeneralizedSection apply_inverse(const GeneralizedSection& e) const;

private:
    DiffeoMap phi_;
    BFieldMap b_;
    TwistedCourant source_;
    TwistedCourant target_;
};

struct IsoCheckReport {
    bool twist_identity = false;     // phi* H2 == H1 - dB (re-verified)
    bool isometry = false;           // on sample sections
    bool bracket_homomorphism = false;
    bool anchor_compatible = false;
    int samples = 0;
    std::uint64_t seed = 0;
    bool pass() const { return twist_identity && isometry && bracket_homomorphism && anchor_compatible; }
};

IsoCheckReport iso_check(const CourantIso& iso, int samples, std::uint64_t seed);

}  // namespace courant
