#include "courant/algebroid.hpp"

#include <sstream>

namespace courant {

GeneralizedSection::GeneralizedSection(VectorField vec, DifferentialForm form)
    : vec_(std::move(vec)), form_(std::move(form)) {
    require_same_chart(vec_.chart(), form_.chart(), "generalized section");
    if (form_.degree() != 1) throw std::invalid_argument("generalized section form part must have degree 1");
}

GeneralizedSection GeneralizedSection::zero(const Chart& chart) {
    return GeneralizedSection(VectorField::zero(chart), DifferentialForm::zero(chart, 1));
}

GeneralizedSection GeneralizedSection::from_field(const VectorField& x) {
    return GeneralizedSection(x, DifferentialForm::zero(x.chart(), 1));
}

GeneralizedSection GeneralizedSection::from_form(const DifferentialForm& alpha) {
    return GeneralizedSection(VectorField::zero(alpha.chart()), alpha);
}

GeneralizedSection GeneralizedSection::operator+(const GeneralizedSection& o) const {
    return GeneralizedSection(vec_ + o.vec_, form_ + o.form_);
}

GeneralizedSection GeneralizedSection::operator-(const GeneralizedSection& o) const {
    return GeneralizedSection(vec_ - o.vec_, form_ - o.form_);
}

GeneralizedSection GeneralizedSection::operator*(const Polynomial& f) const {
    return GeneralizedSection(vec_ * f, form_ * f);
}

GeneralizedSection GeneralizedSection::operator*(const Rational& c) const {
    return GeneralizedSection(vec_ * c, form_ * c);
}

std::string GeneralizedSection::str() const { return vec_.str() + "  (+)  " + form_.str(); }

TwistedCourant::TwistedCourant(Chart chart, DifferentialForm h) : chart_(std::move(chart)), h_(std::move(h)) {
    require_same_chart(chart_, h_.chart(), "twisted Courant algebroid");
    if (h_.degree() != 3) throw std::invalid_argument("twist must be a three-form");
    if (!ext_d(h_).is_zero()) throw std::invalid_argument("twist three-form is not closed");
}

TwistedCourant TwistedCourant::untwisted(const Chart& chart) {
    return TwistedCourant(chart, DifferentialForm::zero(chart, 3));
}

GeneralizedSection dorfman(const TwistedCourant& e, const GeneralizedSection& a, const GeneralizedSection& b) {
    require_same_chart(e.chart(), a.chart(), "dorfman");
    require_same_chart(e.chart(), b.chart(), "dorfman");
    // [[X+alpha, Y+beta]]_H = [X,Y] + L_X beta - i_Y d alpha + i_Y i_X H.
    VectorField vec = lie_bracket(a.vec(), b.vec());
    DifferentialForm form = lie_derivative(a.vec(), b.form()) - interior(b.vec(), ext_d(a.form())) +
                            interior(b.vec(), interior(a.vec(), e.h()));
    return GeneralizedSection(vec, form);
}

Polynomial pairing(const GeneralizedSection& a, const GeneralizedSection& b) {
    require_same_chart(a.chart(), b.chart(), "pairing");
    // <X+alpha, Y+beta> = i_Y alpha + i_X beta.
    return interior(b.vec(), a.form()).coeff({}) + interior(a.vec(), b.form()).coeff({});
}

GeneralizedSection derivation_D(const TwistedCourant& e, const Polynomial& f) {
    DifferentialForm df(e.chart(), 1);
    for (int i = 0; i < e.chart().dim(); ++i) df.add_term({i}, f.derivative(i));
    return GeneralizedSection(VectorField::zero(e.chart()), df);
}

VectorField anchor(const GeneralizedSection& a) { return a.vec(); }

bool AxiomSample::all_zero() const {
    return metric_compat.is_zero() && bracket_self.is_zero() && jacobi.is_zero() && leibniz_right.is_zero() &&
           leibniz_left.is_zero();
}

AxiomSample courant_axiom_residuals(const TwistedCourant& e, const GeneralizedSection& e0,
                                    const GeneralizedSection& e1, const GeneralizedSection& e2, const Polynomial& f) {
    AxiomSample out;
    // (i) metric compatibility.
    out.metric_compat = e0.vec().apply(pairing(e1, e2)) - pairing(dorfman(e, e0, e1), e2) -
                        pairing(e1, dorfman(e, e0, e2));
    // (ii) [[e,e]] = (1/2) D <e,e>.
    out.bracket_self = dorfman(e, e0, e0) - derivation_D(e, pairing(e0, e0)) * Rational(1, 2);
    // (iii) Jacobi identity in Leibniz form.
    out.jacobi = dorfman(e, e0, dorfman(e, e1, e2)) - dorfman(e, dorfman(e, e0, e1), e2) -
                 dorfman(e, e1, dorfman(e, e0, e2));
    // Anchored Leibniz rule.
    out.leibniz_right = dorfman(e, e1, e2 * f) - dorfman(e, e1, e2) * f - e2 * e1.vec().apply(f);
    // Leibniz rule in the first slot.
    out.leibniz_left = dorfman(e, e1 * f, e2) - dorfman(e, e1, e2) * f + e1 * e2.vec().apply(f) -
                       derivation_D(e, f) * pairing(e1, e2);
    return out;
}

Polynomial random_polynomial(int nvars, Rng& rng, int max_degree, int terms) {
    Polynomial p(nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(nvars, 0);
        int deg = rng.int_in(0, max_degree);
        for (int d = 0; d < deg; ++d) m[rng.int_in(0, nvars - 1)] += 1;
        p.add_term(m, rng.rational());
    }
    return p;
}

GeneralizedSection random_section(const Chart& chart, Rng& rng, int max_degree, int terms_per_entry) {
    int n = chart.dim();
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (int i = 0; i < n; ++i) comps.push_back(random_polynomial(n, rng, max_degree, terms_per_entry));
    DifferentialForm form(chart, 1);
    for (int i = 0; i < n; ++i) form.add_term({i}, random_polynomial(n, rng, max_degree, terms_per_entry));
    return GeneralizedSection(VectorField(chart, comps), form);
}

AxiomsReport courant_axioms_check(const TwistedCourant& e, int samples, std::uint64_t seed) {
    AxiomsReport report;
    report.samples = samples;
    report.seed = seed;
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        GeneralizedSection e0 = random_section(e.chart(), rng);
        GeneralizedSection e1 = random_section(e.chart(), rng);
        GeneralizedSection e2 = random_section(e.chart(), rng);
        Polynomial f = random_polynomial(e.chart().dim(), rng);
        AxiomSample res = courant_axiom_residuals(e, e0, e1, e2, f);
        if (!res.all_zero()) {
            ++report.failures;
            if (report.failure_details.size() < 5) {
                std::ostringstream msg;
                msg << "sample " << s << ": nonzero residual";
                report.failure_details.push_back(msg.str());
            }
        }
    }
    return report;
}

BFieldMap::BFieldMap(DifferentialForm b) : b_(std::move(b)) {
    if (b_.degree() != 2) throw std::invalid_argument("B-field must be a two-form");
}

bool BFieldMap::closed() const { return ext_d(b_).is_zero(); }

GeneralizedSection BFieldMap::apply(const GeneralizedSection& e) const {
    require_same_chart(chart(), e.chart(), "bfield_apply");
    return GeneralizedSection(e.vec(), e.form() + interior(e.vec(), b_));
}

GeneralizedSection BFieldMap::apply_inverse(const GeneralizedSection& e) const {
    return GeneralizedSection(e.vec(), e.form() - interior(e.vec(), b_));
}

GeneralizedSection bfield_bracket_defect(const TwistedCourant& e, const BFieldMap& b, const GeneralizedSection& e1,
                                         const GeneralizedSection& e2) {
    GeneralizedSection lhs = dorfman(e, b.apply(e1), b.apply(e2));
    GeneralizedSection rhs = b.apply(dorfman(e, e1, e2));
    return lhs - rhs;
}

CourantIso::CourantIso(DiffeoMap phi, BFieldMap b, TwistedCourant source, TwistedCourant target)
    : phi_(std::move(phi)), b_(std::move(b)), source_(std::move(source)), target_(std::move(target)) {
    require_same_chart(phi_.source(), source_.chart(), "CourantIso source");
    require_same_chart(phi_.target(), target_.chart(), "CourantIso target");
    require_same_chart(b_.chart(), source_.chart(), "CourantIso B-field");
    DifferentialForm lhs = phi_.pullback(target_.h());
    DifferentialForm rhs = source_.h() - ext_d(b_.b());
    if (lhs != rhs) throw std::invalid_argument("CourantIso: phi* H2 != H1 - dB");
}

GeneralizedSection CourantIso::apply(const GeneralizedSection& e) const {
    GeneralizedSection shifted = b_.apply(e);
    return GeneralizedSection(phi_.pushforward(shifted.vec()), phi_.pushforward(shifted.form()));
}

GeneralizedSection CourantIso::apply_inverse(const GeneralizedSection& e) const {
    GeneralizedSection back(phi_.pullback_field(e.vec()), phi_.pullback(e.form()));
    return b_.apply_inverse(back);
}

IsoCheckReport iso_check(const CourantIso& iso, int samples, std::uint64_t seed) {
    IsoCheckReport report;
    report.samples = samples;
    report.seed = seed;
    report.twist_identity = iso.phi().pullback(iso.target().h()) == iso.source().h() - ext_d(iso.bfield().b());
    report.isometry = true;
    report.bracket_homomorphism = true;
    report.anchor_compatible = true;
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        GeneralizedSection e1 = random_section(iso.source().chart(), rng);
        GeneralizedSection e2 = random_section(iso.source().chart(), rng);
        GeneralizedSection f1 = iso.apply(e1);
        GeneralizedSection f2 = iso.apply(e2);
        // Isometry: <Phi e1, Phi e2> o phi == <e1, e2>.
        Polynomial lhs = iso.phi().pullback_scalar(pairing(f1, f2));
        if (lhs != pairing(e1, e2)) report.isometry = false;
        // Bracket homomorphism.
        if (!(iso.apply(dorfman(iso.source(), e1, e2)) == dorfman(iso.target(), f1, f2)))
            report.bracket_homomorphism = false;
        // Anchor compatibility rho o Phi = phi_* o rho.
        if (!(f1.vec() == iso.phi().pushforward(e1.vec()))) report.anchor_compatible = false;
    }
    return report;
}

}  // namespace courant
