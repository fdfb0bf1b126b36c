#include <doctest.h>

#include "test_util.hpp"

using namespace courant;
using tu::pp;

TEST_CASE("gm_matrix block formula") {
    // 1-dim: g = (R^2), b = 0 -> diag(R^2, 1/R^2).
    Chart c1({"z"});
    GeneralisedMetric g1(c1, tu::pm(c1, {{"9/4"}}), tu::pm(c1, {{"0"}}));
    PolyMatrix m = g1.gm_matrix();
    CHECK(m[0][0] == Polynomial::parse(c1, "9/4"));
    CHECK(m[1][1] == Polynomial::parse(c1, "4/9"));
    CHECK(m[0][1].is_zero());

    // 3-dim identity -> 6x6 identity.
    Chart c3 = tu::chart3();
    GeneralisedMetric gid(c3, poly_matrix_identity(3, 3), poly_matrix_zero(3, 3, 3));
    CHECK(poly_matrix_equal(gid.gm_matrix(), poly_matrix_identity(6, 3)));

    // 2-dim with b: verified against an independent matrix-algebra oracle.
    Chart c2({"x", "y"});
    PolyMatrix g = poly_matrix_identity(2, 2);
    PolyMatrix b = tu::pm(c2, {{"0", "1/3"}, {"-1/3", "0"}});
    GeneralisedMetric gm(c2, g, b);
    PolyMatrix big = gm.gm_matrix();
    // Oracle: assemble from first principles with an independently computed inverse.
    PolyMatrix ginv = poly_matrix_identity(2, 2);
    PolyMatrix bginvb = poly_matrix_mul(b, poly_matrix_mul(ginv, b));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(big[i][j] == g[i][j] - bginvb[i][j]);
            CHECK(big[i][2 + j] == poly_matrix_mul(b, ginv)[i][j]);
            CHECK(big[2 + i][j] == -poly_matrix_mul(ginv, b)[i][j]);
            CHECK(big[2 + i][2 + j] == ginv[i][j]);
        }
    CHECK_THROWS_AS(GeneralisedMetric(c2, tu::pm(c2, {{"x", "0"}, {"0", "1"}}), poly_matrix_zero(2, 2, 2)),
                    std::invalid_argument);
}

TEST_CASE("vplus graph and tau") {
    Chart c = tu::chart3();
    GeneralisedMetric gid(c, poly_matrix_identity(3, 3), poly_matrix_zero(3, 3, 3));
    auto gens = gid.vplus_graph();
    for (int i = 0; i < 3; ++i) {
        CHECK(gens[i].vec() == VectorField::coordinate(c, i));
        CHECK(gens[i].form() == DifferentialForm::coordinate_one_form(c, i));
        CHECK(gid.tau_apply(gens[i]) == gens[i]);  // +1 eigenvector
    }
    // V- elements flip sign.
    GeneralizedSection vminus(VectorField::coordinate(c, 0), -DifferentialForm::coordinate_one_form(c, 0));
    CHECK(gid.tau_apply(vminus) == vminus * Rational(-1));

    // Random e decomposes via the solved block system: tau^2 = 1 and
    // tau e = e+ - e- with e+- the graph projections.
    Chart c2({"x", "y"});
    GeneralisedMetric gm(c2, tu::pm(c2, {{"2", "0"}, {"0", "1"}}), tu::pm(c2, {{"0", "x"}, {"-1*x", "0"}}));
    Rng rng(13);
    for (int t = 0; t < 20; ++t) {
        GeneralizedSection e = random_section(c2, rng);
        GeneralizedSection te = gm.tau_apply(e);
        CHECK(gm.tau_apply(te) == e);
        GeneralizedSection eplus = (e + te) * Rational(1, 2);
        GeneralizedSection eminus = (e - te) * Rational(1, 2);
        // e+ lies on gr(g+b), e- on gr(-g+b).
        CHECK(eplus.form() == apply_bilinear(poly_matrix_add(gm.g(), gm.b()), eplus.vec()));
        CHECK(eminus.form() == apply_bilinear(poly_matrix_sub(gm.b(), gm.g()), eminus.vec()));
    }
}

TEST_CASE("metric positivity is sample-certified and V+ perp V-") {
    Chart c = tu::chart3();
    GeneralisedMetric gm(c, tu::pm(c, {{"1", "x", "0"}, {"x", "1+x^2", "0"}, {"0", "0", "1"}}),
                         poly_matrix_zero(3, 3, 3));
    SamplePlan plan = SamplePlan::make(3, 25, 41, Rational(-1), Rational(1));
    PositivityCertificate cert = gm.certify_positive(plan);
    CHECK(cert.pass);
    CHECK(cert.points_checked == 25);

    // G(e, e) = <e, tau e> > 0 at sample points for nonzero test sections.
    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        GeneralizedSection e = random_section(c, rng);
        Polynomial val = gm.metric_eval(e, e);
        for (const auto& pt : plan.points) {
            Rational v = val.eval(pt);
            bool zero_at_pt = true;
            for (int i = 0; i < 3; ++i) {
                if (e.vec().component(i).eval(pt) != 0 || e.form().coeff({i}).eval(pt) != 0) zero_at_pt = false;
            }
            if (!zero_at_pt) CHECK(v > 0);
        }
    }

    // gr(g+b) perp gr(-g+b) exactly.
    auto vp = gm.vplus_graph();
    PolyMatrix hminus = poly_matrix_sub(gm.b(), gm.g());
    for (int i = 0; i < 3; ++i) {
        GeneralizedSection wminus(VectorField::coordinate(c, i),
                                  apply_bilinear(hminus, VectorField::coordinate(c, i)));
        for (int j = 0; j < 3; ++j) CHECK(pairing(vp[j], wminus).is_zero());
    }

    // An indefinite matrix fails the certificate.
    GeneralisedMetric bad(c, tu::pm(c, {{"-1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}),
                          poly_matrix_zero(3, 3, 3));
    CHECK_FALSE(bad.certify_positive(plan).pass);
}

TEST_CASE("framed metrics: vplus generators and tau in frame components") {
    ProblemDocument doc = tu::example_doc("heisenberg", {{"m", "2"}});
    Chart c = doc.chart;
    GeneralisedMetric gm(c, poly_matrix_identity(6, 6), poly_matrix_zero(6, 6, 6), doc.frame);
    auto gens = gm.vplus_graph();
    for (int i = 0; i < 6; ++i) {
        CHECK(gens[i].vec() == doc.frame.field(i));
        CHECK(gens[i].form() == doc.frame.coframe(i));
        CHECK(gm.tau_apply(gens[i]) == gens[i]);
    }
    Rng rng(71);
    for (int t = 0; t < 5; ++t) {
        GeneralizedSection e = random_section(c, rng);
        CHECK(gm.tau_apply(gm.tau_apply(e)) == e);
    }
    // Frame-duality pairing oracle: <Z_x + tTheta_x, tZ_x + Theta^x> = 2.
    GeneralizedSection a(doc.frame.field(0), doc.frame.coframe(3));
    GeneralizedSection b(doc.frame.field(3), doc.frame.coframe(0));
    CHECK(pairing(a, b) == Polynomial(6, Rational(2)));
}

TEST_CASE("classical isometry: two routes, three spec cases") {
    Chart c = tu::chart3();
    TwistedCourant e0 = TwistedCourant::untwisted(c);
    GeneralisedMetric g1(c, poly_matrix_identity(3, 3), poly_matrix_zero(3, 3, 3));

    // phi = id, B = 0, same metric: pass.
    CourantIso id(DiffeoMap::identity(c), BFieldMap(DifferentialForm::zero(c, 2)), e0, e0);
    ClassicalIsometryReport r1 = classical_isometry_check(id, g1, g1);
    CHECK(r1.pass());
    CHECK(r1.routes_agree());

    // phi = id, closed B != 0, b2 = b1 + B: pass.
    DifferentialForm bform(c, 2);
    bform.add_term({0, 1}, pp(c, "5"));
    CourantIso shear(DiffeoMap::identity(c), BFieldMap(bform), e0, e0);
    PolyMatrix b2 = matrix_from_two_form(bform);
    GeneralisedMetric g2(c, poly_matrix_identity(3, 3), b2);
    ClassicalIsometryReport r2 = classical_isometry_check(shear, g1, g2);
    CHECK(r2.pass());
    CHECK(r2.routes_agree());

    // phi = id, g2 != g1: fail with a printed residual; routes agree on failure.
    GeneralisedMetric g3(c, tu::pm(c, {{"2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}),
                         poly_matrix_zero(3, 3, 3));
    ClassicalIsometryReport r3 = classical_isometry_check(id, g1, g3);
    CHECK_FALSE(r3.pass());
    CHECK(r3.routes_agree());
    CHECK_FALSE(r3.residual.empty());
}

TEST_CASE("classical isometry with a nontrivial diffeomorphism") {
    ProblemDocument doc = tu::example_doc("heisenberg", {{"m", "1"}});
    Chart c = doc.chart;
    DiffeoMap phi = *doc.para->phi;
    // g1 = the left-invariant frame metric in coordinates; g2 its transport.
    PolyMatrix g1_coords = doc.frame.from_frame_bilinear(poly_matrix_identity(6, 6));
    PolyMatrix g2_coords = pullback_bilinear(phi.inverse_map(), g1_coords);
    GeneralisedMetric g1(c, g1_coords, poly_matrix_zero(6, 6, 6));
    GeneralisedMetric g2(phi.target(), g2_coords, poly_matrix_zero(6, 6, 6));
    TwistedCourant e1 = TwistedCourant::untwisted(c);
    TwistedCourant e2 = TwistedCourant::untwisted(phi.target());
    CourantIso iso(phi, BFieldMap(DifferentialForm::zero(c, 2)), e1, e2);
    ClassicalIsometryReport rep = classical_isometry_check(iso, g1, g2);
    CHECK(rep.pass());
    CHECK(rep.routes_agree());
}

TEST_CASE("transverse metrics: kernel structure and invariance checks") {
    // Riemannian-foliation case on the doubled Heisenberg chart: W = gr(g) with
    // ker g = the tilde directions, leaf-invariant g in frame components.
    Chart c({"x", "y", "z", "tx", "ty", "tz"});
    Frame f(c,
            tu::pm(c, {{"1", "0", "0", "0", "0", "0"},
                       {"0", "1", "0", "0", "0", "0"},
                       {"0", "2*x", "1", "0", "0", "0"},
                       {"0", "0", "0", "1", "0", "0"},
                       {"0", "0", "0", "2*z", "1", "-2*x"},
                       {"0", "0", "0", "0", "0", "1"}}),
            {"Zx", "Zy", "Zz", "tZx", "tZy", "tZz"});
    PolyMatrix g = poly_matrix_zero(6, 6, 6);
    for (int i = 0; i < 3; ++i) g[i][i] = Polynomial(6, Rational(1));
    PolyMatrix b = poly_matrix_zero(6, 6, 6);
    TransverseGeneralisedMetric w(f, {3, 4, 5}, g, b);
    SamplePlan plan = SamplePlan::make(6, 20, 88, Rational(-1), Rational(1));
    TransverseCheckReport rep = transverse_check(w, DifferentialForm::zero(c, 3), &plan);
    CHECK(rep.pass());
    // A degenerate complement block fails the sampled positivity.
    PolyMatrix gdeg = g;
    gdeg[0][0] = Polynomial(6);
    TransverseGeneralisedMetric wdeg(f, {3, 4, 5}, gdeg, b);
    TransverseCheckReport degrep = transverse_check(wdeg, DifferentialForm::zero(c, 3), &plan);
    CHECK_FALSE(degrep.pass());
    CHECK_FALSE(degrep.positive_complement);

    // A metric depending on a leaf coordinate fails.
    PolyMatrix gbad = g;
    gbad[0][0] = pp(c, "1 + ty^2");
    TransverseGeneralisedMetric wbad(f, {3, 4, 5}, gbad, b);
    CHECK_FALSE(transverse_check(wbad, DifferentialForm::zero(c, 3)).pass());

    // i_X H != 0 is a violation.
    DifferentialForm h(c, 3);
    h.add_term({0, 1, 3}, pp(c, "1"));
    TransverseCheckReport rep2 = transverse_check(w, h);
    CHECK_FALSE(rep2.pass());
    CHECK_FALSE(rep2.interior_h);

    // Kernel rows must vanish.
    PolyMatrix gnz = g;
    gnz[3][3] = Polynomial(6, Rational(1));
    CHECK_THROWS_AS(TransverseGeneralisedMetric(f, {3, 4, 5}, gnz, b), std::invalid_argument);
}
