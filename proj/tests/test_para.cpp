#include <doctest.h>

#include "test_util.hpp"

using namespace courant;
using tu::pp;

namespace {

ParaHermitianFrame heisenberg_para(const std::string& m) {
    ProblemDocument doc = tu::example_doc("heisenberg", {{"m", m}});
    return ParaHermitianFrame(doc.frame);
}

DiffeoMap heisenberg_phi(const std::string& m) {
    Chart c({"x", "y", "z", "tx", "ty", "tz"});
    Chart cp({"xp", "yp", "zp", "txp", "typ", "tzp"});
    std::vector<Polynomial> fwd, inv;
    std::vector<std::string> fwd_s = {"x", "ty", "z", "tx - " + m + "*z*ty", "y", "tz"};
    std::vector<std::string> inv_s = {"xp", "typ", "zp", "txp + " + m + "*zp*yp", "yp", "tzp"};
    for (const auto& s : fwd_s) fwd.push_back(pp(c, s));
    for (const auto& s : inv_s) inv.push_back(Polynomial::parse(cp, s));
    return DiffeoMap(c, cp, fwd, inv);
}

}  // namespace

TEST_CASE("para-Hermitian frame invariants") {
    ParaHermitianFrame f = heisenberg_para("3");
    // eta(K., K.) = -eta and omega = eta o K are verified at construction;
    // spot-check eta against the frame pairing convention.
    const Chart& c = f.chart();
    VectorField zy = f.frame().field(1);
    VectorField tzy = f.frame().field(4);
    CHECK(bilinear_eval(f.eta(), zy, tzy) == pp(c, "1"));
    CHECK(bilinear_eval(f.eta(), zy, zy).is_zero());
    // A frame with unequal eigenbundle pairing fails: swap one dual pair.
    Chart c2({"x", "tx"});
    PolyMatrix rows = poly_matrix_identity(2, 2);
    rows[1][1] = Polynomial(2, Rational(2));  // breaks Theta(Z) normalisation for eta o K
    CHECK_NOTHROW(ParaHermitianFrame(Frame(c2, rows)));  // still a valid diagonal frame
}

TEST_CASE("flux extraction: Heisenberg and swapped frames") {
    ParaHermitianFrame f = heisenberg_para("2");
    FluxData flux = f.flux_extract();
    CHECK(flux.bracket_form_consistent);
    CHECK(flux.all_zero_q());
    CHECK(flux.all_zero_r());
    int nonzero_f = 0, nonzero_h = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (!flux.f[i][j][k].is_zero()) ++nonzero_f;
                if (!flux.h[i][j][k].is_zero()) ++nonzero_h;
            }
    CHECK(nonzero_f == 2);  // f_xz^y = m and f_zx^y = -m
    CHECK(flux.f[0][2][1] == pp(f.chart(), "2"));
    CHECK(nonzero_h == 0);

    // Coordinate frame: all fluxes vanish.
    Chart c4({"a", "b", "ta", "tb"});
    ParaHermitianFrame coord(Frame::coordinate(c4));
    FluxData cf = coord.flux_extract();
    CHECK(cf.all_zero_q());
    CHECK(cf.all_zero_r());

    // Swapped Heisenberg frame: H-type fluxes only, [Z'x, Z'z] = m Zt'^y.
    ParaHermitianFrame swapped = swap_frame(f, {1}, heisenberg_phi("2"));
    FluxData sf = swapped.flux_extract();
    CHECK(sf.bracket_form_consistent);
    CHECK(sf.all_zero_q());
    CHECK(sf.all_zero_r());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) CHECK(sf.f[i][j][k].is_zero());
    CHECK(sf.h[0][2][1] == Polynomial::parse(swapped.chart(), "2"));
}

TEST_CASE("hcan flux: dw projection equals the bracket route") {
    ParaHermitianFrame f = heisenberg_para("1");
    CHECK(f.hcan_flux().is_zero());  // H1 = 0
    CHECK(f.hcan_flux_bracket_route().is_zero());

    ParaHermitianFrame swapped = swap_frame(f, {1}, heisenberg_phi("1"));
    DifferentialForm h2can = swapped.hcan_flux();
    CHECK(h2can == swapped.hcan_flux_bracket_route());
    CHECK(ext_d(h2can).is_zero());

    // Integrable-L+ toy frame: cross-oracle on a frame with nonzero H-flux.
    Chart c({"u", "v", "tu", "tv"});
    PolyMatrix rows = poly_matrix_identity(4, 4);
    rows[2][3] = pp(c, "u");  // tZu = d/dtu + u d/dtv
    ParaHermitianFrame toy{Frame(c, rows)};
    CHECK(toy.hcan_flux() == toy.hcan_flux_bracket_route());
}

TEST_CASE("dual twist: transported three-form equals the displayed formula") {
    ParaHermitianFrame f = heisenberg_para("1");
    DiffeoMap phi = heisenberg_phi("1");
    ParaHermitianFrame swapped = swap_frame(f, {1}, phi);
    DifferentialForm b = (f.omega() - phi.pullback(swapped.omega())) * Rational(1, 2);
    // B = Theta^y wedge tTheta_y in the original frame.
    CHECK(b == wedge(f.frame().coframe(1), f.frame().coframe(4)));
    DifferentialForm h2 = phi.pushforward(f.hcan_flux() - ext_d(b));
    CHECK(h2 == dual_twist_formula(f, swapped, {1}, phi));
    // Coefficient magnitude m on the primed volume form: the pullback of the
    // dual torus flux.
    Chart cp = swapped.chart();
    DifferentialForm expected(cp, 3);
    expected.add_term({0, 1, 2}, Polynomial::parse(cp, "-1"));
    CHECK(h2 == expected);
    // Basic with respect to the swapped foliation: pure primed-coframe part.
    for (const auto& [idx, coeff] : swapped.frame().form_components(h2)) {
        for (int i : idx) CHECK(i < 3);
        (void)coeff;
    }
}

TEST_CASE("structure-function conditions per duality direction") {
    ParaHermitianFrame f = heisenberg_para("1");
    FluxData flux = f.flux_extract();
    CHECK(sf_conditions_check(flux, {1}).pass());   // y-direction admissible
    CHECK_FALSE(sf_conditions_check(flux, {0}).pass());  // x fails
    CHECK_FALSE(sf_conditions_check(flux, {2}).pass());  // z fails
    // Zero fluxes pass for any direction.
    Chart c4({"a", "b", "ta", "tb"});
    ParaHermitianFrame coord(Frame::coordinate(c4));
    CHECK(sf_conditions_check(coord.flux_extract(), {0}).pass());
    CHECK(sf_conditions_check(coord.flux_extract(), {0, 1}).pass());
    // Empty duality set: R and Q clauses stay active.
    CHECK(sf_conditions_check(flux, {}).pass());
    Chart c2({"u", "v", "tu", "tv"});
    PolyMatrix rows = poly_matrix_identity(4, 4);
    rows[2][3] = Polynomial::parse(c2, "v");  // produces Q-type flux: [tZu, Zv] term
    ParaHermitianFrame qframe{Frame(c2, rows)};
    SfConditionsReport rep = sf_conditions_check(qframe.flux_extract(), {});
    CHECK_FALSE(rep.pass());

    // Asymmetric H flux across the duality pair is rejected.
    Chart c6({"a", "b", "c", "ta", "tb", "tc"});
    PolyMatrix hrows = poly_matrix_identity(6, 6);
    hrows[1][5] = Polynomial::parse(c6, "a");  // Z_b = d/db + a d/dtc
    ParaHermitianFrame hframe{Frame(c6, hrows)};
    FluxData hflux = hframe.flux_extract();
    CHECK(hflux.h[0][1][2] == Polynomial(6, Rational(1)));
    CHECK(sf_conditions_check(hflux, {}).pass());
    CHECK_FALSE(sf_conditions_check(hflux, {1, 2}).pass());
}

TEST_CASE("swap frame: involution and eta preservation") {
    ParaHermitianFrame f = heisenberg_para("1");
    DiffeoMap phi = heisenberg_phi("1");
    ParaHermitianFrame swapped = swap_frame(f, {1}, phi);
    // Empty duality set: pushforward only.
    ParaHermitianFrame pushed = swap_frame(f, {}, phi);
    for (int i = 0; i < 6; ++i) CHECK(pushed.frame().field(i) == phi.pushforward(f.frame().field(i)));
    // Double swap lands back on the original fields (up to phi o phi transport).
    Chart c = f.chart();
    std::vector<Polynomial> idf, idi;
    for (int i = 0; i < 6; ++i) idf.push_back(Polynomial::variable(6, i));
    DiffeoMap identity(c, c, idf, idf);
    ParaHermitianFrame twice = swap_frame(swap_frame(f, {1}, identity), {1}, identity);
    for (int i = 0; i < 6; ++i) CHECK(twice.frame().field(i) == f.frame().field(i));
    (void)swapped;
}

TEST_CASE("para-Buscher: flat Heisenberg data and radius inversion") {
    ParaHermitianFrame f = heisenberg_para("1");
    DiffeoMap phi = heisenberg_phi("1");
    GenParaMetric flat{poly_matrix_identity(3, 6), poly_matrix_zero(3, 3, 6)};
    GenParaMetric dual = para_buscher(flat, f, {1}, phi);
    CHECK(poly_matrix_equal(dual.g_plus, poly_matrix_identity(3, 6)));
    CHECK(poly_matrix_is_zero(dual.b_plus));
    GenParaMetric dual_m = para_buscher_matrix_route(flat, f, {1}, phi);
    CHECK(poly_matrix_equal(dual.g_plus, dual_m.g_plus));
    CHECK(poly_matrix_is_zero(dual_m.b_plus));
    ParaHermitianFrame swapped = swap_frame(f, {1}, phi);
    CHECK(pullback_identity_check(flat, f, dual, swapped, phi));

    // diag(R^2, 1, 1) with duality in the first index -> diag(1/R^2, 1, 1).
    PolyMatrix g = poly_matrix_identity(3, 6);
    g[0][0] = Polynomial(6, Rational(9, 4));
    GenParaMetric gd{g, poly_matrix_zero(3, 3, 6)};
    GenParaMetric dual_r = para_buscher(gd, f, {0}, phi);
    CHECK(dual_r.g_plus[0][0] == Polynomial(6, Rational(4, 9)));
    CHECK(dual_r.g_plus[1][1] == Polynomial(6, Rational(1)));

    // No duality indices: identity transformation.
    GenParaMetric same = para_buscher(gd, f, {}, phi);
    CHECK(poly_matrix_equal(same.g_plus, g));
}

TEST_CASE("para-Buscher two routes agree on mixed data") {
    // Constant-coefficient data with nonzero b+ and off-diagonal g+.
    Chart c({"u", "v", "w", "tu", "tv", "tw"});
    ParaHermitianFrame f{Frame::coordinate(c)};
    std::vector<Polynomial> idf;
    for (int i = 0; i < 6; ++i) idf.push_back(Polynomial::variable(6, i));
    DiffeoMap identity(c, c, idf, idf);
    Rng rng(55);
    for (int t = 0; t < 8; ++t) {
        PolyMatrix g = poly_matrix_zero(3, 3, 6);
        for (int i = 0; i < 3; ++i) g[i][i] = Polynomial(6, Rational(rng.int_in(1, 4)));
        Rational off = rng.rational() * Rational(1, 10);
        g[0][1] = Polynomial(6, off);
        g[1][0] = Polynomial(6, off);
        PolyMatrix b = poly_matrix_zero(3, 3, 6);
        Rational bval = rng.rational();
        b[0][1] = Polynomial(6, bval);
        b[1][0] = Polynomial(6, -bval);
        GenParaMetric gm{g, b};
        for (const std::vector<int>& duality : {std::vector<int>{0}, std::vector<int>{0, 1}}) {
            PolyMatrix hvv = gm.g_plus;  // invertibility guard for the duality block
            GenParaMetric r1 = para_buscher(gm, f, duality, identity);
            GenParaMetric r2 = para_buscher_matrix_route(gm, f, duality, identity);
            CHECK(poly_matrix_equal(r1.g_plus, r2.g_plus));
            CHECK(poly_matrix_equal(r1.b_plus, r2.b_plus));
            (void)hvv;
        }
    }
}

TEST_CASE("gen_para_metric_matrix block structure") {
    ParaHermitianFrame f = heisenberg_para("1");
    GenParaMetric flat{poly_matrix_identity(3, 6), poly_matrix_zero(3, 3, 6)};
    PolyMatrix h = gen_para_metric_matrix(flat, f);
    // b+ = 0: block diagonal with g- = (g+)^{-1}.
    CHECK(poly_matrix_equal(h, poly_matrix_identity(6, 6)));
    // Perturbed dual fails the pullback identity.
    DiffeoMap phi = heisenberg_phi("1");
    ParaHermitianFrame swapped = swap_frame(f, {1}, phi);
    PolyMatrix g2 = poly_matrix_identity(3, 6);
    g2[0][0] = Polynomial(6, Rational(2));
    GenParaMetric wrong{g2, poly_matrix_zero(3, 3, 6)};
    CHECK_FALSE(pullback_identity_check(flat, f, wrong, swapped, phi));
}
