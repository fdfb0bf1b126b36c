#include <doctest.h>

#include "test_util.hpp"

using namespace courant;
using tu::one_form;
using tu::pp;
using tu::vf;

TEST_CASE("lie brackets") {
    Chart c = tu::chart3();
    int m = 5;
    VectorField dx = VectorField::coordinate(c, 0);
    VectorField zz = vf(c, {"0", std::to_string(m) + "*x", "1"});  // d/dz + m x d/dy
    CHECK(lie_bracket(dx, zz) == vf(c, {"0", std::to_string(m), "0"}));
    VectorField x = vf(c, {"x*y", "z^2", "1"});
    CHECK(lie_bracket(x, x).is_zero());
    // Hand-differentiated oracle: [d/dx, x^2 d/dy] = 2x d/dy.
    CHECK(lie_bracket(dx, vf(c, {"0", "x^2", "0"})) == vf(c, {"0", "2*x", "0"}));
}

TEST_CASE("exterior derivative examples") {
    Chart c = tu::chart3();
    DifferentialForm theta_y = one_form(c, {"0", "1", "-3*x"});  // dy - 3x dz
    DifferentialForm d_theta = ext_d(theta_y);
    DifferentialForm expected(c, 2);
    expected.add_term({0, 2}, pp(c, "-3"));
    CHECK(d_theta == expected);
    CHECK(ext_d(DifferentialForm::from_function(c, pp(c, "7/2"))).is_zero());
    // d(x dy + y dx) = d d(xy) = 0, via the oracle expansion d(xy).
    DifferentialForm exact = one_form(c, {"y", "x", "0"});
    CHECK(ext_d(exact).is_zero());
    DifferentialForm dxy(c, 1);
    for (int i = 0; i < 3; ++i) dxy.add_term({i}, pp(c, "x*y").derivative(i));
    CHECK(dxy == exact);
}

TEST_CASE("interior, wedge, lie derivative") {
    Chart c = tu::chart3();
    DifferentialForm dxdy(c, 2);
    dxdy.add_term({0, 1}, pp(c, "1"));
    CHECK(interior(VectorField::coordinate(c, 0), dxdy) == one_form(c, {"0", "1", "0"}));
    DifferentialForm dx = DifferentialForm::coordinate_one_form(c, 0);
    CHECK(wedge(dx, dx).is_zero());
    DifferentialForm theta_y = one_form(c, {"0", "1", "-3*x"});
    CHECK(lie_derivative(VectorField::coordinate(c, 2), theta_y).is_zero());
}

TEST_CASE("d o d = 0 on 200 random forms, exact") {
    for (int dim = 2; dim <= 6; ++dim) {
        std::vector<std::string> names;
        for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i));
        Chart c(names);
        Rng rng(40 + dim);
        int per_dim = 40;
        for (int t = 0; t < per_dim; ++t) {
            DifferentialForm w = tu::random_form(c, rng.int_in(0, 2), rng);
            CHECK(ext_d(ext_d(w)).is_zero());
        }
    }
}

TEST_CASE("Cartan formula and [L_X, i_Y] = i_[X,Y], random instances") {
    Chart c = tu::chart3();
    Rng rng(77);
    for (int t = 0; t < 25; ++t) {
        VectorField x = tu::random_field(c, rng);
        VectorField y = tu::random_field(c, rng);
        DifferentialForm w = tu::random_form(c, 2, rng);
        CHECK(lie_derivative(x, w) == interior(x, ext_d(w)) + ext_d(interior(x, w)));
        DifferentialForm lhs = lie_derivative(x, interior(y, w)) - interior(y, lie_derivative(x, w));
        CHECK(lhs == interior(lie_bracket(x, y), w));
    }
}

TEST_CASE("bilinear tensor helpers agree with form routes") {
    Chart c = tu::chart3();
    Rng rng(91);
    PolyMatrix b = poly_matrix_zero(3, 3, 3);
    Polynomial beta = random_polynomial(3, rng, 2, 2);
    b[0][1] = beta;
    b[1][0] = -beta;
    DifferentialForm bform = two_form_from_matrix(c, b);
    CHECK(poly_matrix_equal(matrix_from_two_form(bform), b));
    for (int t = 0; t < 10; ++t) {
        VectorField v = tu::random_field(c, rng);
        CHECK(apply_bilinear(b, v) == interior(v, bform));
        // Lie derivative of the matrix matches the form route.
        VectorField x = tu::random_field(c, rng);
        CHECK(two_form_from_matrix(c, lie_derivative_bilinear(x, b)) == lie_derivative(x, bform));
    }
}
