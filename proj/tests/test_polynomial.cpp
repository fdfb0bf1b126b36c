#include <doctest.h>

#include "test_util.hpp"

using namespace courant;
using tu::pp;

TEST_CASE("parse and print round-trip in the fixed grammar") {
    Chart c = tu::chart3();
    Polynomial p = pp(c, "3/2*x^2*z - y + 2");
    CHECK(p.str(c) == "3/2*x^2*z - y + 2");
    CHECK(Polynomial::parse(c, p.str(c)) == p);
    CHECK(pp(c, "0").is_zero());
    CHECK(pp(c, "x - x").is_zero());
    CHECK(pp(c, "(x + y)^2") == pp(c, "x^2 + 2*x*y + y^2"));
    CHECK_THROWS_AS(pp(c, "x + w"), std::invalid_argument);
    CHECK_THROWS_AS(pp(c, "x +"), std::invalid_argument);
}

TEST_CASE("exact arithmetic and derivatives") {
    Chart c = tu::chart3();
    Polynomial p = pp(c, "1/3*x^2*y");
    CHECK(p.derivative(0) == pp(c, "2/3*x*y"));
    CHECK(p.derivative(1) == pp(c, "1/3*x^2"));
    CHECK(p.derivative(2).is_zero());
    CHECK(p.eval({Rational(3), Rational(2), Rational(0)}) == Rational(6));
    CHECK((pp(c, "x+y") * pp(c, "x-y")) == pp(c, "x^2 - y^2"));
    // Composition.
    Polynomial q = pp(c, "x^2 + z");
    std::vector<Polynomial> subs = {pp(c, "y"), pp(c, "x"), pp(c, "x*y")};
    CHECK(q.compose(subs) == pp(c, "y^2 + x*y"));
}

TEST_CASE("determinant and adjugate, polynomial entries") {
    Chart c = tu::chart3();
    PolyMatrix m = tu::pm(c, {{"1", "x", "0"}, {"0", "1", "z"}, {"0", "0", "1"}});
    Polynomial det = poly_matrix_det(m);
    CHECK(det == pp(c, "1"));
    PolyMatrix adj = poly_matrix_adjugate(m);
    PolyMatrix prod = poly_matrix_mul(m, adj);
    CHECK(poly_matrix_equal(prod, poly_matrix_identity(3, 3)));
    PolyMatrix m2 = tu::pm(c, {{"x", "1"}, {"1", "x"}});
    CHECK(poly_matrix_det(m2) == pp(c, "x^2 - 1"));
}

TEST_CASE("restrict and inject between charts") {
    Chart c = tu::chart3();
    Polynomial p = pp(c, "x^2 + 2*z");
    std::vector<int> base = {0, 2};  // keep x, z
    Polynomial r = poly_restrict(p, base, 2);
    Chart q({"x", "z"});
    CHECK(r == Polynomial::parse(q, "x^2 + 2*z"));
    CHECK(poly_inject(r, base, 3) == p);
    CHECK_THROWS_AS(poly_restrict(pp(c, "y"), base, 2), std::domain_error);
}
