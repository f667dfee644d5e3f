#include "levikit/multipoly.hpp"
#include "levikit/polygcd.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace levikit;
using namespace levikit::testing;

static const std::vector<std::string> Z{"z1", "z2"};

TEST_CASE("ring operations match the worked identities") {
    auto z1 = var(Z, "z1"), z2 = var(Z, "z2");
    CHECK((z1 + z2) * (z1 - z2) == z1 * z1 - z2 * z2);
    auto f = z1 * z1 * z2 + z2;
    CHECK((f + (-f)).is_zero());
    auto m = (z1 * z1) * (z2 * z2);
    CHECK(m.degree() == 4);
    CHECK(!m.is_zero());
}

TEST_CASE("zero polynomial has sentinel degree") {
    MultiPoly zero = MultiPoly::zero(Z);
    CHECK(!zero.total_degree().has_value());
    CHECK_THROWS_AS(zero.degree(), math_error);
    CHECK(MultiPoly::constant(Z, ExactComplex(3)).total_degree() == 0);
}

TEST_CASE("degree is additive for products") {
    Rng rng(21);
    for (int k = 0; k < 60; ++k) {
        MultiPoly f = random_poly(Z, 3, rng);
        MultiPoly g = random_poly(Z, 3, rng);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK((f * g).degree() == f.degree() + g.degree());
    }
}

TEST_CASE("evaluation is exact and a ring homomorphism") {
    auto z1 = var(Z, "z1"), z2 = var(Z, "z2");
    auto f = z1 * z1 + z2.scaled(ExactComplex::i());
    std::vector<ExactComplex> p{ExactComplex(2), ExactComplex(0)};
    CHECK(f.evaluate(p) == ExactComplex(4));

    // Brunella's phi at a point of M
    std::vector<std::string> rv{"x", "y", "s", "t"};
    auto Y = var(rv, "y"), S = var(rv, "s"), T = var(rv, "t");
    auto phi = T * T - ExactComplex(4) * (Y * Y + S) * Y * Y;
    std::vector<ExactComplex> q{ExactComplex(0), ExactComplex(1), ExactComplex(0), ExactComplex(2)};
    CHECK(phi.evaluate(q).is_zero());

    std::vector<std::string> zw{"za", "wa"};
    auto g = var(zw, "za") * var(zw, "wa") - cst(zw, 1);
    std::vector<ExactComplex> one_one{ExactComplex(1), ExactComplex(1)};
    CHECK(g.evaluate(one_one).is_zero());

    Rng rng(5);
    for (int k = 0; k < 60; ++k) {
        MultiPoly a = random_poly(Z, 3, rng);
        MultiPoly b = random_poly(Z, 3, rng);
        std::vector<ExactComplex> pt{rng.small_gaussian(5), rng.small_gaussian(5)};
        CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
        CHECK((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
    }
    CHECK_THROWS_AS(f.evaluate(std::vector<ExactComplex>{ExactComplex(1)}), input_error);
}

TEST_CASE("formal differentiation") {
    auto z1 = var(Z, "z1"), z2 = var(Z, "z2");
    CHECK((z1 * z1 * z2).differentiate("z1") == ExactComplex(2) * z1 * z2);
    std::vector<std::string> zw{"za", "wa"};
    CHECK((var(zw, "za") * var(zw, "wa")).differentiate("wa") == var(zw, "za"));
    std::vector<std::string> rv{"x", "y", "s", "t"};
    auto Y = var(rv, "y"), S = var(rv, "s"), T = var(rv, "t");
    auto phi = T * T - ExactComplex(4) * (Y * Y + S) * Y * Y;
    CHECK(phi.differentiate("t") == ExactComplex(2) * T);
    CHECK_THROWS_AS(phi.differentiate("nope"), input_error);
}

TEST_CASE("exact division finds quotients and refuses non-divisors") {
    auto z1 = var(Z, "z1"), z2 = var(Z, "z2");
    CHECK(*exact_divide(z1 * z1 - z2 * z2, z1 - z2) == z1 + z2);
    auto i = ExactComplex::i();
    CHECK(*exact_divide(z1 * z1 + cst(Z, 1), z1 - MultiPoly::constant(Z, i)) ==
          z1 + MultiPoly::constant(Z, i));
    CHECK(!exact_divide(z1 * z1 + z2 * z2, z1).has_value());
    CHECK_THROWS_AS(exact_divide(z1, MultiPoly::zero(Z)), math_error);
}

TEST_CASE("exact_divide(f*g, g) = f on random pairs") {
    Rng rng(99);
    int done = 0;
    while (done < 500) {
        MultiPoly f = random_poly(Z, 3, rng);
        MultiPoly g = random_poly(Z, 3, rng);
        if (f.is_zero() || g.is_zero()) continue;
        auto q = exact_divide(f * g, g);
        REQUIRE(q.has_value());
        CHECK(*q == f);
        ++done;
    }
}

TEST_CASE("conjugate_swap is an involution with real fixed points") {
    std::vector<std::string> vars{"z1", "z2", "w1", "w2"};
    MultiPoly f(vars);
    f.add_term({1, 0, 0, 1}, ExactComplex(mpq_class(1), mpq_class(2)));
    f.add_term({0, 2, 1, 0}, ExactComplex(mpq_class(-1, 3)));
    CHECK(conjugate_swap(conjugate_swap(f)) == f);

    MultiPoly delta(vars);
    delta.add_term({1, 0, 0, 1}, ExactComplex(mpq_class(0), mpq_class(-1)));
    delta.add_term({0, 1, 1, 0}, ExactComplex(mpq_class(0), mpq_class(1)));
    CHECK(conjugate_swap(delta) == delta); // real function

    MultiPoly z1 = MultiPoly::variable(vars, "z1");
    CHECK(!(conjugate_swap(z1) == z1)); // z1 is not a real function

    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        MultiPoly g = random_poly(vars, 2, rng);
        if (g.is_zero()) continue;
        MultiPoly real_poly = g * conjugate_swap(g);
        CHECK(conjugate_swap(real_poly) == real_poly);
        CHECK(conjugate_swap(conjugate_swap(g)) == g);
    }
    CHECK_THROWS_AS(conjugate_swap(MultiPoly::zero({"a", "b", "c"})), input_error);
}

TEST_CASE("homogenize and dehomogenize") {
    std::vector<std::string> xy{"x"};
    auto x = var(xy, "x");
    auto F = homogenize(x - cst(xy, 3), "z0", 1);
    std::vector<std::string> h{"z0", "x"};
    CHECK(F.poly() == var(h, "x") - ExactComplex(3) * var(h, "z0"));

    std::vector<std::string> zs{"z0", "z1", "z2"};
    auto conic = var(zs, "z0") * var(zs, "z2") - var(zs, "z1") * var(zs, "z1");
    auto dh = dehomogenize(conic, "z0");
    std::vector<std::string> aff{"z1", "z2"};
    CHECK(dh == var(aff, "z2") - var(aff, "z1") * var(aff, "z1"));

    CHECK(homogenize(MultiPoly::zero(xy), "z0", 5).poly().is_zero());
    CHECK_THROWS_AS(homogenize(x * x, "z0", 1), math_error);

    // round trip at exact degree with no new_var factor
    Rng rng(17);
    for (int k = 0; k < 40; ++k) {
        MultiPoly f = random_poly({"x", "y"}, 3, rng);
        if (f.is_zero()) continue;
        auto F2 = homogenize(f, "h", f.degree());
        CHECK(dehomogenize(F2.poly(), "h") == f.with_roster({"x", "y"}));
    }
}

TEST_CASE("homogeneous form validation") {
    std::vector<std::string> zs{"z0", "z1", "z2"};
    auto good = var(zs, "z0") * var(zs, "z2") - var(zs, "z1") * var(zs, "z1");
    CHECK(HomogeneousForm::from_poly(good).degree() == 2);
    auto bad = good + cst(zs, 1);
    CHECK_THROWS_AS(HomogeneousForm::from_poly(bad), math_error);
}

TEST_CASE("polynomial text form round-trips") {
    Rng rng(31);
    std::vector<std::string> vars{"z1", "z2", "z3"};
    for (int k = 0; k < 120; ++k) {
        MultiPoly f = random_poly(vars, 3, rng);
        MultiPoly back = MultiPoly::parse(f.str(), vars);
        CHECK(back == f);
    }
    CHECK(MultiPoly::parse("0", vars).is_zero());
    CHECK_THROWS_AS(MultiPoly::parse("z9 + 1", vars), input_error);
    CHECK_THROWS_AS(MultiPoly::parse("", vars), input_error);
}

TEST_CASE("multivariate gcd and squarefree detection") {
    auto z1 = var(Z, "z1"), z2 = var(Z, "z2");
    auto f = (z1 + z2) * (z1 - z2);
    auto g = (z1 + z2) * z2;
    auto d = poly_gcd(f, g);
    CHECK(d == z1 + z2);
    CHECK(gcd_is_constant(z1, z2));
    CHECK(is_squarefree(f));
    CHECK(!is_squarefree((z1 + z2) * (z1 + z2) * z2));
    CHECK(repeated_factor_part((z1 - z2) * (z1 - z2)) == z1 - z2);
}
