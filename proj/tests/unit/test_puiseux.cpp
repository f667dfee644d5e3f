#include "levikit/puiseux.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace levikit;
using namespace levikit::testing;

static const std::vector<std::string> XY{"x", "y"};

namespace {

ExactComplex rational_coef(const Branch& b, int k) {
    auto it = b.y_series.find(k);
    REQUIRE(b.field->is_rational());
    if (it == b.y_series.end()) return ExactComplex(0);
    if (it->second.is_zero()) return ExactComplex(0);
    return it->second.coefs()[0];
}

} // namespace

TEST_CASE("cusp has one branch (t^2, t^3)") {
    auto x = var(XY, "x"), y = var(XY, "y");
    auto brs = puiseux_branches(y * y - x * x * x, 10);
    REQUIRE(brs.size() == 1);
    const Branch& b = brs[0];
    CHECK(b.x_coef == ExactComplex(1));
    CHECK(b.x_exp == 2);
    CHECK(rational_coef(b, 3) == ExactComplex(1));
    CHECK(b.ramification == 2);
    CHECK(b.exact);
}

TEST_CASE("node splits into two smooth branches") {
    auto x = var(XY, "x"), y = var(XY, "y");
    auto brs = puiseux_branches(y * y - x * x, 8);
    REQUIRE(brs.size() == 2);
    // one branch per line y = x and y = -x (up to parametrization)
    int on_plus = 0, on_minus = 0;
    for (const auto& b : brs) {
        CHECK(b.ramification == 1);
        if (branch_order(b, y - x).contained) ++on_plus;
        if (branch_order(b, y + x).contained) ++on_minus;
    }
    CHECK(on_plus == 1);
    CHECK(on_minus == 1);
}

TEST_CASE("smooth point gives one unramified branch") {
    auto x = var(XY, "x"), y = var(XY, "y");
    auto brs = puiseux_branches(y - x * x, 8);
    REQUIRE(brs.size() == 1);
    CHECK(brs[0].x_exp == 1);
    CHECK(brs[0].ramification == 1);
    CHECK(rational_coef(brs[0], 2) == ExactComplex(1));
}

TEST_CASE("branch orders match hand-derived values") {
    auto x = var(XY, "x"), y = var(XY, "y");
    auto cusp = puiseux_branches(y * y - x * x * x, 10);
    CHECK(branch_order(cusp[0], y).order == 3); // ord_t t^3

    auto smooth = puiseux_branches(y - x * x, 8);
    auto r = branch_order(smooth[0], y - x * x);
    CHECK(r.contained); // the curve itself

    auto axes = puiseux_branches(x * y, 8);
    REQUIRE(axes.size() == 2);
    // branch (t, 0): ord of x is 1
    for (const auto& b : axes) {
        if (b.x_coef.is_zero()) continue;
        CHECK(branch_order(b, x).order == 1);
    }
}

TEST_CASE("irrational tangents live in a certified extension") {
    auto x = var(XY, "x"), y = var(XY, "y");
    auto brs = puiseux_branches(y * y - ExactComplex(2) * x * x, 8);
    REQUIRE(brs.size() == 2);
    for (const auto& b : brs) {
        CHECK(!b.field->is_rational());
        CHECK(b.field->modulus().degree() == 2);
        // coefficient box squares to 2
        ComplexBox cb = b.y_coef_box(1, mpq_class(1, 100000));
        ComplexBox sq = cb * cb;
        CHECK(sq.re.contains(mpq_class(2)));
        CHECK(branch_order(b, y).order == 1);
        // the conjugate line y - c x has order 1 against y + c x and CONTAINED against itself:
        // exercised through the defining curve instead
        auto rc = branch_order(b, y * y - ExactComplex(2) * x * x);
        CHECK(rc.contained);
    }
}

TEST_CASE("field splitting resolves mixed extensions") {
    // (y^2 - 2x^2)(y^2 - 3x^2): one squarefree psi with two conjugate classes;
    // orders against y^2 - 2x^2 must distinguish the classes exactly
    auto x = var(XY, "x"), y = var(XY, "y");
    auto f = (y * y - ExactComplex(2) * x * x) * (y * y - ExactComplex(3) * x * x);
    auto brs = puiseux_branches(f, 10);
    REQUIRE(brs.size() == 4);
    auto g = y * y - ExactComplex(2) * x * x;
    int contained = 0, crossing = 0;
    for (const auto& b : brs) {
        auto r = branch_order(b, g);
        if (r.contained)
            ++contained;
        else {
            // g is a pair of lines; a sqrt(3) branch meets each in one point
            CHECK(r.order == 2);
            ++crossing;
        }
    }
    CHECK(contained == 2); // the sqrt(2) branches lie in g
    CHECK(crossing == 2);  // the sqrt(3) branches cross it
}

TEST_CASE("duval normalization keeps y^2 - 2x^3 rational") {
    auto x = var(XY, "x"), y = var(XY, "y");
    auto brs = puiseux_branches(y * y - ExactComplex(2) * x * x * x, 12);
    REQUIRE(brs.size() == 1);
    CHECK(brs[0].field->is_rational());
    CHECK(brs[0].x_exp == 2);
    CHECK(brs[0].ramification == 2);
}

TEST_CASE("sum of ramification indices equals the local multiplicity") {
    auto x = var(XY, "x"), y = var(XY, "y");
    std::vector<MultiPoly> curves{
        y * y - x * x * x,
        y * y - x * x,
        x * y,
        (y - x * x) * (y * y - x * x * x),
        y * y * y - x * x * x * x,
        (y * y - ExactComplex(2) * x * x) * (y - x * x),
    };
    for (const auto& f : curves) {
        int rams = 0;
        for (const auto& b : puiseux_branches(f, 14)) rams += b.ramification;
        CHECK(rams == f.order_at_origin());
    }
}

TEST_CASE("branch orders are invariant under unit reparametrization") {
    auto x = var(XY, "x"), y = var(XY, "y");
    auto f = y * y - x * x * x;
    auto brs = puiseux_branches(f, 12);
    REQUIRE(brs.size() == 1);
    Rng rng(8);
    for (int k = 0; k < 8; ++k) {
        ExactComplex u = rng.small_gaussian_nonzero(5);
        // reparametrized branch: x = u^2 t^2, y = u^3 t^3 (t -> u t)
        Branch rb = brs[0];
        rb.x_coef = u * u;
        std::map<int, UniPoly> series;
        for (const auto& [e, c] : rb.y_series) {
            ExactComplex scale(1);
            for (int j = 0; j < e; ++j) scale *= u;
            series[e] = c.scaled(scale);
        }
        rb.y_series = std::move(series);
        for (const auto& g : {y, x, y - x * x}) {
            auto a = branch_order(brs[0], g);
            auto b = branch_order(rb, g);
            CHECK(a.contained == b.contained);
            if (!a.contained) CHECK(a.order == b.order);
        }
    }
}

TEST_CASE("precondition violations are rejected") {
    auto x = var(XY, "x"), y = var(XY, "y");
    CHECK_THROWS_AS(puiseux_branches(y - cst(XY, 1), 8), math_error); // misses origin
    CHECK_THROWS_AS(puiseux_branches((y - x) * (y - x), 8), math_error); // non-squarefree germ
    CHECK_THROWS_AS(puiseux_branches(MultiPoly::zero(XY), 8), math_error);
}

TEST_CASE("reject_nonrational mode reports the field escape") {
    auto x = var(XY, "x"), y = var(XY, "y");
    PuiseuxOptions opts;
    opts.reject_nonrational = true;
    CHECK_THROWS_AS(puiseux_branches(y * y - ExactComplex(2) * x * x, 8, opts), math_error);
}
