#include "levikit/unipoly.hpp"
#include "levikit/rng.hpp"

#include <doctest.h>

using namespace levikit;

namespace {

UniPoly upoly(std::vector<long> coefs) {
    std::vector<ExactComplex> c;
    for (long v : coefs) c.emplace_back(v);
    return UniPoly(std::move(c));
}

} // namespace

TEST_CASE("division and gcd over the field") {
    UniPoly f = upoly({-6, 11, -6, 1}); // (x-1)(x-2)(x-3)
    UniPoly g = upoly({2, -3, 1});      // (x-1)(x-2)
    auto [q, r] = f.divmod(g);
    CHECK(r.is_zero());
    CHECK(q == upoly({-3, 1}));
    CHECK(UniPoly::gcd(f, g) == g.monic());
    CHECK(UniPoly::gcd(upoly({1, 1}), upoly({1, 0, 1})).is_constant());
}

TEST_CASE("yun squarefree decomposition") {
    UniPoly f = upoly({1, 1}) * upoly({1, 1}) * upoly({-2, 1}) * upoly({-2, 1}) * upoly({-2, 1}) *
                upoly({5, 1});
    auto dec = f.squarefree_decomposition();
    // multiplicities 1, 2, 3 with factors (x+5), (x+1), (x-2)
    REQUIRE(dec.size() == 3);
    CHECK(dec[0].second == 1);
    CHECK(dec[0].first == upoly({5, 1}));
    CHECK(dec[1].second == 2);
    CHECK(dec[1].first == upoly({1, 1}));
    CHECK(dec[2].second == 3);
    CHECK(dec[2].first == upoly({-2, 1}));
    // product reconstructs (monic)
    UniPoly prod = UniPoly::constant(ExactComplex(1));
    for (const auto& [h, m] : dec)
        for (int k = 0; k < m; ++k) prod = prod * h;
    CHECK(prod == f.monic());
}

TEST_CASE("real root isolation separates and refines") {
    UniPoly f = upoly({6, -7, 0, 1}); // roots 1, 2, -3
    auto roots = isolate_real_roots(f);
    REQUIRE(roots.size() == 3);
    mpq_class w(1, 1000000);
    std::vector<mpq_class> mids;
    for (auto iv : roots) {
        iv = refine_real_root(f, iv, w);
        mids.push_back(iv.mid());
        CHECK(iv.width() <= w);
    }
    CHECK(abs(mids[0] + 3) < mpq_class(1, 1000));
    CHECK(abs(mids[1] - 1) < mpq_class(1, 1000));
    CHECK(abs(mids[2] - 2) < mpq_class(1, 1000));
}

TEST_CASE("complex root isolation certifies all roots") {
    // (x^2+1)(x^2-2): roots +-i, +-sqrt(2)
    UniPoly f = upoly({1, 0, 1}) * upoly({-2, 0, 1});
    auto boxes = isolate_complex_roots(f, 0);
    REQUIRE(boxes.size() == 4);
    int rational_found = 0;
    for (const auto& b : boxes) {
        auto r = rational_root_in_box(f, b);
        if (r) {
            ++rational_found;
            CHECK((*r == ExactComplex::i() || *r == -ExactComplex::i()));
        }
    }
    CHECK(rational_found == 2); // only +-i are Gaussian rational
}

TEST_CASE("root boxes refine below any width") {
    UniPoly f = upoly({-2, 0, 1}); // sqrt(2)
    auto boxes = isolate_complex_roots(f, 0);
    REQUIRE(boxes.size() == 2);
    mpq_class target(1, 1000000000000);
    auto b = refine_root_box(f, boxes[1], target);
    CHECK(b.width() <= target);
    // the enclosed value squares to ~2
    ComplexBox sq = b * b;
    CHECK(sq.re.contains(mpq_class(2)));
}

TEST_CASE("simplest rational reconstruction") {
    CHECK(simplest_rational_in(mpq_class(1, 3), mpq_class(1, 2)) == mpq_class(1, 2));
    CHECK(simplest_rational_in(mpq_class(-1, 4), mpq_class(1, 7)) == 0);
    CHECK(simplest_rational_in(mpq_class(7, 3), mpq_class(8, 3)) == mpq_class(5, 2));
    CHECK(simplest_rational_in(mpq_class(413, 297), mpq_class(414, 297)) == mpq_class(32, 23));
}

TEST_CASE("order at zero") {
    CHECK(upoly({0, 0, 3, 1}).order_at_zero() == 2);
    CHECK(upoly({5}).order_at_zero() == 0);
    CHECK_THROWS_AS(UniPoly().order_at_zero(), math_error);
}
