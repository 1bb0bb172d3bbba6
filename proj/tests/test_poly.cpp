#include <cstdint>
#include <vector>

#include "doctest.h"
#include "evaset/poly.hpp"
#include "evaset/rng.hpp"

using namespace evaset;

namespace {

// Slow independent evaluation: expand each monomial by repeated
// multiplication.
Fe eval_slow(const FieldCtx& ctx, const MultiPoly& f,
             const std::vector<Fe>& pt) {
    const auto exps = monomial_exponents(f.nvars, f.degree, f.homogeneous);
    Fe acc = 0;
    for (std::size_t m = 0; m < exps.size(); ++m) {
        Fe term = f.coeffs[m];
        for (std::uint32_t v = 0; v < f.nvars; ++v)
            for (std::uint32_t i = 0; i < exps[m][v]; ++i)
                term = ctx.mul(term, pt[v]);
        acc = ctx.add(acc, term);
    }
    return acc;
}

}  // namespace

TEST_CASE("monomial counts match binomials") {
    CHECK(n_monomials(2, 3, false) == 10);
    CHECK(n_monomials(2, 3, true) == 4);
    CHECK(n_monomials(3, 2, false) == 10);
    CHECK(n_monomials(3, 2, true) == 6);
    CHECK(n_monomials(1, 5, false) == 6);
    for (std::uint32_t n = 1; n <= 4; ++n)
        for (std::uint32_t d = 0; d <= 5; ++d) {
            CHECK(n_monomials(n, d, false) == binom_u64(d + n, n));
            CHECK(monomial_exponents(n, d, false).size() ==
                  n_monomials(n, d, false));
            CHECK(monomial_exponents(n, d, true).size() ==
                  n_monomials(n, d, true));
        }
}

TEST_CASE("monomial order is ascending lex, first variable most significant") {
    const auto exps = monomial_exponents(2, 2, false);
    const std::vector<std::vector<std::uint32_t>> expect = {
        {0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
    CHECK(exps == expect);
    const auto homog = monomial_exponents(2, 2, true);
    const std::vector<std::vector<std::uint32_t>> expect_h = {
        {0, 2}, {1, 1}, {2, 0}};
    CHECK(homog == expect_h);
}

TEST_CASE("fast evaluation agrees with term-by-term expansion") {
    RandomStream rng(42);
    for (std::uint32_t q : {3u, 4u, 7u}) {
        const FieldCtx ctx = FieldCtx::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
        for (std::uint32_t nvars = 1; nvars <= 3; ++nvars)
            for (std::uint32_t deg = 1; deg <= 3; ++deg)
                for (bool homog : {false, true}) {
                    const MultiPoly f = sample_poly(ctx, nvars, deg, homog, rng);
                    for (int t = 0; t < 20; ++t) {
                        std::vector<Fe> pt(nvars);
                        for (Fe& x : pt)
                            x = static_cast<Fe>(rng.uniform_below(q));
                        CHECK(evaluate(ctx, f, pt) == eval_slow(ctx, f, pt));
                    }
                }
    }
}

TEST_CASE("chart evaluation splices the chart coordinate") {
    const FieldCtx ctx = FieldCtx::make(5, 1);
    RandomStream rng(7);
    const MultiPoly f = sample_poly(ctx, 3, 2, true, rng);
    for (std::uint32_t chart = 0; chart < 3; ++chart)
        for (Fe a = 0; a < 5; ++a)
            for (Fe b = 0; b < 5; ++b) {
                std::vector<Fe> full(3);
                full[chart] = 1;
                std::vector<Fe> affine = {a, b};
                std::uint32_t j = 0;
                for (std::uint32_t i = 0; i < 3; ++i)
                    if (i != chart) full[i] = affine[j++];
                CHECK(evaluate_chart(ctx, f, chart, affine) ==
                      evaluate(ctx, f, full));
            }
}

TEST_CASE("polynomial ring operations agree with pointwise arithmetic") {
    const FieldCtx ctx = FieldCtx::make(7, 1);
    RandomStream rng(3);
    const MultiPoly f = sample_poly(ctx, 2, 2, false, rng);
    const MultiPoly g = sample_poly(ctx, 2, 3, false, rng);
    const MultiPoly s = poly_add(ctx, f, g);
    const MultiPoly m = poly_mul(ctx, f, g);
    for (Fe a = 0; a < 7; ++a)
        for (Fe b = 0; b < 7; ++b) {
            const std::vector<Fe> pt = {a, b};
            CHECK(evaluate(ctx, s, pt) ==
                  ctx.add(evaluate(ctx, f, pt), evaluate(ctx, g, pt)));
            CHECK(evaluate(ctx, m, pt) ==
                  ctx.mul(evaluate(ctx, f, pt), evaluate(ctx, g, pt)));
        }
}

TEST_CASE("zero locus by enumeration") {
    const FieldCtx ctx = FieldCtx::make(3, 1);
    // x^2 + y^2 - 1 over F_3: solutions (0,1),(0,2),(1,0),(2,0)
    MultiPoly f;
    f.nvars = 2;
    f.degree = 2;
    f.homogeneous = false;
    f.coeffs.assign(n_monomials(2, 2, false), 0);
    const auto exps = monomial_exponents(2, 2, false);
    for (std::size_t m = 0; m < exps.size(); ++m) {
        if (exps[m] == std::vector<std::uint32_t>{0, 0}) f.coeffs[m] = 2;
        if (exps[m] == std::vector<std::uint32_t>{0, 2}) f.coeffs[m] = 1;
        if (exps[m] == std::vector<std::uint32_t>{2, 0}) f.coeffs[m] = 1;
    }
    const PointSet Z = zero_locus_affine(ctx, {f}, 2);
    CHECK(Z.size() == 4);
    for (PointCode c : Z.pts) {
        const std::vector<Fe> pt = decode_point(c, 3, 2);
        CHECK(evaluate(ctx, f, pt) == 0);
    }
    CHECK_THROWS_AS(zero_locus_affine(ctx, {f}, 2, 3), TooLarge);
}

TEST_CASE("the function x^q - x vanishes everywhere") {
    const FieldCtx ctx = FieldCtx::make(3, 1);
    MultiPoly f;
    f.nvars = 1;
    f.degree = 3;
    f.homogeneous = false;
    f.coeffs.assign(4, 0);  // 1, x, x^2, x^3
    f.coeffs[1] = 2;        // -x
    f.coeffs[3] = 1;        // x^3
    CHECK(vanishes_everywhere(ctx, f));
    f.coeffs[0] = 1;
    CHECK(!vanishes_everywhere(ctx, f));
}

TEST_CASE("sampling is deterministic, nonzero, and shape-correct") {
    const FieldCtx ctx = FieldCtx::make(9 / 3, 2);
    RandomStream a(99), b(99);
    const MultiPoly f = sample_poly(ctx, 2, 3, true, a);
    const MultiPoly g = sample_poly(ctx, 2, 3, true, b);
    CHECK(f.coeffs == g.coeffs);
    CHECK(!f.is_zero());
    CHECK(f.coeffs.size() == n_monomials(2, 3, true));
}

TEST_CASE("text form round-trips") {
    const FieldCtx ctx = FieldCtx::make(5, 1);
    RandomStream rng(1);
    for (bool homog : {false, true}) {
        const MultiPoly f = sample_poly(ctx, 3, 2, homog, rng);
        const MultiPoly g = poly_from_string(poly_to_string(f));
        CHECK(g.nvars == f.nvars);
        CHECK(g.degree == f.degree);
        CHECK(g.homogeneous == f.homogeneous);
        CHECK(g.coeffs == f.coeffs);
    }
    CHECK_THROWS_AS(poly_from_string("not a poly"), ParseError);
}
