#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "evaset/geom.hpp"
#include "evaset/hypergraph.hpp"

using namespace evaset;

namespace {

Hypergraph random_hypergraph(std::uint32_t nv, std::uint32_t r,
                             std::uint32_t ne, RandomStream& rng) {
    std::vector<std::vector<std::uint32_t>> edges;
    while (edges.size() < ne) {
        std::set<std::uint32_t> e;
        while (e.size() < r)
            e.insert(static_cast<std::uint32_t>(rng.uniform_below(nv)));
        edges.emplace_back(e.begin(), e.end());
    }
    return Hypergraph::make(r, nv, edges);
}

// 2^nv reference solver: maximum size and lexicographically least witness
// among the maximum independent sets.
std::pair<std::uint32_t, std::vector<std::uint32_t>> brute_mis(
    const Hypergraph& H) {
    std::uint32_t best = 0;
    std::vector<std::uint32_t> witness;
    for (std::uint32_t mask = 0; mask < (1u << H.nv); ++mask) {
        std::vector<std::uint32_t> S;
        for (std::uint32_t v = 0; v < H.nv; ++v)
            if (mask >> v & 1) S.push_back(v);
        if (!is_independent(H, S)) continue;
        if (S.size() > best) {
            best = static_cast<std::uint32_t>(S.size());
            witness = S;
        } else if (S.size() == best && S < witness) {
            witness = S;
        }
    }
    return {best, witness};
}

const std::vector<std::vector<std::uint32_t>> kFano = {
    {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
    {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};

}  // namespace

TEST_CASE("construction sorts, deduplicates, and builds incidence") {
    const Hypergraph H =
        Hypergraph::make(3, 6, {{2, 1, 0}, {0, 1, 2}, {3, 4, 5}, {1, 2, 4}});
    CHECK(H.ecount() == 3);
    CHECK(H.has_edge(std::vector<std::uint32_t>{0, 1, 2}.data()));
    CHECK(H.has_edge(std::vector<std::uint32_t>{1, 2, 4}.data()));
    CHECK(!H.has_edge(std::vector<std::uint32_t>{0, 1, 3}.data()));
    CHECK(H.degree(1) == 2);
    CHECK(H.degree(5) == 1);
    std::uint64_t inc_total = 0;
    for (std::uint32_t v = 0; v < H.nv; ++v) inc_total += H.degree(v);
    CHECK(inc_total == H.ecount() * H.r);
    CHECK_THROWS_AS(Hypergraph::make(3, 6, {{0, 0, 1}}), DimensionMismatch);
    CHECK_THROWS_AS(Hypergraph::make(3, 3, {{0, 1, 3}}), DimensionMismatch);
}

TEST_CASE("codegrees match a combinatorial recount") {
    RandomStream rng(11);
    for (int t = 0; t < 10; ++t) {
        const Hypergraph H = random_hypergraph(9, 3, 12, rng);
        for (std::uint32_t i = 1; i <= 3; ++i) {
            // brute force: max over i-subsets of the containment count
            std::uint64_t best = 0;
            std::vector<std::uint32_t> comb(i);
            for (std::uint32_t j = 0; j < i; ++j) comb[j] = j;
            for (;;) {
                std::uint64_t c = 0;
                for (std::uint64_t e = 0; e < H.ecount(); ++e) {
                    const std::uint32_t* ev = H.edge(e);
                    std::uint32_t hit = 0;
                    for (std::uint32_t j = 0; j < H.r; ++j)
                        for (std::uint32_t l = 0; l < i; ++l)
                            if (ev[j] == comb[l]) ++hit;
                    if (hit == i) ++c;
                }
                best = std::max(best, c);
                std::int64_t j = i - 1;
                while (j >= 0 && comb[j] == 9 - i + j) --j;
                if (j < 0) break;
                ++comb[j];
                for (std::uint32_t l = static_cast<std::uint32_t>(j) + 1; l < i;
                     ++l)
                    comb[l] = comb[l - 1] + 1;
            }
            CHECK(max_codegree(H, i) == best);
        }
    }
}

TEST_CASE("independence and clique predicates") {
    const Hypergraph H = Hypergraph::make(3, 7, kFano);
    CHECK(is_independent(H, {0, 1, 2}) == false);  // a Fano line
    CHECK(is_independent(H, {1, 4, 6}) == false);  // another line
    CHECK(is_independent(H, {0, 1, 4}));           // not a line
    CHECK(is_independent(H, {1, 2, 4}));
    CHECK(is_clique(H, {0, 1, 2}));
    CHECK(is_clique(H, {0, 1}));  // below uniformity: vacuous
    CHECK(!is_clique(H, {0, 1, 2, 3}));
}

TEST_CASE("induced subhypergraphs relabel correctly") {
    const Hypergraph H = Hypergraph::make(3, 7, kFano);
    const InducedHypergraph sub = induced(H, {0, 1, 2, 3, 5});
    CHECK(sub.h.nv == 5);
    // surviving lines: {0,1,2} and {1,3,5}
    CHECK(sub.h.ecount() == 2);
    for (std::uint64_t e = 0; e < sub.h.ecount(); ++e) {
        const std::uint32_t* ev = sub.h.edge(e);
        std::vector<std::uint32_t> orig = {sub.orig[ev[0]], sub.orig[ev[1]],
                                           sub.orig[ev[2]]};
        CHECK(H.has_edge(orig.data()));
    }
}

TEST_CASE("exact search matches the exponential reference on random inputs") {
    RandomStream rng(31);
    for (int t = 0; t < 30; ++t) {
        const std::uint32_t r = (t % 2) ? 3 : 2;
        const std::uint32_t nv = 8 + t % 5;
        const Hypergraph H = random_hypergraph(nv, r, 6 + t % 9, rng);
        const auto [bsize, bwit] = brute_mis(H);
        const MisResult res = max_independent_set_exact(H);
        CHECK(res.optimal);
        CHECK(res.size == bsize);
        CHECK(res.witness == bwit);  // lexicographically least witness
    }
}

TEST_CASE("exact search handles edge cases") {
    // no edges: everything is independent
    const Hypergraph empty = Hypergraph::make(3, 5, {});
    const MisResult all = max_independent_set_exact(empty);
    CHECK(all.size == 5);
    CHECK(all.witness == std::vector<std::uint32_t>{0, 1, 2, 3, 4});

    // 1-uniform edges forbid exactly their vertices
    const Hypergraph ones = Hypergraph::make(1, 4, {{1}, {3}});
    const MisResult r1 = max_independent_set_exact(ones);
    CHECK(r1.size == 2);
    CHECK(r1.witness == std::vector<std::uint32_t>{0, 2});

    MisOptions tight;
    tight.vertex_cap = 3;
    CHECK_THROWS_AS(max_independent_set_exact(Hypergraph::make(2, 4, {}), tight),
                    TooLarge);
    MisOptions starve;
    starve.node_budget = 2;
    const Hypergraph F = Hypergraph::make(3, 7, kFano);
    CHECK_THROWS_AS(max_independent_set_exact(F, starve), NonTermination);
}

TEST_CASE("Fano plane independence number is 4") {
    const Hypergraph H = Hypergraph::make(3, 7, kFano);
    const MisResult res = max_independent_set_exact(H);
    CHECK(res.size == 4);
    CHECK(is_independent(H, res.witness));
    const auto [bsize, bwit] = brute_mis(H);
    CHECK(res.size == bsize);
    CHECK(res.witness == bwit);
}

TEST_CASE("heuristics produce valid independent sets below the optimum") {
    RandomStream rng(77);
    for (int t = 0; t < 10; ++t) {
        const Hypergraph H = random_hypergraph(10, 3, 14, rng);
        RandomStream r1(100 + t);
        const MisResult greedy = greedy_independent_set(H, r1);
        CHECK(!greedy.optimal);
        CHECK(is_independent(H, greedy.witness));
        CHECK(greedy.size == greedy.witness.size());
        const MisResult exact = max_independent_set_exact(H);
        CHECK(greedy.size <= exact.size);

        RandomStream r2(200 + t);
        const std::vector<std::uint32_t> rmis =
            random_maximal_independent_set(H, r2);
        CHECK(is_independent(H, rmis));
        // maximality: no vertex can be added
        for (std::uint32_t v = 0; v < H.nv; ++v) {
            if (std::binary_search(rmis.begin(), rmis.end(), v)) continue;
            std::vector<std::uint32_t> bigger = rmis;
            bigger.push_back(v);
            std::sort(bigger.begin(), bigger.end());
            CHECK(!is_independent(H, bigger));
        }
    }
}

TEST_CASE("collinear triple hypergraph matches the line-bucket count") {
    const FieldCtx ctx = FieldCtx::make(5, 1);
    RandomStream rng(3);
    const PointSet P = random_subset(ctx, 2, 0.6, rng);
    const Hypergraph H = collinear_triple_hypergraph(ctx, P);
    CHECK(H.nv == P.size());
    CHECK(H.ecount() == count_collinear_triples(ctx, P));
    for (std::uint64_t e = 0; e < H.ecount(); ++e) {
        const std::uint32_t* ev = H.edge(e);
        CHECK(collinear(ctx, decode_point(P.pts[ev[0]], 5, 2),
                        decode_point(P.pts[ev[1]], 5, 2),
                        decode_point(P.pts[ev[2]], 5, 2)));
    }
}

TEST_CASE("k-flat subset hypergraph matches a rank-based recount") {
    const FieldCtx ctx = FieldCtx::make(3, 1);
    RandomStream rng(9);
    const PointSet P = random_subset(ctx, 3, 0.5, rng);
    const std::uint32_t k = 1, r = 3;
    const Hypergraph H = kflat_subset_hypergraph(ctx, P, k, r, 100000000ULL);
    // oracle: an r-subset is an edge iff its affine span has dimension <= k
    std::uint64_t expect = 0;
    const std::uint64_t m = P.size();
    for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = a + 1; b < m; ++b)
            for (std::uint32_t c = b + 1; c < m; ++c) {
                std::vector<std::vector<Fe>> pts = {
                    decode_point(P.pts[a], 3, 3), decode_point(P.pts[b], 3, 3),
                    decode_point(P.pts[c], 3, 3)};
                if (span_points(ctx, pts).k <= k) {
                    ++expect;
                    std::vector<std::uint32_t> e = {a, b, c};
                    CHECK(H.has_edge(e.data()));
                }
            }
    CHECK(H.ecount() == expect);
}
