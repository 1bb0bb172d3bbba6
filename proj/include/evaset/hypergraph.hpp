#pragma once

#include <cstdint>
#include <vector>

#include "evaset/geom.hpp"
#include "evaset/rng.hpp"

namespace evaset {

// Immutable r-uniform hypergraph on vertices 0..nv-1.  Edges are stored as
// ascending r-tuples in one flat array, lexicographically sorted and
// deduplicated; incidence is CSR.
struct Hypergraph {
    std::uint32_t r = 0;
    std::uint32_t nv = 0;
    std::vector<std::uint32_t> edges;    // ecount()*r entries
    std::vector<std::uint64_t> inc_off;  // nv+1 offsets into inc
    std::vector<std::uint32_t> inc;      // edge ids per vertex

    static Hypergraph make(std::uint32_t r, std::uint32_t nv,
                           std::vector<std::vector<std::uint32_t>> edge_list);
    // Faster path: flat tuple array, each tuple already ascending.
    static Hypergraph make_flat(std::uint32_t r, std::uint32_t nv,
                                std::vector<std::uint32_t> flat);

    std::uint64_t ecount() const { return r ? edges.size() / r : 0; }
    const std::uint32_t* edge(std::uint64_t i) const { return edges.data() + i * r; }
    std::uint64_t degree(std::uint32_t v) const { return inc_off[v + 1] - inc_off[v]; }
    bool has_edge(const std::uint32_t* tuple) const;  // ascending r-tuple
};

// Maximum i-codegree Delta_i: the largest number of edges containing a common
// i-subset (1 <= i <= r).  Computed by walking each edge's C(r,i) subsets, so
// the cost is |E|*C(r,i), never n^i.
std::uint64_t max_codegree(const Hypergraph& H, std::uint32_t i);

// S contains no edge / every r-subset of S is an edge.  Both are vacuously
// true when |S| < r.
bool is_independent(const Hypergraph& H, const std::vector<std::uint32_t>& S);
bool is_clique(const Hypergraph& H, const std::vector<std::uint32_t>& S);

struct InducedHypergraph {
    Hypergraph h;
    std::vector<std::uint32_t> orig;  // new index -> original vertex
};
InducedHypergraph induced(const Hypergraph& H,
                          const std::vector<std::uint32_t>& keep);

struct MisResult {
    std::uint32_t size = 0;
    std::vector<std::uint32_t> witness;  // ascending; lexicographically least
    bool optimal = false;
};

struct MisOptions {
    std::uint32_t vertex_cap = 80;               // TooLarge beyond this
    std::uint64_t node_budget = 1ULL << 62;      // NonTermination beyond this
};

// Exact maximum independent set by branch-and-bound: vertices in descending
// degree order (ties by index), include-branch first, pruning by a greedy
// clique-partition bound (each block contributes at most r-1) seeded with a
// deterministic greedy incumbent.
MisResult max_independent_set_exact(const Hypergraph& H,
                                    const MisOptions& opts = {});

// Heuristic: randomized greedy maximal sets plus (1,2)-exchange improvement.
// Lower bound only; never claimed optimal.
MisResult greedy_independent_set(const Hypergraph& H, RandomStream& rng,
                                 std::uint32_t restarts = 8);

// Uniformly ordered greedy maximal independent set (random permutation).
std::vector<std::uint32_t> random_maximal_independent_set(const Hypergraph& H,
                                                          RandomStream& rng);

// Bridges from planar/affine geometry: vertices are indices into P.pts.
Hypergraph collinear_triple_hypergraph(const FieldCtx& ctx, const PointSet& P);

// All r-subsets of P lying inside some k-flat ("(k,r)-sets").
Hypergraph kflat_subset_hypergraph(const FieldCtx& ctx, const PointSet& P,
                                   std::uint32_t k, std::uint32_t r,
                                   std::uint64_t flat_cap = 100000000ULL);

}  // namespace evaset
