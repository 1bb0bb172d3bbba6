#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evaset/container.hpp"
#include "evaset/geom.hpp"

namespace evaset {

// One node of a container-clique tree.  The label list is (C0, C1, ..., Cl):
// C0 is the node's container; every later label is a clique of the
// underlying hypergraph.  Children repeat the parent's clique labels
// (inherited) before their own appended ones.  `case_tag` records how the
// node came to exist: "root", "deletion" (single child of a rich-deletion
// step), "container" (one child per container of the container step) or
// "forced_peel" (guarded fallback, see the builders).
struct CCNode {
    std::uint64_t id = 0;
    std::int64_t parent = -1;
    std::string case_tag = "root";
    std::vector<std::uint32_t> c0;
    std::vector<std::vector<std::uint32_t>> cliques;
    std::vector<std::uint64_t> children;
};

struct CCTree {
    std::uint32_t r = 3;   // uniformity of the hypergraph the labels live in
    std::uint32_t nv = 0;  // vertex count of that hypergraph
    std::vector<CCNode> nodes;  // nodes[i].id == i; node 0 is the root
};

// Size statistics of a tree: nu = leaf count, chi = max |C0| over leaves,
// kappa = max clique-label size, lambda = max clique-label count, and the
// log2 of the independent-set certificate
//   aleph <= nu * C(kappa, r)^lambda * 2^(chi + r*lambda).
struct TreeStats {
    std::uint64_t nu = 0, chi = 0, kappa = 0, lambda = 0, height = 0;
    double aleph_log2 = 0.0;
};

TreeStats tree_stats(const CCTree& T, std::uint32_t r);

struct TreeCheck {
    bool structure_ok = false;  // ids, parents, child lists, label ranges
    bool cliques_ok = false;    // every C_i (i >= 1) a clique of H
    bool covering_ok = false;   // every independent set inside a leaf union
    std::optional<std::pair<std::uint64_t, std::size_t>> clique_witness;
    std::optional<std::vector<std::uint32_t>> covering_witness;
    std::string structure_error;
    std::uint64_t sets_checked = 0;

    bool ok() const { return structure_ok && cliques_ok && covering_ok; }
};

// Independent certification of a tree against its hypergraph: structural
// well-formedness, exact clique checks for every label, and the covering
// property over all independent sets (exhaustive, |V| <= 24) or over sampled
// random maximal independent sets.
TreeCheck verify_cctree(const CCTree& T, const Hypergraph& H,
                        const VerifySpec& spec);

// Per-operation log record of a tree builder.
struct NodeOpLog {
    std::uint64_t node = 0;
    std::string case_tag;
    std::uint64_t c0_size = 0;           // |C0| when the node was processed
    std::uint64_t c_after = 0;           // |C| when the deletion loop stopped
    std::uint64_t cliques_appended = 0;
    std::uint64_t edges_before = 0;      // induced edges (container case)
    std::uint64_t edges_after = 0;       // max edges over emitted containers
    std::uint64_t children = 0;
};

struct TreeBuildResult {
    CCTree tree;
    TreeStats stats;
    std::vector<NodeOpLog> log;
    std::uint64_t deletion_ops = 0, container_ops = 0, peel_ops = 0;
};

// Knobs of the collinear-triple tree builder over F_q^2.  A node with
// |C0| >= (1+eps)*q is processed as follows: while a rich line exists
// (|C cap L| >= |C0| / q^rich_exponent), delete the largest such
// intersection and append it as a clique, stopping early once
// |C| < max(|C0|/2, (1+eps)*q) (single "deletion" child).  Otherwise apply
// the container step on H[C] with tau = c_prime*sqrt(q)/|C| (one child per
// container).  Container applications are budgeted: when the budget is
// spent, the family would exceed family_cap, H[C] is edgeless, or the step
// makes no progress, the builder instead peels the largest line
// intersection as an appended clique ("forced_peel"), which preserves the
// covering property unconditionally.
struct CollinearTreeParams {
    double eps = 0.5;
    double c_prime = 2.0;
    double c = 0.01;
    double rich_exponent = 0.5;
    std::uint64_t op_cap = 20000;
    std::uint64_t container_budget = 8;
    std::uint64_t family_cap = 12;
};

TreeBuildResult build_collinear_cctree(const FieldCtx& ctx,
                                       const CollinearTreeParams& p);

// Parameters of the randomized (k,r)-set supersaturation hypergraph.
struct SupersatParams {
    std::uint32_t k = 1, r = 3;
    double theta = 1.0;
    double epsilon = 0.0;          // 0 -> 1/(2r)
    double c = 0.01;
    double sparse_fraction = 0.0;  // 0 -> 1/(2*r^k); dense fallback below it
    std::uint64_t work_cap = 200000000ULL;

    void validate() const;
    double effective_epsilon() const;
};

struct DeltaMargin {
    std::uint32_t i = 0;
    std::uint64_t delta = 0;
    double target = 0.0;
    bool ok = false;
};

// Codegree certificate of a realized hypergraph: Delta_1 against
// theta*|E|/|V| and Delta_i (i >= 2) against c * tau^(i-1) * |E|/|V| with
// tau = theta*q^(n-k) / (|P| * q^epsilon).
struct DeltaCertificate {
    std::vector<DeltaMargin> margins;  // i = 1..r
    double tau = 0.0;
    double theta = 0.0;
    double theta_prime = 0.0;  // smallest theta' satisfying the Delta_1 bound
    std::uint64_t clamped = 0;  // inclusion probabilities clamped at 1
    std::uint64_t gp_count = 0; // number of k-sets in general position
    bool dense_fallback = false;
    bool holds = false;
};

// Randomized supersaturation hypergraph on the points of P: for every
// general-position k-set K and every k-flat F through its span G_K with
// m_{K,F} = |F cap (P minus G_K)| >= (1/3)|P|/q^(n-k), each (r-k)-subset S
// of F cap (P minus G_K) becomes the edge K cup S with probability
// ((|P|/q^(n-k)) / m_{K,F})^(r-k-1), clamped at 1.  Candidates are visited
// in canonical order with one uniform draw each, so the result is a pure
// function of (P, params, stream state).  Preconditions: |P| >= theta *
// q^(n-k) (TooSmall) and no k-flat holding more than 2|P|/sqrt(q) points
// (RichFlatPresent).  When fewer than sparse_fraction * |P|^k k-sets are in
// general position, the deterministic dense family of all (k,r)-sets is
// used instead (flagged in the certificate).
std::pair<Hypergraph, DeltaCertificate> supersat_hypergraph(
    const FieldCtx& ctx, const PointSet& P, const SupersatParams& sp,
    RandomStream& rng);

// Knobs of the (k,r)-set tree builder over F_q^n.  Same skeleton as the
// collinear builder: nodes with |C0| >= 2*theta*q^(n-k) are processed;
// rich k-flats (|C cap F| >= |C0| / q^rich_exponent) are deleted until
// |C| < |C0|/2 or none is left; the container step runs on the
// supersaturation hypergraph of C with the tau above.  Failed supersat
// draws are retried with a fresh derived stream; guards fall back to
// peeling the largest flat intersection.
struct KrsetTreeParams {
    std::uint32_t n = 2, k = 1, r = 3;
    double theta = 1.0;
    double c = 0.01;
    double rich_exponent = 0.5;
    std::uint64_t op_cap = 20000;
    std::uint64_t container_budget = 8;
    std::uint64_t family_cap = 12;
    std::uint64_t seed = 1;  // master seed for per-node streams
    std::uint64_t work_cap = 200000000ULL;
};

TreeBuildResult build_krset_cctree(const FieldCtx& ctx,
                                   const KrsetTreeParams& p);

}  // namespace evaset
