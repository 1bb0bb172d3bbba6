#pragma once

// Trial-based experiment drivers.  Every experiment derives one random
// stream per trial from (seed, trial index) and aggregates results by trial
// index, so reports are byte-identical for any worker count.

#include <cstdint>
#include <functional>
#include <vector>

#include "evaset/cctree.hpp"
#include "evaset/evasive.hpp"
#include "evaset/field.hpp"
#include "evaset/report.hpp"

namespace evaset {

// Runs fn(0..trials-1) on `workers` threads (1 = inline).  Exceptions are
// re-thrown after all workers finish, lowest trial index first.
void run_trials(std::uint64_t trials, std::uint32_t workers,
                const std::function<void(std::uint64_t)>& fn);

// Independence number of Bernoulli(p) subsets of the affine plane under the
// collinear-triple hypergraph, against the moment-curve lower bound and the
// two-per-line upper bound.
struct AlphaParams {
    std::uint32_t q = 7;
    std::vector<double> probs = {0.3, 0.6, 1.0};
    std::uint64_t trials = 20;
    std::uint64_t seed = 1;
    std::uint32_t workers = 1;
    bool exact = true;  // exact (vertex-capped) search; else heuristic only
    std::uint32_t vertex_cap = 150;
};
Report run_alpha(const FieldCtx& ctx, const AlphaParams& p);

// Number of subsets of F_q^n with no n+1 points on a common hyperplane,
// by direct enumeration and optionally by inclusion-exclusion over the
// violating (n+1)-sets.
std::uint64_t count_gp_direct(const FieldCtx& ctx, std::uint32_t n,
                              std::uint64_t node_cap);
std::uint64_t count_gp_oracle(const FieldCtx& ctx, std::uint32_t n,
                              std::uint64_t edge_cap);
struct GpParams {
    std::uint32_t n = 2;
    std::uint64_t node_cap = 50'000'000;
    std::uint64_t oracle_edge_cap = 20;
    bool oracle = false;
};
Report run_count_gp(const FieldCtx& ctx, const GpParams& p);

// Randomized supersaturation hypergraphs on uniform random m-point subsets,
// with their codegree certificates.
struct SupersatRunParams {
    std::uint32_t n = 2, k = 1, r = 3;
    std::uint64_t m = 0;  // 0 -> 2 * theta * q^(n-k)
    double theta = 1.0;
    double c = 0.01;
    std::uint64_t trials = 1, seed = 1;
    std::uint32_t workers = 1;
    std::uint64_t work_cap = 200'000'000;
};
Report run_supersat(const FieldCtx& ctx, const SupersatRunParams& p);

// Repeated randomized constructions of flat-evasive sets with dual
// verification and slice-bound consistency.
struct EvasiveCampaignParams {
    EvasiveParams p;
    std::uint64_t trials = 50, seed = 1;
    std::uint32_t workers = 1;
    std::uint32_t attempts = 8;
};
Report run_evasive_campaign(const FieldCtx& ctx,
                            const EvasiveCampaignParams& cp);

// Report views of tree builds and of the closed-form bounds.
Report tree_report(const std::string& which, const TreeBuildResult& r);
Report run_bounds(const EvasiveParams& p);

}  // namespace evaset
