#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evaset/hypergraph.hpp"

namespace evaset {

// Knobs of the container construction.  `c` is the shrinkage target: each
// recursive branch keeps splitting until the surviving induced edge count
// drops to (1-c)|E| or the fingerprint cap is reached.
struct ContainerParams {
    double tau = 0.1;
    double c = 0.01;
    std::uint64_t fingerprint_cap = 0;  // 0 -> ceil(tau*|V|)*r
    std::uint64_t max_depth = 0;        // 0 -> auto
    std::uint64_t max_family = 1ULL << 20;

    void validate() const;
    std::uint64_t effective_fingerprint_cap(std::uint32_t nv,
                                            std::uint32_t r) const;
};

struct ContainerStats {
    std::uint64_t count = 0;
    double max_log2_size = 0.0;     // log2 of the largest container
    double max_edge_fraction = 0.0; // max over containers of e(H[C])/|E|
};

// A family of containers with, for each, the fingerprint that generated it.
// Entries are sorted by (fingerprint, container) lexicographically and each
// fingerprint is an independent subset of its container.
struct ContainerFamily {
    std::vector<std::vector<std::uint32_t>> containers;
    std::vector<std::vector<std::uint32_t>> fingerprints;
    std::vector<std::uint64_t> induced_edges;  // e(H[C]) per container
    ContainerStats stats;
    bool truncated = false;  // some branch hit the depth cap
};

// Max-degree fingerprint recursion ("scythe").  At each step the highest
// induced-degree vertex v (ties by index) is branched on: the inclusion
// branch records v in the fingerprint and evicts every vertex that would
// complete an edge with fingerprint members; the exclusion branch deletes v.
// Every independent set follows exactly one branch at each step, so each one
// ends up inside some returned container regardless of parameters.
ContainerFamily build_containers(const Hypergraph& H,
                                 const ContainerParams& params);

struct CodegreeMargin {
    std::uint32_t i = 0;
    std::uint64_t delta = 0;  // Delta_i(H)
    double target = 0.0;      // c * tau^(i-1) * |E| / |V|
    bool ok = false;
};

struct CodegreeReport {
    bool holds = false;
    std::vector<CodegreeMargin> per_i;  // i = 2..r
};

// Does H satisfy Delta_i <= c * tau^(i-1) * |E|/|V| for every 2 <= i <= r?
CodegreeReport check_codegree_condition(const Hypergraph& H, double tau,
                                        double c);

// How to exercise the covering property: exhaustively over every independent
// set (|V| <= 24) or on `samples` random maximal independent sets.
struct VerifySpec {
    bool exhaustive = true;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
};

struct ContainerCheck {
    bool covering_ok = false;   // (a): every independent set inside some C
    bool shrinkage_ok = false;  // (c): e(H[C]) <= (1-c)|E| for every C
    std::optional<std::vector<std::uint32_t>> covering_witness;
    std::optional<std::uint64_t> shrinkage_witness;  // offending container
    double log_family = 0.0;        // ln |family|
    double log_family_target = 0.0; // tau*|V|*ln(1/tau)/c
    double max_edge_fraction = 0.0;
    std::uint64_t sets_checked = 0;
};

// Independent re-verification of a family against H: property (a) by
// independent-set enumeration/sampling, property (c) by exact induced edge
// counts, property (b) reported as measured size vs the target.
ContainerCheck verify_containers(const Hypergraph& H,
                                 const ContainerFamily& fam,
                                 const ContainerParams& params,
                                 const VerifySpec& spec);

}  // namespace evaset
