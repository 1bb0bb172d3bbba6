#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evaset/geom.hpp"
#include "evaset/poly.hpp"
#include "evaset/rng.hpp"

namespace evaset {

// Parameters of the evasiveness notion: a set S of F_q^n is (d,k,r)-evasive
// when every variety of dimension k and degree at most d meets S in fewer
// than r points.  For d = 1 the varieties are the affine k-flats; for d >= 2
// only plane curves (n = 2, k = 1) are supported by the verifier.
struct EvasiveParams {
    std::uint32_t n = 0;  // ambient dimension
    std::uint32_t k = 0;  // variety dimension
    std::uint32_t d = 1;  // variety degree bound
    std::uint32_t r = 1;  // intersection threshold
    std::uint32_t q = 0;  // field order

    void validate() const;
};

// Degrees (d_1, ..., d_k) used by the random-algebraic constructor: each d_i
// is the minimal positive integer whose interpolation space beats the Chow
// dimension, i.e. C(d_i + k + 1 - i, k + 1 - i) > chow_dim(d, k, n).
struct DegreeSchedule {
    std::vector<std::uint32_t> degrees;
    std::uint64_t chow_dimension = 0;
    std::uint64_t degree_product = 0;  // prod d_i
    std::uint64_t r_value = 0;         // d * prod d_i
};

// Result of an exhaustive evasiveness check.  `r` records the threshold the
// verdict was computed against.  The witness (flat for d = 1, curve for
// d >= 2) is present exactly when evasive = false, and then attains
// max_intersection >= r.
struct EvasiveVerdict {
    bool evasive = false;
    std::uint32_t r = 0;
    std::uint64_t max_intersection = 0;
    std::optional<Flat> witness_flat;
    std::optional<MultiPoly> witness_curve;
};

// floor((r - 1) * q^(n-k) / d): the unconditional cardinality cap satisfied
// by every (d,k,r)-evasive subset of F_q^n.
std::uint64_t slice_bound(const EvasiveParams& p);

// max{ d(k+1)(n-k), C(d+k+1, k+1) - 1 + (k+2)(n-k-1) }, clamped at 0; the
// dimension of the parameter space of degree-d, dimension-k subvarieties.
std::uint64_t chow_dim(std::uint32_t d, std::uint32_t k, std::uint32_t n);

// Minimal degrees beating chow_dim(d, k, n), with the induced r value.
DegreeSchedule degree_schedule(std::uint32_t n, std::uint32_t k,
                               std::uint32_t d);

// Degree of the twisted embedding implied by the schedule (= prod d_i).
std::uint64_t twisted_degree_bound(std::uint32_t n, std::uint32_t k,
                                   std::uint32_t d);

// Exhaustive verification.  d = 1 walks every k-flat; d >= 2 (n = 2, k = 1
// only) walks every affine plane curve of degree <= d, one representative
// per scalar class.  `work_cap` bounds the number of (variety, point)
// containment tests; TooLarge beyond it.
EvasiveVerdict is_evasive(const FieldCtx& ctx, const PointSet& S,
                          const EvasiveParams& p,
                          std::uint64_t work_cap = 200000000ULL);

struct ConstructResult {
    PointSet candidate;
    DegreeSchedule schedule;
    EvasiveVerdict verdict;         // against r = schedule.r_value
    EvasiveVerdict verdict_degree;  // against r = d * d_1 + 1 (degree-sound)
    std::uint32_t chart = 0;        // chart the candidate was read from
    std::uint32_t trials_used = 0;
};

// Random-algebraic construction: sample k homogeneous polynomials in n+1
// variables with the schedule degrees, take the common zero locus on the
// affine chart where it is largest (ties to the lowest chart index), and
// verify.  Returns on the first candidate verified against r_value, else the
// last candidate with its falsifying witness.  A sampled polynomial that
// vanishes on all of F_q^(n+1) is rejected and redrawn.  The secondary
// verdict against r = d*d_1 + 1 is always filled in: in the plane no curve
// of degree d_1 can be forced below that threshold, so it is the sound
// success notion at small n.
ConstructResult construct_evasive(const FieldCtx& ctx, const EvasiveParams& p,
                                  RandomStream& rng, std::uint32_t attempts);

// |S| <= slice_bound(p); requires verdict.evasive = true.  A false return
// indicates a bug somewhere: the bound is unconditional.
bool check_slice_consistency(const PointSet& S, const EvasiveParams& p,
                             const EvasiveVerdict& verdict);

}  // namespace evaset
