#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "evaset/field.hpp"
#include "evaset/rng.hpp"

namespace evaset {

// Points of F_q^n are carried as mixed-radix codes:
//   code = sum_i coords[i] * q^i   (coordinate 0 least significant).
// Codes keep point sets sortable, hashable and bitset-indexable; q^n must fit
// in 63 bits for the ambient to be representable.
using PointCode = std::uint64_t;

PointCode encode_point(const std::vector<Fe>& coords, std::uint32_t q);
std::vector<Fe> decode_point(PointCode code, std::uint32_t q, std::uint32_t n);

// Deduplicated, sorted set of points of a fixed ambient F_q^n.
struct PointSet {
    std::uint32_t p = 0, e = 0, q = 0, n = 0;
    std::vector<PointCode> pts;

    static PointSet make(const FieldCtx& ctx, std::uint32_t n,
                         std::vector<PointCode> pts);
    static PointSet from_coords(const FieldCtx& ctx, std::uint32_t n,
                                const std::vector<std::vector<Fe>>& coords);
    bool contains(PointCode c) const;
    std::size_t size() const { return pts.size(); }
};

// Affine k-flat in canonical form: the basis rows are the reduced row-echelon
// basis of the direction space and the base point is the unique member with
// zeros in every pivot column (equivalently the lexicographically least
// member).  Two flats are equal as point sets iff their canonical forms are
// identical, so `key()` doubles as an equality/order token.
struct Flat {
    std::uint32_t n = 0, k = 0;
    std::vector<std::vector<Fe>> basis;  // k rows of length n
    std::vector<Fe> base;                // length n
    std::vector<std::uint32_t> pivots;   // ascending, length k

    std::vector<Fe> key() const;
    bool contains(const FieldCtx& ctx, const std::vector<Fe>& pt) const;
    void for_each_point(const FieldCtx& ctx,
                        const std::function<void(PointCode)>& fn) const;
};

// Row reduction over F_q; returns the nonzero RREF rows and their pivot
// columns.
std::pair<std::vector<std::vector<Fe>>, std::vector<std::uint32_t>> rref(
    const FieldCtx& ctx, std::vector<std::vector<Fe>> rows);
std::uint32_t rank(const FieldCtx& ctx,
                   const std::vector<std::vector<Fe>>& rows);

// Canonical flat through `base` with the given direction vectors (need not be
// independent; k is the rank).
Flat make_flat(const FieldCtx& ctx, const std::vector<Fe>& base,
               const std::vector<std::vector<Fe>>& directions);

// Affine span of nonempty point list (EmptyInput otherwise).
Flat span_points(const FieldCtx& ctx,
                 const std::vector<std::vector<Fe>>& points);

// Number of affine k-flats of F_q^n: q^(n-k) * [n choose k]_q, saturating at
// 2^63-1 on overflow.
std::uint64_t count_flats(std::uint32_t n, std::uint32_t k, std::uint32_t q);

// Visit every k-flat of F_q^n exactly once, in a fixed canonical order
// (pivot-column sets ascending, then basis free entries, then base points).
// Throws TooLarge when the flat count exceeds `cap`.
void for_each_flat(const FieldCtx& ctx, std::uint32_t n, std::uint32_t k,
                   const std::function<void(const Flat&)>& fn,
                   std::uint64_t cap = 100000000ULL);

// All k-flats of F_q^n containing the given (k-1)-flat.
void for_each_flat_through(const FieldCtx& ctx, const Flat& g,
                           const std::function<void(const Flat&)>& fn);

// Collinearity of three pairwise-distinct points (DegenerateTriple on a
// repeat): rank of the two difference vectors is at most 1.
bool collinear(const FieldCtx& ctx, const std::vector<Fe>& a,
               const std::vector<Fe>& b, const std::vector<Fe>& c);

// Exact number of collinear triples of a planar point set, computed by line
// buckets: sum over the q^2+q lines L of C(|P cap L|, 3).
std::uint64_t count_collinear_triples(const FieldCtx& ctx, const PointSet& P);

// Independent O(|P|^3) recount used as the oracle for the line-bucket method.
std::uint64_t count_collinear_triples_bruteforce(const FieldCtx& ctx,
                                                 const PointSet& P);

// Supersaturation lower bound for collinear triples of an m-point planar set:
// max(0, (1/3) * m * (q+1) * x(x-1)/2) with real x = (m-1)/(q+1).
double supersat_lower_bound(std::uint64_t m, std::uint32_t q);

// The moment curve {(x, x^2, ..., x^n) : x in F_q}.
PointSet moment_curve(const FieldCtx& ctx, std::uint32_t n);

struct IncidenceProfile {
    std::uint64_t max_count = 0;
    std::optional<Flat> argmax;           // first flat attaining max_count
    std::vector<std::uint64_t> histogram; // histogram[t] = #k-flats with t pts
};

// Incidence profile of P against all k-flats of its ambient space.
IncidenceProfile incidence_profile(const FieldCtx& ctx, const PointSet& P,
                                   std::uint32_t k,
                                   std::uint64_t flat_cap = 100000000ULL);

// p-random subset of F_q^n: each point kept independently with probability
// density, drawn in code order from the given stream.
PointSet random_subset(const FieldCtx& ctx, std::uint32_t n, double density,
                       RandomStream& rng, std::uint64_t cap = 100000000ULL);

}  // namespace evaset
