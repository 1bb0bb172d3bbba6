#include "evaset/evasive.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace evaset {

void EvasiveParams::validate() const {
    if (k == 0 || k > n) throw DimensionMismatch("need 1 <= k <= n");
    if (d == 0) throw DimensionMismatch("variety degree bound must be >= 1");
    if (r == 0) throw DimensionMismatch("intersection threshold must be >= 1");
    if (q < 2) throw DimensionMismatch("field order must be >= 2");
}

namespace {

unsigned __int128 upow128(std::uint64_t base, std::uint32_t exp) {
    unsigned __int128 acc = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > (unsigned __int128)1 << 100) throw Overflow("power too large");
    }
    return acc;
}

std::uint64_t to_u64(unsigned __int128 v, const char* what) {
    if (v > (unsigned __int128)INT64_MAX) throw Overflow(what);
    return static_cast<std::uint64_t>(v);
}

// Exact t with C(t,2) = c (bucketed pair counts are always triangular).
std::uint64_t pairs_to_points(std::uint64_t c) {
    std::uint64_t t = static_cast<std::uint64_t>(
        (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(c))) / 2.0);
    while (t * (t - 1) / 2 > c) --t;
    while ((t + 1) * t / 2 <= c) ++t;
    return t;
}

}  // namespace

std::uint64_t slice_bound(const EvasiveParams& p) {
    p.validate();
    if (p.r == 1) return 0;
    const unsigned __int128 num =
        (unsigned __int128)(p.r - 1) * upow128(p.q, p.n - p.k);
    return to_u64(num / p.d, "slice bound exceeds 2^63");
}

std::uint64_t chow_dim(std::uint32_t d, std::uint32_t k, std::uint32_t n) {
    if (d == 0) throw DimensionMismatch("degree must be >= 1");
    if (k > n) throw DimensionMismatch("need k <= n");
    const __int128 t1 = (__int128)d * (k + 1) * (n - k);
    const __int128 t2 = (__int128)binom_u64(d + k + 1, k + 1) - 1 +
                        (__int128)(k + 2) * ((__int128)n - k - 1);
    __int128 best = t1 > t2 ? t1 : t2;
    if (best < 0) best = 0;
    return to_u64((unsigned __int128)best, "chow dimension exceeds 2^63");
}

DegreeSchedule degree_schedule(std::uint32_t n, std::uint32_t k,
                               std::uint32_t d) {
    if (k == 0 || k > n) throw DimensionMismatch("need 1 <= k <= n");
    if (d == 0) throw DimensionMismatch("degree must be >= 1");
    DegreeSchedule s;
    s.chow_dimension = chow_dim(d, k, n);
    unsigned __int128 prod = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        const std::uint32_t m = k + 1 - i;  // variables left at stage i
        std::uint64_t di;
        if (m == 1) {
            // C(d_i + 1, 1) = d_i + 1 > chow  <=>  d_i >= chow.
            di = std::max<std::uint64_t>(1, s.chow_dimension);
        } else {
            di = 1;
            while (binom_u64(di + m, m) <= s.chow_dimension) {
                if (++di > 100000000ULL)
                    throw TooLarge("degree schedule search exceeded 1e8");
            }
        }
        if (di > UINT32_MAX) throw Overflow("schedule degree exceeds 2^32");
        s.degrees.push_back(static_cast<std::uint32_t>(di));
        prod *= di;
        if (prod > (unsigned __int128)INT64_MAX)
            throw Overflow("degree product exceeds 2^63");
    }
    s.degree_product = static_cast<std::uint64_t>(prod);
    prod *= d;
    s.r_value = to_u64(prod, "r value exceeds 2^63");
    return s;
}

std::uint64_t twisted_degree_bound(std::uint32_t n, std::uint32_t k,
                                   std::uint32_t d) {
    return degree_schedule(n, k, d).degree_product;
}

namespace {

// d = 1, k = 1: bucket the point pairs by the line they span; a line carrying
// t >= 2 points of S contributes exactly C(t,2) pairs to its bucket.
EvasiveVerdict evasive_lines_by_pairs(const FieldCtx& ctx, const PointSet& S,
                                      const EvasiveParams& p,
                                      std::uint64_t work_cap) {
    EvasiveVerdict v;
    v.r = p.r;
    const std::size_t m = S.size();
    if (m == 0) {
        v.evasive = true;
        return v;
    }
    if (static_cast<std::uint64_t>(m) * (m - 1) / 2 > work_cap)
        throw TooLarge("too many point pairs for line bucketing");
    std::vector<std::vector<Fe>> pts(m);
    for (std::size_t i = 0; i < m; ++i)
        pts[i] = decode_point(S.pts[i], S.q, S.n);

    struct Bucket {
        std::uint64_t pairs = 0;
        std::uint32_t i = 0, j = 0;  // a representative spanning pair
    };
    std::map<std::vector<Fe>, Bucket> buckets;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Flat line = span_points(ctx, {pts[i], pts[j]});
            Bucket& b = buckets[line.key()];
            if (b.pairs == 0) {
                b.i = static_cast<std::uint32_t>(i);
                b.j = static_cast<std::uint32_t>(j);
            }
            ++b.pairs;
        }

    std::uint64_t best_t = 1;  // any line through a single point
    const Bucket* best = nullptr;
    for (const auto& [key, b] : buckets) {
        const std::uint64_t t = pairs_to_points(b.pairs);
        if (t > best_t) {
            best_t = t;
            best = &b;
        }
    }
    v.max_intersection = best_t;
    v.evasive = best_t < p.r;
    if (!v.evasive) {
        if (best) {
            v.witness_flat = span_points(ctx, {pts[best->i], pts[best->j]});
        } else {
            // max = 1 can only fail the threshold when r = 1; any line
            // through the first point attains it.
            std::vector<Fe> e0(S.n, 0);
            e0[0] = 1;
            v.witness_flat = make_flat(ctx, pts[0], {e0});
        }
    }
    return v;
}

EvasiveVerdict evasive_flats_exhaustive(const FieldCtx& ctx, const PointSet& S,
                                        const EvasiveParams& p,
                                        std::uint64_t work_cap) {
    EvasiveVerdict v;
    v.r = p.r;
    const std::size_t m = S.size();
    if (m == 0) {
        v.evasive = true;
        return v;
    }
    const std::uint64_t nflats = count_flats(p.n, p.k, p.q);
    if (nflats > work_cap / std::max<std::uint64_t>(m, 1))
        throw TooLarge("flat enumeration exceeds the work cap");
    std::vector<std::vector<Fe>> pts(m);
    for (std::size_t i = 0; i < m; ++i)
        pts[i] = decode_point(S.pts[i], S.q, S.n);
    std::uint64_t best_t = 0;
    std::optional<Flat> argmax;
    for_each_flat(ctx, p.n, p.k, [&](const Flat& f) {
        std::uint64_t t = 0;
        for (const auto& pt : pts)
            if (f.contains(ctx, pt)) ++t;
        if (t > best_t) {
            best_t = t;
            argmax = f;
        }
    });
    v.max_intersection = best_t;
    v.evasive = best_t < p.r;
    if (!v.evasive) v.witness_flat = argmax;
    return v;
}

// d >= 2, n = 2, k = 1: every affine plane curve of degree <= d, one
// representative per scalar class (leading nonzero coefficient fixed to 1).
EvasiveVerdict evasive_plane_curves(const FieldCtx& ctx, const PointSet& S,
                                    const EvasiveParams& p,
                                    std::uint64_t work_cap) {
    EvasiveVerdict v;
    v.r = p.r;
    const std::size_t m = S.size();
    if (m == 0) {
        v.evasive = true;
        return v;
    }
    const std::uint64_t ncoef = n_monomials(2, p.d, false);
    const unsigned __int128 reps =
        (upow128(p.q, static_cast<std::uint32_t>(ncoef)) - 1) / (p.q - 1);
    if (reps > work_cap / m)
        throw TooLarge("curve enumeration exceeds the work cap");
    std::vector<std::vector<Fe>> pts(m);
    for (std::size_t i = 0; i < m; ++i)
        pts[i] = decode_point(S.pts[i], S.q, S.n);

    MultiPoly f;
    f.nvars = 2;
    f.degree = p.d;
    f.homogeneous = false;
    f.coeffs.assign(ncoef, 0);
    std::uint64_t best_t = 0;
    std::optional<MultiPoly> argmax;
    for (std::uint64_t lead = 0; lead < ncoef; ++lead) {
        std::fill(f.coeffs.begin(), f.coeffs.end(), 0);
        f.coeffs[lead] = 1;
        // Odometer over the coefficients after the leading one.
        for (;;) {
            std::uint64_t t = 0;
            for (const auto& pt : pts)
                if (evaluate(ctx, f, pt) == 0) ++t;
            if (t > best_t) {
                best_t = t;
                argmax = f;
            }
            std::uint64_t pos = lead + 1;
            while (pos < ncoef) {
                if (++f.coeffs[pos] < p.q) break;
                f.coeffs[pos] = 0;
                ++pos;
            }
            if (pos == ncoef) break;
        }
    }
    v.max_intersection = best_t;
    v.evasive = best_t < p.r;
    if (!v.evasive) v.witness_curve = argmax;
    return v;
}

}  // namespace

EvasiveVerdict is_evasive(const FieldCtx& ctx, const PointSet& S,
                          const EvasiveParams& p, std::uint64_t work_cap) {
    p.validate();
    if (S.q != p.q || ctx.q() != p.q)
        throw DimensionMismatch("point set / params / field orders disagree");
    if (S.n != p.n) throw DimensionMismatch("ambient dimension mismatch");
    if (p.d == 1) {
        if (p.k == 1) return evasive_lines_by_pairs(ctx, S, p, work_cap);
        return evasive_flats_exhaustive(ctx, S, p, work_cap);
    }
    if (p.n != 2 || p.k != 1)
        throw Unsupported("degree >= 2 verification only for plane curves");
    return evasive_plane_curves(ctx, S, p, work_cap);
}

ConstructResult construct_evasive(const FieldCtx& ctx, const EvasiveParams& p,
                                  RandomStream& rng, std::uint32_t attempts) {
    p.validate();
    if (ctx.q() != p.q) throw DimensionMismatch("field order mismatch");
    if (attempts == 0) throw ExhaustedAttempts("no construction attempts requested");
    ConstructResult res;
    res.schedule = degree_schedule(p.n, p.k, p.d);
    if (p.q <= res.schedule.r_value)
        throw TooSmall("field order must exceed the schedule's r value");

    const std::uint64_t r_deg =
        static_cast<std::uint64_t>(p.d) * res.schedule.degrees[0] + 1;
    if (res.schedule.r_value > UINT32_MAX || r_deg > UINT32_MAX)
        throw Overflow("verification threshold exceeds 2^32");

    for (std::uint32_t attempt = 1; attempt <= attempts; ++attempt) {
        std::vector<MultiPoly> fs;
        for (std::uint32_t i = 0; i < p.k; ++i) {
            MultiPoly f;
            std::uint32_t redraws = 0;
            do {
                f = sample_poly(ctx, p.n + 1, res.schedule.degrees[i], true, rng);
                if (++redraws > 1000)
                    throw NonTermination("could not sample a non-vanishing polynomial");
            } while (vanishes_everywhere(ctx, f));
            fs.push_back(std::move(f));
        }
        PointSet best;
        std::uint32_t best_chart = 0;
        for (std::uint32_t chart = 0; chart <= p.n; ++chart) {
            PointSet locus = zero_locus_chart(ctx, fs, p.n, chart);
            if (chart == 0 || locus.size() > best.size()) {
                best = std::move(locus);
                best_chart = chart;
            }
        }
        res.candidate = std::move(best);
        res.chart = best_chart;
        res.trials_used = attempt;
        EvasiveParams vp = p;
        vp.r = static_cast<std::uint32_t>(res.schedule.r_value);
        res.verdict = is_evasive(ctx, res.candidate, vp);
        vp.r = static_cast<std::uint32_t>(r_deg);
        res.verdict_degree = is_evasive(ctx, res.candidate, vp);
        if (res.verdict.evasive) return res;
    }
    return res;
}

bool check_slice_consistency(const PointSet& S, const EvasiveParams& p,
                             const EvasiveVerdict& verdict) {
    if (!verdict.evasive)
        throw Error("slice consistency is only defined for verified sets");
    return static_cast<std::uint64_t>(S.size()) <= slice_bound(p);
}

}  // namespace evaset
