#include "evaset/geom.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace evaset {

namespace {

std::uint64_t pow_checked(std::uint64_t base, std::uint32_t exp,
                          const char* what) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (r > (1ULL << 62) / (base ? base : 1))
            throw Overflow(std::string(what) + ": q^n exceeds 2^63");
        r *= base;
    }
    return r;
}

std::uint64_t binom3(std::uint64_t t) {
    return t < 3 ? 0 : t * (t - 1) * (t - 2) / 6;
}

// Odometer over `digits` positions with values [0, radix); calls fn for each
// assignment in ascending numeric order (position 0 least significant).
void odometer(std::uint32_t digits, std::uint32_t radix,
              const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::uint32_t> v(digits, 0);
    for (;;) {
        fn(v);
        std::uint32_t i = 0;
        while (i < digits && ++v[i] == radix) v[i++] = 0;
        if (i == digits) return;
    }
}

}  // namespace

PointCode encode_point(const std::vector<Fe>& coords, std::uint32_t q) {
    PointCode code = 0;
    for (std::size_t i = coords.size(); i > 0; --i) {
        if (coords[i - 1] >= q) throw DimensionMismatch("coordinate out of field range");
        code = code * q + coords[i - 1];
    }
    return code;
}

std::vector<Fe> decode_point(PointCode code, std::uint32_t q, std::uint32_t n) {
    std::vector<Fe> coords(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        coords[i] = static_cast<Fe>(code % q);
        code /= q;
    }
    return coords;
}

PointSet PointSet::make(const FieldCtx& ctx, std::uint32_t n,
                        std::vector<PointCode> pts) {
    if (n == 0) throw EmptyInput("ambient dimension must be >= 1");
    const std::uint64_t total = pow_checked(ctx.q(), n, "PointSet");
    for (PointCode c : pts) {
        if (c >= total) throw DimensionMismatch("point code outside F_q^n");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    PointSet s;
    s.p = ctx.p();
    s.e = ctx.e();
    s.q = ctx.q();
    s.n = n;
    s.pts = std::move(pts);
    return s;
}

PointSet PointSet::from_coords(const FieldCtx& ctx, std::uint32_t n,
                               const std::vector<std::vector<Fe>>& coords) {
    std::vector<PointCode> pts;
    pts.reserve(coords.size());
    for (const auto& c : coords) {
        if (c.size() != n) throw DimensionMismatch("point arity != ambient dimension");
        pts.push_back(encode_point(c, ctx.q()));
    }
    return make(ctx, n, std::move(pts));
}

bool PointSet::contains(PointCode c) const {
    return std::binary_search(pts.begin(), pts.end(), c);
}

std::vector<Fe> Flat::key() const {
    std::vector<Fe> key;
    key.reserve(2 + k * n + n);
    key.push_back(k);
    for (const auto& row : basis) key.insert(key.end(), row.begin(), row.end());
    key.insert(key.end(), base.begin(), base.end());
    return key;
}

bool Flat::contains(const FieldCtx& ctx, const std::vector<Fe>& pt) const {
    if (pt.size() != n) throw DimensionMismatch("point arity != flat ambient");
    // Reduce pt - base by the RREF rows; member iff the residue vanishes.
    std::vector<Fe> d(n);
    for (std::uint32_t j = 0; j < n; ++j) d[j] = ctx.sub(pt[j], base[j]);
    for (std::uint32_t i = 0; i < k; ++i) {
        const Fe t = d[pivots[i]];
        if (t == 0) continue;
        for (std::uint32_t j = 0; j < n; ++j)
            d[j] = ctx.sub(d[j], ctx.mul(t, basis[i][j]));
    }
    for (Fe v : d)
        if (v != 0) return false;
    return true;
}

void Flat::for_each_point(const FieldCtx& ctx,
                          const std::function<void(PointCode)>& fn) const {
    const std::uint32_t q = ctx.q();
    pow_checked(q, k, "Flat::for_each_point");
    odometer(k, q, [&](const std::vector<std::uint32_t>& t) {
        std::vector<Fe> pt = base;
        for (std::uint32_t i = 0; i < k; ++i) {
            if (t[i] == 0) continue;
            for (std::uint32_t j = 0; j < n; ++j)
                pt[j] = ctx.add(pt[j], ctx.mul(static_cast<Fe>(t[i]), basis[i][j]));
        }
        fn(encode_point(pt, q));
    });
}

std::pair<std::vector<std::vector<Fe>>, std::vector<std::uint32_t>> rref(
    const FieldCtx& ctx, std::vector<std::vector<Fe>> rows) {
    std::vector<std::uint32_t> pivots;
    if (rows.empty()) return {rows, pivots};
    const std::uint32_t n = static_cast<std::uint32_t>(rows[0].size());
    std::uint32_t r = 0;
    for (std::uint32_t col = 0; col < n && r < rows.size(); ++col) {
        std::uint32_t sel = r;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const Fe scale = ctx.inv(rows[r][col]);
        for (std::uint32_t j = 0; j < n; ++j) rows[r][j] = ctx.mul(rows[r][j], scale);
        for (std::uint32_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const Fe f = rows[i][col];
            for (std::uint32_t j = 0; j < n; ++j)
                rows[i][j] = ctx.sub(rows[i][j], ctx.mul(f, rows[r][j]));
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return {rows, pivots};
}

std::uint32_t rank(const FieldCtx& ctx,
                   const std::vector<std::vector<Fe>>& rows) {
    return static_cast<std::uint32_t>(rref(ctx, rows).first.size());
}

Flat make_flat(const FieldCtx& ctx, const std::vector<Fe>& base,
               const std::vector<std::vector<Fe>>& directions) {
    Flat f;
    f.n = static_cast<std::uint32_t>(base.size());
    auto [rows, pivots] = rref(ctx, directions);
    f.k = static_cast<std::uint32_t>(rows.size());
    f.basis = std::move(rows);
    f.pivots = std::move(pivots);
    // Canonical base point: zero out every pivot coordinate.
    f.base = base;
    for (std::uint32_t i = 0; i < f.k; ++i) {
        const Fe t = f.base[f.pivots[i]];
        if (t == 0) continue;
        for (std::uint32_t j = 0; j < f.n; ++j)
            f.base[j] = ctx.sub(f.base[j], ctx.mul(t, f.basis[i][j]));
    }
    return f;
}

Flat span_points(const FieldCtx& ctx,
                 const std::vector<std::vector<Fe>>& points) {
    if (points.empty()) throw EmptyInput("span of an empty point list");
    std::vector<std::vector<Fe>> dirs;
    dirs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != points[0].size())
            throw DimensionMismatch("span: mixed point arities");
        std::vector<Fe> d(points[0].size());
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] = ctx.sub(points[i][j], points[0][j]);
        dirs.push_back(std::move(d));
    }
    return make_flat(ctx, points[0], dirs);
}

std::uint64_t count_flats(std::uint32_t n, std::uint32_t k, std::uint32_t q) {
    if (k > n) return 0;
    // Gaussian binomial [n k]_q times q^(n-k), saturating.
    const std::uint64_t cap = ~0ULL >> 1;
    unsigned __int128 num = 1, den = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        unsigned __int128 qn = 1, qk = 1;
        for (std::uint32_t j = 0; j < n - i; ++j) {
            qn *= q;
            if (qn > (static_cast<unsigned __int128>(cap) << 16)) return cap;
        }
        for (std::uint32_t j = 0; j < i + 1; ++j) qk *= q;
        num *= qn - 1;
        den *= qk - 1;
        if (num / den > cap) return cap;
        // Keep the fraction reduced enough to avoid overflow: the Gaussian
        // binomial is an integer, so divide through when possible.
        if (num % den == 0) {
            num /= den;
            den = 1;
        }
    }
    unsigned __int128 total = num / den;
    for (std::uint32_t i = 0; i < n - k; ++i) {
        total *= q;
        if (total > cap) return cap;
    }
    return static_cast<std::uint64_t>(total);
}

void for_each_flat(const FieldCtx& ctx, std::uint32_t n, std::uint32_t k,
                   const std::function<void(const Flat&)>& fn,
                   std::uint64_t cap) {
    if (k > n) throw DimensionMismatch("flat dimension exceeds ambient");
    const std::uint64_t total = count_flats(n, k, ctx.q());
    if (total > cap) throw TooLarge("flat enumeration above cap: " + std::to_string(total));
    const std::uint32_t q = ctx.q();

    // Enumerate pivot column sets in ascending combination order.
    std::vector<std::uint32_t> piv(k);
    for (std::uint32_t i = 0; i < k; ++i) piv[i] = i;
    for (;;) {
        std::vector<char> is_pivot(n, 0);
        for (std::uint32_t c : piv) is_pivot[c] = 1;
        // Free basis entries: row i, columns j > piv[i] with j not a pivot.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = piv[i] + 1; j < n; ++j)
                if (!is_pivot[j]) free_pos.emplace_back(i, j);
        std::vector<std::uint32_t> nonpivot;
        for (std::uint32_t j = 0; j < n; ++j)
            if (!is_pivot[j]) nonpivot.push_back(j);

        odometer(static_cast<std::uint32_t>(free_pos.size()), q,
                 [&](const std::vector<std::uint32_t>& fv) {
                     Flat f;
                     f.n = n;
                     f.k = k;
                     f.pivots = piv;
                     f.basis.assign(k, std::vector<Fe>(n, 0));
                     for (std::uint32_t i = 0; i < k; ++i) f.basis[i][piv[i]] = 1;
                     for (std::size_t t = 0; t < free_pos.size(); ++t)
                         f.basis[free_pos[t].first][free_pos[t].second] =
                             static_cast<Fe>(fv[t]);
                     odometer(static_cast<std::uint32_t>(nonpivot.size()), q,
                              [&](const std::vector<std::uint32_t>& bv) {
                                  f.base.assign(n, 0);
                                  for (std::size_t t = 0; t < nonpivot.size(); ++t)
                                      f.base[nonpivot[t]] = static_cast<Fe>(bv[t]);
                                  fn(f);
                              });
                 });

        // Next pivot combination.
        if (k == 0) return;
        std::int64_t i = k - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) return;
        ++piv[i];
        for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j)
            piv[j] = piv[j - 1] + 1;
    }
}

void for_each_flat_through(const FieldCtx& ctx, const Flat& g,
                           const std::function<void(const Flat&)>& fn) {
    const std::uint32_t n = g.n, q = ctx.q();
    const std::uint64_t total = pow_checked(q, n, "for_each_flat_through");
    std::set<std::vector<Fe>> seen;
    for (PointCode wcode = 1; wcode < total; ++wcode) {
        std::vector<Fe> w = decode_point(wcode, q, n);
        std::vector<std::vector<Fe>> dirs = g.basis;
        dirs.push_back(w);
        if (rank(ctx, dirs) != g.k + 1) continue;  // w already in the span
        Flat f = make_flat(ctx, g.base, dirs);
        if (seen.insert(f.key()).second) fn(f);
    }
}

bool collinear(const FieldCtx& ctx, const std::vector<Fe>& a,
               const std::vector<Fe>& b, const std::vector<Fe>& c) {
    if (a == b || a == c || b == c)
        throw DegenerateTriple("collinear: repeated point");
    std::vector<Fe> u(a.size()), v(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        u[j] = ctx.sub(b[j], a[j]);
        v[j] = ctx.sub(c[j], a[j]);
    }
    return rank(ctx, {u, v}) <= 1;
}

std::uint64_t count_collinear_triples(const FieldCtx& ctx, const PointSet& P) {
    if (P.n != 2) throw DimensionMismatch("collinear triple count needs ambient dimension 2");
    if (P.q != ctx.q()) throw DimensionMismatch("point set built over a different field");
    std::uint64_t total = 0;
    for_each_flat(ctx, 2, 1, [&](const Flat& line) {
        std::uint64_t t = 0;
        line.for_each_point(ctx, [&](PointCode c) { t += P.contains(c) ? 1 : 0; });
        total += binom3(t);
    });
    return total;
}

std::uint64_t count_collinear_triples_bruteforce(const FieldCtx& ctx,
                                                 const PointSet& P) {
    if (P.n != 2) throw DimensionMismatch("collinear triple count needs ambient dimension 2");
    const std::size_t m = P.pts.size();
    std::vector<std::vector<Fe>> pts(m);
    for (std::size_t i = 0; i < m; ++i) pts[i] = decode_point(P.pts[i], P.q, P.n);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t l = j + 1; l < m; ++l)
                total += collinear(ctx, pts[i], pts[j], pts[l]) ? 1 : 0;
    return total;
}

double supersat_lower_bound(std::uint64_t m, std::uint32_t q) {
    const double x = (static_cast<double>(m) - 1.0) / (static_cast<double>(q) + 1.0);
    const double raw = (1.0 / 3.0) * static_cast<double>(m) * (q + 1.0) * x * (x - 1.0) / 2.0;
    return raw > 0.0 ? raw : 0.0;
}

PointSet moment_curve(const FieldCtx& ctx, std::uint32_t n) {
    std::vector<PointCode> pts;
    pts.reserve(ctx.q());
    for (Fe x = 0; x < ctx.q(); ++x) {
        std::vector<Fe> coords(n);
        Fe v = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            v = ctx.mul(v, x);
            coords[i] = v;
        }
        pts.push_back(encode_point(coords, ctx.q()));
    }
    return PointSet::make(ctx, n, std::move(pts));
}

IncidenceProfile incidence_profile(const FieldCtx& ctx, const PointSet& P,
                                   std::uint32_t k, std::uint64_t flat_cap) {
    if (P.q != ctx.q()) throw DimensionMismatch("point set built over a different field");
    IncidenceProfile prof;
    std::vector<std::vector<Fe>> pts(P.pts.size());
    for (std::size_t i = 0; i < P.pts.size(); ++i)
        pts[i] = decode_point(P.pts[i], P.q, P.n);
    prof.histogram.assign(P.pts.size() + 1, 0);
    for_each_flat(
        ctx, P.n, k,
        [&](const Flat& f) {
            std::uint64_t t = 0;
            for (const auto& pt : pts) t += f.contains(ctx, pt) ? 1 : 0;
            ++prof.histogram[t];
            if (t > prof.max_count || !prof.argmax) {
                prof.max_count = t;
                prof.argmax = f;
            }
        },
        flat_cap);
    prof.histogram.resize(prof.max_count + 1);
    return prof;
}

PointSet random_subset(const FieldCtx& ctx, std::uint32_t n, double density,
                       RandomStream& rng, std::uint64_t cap) {
    const std::uint64_t total = pow_checked(ctx.q(), n, "random_subset");
    if (total > cap) throw TooLarge("random_subset: ambient above cap");
    std::vector<PointCode> pts;
    for (PointCode c = 0; c < total; ++c)
        if (rng.bernoulli(density)) pts.push_back(c);
    return PointSet::make(ctx, n, std::move(pts));
}

}  // namespace evaset
