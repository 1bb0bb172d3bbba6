#include "evaset/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace evaset {

namespace {

void gen_exponents(std::uint32_t nvars, std::uint32_t budget, bool exact,
                   std::vector<std::uint32_t>& prefix,
                   std::vector<std::vector<std::uint32_t>>& out) {
    if (nvars == 0) {
        if (!exact || budget == 0) out.push_back(prefix);
        return;
    }
    if (nvars == 1 && exact) {
        prefix.push_back(budget);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (std::uint32_t a = 0; a <= budget; ++a) {
        prefix.push_back(a);
        gen_exponents(nvars - 1, budget - a, exact, prefix, out);
        prefix.pop_back();
    }
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (static_cast<unsigned __int128>(1) << 63))
            throw Overflow("binomial coefficient exceeds 2^63");
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t n_monomials(std::uint32_t nvars, std::uint32_t degree,
                          bool homogeneous) {
    if (nvars == 0) throw EmptyInput("polynomial needs at least one variable");
    return homogeneous ? binom_u64(degree + nvars - 1, nvars - 1)
                       : binom_u64(degree + nvars, nvars);
}

std::vector<std::vector<std::uint32_t>> monomial_exponents(
    std::uint32_t nvars, std::uint32_t degree, bool homogeneous) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> prefix;
    gen_exponents(nvars, degree, homogeneous, prefix, out);
    return out;
}

bool MultiPoly::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](Fe c) { return c == 0; });
}

MultiPoly sample_poly(const FieldCtx& ctx, std::uint32_t nvars,
                      std::uint32_t degree, bool homogeneous,
                      RandomStream& rng) {
    MultiPoly f;
    f.nvars = nvars;
    f.degree = degree;
    f.homogeneous = homogeneous;
    const std::uint64_t m = n_monomials(nvars, degree, homogeneous);
    f.coeffs.resize(m);
    do {
        for (auto& c : f.coeffs)
            c = static_cast<Fe>(rng.uniform_below(ctx.q()));
    } while (f.is_zero());
    return f;
}

namespace {

// Flattened exponent table (stride nvars), cached per shape; evaluation is
// called once per ambient point in locus enumeration, so rebuilding the table
// each call would dominate everything.
const std::vector<std::uint32_t>& exp_table(std::uint32_t nvars,
                                            std::uint32_t degree,
                                            bool homogeneous) {
    thread_local std::map<std::tuple<std::uint32_t, std::uint32_t, bool>,
                          std::vector<std::uint32_t>>
        cache;
    auto key = std::make_tuple(nvars, degree, homogeneous);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<std::uint32_t> flat;
        for (const auto& e : monomial_exponents(nvars, degree, homogeneous))
            flat.insert(flat.end(), e.begin(), e.end());
        it = cache.emplace(key, std::move(flat)).first;
    }
    return it->second;
}

}  // namespace

Fe evaluate(const FieldCtx& ctx, const MultiPoly& f,
            const std::vector<Fe>& point) {
    if (point.size() != f.nvars)
        throw DimensionMismatch("evaluate: point arity != nvars");
    // Power tables x_i^t, t = 0..degree.
    thread_local std::vector<Fe> pw;
    pw.assign(f.nvars * (f.degree + 1), 0);
    for (std::uint32_t i = 0; i < f.nvars; ++i) {
        pw[i * (f.degree + 1)] = 1;
        for (std::uint32_t t = 1; t <= f.degree; ++t)
            pw[i * (f.degree + 1) + t] =
                ctx.mul(pw[i * (f.degree + 1) + t - 1], point[i]);
    }
    const auto& exps = exp_table(f.nvars, f.degree, f.homogeneous);
    Fe acc = 0;
    for (std::size_t m = 0; m < f.coeffs.size(); ++m) {
        if (f.coeffs[m] == 0) continue;
        Fe term = f.coeffs[m];
        const std::uint32_t* e = exps.data() + m * f.nvars;
        for (std::uint32_t i = 0; i < f.nvars; ++i) {
            if (e[i]) term = ctx.mul(term, pw[i * (f.degree + 1) + e[i]]);
        }
        acc = ctx.add(acc, term);
    }
    return acc;
}

Fe evaluate_chart(const FieldCtx& ctx, const MultiPoly& f, std::uint32_t chart,
                  const std::vector<Fe>& affine_point) {
    if (!f.homogeneous) throw DimensionMismatch("chart evaluation needs a homogeneous polynomial");
    if (affine_point.size() + 1 != f.nvars || chart >= f.nvars)
        throw DimensionMismatch("chart evaluation: arity mismatch");
    std::vector<Fe> full(f.nvars);
    for (std::uint32_t i = 0, j = 0; i < f.nvars; ++i)
        full[i] = (i == chart) ? 1 : affine_point[j++];
    return evaluate(ctx, f, full);
}

namespace {

// Shared sparse-map plumbing for ring operations.
using ExpMap = std::map<std::vector<std::uint32_t>, Fe>;

ExpMap to_map(const MultiPoly& f) {
    ExpMap m;
    const auto exps = monomial_exponents(f.nvars, f.degree, f.homogeneous);
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (f.coeffs[i]) m[exps[i]] = f.coeffs[i];
    return m;
}

MultiPoly from_map(std::uint32_t nvars, std::uint32_t degree, const ExpMap& m) {
    MultiPoly f;
    f.nvars = nvars;
    f.degree = degree;
    f.homogeneous = false;
    const auto exps = monomial_exponents(nvars, degree, false);
    f.coeffs.assign(exps.size(), 0);
    for (std::size_t i = 0; i < exps.size(); ++i) {
        auto it = m.find(exps[i]);
        if (it != m.end()) f.coeffs[i] = it->second;
    }
    return f;
}

}  // namespace

MultiPoly poly_add(const FieldCtx& ctx, const MultiPoly& f,
                   const MultiPoly& g) {
    if (f.nvars != g.nvars) throw DimensionMismatch("poly_add: nvars mismatch");
    ExpMap m = to_map(f);
    for (const auto& [e, c] : to_map(g)) {
        auto it = m.find(e);
        if (it == m.end())
            m[e] = c;
        else
            it->second = ctx.add(it->second, c);
    }
    return from_map(f.nvars, std::max(f.degree, g.degree), m);
}

MultiPoly poly_mul(const FieldCtx& ctx, const MultiPoly& f,
                   const MultiPoly& g) {
    if (f.nvars != g.nvars) throw DimensionMismatch("poly_mul: nvars mismatch");
    ExpMap m;
    for (const auto& [ef, cf] : to_map(f)) {
        for (const auto& [eg, cg] : to_map(g)) {
            std::vector<std::uint32_t> e(f.nvars);
            for (std::uint32_t i = 0; i < f.nvars; ++i) e[i] = ef[i] + eg[i];
            const Fe c = ctx.mul(cf, cg);
            auto it = m.find(e);
            if (it == m.end())
                m[e] = c;
            else
                it->second = ctx.add(it->second, c);
        }
    }
    return from_map(f.nvars, f.degree + g.degree, m);
}

namespace {

PointSet zero_locus_impl(const FieldCtx& ctx,
                         const std::vector<MultiPoly>& fs, std::uint32_t n,
                         std::uint32_t chart, bool use_chart,
                         std::uint64_t cap) {
    if (fs.empty()) throw EmptyInput("zero locus of an empty family");
    const std::uint64_t total = pow_u64(ctx.q(), n);
    if (total > cap) throw TooLarge("zero locus enumeration above cap");
    for (const auto& f : fs) {
        if (use_chart) {
            if (f.nvars != n + 1 || !f.homogeneous)
                throw DimensionMismatch("chart locus needs homogeneous polynomials in n+1 variables");
        } else if (f.nvars != n) {
            throw DimensionMismatch("affine locus needs polynomials in n variables");
        }
    }
    std::vector<PointCode> pts;
    for (PointCode code = 0; code < total; ++code) {
        const std::vector<Fe> pt = decode_point(code, ctx.q(), n);
        bool all_zero = true;
        for (const auto& f : fs) {
            const Fe v = use_chart ? evaluate_chart(ctx, f, chart, pt)
                                   : evaluate(ctx, f, pt);
            if (v != 0) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) pts.push_back(code);
    }
    return PointSet::make(ctx, n, std::move(pts));
}

}  // namespace

PointSet zero_locus_affine(const FieldCtx& ctx,
                           const std::vector<MultiPoly>& fs, std::uint32_t n,
                           std::uint64_t cap) {
    if (fs.empty()) throw EmptyInput("zero locus of an empty family");
    if (fs[0].nvars == n + 1) return zero_locus_impl(ctx, fs, n, 0, true, cap);
    return zero_locus_impl(ctx, fs, n, 0, false, cap);
}

PointSet zero_locus_chart(const FieldCtx& ctx,
                          const std::vector<MultiPoly>& fs, std::uint32_t n,
                          std::uint32_t chart, std::uint64_t cap) {
    return zero_locus_impl(ctx, fs, n, chart, true, cap);
}

bool vanishes_everywhere(const FieldCtx& ctx, const MultiPoly& f,
                         std::uint64_t cap) {
    const std::uint64_t total = pow_u64(ctx.q(), f.nvars);
    if (total > cap) throw TooLarge("vanishing check above cap");
    for (PointCode code = 0; code < total; ++code) {
        if (evaluate(ctx, f, decode_point(code, ctx.q(), f.nvars)) != 0)
            return false;
    }
    return true;
}

std::string poly_to_string(const MultiPoly& f) {
    std::ostringstream os;
    os << f.nvars << ' ' << f.degree << ' ' << (f.homogeneous ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) os << ' ';
        os << f.coeffs[i];
    }
    os << '\n';
    return os.str();
}

MultiPoly poly_from_string(const std::string& text) {
    std::istringstream is(text);
    MultiPoly f;
    int flag = 0;
    if (!(is >> f.nvars >> f.degree >> flag))
        throw ParseError("polynomial: expected 'n_vars degree homogeneous_flag'");
    f.homogeneous = flag != 0;
    const std::uint64_t m = n_monomials(f.nvars, f.degree, f.homogeneous);
    f.coeffs.resize(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        if (!(is >> f.coeffs[i]))
            throw ParseError("polynomial: expected " + std::to_string(m) + " coefficients");
    }
    return f;
}

}  // namespace evaset
