#include "evaset/field.hpp"

#include <algorithm>
#include <sstream>

namespace evaset {

namespace {

// Polynomials over F_p as coefficient vectors, constant term first, no
// trailing zeros.  Only used for modulus search and slow-path reduction.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g in place (g monic).
Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() >= g.size()) {
        const std::uint64_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) {
            std::uint64_t v = f[shift + i] + static_cast<std::uint64_t>(p) * p;
            v -= lead * g[i] % p;
            f[shift + i] = static_cast<std::uint32_t>(v % p);
        }
        trim(f);
    }
    return f;
}

Poly poly_from_encoding(std::uint64_t enc, std::uint32_t p) {
    Poly f;
    while (enc) {
        f.push_back(static_cast<std::uint32_t>(enc % p));
        enc /= p;
    }
    return f;
}

bool divisible_by_some_monic(const Poly& f, std::uint32_t deg,
                             std::uint32_t p) {
    // Enumerate all monic polynomials of the given degree via their low-part
    // encodings.
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
        Poly g = poly_from_encoding(c, p);
        g.resize(deg + 1, 0);
        g[deg] = 1;
        if (poly_rem(f, g, p).empty()) return true;
    }
    return false;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
        if (divisible_by_some_monic(f, d, p)) return false;
    }
    return true;
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldCtx FieldCtx::make(std::uint32_t p, std::uint32_t e) {
    if (!is_prime_u32(p)) throw NotPrime("field characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw EmptyInput("field extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > (1ULL << 31)) throw Overflow("p^e exceeds 2^31");
    }

    FieldCtx ctx;
    ctx.p_ = p;
    ctx.e_ = e;
    ctx.q_ = static_cast<std::uint32_t>(q);
    if (e == 1) {
        ctx.modulus_enc_ = 0;
        return ctx;
    }

    // Lowest-encoding monic irreducible of degree e: scan low parts upward.
    for (std::uint64_t c = 0; c < q; ++c) {
        Poly f = poly_from_encoding(c, p);
        f.resize(e + 1, 0);
        f[e] = 1;
        if (is_irreducible(f, p)) {
            ctx.modulus_ = f;
            ctx.modulus_enc_ = q + c;
            break;
        }
    }
    ctx.build_tables();
    return ctx;
}

std::string FieldCtx::to_string() const {
    std::ostringstream os;
    os << p_ << ' ' << e_ << ' ' << modulus_enc_;
    return os.str();
}

FieldCtx FieldCtx::parse(const std::string& line) {
    std::istringstream is(line);
    std::uint32_t p = 0, e = 0;
    std::uint64_t m = 0;
    if (!(is >> p >> e >> m)) throw ParseError("field context: expected 'p e modulus_encoding'");
    FieldCtx ctx = make(p, e);
    if (e > 1 && m != ctx.modulus_enc_) {
        throw ParseError("field context: modulus encoding " + std::to_string(m) +
                         " does not match the canonical modulus " +
                         std::to_string(ctx.modulus_enc_));
    }
    return ctx;
}

std::vector<std::uint32_t> FieldCtx::digits(Fe a) const {
    std::vector<std::uint32_t> d(e_);
    for (std::uint32_t i = 0; i < e_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Fe FieldCtx::from_digits(const std::vector<std::uint32_t>& d) const {
    Fe a = 0;
    for (std::size_t i = d.size(); i > 0; --i) a = a * p_ + d[i - 1] % p_;
    return a;
}

Fe FieldCtx::add(Fe a, Fe b) const {
    if (e_ == 1) {
        Fe s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Fe out = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        Fe da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        Fe s = da + db;
        if (s >= p_) s -= p_;
        out += s * scale;
        scale *= p_;
    }
    return out;
}

Fe FieldCtx::neg(Fe a) const {
    if (e_ == 1) return a == 0 ? 0 : q_ - a;
    Fe out = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        Fe da = a % p_;
        a /= p_;
        out += (da == 0 ? 0 : p_ - da) * scale;
        scale *= p_;
    }
    return out;
}

Fe FieldCtx::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe FieldCtx::mul_slow(Fe a, Fe b) const {
    // Schoolbook product of digit vectors followed by reduction.
    std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
    auto da = digits(a), db = digits(b);
    for (std::uint32_t i = 0; i < e_; ++i) {
        if (!da[i]) continue;
        for (std::uint32_t j = 0; j < e_; ++j)
            prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
    }
    for (std::size_t d = prod.size(); d-- > e_;) {
        const std::uint64_t c = prod[d] % p_;
        if (c) {
            // x^d = x^(d-e) * (x^e mod modulus); modulus_[i] are the low
            // coefficients of the monic modulus.
            for (std::uint32_t i = 0; i < e_; ++i) {
                std::uint64_t sub_v = c * modulus_[i] % p_;
                prod[d - e_ + i] += static_cast<std::uint64_t>(p_) - sub_v;
            }
        }
        prod[d] = 0;
    }
    Fe out = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        out += static_cast<Fe>(prod[i] % p_) * scale;
        scale *= p_;
    }
    return out;
}

Fe FieldCtx::mul(Fe a, Fe b) const {
    if (e_ == 1) return static_cast<Fe>(static_cast<std::uint64_t>(a) * b % q_);
    if (!exp_.empty()) {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    return mul_slow(a, b);
}

Fe FieldCtx::pow(Fe a, std::uint64_t n) const {
    Fe r = 1, base = a;
    while (n) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

Fe FieldCtx::inv(Fe a) const {
    if (a == 0) throw EmptyInput("inverse of zero");
    if (!exp_.empty()) {
        std::uint32_t l = log_[a];
        return l == 0 ? 1 : exp_[q_ - 1 - l];
    }
    return pow(a, q_ - 2);
}

void FieldCtx::build_tables() {
    if (e_ == 1 || q_ > 65536) return;
    // Find a multiplicative generator by direct order check (q is tiny).
    for (Fe g = 2; g < q_; ++g) {
        std::vector<Fe> exp(q_ - 1);
        std::vector<Fe> log(q_, 0);
        std::vector<char> seen(q_, 0);
        Fe x = 1;
        bool ok = true;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            if (seen[x]) {
                ok = false;
                break;
            }
            seen[x] = 1;
            exp[i] = x;
            log[x] = i;
            x = mul_slow(x, g);
        }
        if (ok && x == 1) {
            exp_ = std::move(exp);
            log_ = std::move(log);
            return;
        }
    }
    throw Error("no multiplicative generator found (internal)");
}

}  // namespace evaset
