#include "evaset/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>

#include "evaset/poly.hpp"  // binom_u64

namespace evaset {

namespace {

// Lexicographic compare of two ascending r-tuples.
int tuple_cmp(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t r) {
    for (std::uint32_t i = 0; i < r; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

Hypergraph Hypergraph::make_flat(std::uint32_t r, std::uint32_t nv,
                                 std::vector<std::uint32_t> flat) {
    if (r == 0) throw EmptyInput("hypergraph uniformity must be >= 1");
    if (flat.size() % r != 0) throw DimensionMismatch("flat edge array not a multiple of r");
    const std::uint64_t m = flat.size() / r;
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint32_t* e = flat.data() + i * r;
        for (std::uint32_t j = 0; j < r; ++j) {
            if (e[j] >= nv) throw DimensionMismatch("edge vertex out of range");
            if (j && e[j] <= e[j - 1])
                throw DimensionMismatch("edge tuple not strictly ascending");
        }
    }

    // Sort + dedup; use packed 64-bit keys when the tuple fits.
    std::uint32_t bits = 1;
    while ((1ULL << bits) < nv) ++bits;
    if (static_cast<std::uint64_t>(bits) * r <= 64 && m > 0) {
        std::vector<std::uint64_t> keys(m);
        for (std::uint64_t i = 0; i < m; ++i) {
            std::uint64_t k = 0;
            const std::uint32_t* e = flat.data() + i * r;
            for (std::uint32_t j = 0; j < r; ++j) k = (k << bits) | e[j];
            keys[i] = k;
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        flat.resize(keys.size() * r);
        const std::uint64_t mask = bits == 64 ? ~0ULL : (1ULL << bits) - 1;
        for (std::uint64_t i = 0; i < keys.size(); ++i) {
            std::uint64_t k = keys[i];
            for (std::uint32_t j = r; j-- > 0;) {
                flat[i * r + j] = static_cast<std::uint32_t>(k & mask);
                k >>= bits;
            }
        }
    } else if (m > 0) {
        std::vector<std::uint64_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::uint64_t a, std::uint64_t b) {
            return tuple_cmp(flat.data() + a * r, flat.data() + b * r, r) < 0;
        });
        std::vector<std::uint32_t> sorted;
        sorted.reserve(flat.size());
        for (std::uint64_t t = 0; t < m; ++t) {
            const std::uint32_t* e = flat.data() + idx[t] * r;
            if (!sorted.empty() &&
                tuple_cmp(sorted.data() + sorted.size() - r, e, r) == 0)
                continue;
            sorted.insert(sorted.end(), e, e + r);
        }
        flat = std::move(sorted);
    }

    Hypergraph H;
    H.r = r;
    H.nv = nv;
    H.edges = std::move(flat);
    const std::uint64_t ec = H.ecount();
    H.inc_off.assign(nv + 1, 0);
    for (std::uint64_t i = 0; i < ec; ++i)
        for (std::uint32_t j = 0; j < r; ++j) ++H.inc_off[H.edge(i)[j] + 1];
    for (std::uint32_t v = 0; v < nv; ++v) H.inc_off[v + 1] += H.inc_off[v];
    H.inc.resize(ec * r);
    std::vector<std::uint64_t> cursor(H.inc_off.begin(), H.inc_off.end() - 1);
    for (std::uint64_t i = 0; i < ec; ++i)
        for (std::uint32_t j = 0; j < r; ++j)
            H.inc[cursor[H.edge(i)[j]]++] = static_cast<std::uint32_t>(i);
    return H;
}

Hypergraph Hypergraph::make(std::uint32_t r, std::uint32_t nv,
                            std::vector<std::vector<std::uint32_t>> edge_list) {
    std::vector<std::uint32_t> flat;
    flat.reserve(edge_list.size() * r);
    for (auto& e : edge_list) {
        if (e.size() != r) throw DimensionMismatch("edge arity != r");
        std::sort(e.begin(), e.end());
        for (std::uint32_t j = 1; j < r; ++j)
            if (e[j] == e[j - 1]) throw DimensionMismatch("edge with repeated vertex");
        flat.insert(flat.end(), e.begin(), e.end());
    }
    return make_flat(r, nv, std::move(flat));
}

bool Hypergraph::has_edge(const std::uint32_t* tuple) const {
    std::uint64_t lo = 0, hi = ecount();
    while (lo < hi) {
        const std::uint64_t mid = (lo + hi) / 2;
        const int c = tuple_cmp(edge(mid), tuple, r);
        if (c == 0) return true;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return false;
}

std::uint64_t max_codegree(const Hypergraph& H, std::uint32_t i) {
    if (i == 0 || i > H.r) throw DimensionMismatch("codegree order must be in [1, r]");
    if (H.ecount() == 0) return 0;
    if (i == 1) {
        std::uint64_t best = 0;
        for (std::uint32_t v = 0; v < H.nv; ++v) best = std::max(best, H.degree(v));
        return best;
    }
    std::uint32_t bits = 1;
    while ((1ULL << bits) < H.nv) ++bits;
    if (static_cast<std::uint64_t>(bits) * i > 64)
        throw TooLarge("codegree subsets do not fit packed keys");
    std::vector<std::uint64_t> keys;
    keys.reserve(H.ecount() * binom_u64(H.r, i));
    std::vector<std::uint32_t> comb(i);
    for (std::uint64_t e = 0; e < H.ecount(); ++e) {
        const std::uint32_t* t = H.edge(e);
        // Walk the C(r, i) ascending index combinations.
        for (std::uint32_t j = 0; j < i; ++j) comb[j] = j;
        for (;;) {
            std::uint64_t k = 0;
            for (std::uint32_t j = 0; j < i; ++j) k = (k << bits) | t[comb[j]];
            keys.push_back(k);
            std::int64_t j = i - 1;
            while (j >= 0 && comb[j] == H.r - i + j) --j;
            if (j < 0) break;
            ++comb[j];
            for (std::uint32_t l = static_cast<std::uint32_t>(j) + 1; l < i; ++l)
                comb[l] = comb[l - 1] + 1;
        }
    }
    std::sort(keys.begin(), keys.end());
    std::uint64_t best = 0, run = 0;
    for (std::size_t t = 0; t < keys.size(); ++t) {
        run = (t && keys[t] == keys[t - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

bool is_independent(const Hypergraph& H, const std::vector<std::uint32_t>& S) {
    if (S.size() < H.r) return true;
    std::vector<char> in(H.nv, 0);
    for (std::uint32_t v : S) {
        if (v >= H.nv) throw DimensionMismatch("vertex out of range");
        in[v] = 1;
    }
    for (std::uint64_t e = 0; e < H.ecount(); ++e) {
        const std::uint32_t* t = H.edge(e);
        bool all = true;
        for (std::uint32_t j = 0; j < H.r; ++j)
            if (!in[t[j]]) {
                all = false;
                break;
            }
        if (all) return false;
    }
    return true;
}

bool is_clique(const Hypergraph& H, const std::vector<std::uint32_t>& S) {
    if (S.size() < H.r) return true;
    std::vector<std::uint32_t> s = S;
    std::sort(s.begin(), s.end());
    for (std::uint32_t v : s)
        if (v >= H.nv) throw DimensionMismatch("vertex out of range");
    if (binom_u64(s.size(), H.r) > 100000000ULL)
        throw TooLarge("clique check with too many r-subsets");
    const std::uint32_t r = H.r, m = static_cast<std::uint32_t>(s.size());
    std::vector<std::uint32_t> comb(r), tuple(r);
    for (std::uint32_t j = 0; j < r; ++j) comb[j] = j;
    for (;;) {
        for (std::uint32_t j = 0; j < r; ++j) tuple[j] = s[comb[j]];
        if (!H.has_edge(tuple.data())) return false;
        std::int64_t j = r - 1;
        while (j >= 0 && comb[j] == m - r + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (std::uint32_t l = static_cast<std::uint32_t>(j) + 1; l < r; ++l)
            comb[l] = comb[l - 1] + 1;
    }
    return true;
}

InducedHypergraph induced(const Hypergraph& H,
                          const std::vector<std::uint32_t>& keep) {
    InducedHypergraph out;
    out.orig = keep;
    std::sort(out.orig.begin(), out.orig.end());
    out.orig.erase(std::unique(out.orig.begin(), out.orig.end()), out.orig.end());
    std::vector<std::int64_t> newid(H.nv, -1);
    for (std::size_t i = 0; i < out.orig.size(); ++i) {
        if (out.orig[i] >= H.nv) throw DimensionMismatch("vertex out of range");
        newid[out.orig[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<std::uint32_t> flat;
    for (std::uint64_t e = 0; e < H.ecount(); ++e) {
        const std::uint32_t* t = H.edge(e);
        bool all = true;
        for (std::uint32_t j = 0; j < H.r; ++j)
            if (newid[t[j]] < 0) {
                all = false;
                break;
            }
        if (!all) continue;
        for (std::uint32_t j = 0; j < H.r; ++j)
            flat.push_back(static_cast<std::uint32_t>(newid[t[j]]));
    }
    out.h = Hypergraph::make_flat(H.r, static_cast<std::uint32_t>(out.orig.size()),
                                  std::move(flat));
    return out;
}

namespace {

// Shared branch-and-bound state for the exact solver.
struct MisSearch {
    static constexpr std::uint32_t kNoBlock = UINT32_MAX;

    const Hypergraph& H;
    std::vector<std::uint32_t> ord;        // branch order
    std::vector<std::uint32_t> block_of;
    std::vector<std::uint32_t> block_cap;  // min(r-1, |B|)
    std::vector<std::uint32_t> avail, used;
    std::vector<std::uint16_t> cnt;        // chosen vertices per edge
    std::vector<std::uint32_t> kill;       // edges at r-1 chosen through v
    std::vector<std::uint32_t> cur;
    std::int64_t slack = 0;
    std::uint32_t best = 0;
    std::vector<std::uint32_t> best_witness;
    std::uint64_t nodes = 0, budget = 0;
    // Link clique covers (3-uniform only): for each vertex f, the link graph
    // {u,w : {f,u,w} is an edge} is covered greedily by cliques.  Once f is
    // chosen, an extension takes at most one vertex per clique of f's cover
    // plus one per vertex outside f's link, which bounds the subtree.
    std::vector<std::uint32_t> link_block;  // nv*nv, kNoBlock = not in link
    std::vector<std::uint64_t> stamp;
    std::uint64_t epoch = 0;
    // Phase 2 (lexicographically least witness at known optimum):
    bool lex_mode = false;
    std::uint32_t target = 0;
    bool found = false;

    explicit MisSearch(const Hypergraph& h) : H(h) {}

    bool include_legal(std::uint32_t v) const { return kill[v] == 0; }
    void set_chosen(std::uint32_t v, int delta) {
        for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t) {
            const std::uint32_t e = H.inc[t];
            if (delta > 0) {
                ++cnt[e];
                if (cnt[e] + 1u == H.r) {
                    const std::uint32_t* ev = H.edge(e);
                    for (std::uint32_t j = 0; j < H.r; ++j) ++kill[ev[j]];
                }
            } else {
                if (cnt[e] + 1u == H.r) {
                    const std::uint32_t* ev = H.edge(e);
                    for (std::uint32_t j = 0; j < H.r; ++j) --kill[ev[j]];
                }
                --cnt[e];
            }
        }
    }
    std::int64_t link_bound(std::size_t idx) {
        std::int64_t lb = INT64_MAX;
        for (std::uint32_t f : cur) {
            const std::uint32_t* row = &link_block[static_cast<std::size_t>(f) * H.nv];
            ++epoch;
            std::int64_t c = 0;
            for (std::size_t i = idx; i < ord.size(); ++i) {
                const std::uint32_t v = ord[i];
                if (kill[v] != 0) continue;
                const std::uint32_t id = row[v];
                if (id == kNoBlock) {
                    ++c;
                } else if (stamp[id] != epoch) {
                    stamp[id] = epoch;
                    ++c;
                }
            }
            lb = std::min(lb, c);
            if (lb == 0) break;
        }
        return lb;
    }
    std::int64_t contrib(std::uint32_t b) const {
        const std::int64_t room = static_cast<std::int64_t>(block_cap[b]) - used[b];
        return std::min<std::int64_t>(room < 0 ? 0 : room, avail[b]);
    }
    void pass_vertex(std::uint32_t b, bool choose, int dir) {
        slack -= contrib(b);
        if (dir > 0) {
            --avail[b];
            if (choose) ++used[b];
        } else {
            ++avail[b];
            if (choose) --used[b];
        }
        slack += contrib(b);
    }

    void dfs(std::size_t idx) {
        if (++nodes > budget) throw NonTermination("independent-set search exceeded its node budget");
        if (lex_mode) {
            if (found) return;
            if (static_cast<std::int64_t>(cur.size()) + slack < target) return;
        } else if (static_cast<std::int64_t>(cur.size()) + slack <= best) {
            return;
        }
        if (!link_block.empty() && !cur.empty()) {
            const std::int64_t lb =
                static_cast<std::int64_t>(cur.size()) + link_bound(idx);
            if (lex_mode ? lb < target : lb <= best) return;
        }
        if (idx == ord.size()) {
            if (lex_mode) {
                if (cur.size() == target) {
                    best_witness = cur;
                    std::sort(best_witness.begin(), best_witness.end());
                    found = true;
                }
                return;
            }
            if (cur.size() > best) {
                best = static_cast<std::uint32_t>(cur.size());
                best_witness = cur;
                std::sort(best_witness.begin(), best_witness.end());
            }
            return;
        }
        const std::uint32_t v = ord[idx];
        const std::uint32_t b = block_of[v];
        if (include_legal(v)) {
            set_chosen(v, +1);
            cur.push_back(v);
            pass_vertex(b, true, +1);
            dfs(idx + 1);
            pass_vertex(b, true, -1);
            cur.pop_back();
            set_chosen(v, -1);
            if (lex_mode && found) return;
        }
        pass_vertex(b, false, +1);
        dfs(idx + 1);
        pass_vertex(b, false, -1);
    }
};

std::vector<std::uint32_t> greedy_maximal(const Hypergraph& H,
                                          const std::vector<std::uint32_t>& order) {
    std::vector<std::uint16_t> cnt(H.ecount(), 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t v : order) {
        bool legal = true;
        for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
            if (cnt[H.inc[t]] + 1u == H.r) {
                legal = false;
                break;
            }
        if (!legal) continue;
        for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t) ++cnt[H.inc[t]];
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::uint32_t> random_maximal_independent_set(const Hypergraph& H,
                                                          RandomStream& rng) {
    std::vector<std::uint32_t> order(H.nv);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    return greedy_maximal(H, order);
}

MisResult greedy_independent_set(const Hypergraph& H, RandomStream& rng,
                                 std::uint32_t restarts) {
    MisResult res;
    for (std::uint32_t t = 0; t < std::max<std::uint32_t>(restarts, 1); ++t) {
        std::vector<std::uint32_t> I = random_maximal_independent_set(H, rng);
        // (1,2)-exchange: drop one vertex, try to add two others.
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t drop = 0; drop < I.size() && !improved; ++drop) {
                std::vector<std::uint32_t> base;
                base.reserve(I.size() - 1);
                for (std::size_t j = 0; j < I.size(); ++j)
                    if (j != drop) base.push_back(I[j]);
                std::vector<std::uint16_t> cnt(H.ecount(), 0);
                for (std::uint32_t v : base)
                    for (std::uint64_t u = H.inc_off[v]; u < H.inc_off[v + 1]; ++u)
                        ++cnt[H.inc[u]];
                std::vector<char> in(H.nv, 0);
                for (std::uint32_t v : base) in[v] = 1;
                std::vector<std::uint32_t> grown = base;
                for (std::uint32_t v = 0; v < H.nv; ++v) {
                    if (in[v]) continue;
                    bool legal = true;
                    for (std::uint64_t u = H.inc_off[v]; u < H.inc_off[v + 1]; ++u)
                        if (cnt[H.inc[u]] + 1u == H.r) {
                            legal = false;
                            break;
                        }
                    if (!legal) continue;
                    for (std::uint64_t u = H.inc_off[v]; u < H.inc_off[v + 1]; ++u)
                        ++cnt[H.inc[u]];
                    in[v] = 1;
                    grown.push_back(v);
                }
                if (grown.size() > I.size()) {
                    std::sort(grown.begin(), grown.end());
                    I = std::move(grown);
                    improved = true;
                }
            }
        }
        if (I.size() > res.size) {
            res.size = static_cast<std::uint32_t>(I.size());
            res.witness = I;
        }
    }
    res.optimal = false;
    return res;
}

MisResult max_independent_set_exact(const Hypergraph& H,
                                    const MisOptions& opts) {
    if (H.nv > opts.vertex_cap)
        throw TooLarge("exact independent-set search above vertex cap " +
                       std::to_string(opts.vertex_cap));
    MisResult res;
    if (H.nv == 0) {
        res.optimal = true;
        return res;
    }

    MisSearch s(H);
    s.budget = opts.node_budget;
    s.cnt.assign(H.ecount(), 0);
    s.kill.assign(H.nv, 0);
    if (H.r == 1) {
        // An edge {u} forbids u outright, so the unique maximum independent
        // set is every vertex that is not an edge.
        for (std::uint64_t e = 0; e < H.ecount(); ++e) ++s.kill[H.edge(e)[0]];
        for (std::uint32_t v = 0; v < H.nv; ++v)
            if (s.kill[v] == 0) res.witness.push_back(v);
        res.size = static_cast<std::uint32_t>(res.witness.size());
        res.optimal = true;
        return res;
    }

    if (H.r == 3) {
        // Greedy link clique covers for the per-chosen-vertex bound.
        const std::size_t words = (H.nv + 63) / 64;
        s.link_block.assign(static_cast<std::size_t>(H.nv) * H.nv,
                            MisSearch::kNoBlock);
        s.stamp.assign(H.nv, 0);
        std::vector<std::uint64_t> adj(words * H.nv);
        std::vector<std::uint64_t> uncov(words);
        for (std::uint32_t f = 0; f < H.nv; ++f) {
            std::fill(adj.begin(), adj.end(), 0);
            std::fill(uncov.begin(), uncov.end(), 0);
            for (std::uint64_t t = H.inc_off[f]; t < H.inc_off[f + 1]; ++t) {
                const std::uint32_t* ev = H.edge(H.inc[t]);
                std::uint32_t o[2];
                std::uint32_t no = 0;
                for (std::uint32_t j = 0; j < 3; ++j)
                    if (ev[j] != f) o[no++] = ev[j];
                adj[static_cast<std::size_t>(o[0]) * words + o[1] / 64] |=
                    1ULL << (o[1] % 64);
                adj[static_cast<std::size_t>(o[1]) * words + o[0] / 64] |=
                    1ULL << (o[0] % 64);
                uncov[o[0] / 64] |= 1ULL << (o[0] % 64);
                uncov[o[1] / 64] |= 1ULL << (o[1] % 64);
            }
            std::uint32_t* row = &s.link_block[static_cast<std::size_t>(f) * H.nv];
            std::uint32_t nb = 0;
            std::vector<std::uint64_t> cand(words);
            for (std::uint32_t u = 0; u < H.nv; ++u) {
                if (!(uncov[u / 64] >> (u % 64) & 1)) continue;
                row[u] = nb;
                uncov[u / 64] &= ~(1ULL << (u % 64));
                for (std::size_t w = 0; w < words; ++w)
                    cand[w] = adj[static_cast<std::size_t>(u) * words + w] & uncov[w];
                for (;;) {
                    std::uint32_t next = H.nv;
                    for (std::size_t w = 0; w < words && next == H.nv; ++w)
                        if (cand[w])
                            next = static_cast<std::uint32_t>(
                                w * 64 + std::countr_zero(cand[w]));
                    if (next >= H.nv) break;
                    row[next] = nb;
                    uncov[next / 64] &= ~(1ULL << (next % 64));
                    for (std::size_t w = 0; w < words; ++w)
                        cand[w] &= adj[static_cast<std::size_t>(next) * words + w] &
                                   uncov[w];
                }
                ++nb;
            }
        }
    }

    // Branch order: descending degree, ties by index.
    s.ord.resize(H.nv);
    std::iota(s.ord.begin(), s.ord.end(), 0);
    std::stable_sort(s.ord.begin(), s.ord.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return H.degree(a) > H.degree(b);
                     });

    // Greedy clique partition (in branch order) for the bound.
    s.block_of.assign(H.nv, 0);
    std::vector<char> covered(H.nv, 0);
    std::uint32_t nblocks = 0;
    std::vector<std::uint32_t> bsize;
    for (std::uint32_t v : s.ord) {
        if (covered[v]) continue;
        std::vector<std::uint32_t> K{v};
        covered[v] = 1;
        for (std::uint32_t u : s.ord) {
            if (covered[u]) continue;
            // K stays a clique iff every (r-1)-subset of K extends to an edge
            // with u; subsets of size < r-1 are vacuous.
            bool joins = true;
            if (K.size() >= H.r - 1) {
                std::vector<std::uint32_t> sk = K;
                std::sort(sk.begin(), sk.end());
                const std::uint32_t m = static_cast<std::uint32_t>(sk.size());
                const std::uint32_t c = H.r - 1;
                std::vector<std::uint32_t> comb(c), tuple(H.r);
                for (std::uint32_t j = 0; j < c; ++j) comb[j] = j;
                for (;;) {
                    for (std::uint32_t j = 0; j < c; ++j) tuple[j] = sk[comb[j]];
                    tuple[c] = u;
                    std::sort(tuple.begin(), tuple.end());
                    if (!H.has_edge(tuple.data())) {
                        joins = false;
                        break;
                    }
                    std::int64_t j = static_cast<std::int64_t>(c) - 1;
                    while (j >= 0 && comb[j] == m - c + j) --j;
                    if (j < 0) break;
                    ++comb[j];
                    for (std::uint32_t l = static_cast<std::uint32_t>(j) + 1; l < c; ++l)
                        comb[l] = comb[l - 1] + 1;
                }
            }
            if (joins) {
                K.push_back(u);
                covered[u] = 1;
            }
        }
        for (std::uint32_t u : K) s.block_of[u] = nblocks;
        bsize.push_back(static_cast<std::uint32_t>(K.size()));
        ++nblocks;
    }
    s.block_cap.resize(nblocks);
    s.avail = bsize;
    s.used.assign(nblocks, 0);
    for (std::uint32_t b = 0; b < nblocks; ++b)
        s.block_cap[b] = std::min<std::uint32_t>(H.r - 1, bsize[b]);
    s.slack = 0;
    for (std::uint32_t b = 0; b < nblocks; ++b) s.slack += s.contrib(b);

    // Deterministic greedy incumbent.
    RandomStream seed_rng(0x5eedba5eULL + H.nv);
    MisResult greedy = greedy_independent_set(H, seed_rng, 8);
    s.best = greedy.size;
    s.best_witness = greedy.witness;

    const std::int64_t slack0 = s.slack;
    s.dfs(0);

    // Second pass in ascending vertex order, include-first: the first
    // optimum found is the lexicographically least witness.
    s.lex_mode = true;
    s.target = s.best;
    s.found = false;
    std::iota(s.ord.begin(), s.ord.end(), 0);
    std::fill(s.cnt.begin(), s.cnt.end(), 0);
    std::fill(s.kill.begin(), s.kill.end(), 0);
    if (H.r == 1)
        for (std::uint64_t e = 0; e < H.ecount(); ++e) ++s.kill[H.edge(e)[0]];
    s.avail = bsize;
    std::fill(s.used.begin(), s.used.end(), 0);
    s.slack = slack0;
    s.cur.clear();
    s.dfs(0);

    res.size = s.best;
    res.witness = s.best_witness;
    res.optimal = true;
    return res;
}

Hypergraph collinear_triple_hypergraph(const FieldCtx& ctx, const PointSet& P) {
    if (P.n != 2) throw DimensionMismatch("collinear hypergraph needs ambient dimension 2");
    if (P.q != ctx.q()) throw DimensionMismatch("point set built over a different field");
    std::vector<std::uint32_t> flat;
    for_each_flat(ctx, 2, 1, [&](const Flat& line) {
        std::vector<std::uint32_t> idx;
        line.for_each_point(ctx, [&](PointCode c) {
            const auto it = std::lower_bound(P.pts.begin(), P.pts.end(), c);
            if (it != P.pts.end() && *it == c)
                idx.push_back(static_cast<std::uint32_t>(it - P.pts.begin()));
        });
        std::sort(idx.begin(), idx.end());
        for (std::size_t a = 0; a + 2 < idx.size(); ++a)
            for (std::size_t b = a + 1; b + 1 < idx.size(); ++b)
                for (std::size_t c = b + 1; c < idx.size(); ++c) {
                    flat.push_back(idx[a]);
                    flat.push_back(idx[b]);
                    flat.push_back(idx[c]);
                }
    });
    return Hypergraph::make_flat(3, static_cast<std::uint32_t>(P.pts.size()),
                                 std::move(flat));
}

Hypergraph kflat_subset_hypergraph(const FieldCtx& ctx, const PointSet& P,
                                   std::uint32_t k, std::uint32_t r,
                                   std::uint64_t flat_cap) {
    if (P.q != ctx.q()) throw DimensionMismatch("point set built over a different field");
    if (k >= P.n) throw DimensionMismatch("k must be below the ambient dimension");
    std::vector<std::uint32_t> flat;
    std::vector<std::vector<Fe>> coords(P.pts.size());
    for (std::size_t i = 0; i < P.pts.size(); ++i)
        coords[i] = decode_point(P.pts[i], P.q, P.n);
    for_each_flat(
        ctx, P.n, k,
        [&](const Flat& f) {
            std::vector<std::uint32_t> idx;
            for (std::size_t i = 0; i < coords.size(); ++i)
                if (f.contains(ctx, coords[i]))
                    idx.push_back(static_cast<std::uint32_t>(i));
            if (idx.size() < r) return;
            std::vector<std::uint32_t> comb(r);
            for (std::uint32_t j = 0; j < r; ++j) comb[j] = j;
            const std::uint32_t m = static_cast<std::uint32_t>(idx.size());
            for (;;) {
                for (std::uint32_t j = 0; j < r; ++j) flat.push_back(idx[comb[j]]);
                std::int64_t j = r - 1;
                while (j >= 0 && comb[j] == m - r + j) --j;
                if (j < 0) break;
                ++comb[j];
                for (std::uint32_t l = static_cast<std::uint32_t>(j) + 1; l < r; ++l)
                    comb[l] = comb[l - 1] + 1;
            }
        },
        flat_cap);
    return Hypergraph::make_flat(r, static_cast<std::uint32_t>(P.pts.size()),
                                 std::move(flat));
}

}  // namespace evaset
