#include "evaset/container.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace evaset {

void ContainerParams::validate() const {
    if (!(tau > 0.0 && tau < 0.5))
        throw InvalidParams("tau must lie in (0, 1/2)");
    if (!(c > 0.0 && c < 1.0)) throw InvalidParams("c must lie in (0, 1)");
}

std::uint64_t ContainerParams::effective_fingerprint_cap(
    std::uint32_t nv, std::uint32_t r) const {
    if (fingerprint_cap) return fingerprint_cap;
    return static_cast<std::uint64_t>(std::ceil(tau * nv)) * r;
}

namespace {

// Mutable scythe state with journaled undo, shared by the whole recursion.
struct Scythe {
    const Hypergraph& H;
    const std::uint64_t target_edges, fcap, max_depth, max_family;
    std::vector<char> alive, in_f;
    std::vector<std::int64_t> deg;       // induced degree among live edges
    std::vector<std::uint16_t> killed;   // dead vertices per edge
    std::vector<std::uint16_t> fcount;   // fingerprint vertices per edge
    std::uint64_t alive_edges;
    std::vector<std::uint32_t> fset;
    bool truncated = false;
    // container -> (fingerprint, induced edge count); lex-min fingerprint wins
    std::map<std::vector<std::uint32_t>,
             std::pair<std::vector<std::uint32_t>, std::uint64_t>>
        out;

    Scythe(const Hypergraph& h, std::uint64_t target, std::uint64_t cap,
           std::uint64_t depth, std::uint64_t fam)
        : H(h),
          target_edges(target),
          fcap(cap),
          max_depth(depth),
          max_family(fam),
          alive(h.nv, 1),
          in_f(h.nv, 0),
          deg(h.nv, 0),
          killed(h.ecount(), 0),
          fcount(h.ecount(), 0),
          alive_edges(h.ecount()) {
        for (std::uint32_t v = 0; v < h.nv; ++v)
            deg[v] = static_cast<std::int64_t>(h.degree(v));
    }

    void delete_vertex(std::uint32_t v, std::vector<std::uint32_t>& journal) {
        alive[v] = 0;
        journal.push_back(v);
        for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t) {
            const std::uint32_t e = H.inc[t];
            if (killed[e]++ == 0) {
                --alive_edges;
                const std::uint32_t* tup = H.edge(e);
                for (std::uint32_t j = 0; j < H.r; ++j) --deg[tup[j]];
            }
        }
    }
    void undo_deletes(std::vector<std::uint32_t>& journal, std::size_t mark) {
        while (journal.size() > mark) {
            const std::uint32_t v = journal.back();
            journal.pop_back();
            for (std::uint64_t t = H.inc_off[v + 1]; t-- > H.inc_off[v];) {
                const std::uint32_t e = H.inc[t];
                if (--killed[e] == 0) {
                    ++alive_edges;
                    const std::uint32_t* tup = H.edge(e);
                    for (std::uint32_t j = 0; j < H.r; ++j) ++deg[tup[j]];
                }
            }
            alive[v] = 1;
        }
    }

    void emit() {
        std::vector<std::uint32_t> cont;
        for (std::uint32_t v = 0; v < H.nv; ++v)
            if (alive[v]) cont.push_back(v);
        std::vector<std::uint32_t> fp = fset;
        std::sort(fp.begin(), fp.end());
        auto it = out.find(cont);
        if (it == out.end()) {
            if (out.size() >= max_family)
                throw TooLarge("container family exceeded its size cap");
            out.emplace(std::move(cont), std::make_pair(std::move(fp), alive_edges));
        } else if (fp < it->second.first) {
            it->second.first = std::move(fp);
        }
    }

    void rec(std::uint64_t depth) {
        // Leaf conditions: shrunk enough, fingerprint full, or nothing left
        // to branch on.
        std::int64_t best = -1;
        std::uint32_t v = 0;
        if (alive_edges > target_edges && fset.size() < fcap) {
            for (std::uint32_t u = 0; u < H.nv; ++u)
                if (alive[u] && !in_f[u] && deg[u] > best) {
                    best = deg[u];
                    v = u;
                }
        }
        if (best <= 0) {  // includes the no-live-non-fingerprint-vertex case
            emit();
            return;
        }
        if (depth >= max_depth) {
            truncated = true;
            emit();
            return;
        }

        // Inclusion branch: v joins the fingerprint; every u completing an
        // edge with fingerprint members is forced out of the container.
        {
            std::vector<std::uint32_t> journal;
            in_f[v] = 1;
            fset.push_back(v);
            std::vector<std::uint32_t> evict;
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t) {
                const std::uint32_t e = H.inc[t];
                if (++fcount[e] == H.r - 1) {
                    const std::uint32_t* tup = H.edge(e);
                    for (std::uint32_t j = 0; j < H.r; ++j)
                        if (!in_f[tup[j]]) evict.push_back(tup[j]);
                }
            }
            for (std::uint32_t u : evict)
                if (alive[u]) delete_vertex(u, journal);
            rec(depth + 1);
            undo_deletes(journal, 0);
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                --fcount[H.inc[t]];
            fset.pop_back();
            in_f[v] = 0;
        }

        // Exclusion branch: v leaves the container.
        {
            std::vector<std::uint32_t> journal;
            delete_vertex(v, journal);
            rec(depth + 1);
            undo_deletes(journal, 0);
        }
    }
};

}  // namespace

ContainerFamily build_containers(const Hypergraph& H,
                                 const ContainerParams& params) {
    params.validate();
    if (H.nv == 0) throw InvalidParams("container build needs a nonempty vertex set");
    if (H.r < 2) throw InvalidParams("container build needs uniformity >= 2");

    const std::uint64_t fcap = params.effective_fingerprint_cap(H.nv, H.r);
    const std::uint64_t target =
        static_cast<std::uint64_t>((1.0 - params.c) * static_cast<double>(H.ecount()));
    const std::uint64_t depth_cap =
        params.max_depth ? params.max_depth : 2ULL * H.nv + 2 * fcap + 16;

    Scythe s(H, target, fcap, depth_cap, params.max_family);
    s.rec(0);

    ContainerFamily fam;
    fam.truncated = s.truncated;
    std::vector<std::pair<std::pair<std::vector<std::uint32_t>,
                                    std::vector<std::uint32_t>>,
                          std::uint64_t>>
        entries;
    entries.reserve(s.out.size());
    for (auto& [cont, val] : s.out)
        entries.push_back({{val.first, cont}, val.second});
    std::sort(entries.begin(), entries.end());
    for (auto& [key, edges] : entries) {
        fam.fingerprints.push_back(std::move(key.first));
        fam.containers.push_back(std::move(key.second));
        fam.induced_edges.push_back(edges);
    }
    fam.stats.count = fam.containers.size();
    std::uint64_t biggest = 0;
    for (std::size_t i = 0; i < fam.containers.size(); ++i) {
        biggest = std::max<std::uint64_t>(biggest, fam.containers[i].size());
        if (H.ecount())
            fam.stats.max_edge_fraction =
                std::max(fam.stats.max_edge_fraction,
                         static_cast<double>(fam.induced_edges[i]) /
                             static_cast<double>(H.ecount()));
    }
    fam.stats.max_log2_size = biggest ? std::log2(static_cast<double>(biggest)) : 0.0;
    return fam;
}

CodegreeReport check_codegree_condition(const Hypergraph& H, double tau,
                                        double c) {
    if (H.r < 2) throw InvalidParams("codegree condition needs uniformity >= 2");
    CodegreeReport rep;
    rep.holds = true;
    const double base =
        H.nv ? c * static_cast<double>(H.ecount()) / static_cast<double>(H.nv) : 0.0;
    double tpow = tau;  // tau^(i-1) starting at i = 2
    for (std::uint32_t i = 2; i <= H.r; ++i) {
        CodegreeMargin m;
        m.i = i;
        m.delta = max_codegree(H, i);
        m.target = base * tpow;
        m.ok = static_cast<double>(m.delta) <= m.target;
        rep.holds = rep.holds && m.ok;
        rep.per_i.push_back(m);
        tpow *= tau;
    }
    return rep;
}

namespace {

using Mask = std::vector<std::uint64_t>;

void mask_and(Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
}
bool mask_any(const Mask& a) {
    for (std::uint64_t w : a)
        if (w) return true;
    return false;
}

// DFS over all independent sets; the mask tracks which containers still hold
// the current set.  An empty mask means an uncovered independent set.
struct CoverSearch {
    const Hypergraph& H;
    const std::vector<Mask>& vmask;  // containers holding each vertex
    std::vector<std::uint16_t> cnt;
    std::vector<std::uint32_t> cur;
    std::optional<std::vector<std::uint32_t>> witness;
    std::uint64_t visited = 0;

    CoverSearch(const Hypergraph& h, const std::vector<Mask>& vm)
        : H(h), vmask(vm), cnt(h.ecount(), 0) {}

    void rec(std::uint32_t start, const Mask& mask) {
        if (witness) return;
        for (std::uint32_t v = start; v < H.nv; ++v) {
            bool legal = true;
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                if (cnt[H.inc[t]] + 1u == H.r) {
                    legal = false;
                    break;
                }
            if (!legal) continue;
            Mask m = mask;
            mask_and(m, vmask[v]);
            cur.push_back(v);
            ++visited;
            if (!mask_any(m)) {
                witness = cur;
                cur.pop_back();
                return;
            }
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                ++cnt[H.inc[t]];
            rec(v + 1, m);
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                --cnt[H.inc[t]];
            cur.pop_back();
            if (witness) return;
        }
    }
};

}  // namespace

ContainerCheck verify_containers(const Hypergraph& H,
                                 const ContainerFamily& fam,
                                 const ContainerParams& params,
                                 const VerifySpec& spec) {
    params.validate();
    ContainerCheck chk;
    const std::size_t nc = fam.containers.size();
    const std::size_t words = (nc + 63) / 64;

    // Per-vertex bitmask of the containers that hold it.
    std::vector<Mask> vmask(H.nv, Mask(words, 0));
    for (std::size_t ci = 0; ci < nc; ++ci)
        for (std::uint32_t v : fam.containers[ci]) {
            if (v >= H.nv) throw DimensionMismatch("container vertex out of range");
            vmask[v][ci / 64] |= 1ULL << (ci % 64);
        }
    Mask full(words, 0);
    for (std::size_t ci = 0; ci < nc; ++ci) full[ci / 64] |= 1ULL << (ci % 64);

    // (a) covering.
    if (nc == 0) {
        chk.covering_ok = false;
        chk.covering_witness = std::vector<std::uint32_t>{};  // the empty set
    } else if (spec.exhaustive) {
        if (H.nv > 24)
            throw TooLarge("exhaustive covering check limited to 24 vertices");
        CoverSearch cs(H, vmask);
        cs.rec(0, full);
        chk.sets_checked = cs.visited + 1;  // + the empty set
        chk.covering_ok = !cs.witness.has_value();
        chk.covering_witness = cs.witness;
    } else {
        RandomStream rng(spec.seed);
        chk.covering_ok = true;
        for (std::uint64_t t = 0; t < spec.samples && chk.covering_ok; ++t) {
            const std::vector<std::uint32_t> I =
                random_maximal_independent_set(H, rng);
            Mask m = full;
            for (std::uint32_t v : I) mask_and(m, vmask[v]);
            ++chk.sets_checked;
            if (!mask_any(m)) {
                chk.covering_ok = false;
                chk.covering_witness = I;
            }
        }
    }

    // (c) shrinkage: exact induced edge recount per container.
    chk.shrinkage_ok = true;
    const double limit = (1.0 - params.c) * static_cast<double>(H.ecount());
    for (std::size_t ci = 0; ci < nc; ++ci) {
        std::vector<char> in(H.nv, 0);
        for (std::uint32_t v : fam.containers[ci]) in[v] = 1;
        std::uint64_t cnt = 0;
        for (std::uint64_t e = 0; e < H.ecount(); ++e) {
            const std::uint32_t* tup = H.edge(e);
            bool all = true;
            for (std::uint32_t j = 0; j < H.r; ++j)
                if (!in[tup[j]]) {
                    all = false;
                    break;
                }
            if (all) ++cnt;
        }
        if (H.ecount())
            chk.max_edge_fraction =
                std::max(chk.max_edge_fraction,
                         static_cast<double>(cnt) / static_cast<double>(H.ecount()));
        if (static_cast<double>(cnt) > limit && !chk.shrinkage_witness) {
            chk.shrinkage_ok = false;
            chk.shrinkage_witness = ci;
        }
    }

    // (b) measured family size vs target.
    chk.log_family = nc ? std::log(static_cast<double>(nc)) : 0.0;
    chk.log_family_target =
        params.tau * static_cast<double>(H.nv) * std::log(1.0 / params.tau) /
        params.c;
    return chk;
}

}  // namespace evaset
