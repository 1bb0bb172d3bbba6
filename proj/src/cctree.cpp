#include "evaset/cctree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "evaset/poly.hpp"  // binom_u64

namespace evaset {

namespace {

std::uint64_t upow_u64(std::uint64_t base, std::uint32_t exp) {
    unsigned __int128 acc = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > (unsigned __int128)INT64_MAX)
            throw Overflow("power exceeds 2^63");
    }
    return static_cast<std::uint64_t>(acc);
}

double log2_binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0.0;  // C(n,k) = 0 -> treated as 1 in the bound
    return (std::lgamma(static_cast<double>(n) + 1.0) -
            std::lgamma(static_cast<double>(k) + 1.0) -
            std::lgamma(static_cast<double>(n - k) + 1.0)) /
           std::log(2.0);
}

}  // namespace

TreeStats tree_stats(const CCTree& T, std::uint32_t r) {
    TreeStats s;
    if (T.nodes.empty()) return s;
    std::vector<std::uint64_t> depth(T.nodes.size(), 0);
    for (const CCNode& x : T.nodes) {
        if (x.parent >= 0)
            depth[x.id] = depth[static_cast<std::uint64_t>(x.parent)] + 1;
        s.height = std::max(s.height, depth[x.id]);
        s.lambda = std::max<std::uint64_t>(s.lambda, x.cliques.size());
        for (const auto& K : x.cliques)
            s.kappa = std::max<std::uint64_t>(s.kappa, K.size());
        if (x.children.empty()) {
            ++s.nu;
            s.chi = std::max<std::uint64_t>(s.chi, x.c0.size());
        }
    }
    s.aleph_log2 = std::log2(static_cast<double>(s.nu)) +
                   static_cast<double>(s.lambda) * log2_binom(s.kappa, r) +
                   static_cast<double>(s.chi + static_cast<std::uint64_t>(r) * s.lambda);
    return s;
}

namespace {

using Mask = std::vector<std::uint64_t>;

bool is_sorted_unique(const std::vector<std::uint32_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) return false;
    return true;
}

}  // namespace

TreeCheck verify_cctree(const CCTree& T, const Hypergraph& H,
                        const VerifySpec& spec) {
    TreeCheck chk;

    // Property 1: structural well-formedness.
    auto fail = [&](const std::string& why) {
        chk.structure_ok = false;
        chk.structure_error = why;
    };
    chk.structure_ok = true;
    if (T.nodes.empty()) fail("tree has no nodes");
    if (T.nv != H.nv || T.r != H.r)
        fail("tree and hypergraph shapes disagree");
    std::vector<std::vector<std::uint64_t>> kids(T.nodes.size());
    for (std::size_t i = 0; chk.structure_ok && i < T.nodes.size(); ++i) {
        const CCNode& x = T.nodes[i];
        if (x.id != i) fail("node ids are not dense");
        if (i == 0 && x.parent != -1) fail("node 0 must be the root");
        if (i > 0) {
            if (x.parent < 0 || static_cast<std::uint64_t>(x.parent) >= i)
                fail("parents must precede children");
            else
                kids[static_cast<std::uint64_t>(x.parent)].push_back(i);
        }
        if (!is_sorted_unique(x.c0)) fail("C0 label not sorted-unique");
        for (std::uint32_t v : x.c0)
            if (v >= T.nv) fail("C0 vertex out of range");
        for (const auto& K : x.cliques) {
            if (!is_sorted_unique(K)) fail("clique label not sorted-unique");
            for (std::uint32_t v : K)
                if (v >= T.nv) fail("clique vertex out of range");
        }
    }
    for (std::size_t i = 0; chk.structure_ok && i < T.nodes.size(); ++i)
        if (T.nodes[i].children != kids[i]) fail("child lists inconsistent");
    if (!chk.structure_ok) return chk;

    // Property 2: every C_i (i >= 1) is a clique of H.  Inherited labels
    // repeat down the tree, so memoize.
    chk.cliques_ok = true;
    std::set<std::vector<std::uint32_t>> checked;
    for (const CCNode& x : T.nodes) {
        for (std::size_t li = 0; li < x.cliques.size(); ++li) {
            if (!checked.insert(x.cliques[li]).second) continue;
            if (!is_clique(H, x.cliques[li])) {
                chk.cliques_ok = false;
                chk.clique_witness = {x.id, li};
                break;
            }
        }
        if (!chk.cliques_ok) break;
    }

    // Property 3: every independent set lies in some leaf's label union.
    std::vector<std::uint64_t> leaves;
    for (const CCNode& x : T.nodes)
        if (x.children.empty()) leaves.push_back(x.id);
    const std::size_t words = (H.nv + 63) / 64;
    std::vector<Mask> unions(leaves.size(), Mask(words, 0));
    for (std::size_t li = 0; li < leaves.size(); ++li) {
        const CCNode& x = T.nodes[leaves[li]];
        for (std::uint32_t v : x.c0) unions[li][v / 64] |= 1ULL << (v % 64);
        for (const auto& K : x.cliques)
            for (std::uint32_t v : K) unions[li][v / 64] |= 1ULL << (v % 64);
    }

    auto covered = [&](const std::vector<std::uint32_t>& I) {
        for (const Mask& u : unions) {
            bool inside = true;
            for (std::uint32_t v : I)
                if (!(u[v / 64] >> (v % 64) & 1)) {
                    inside = false;
                    break;
                }
            if (inside) return true;
        }
        return false;
    };

    chk.covering_ok = true;
    if (spec.exhaustive) {
        if (H.nv > 24)
            throw TooLarge("exhaustive covering check limited to 24 vertices");
        // Masks over leaves per vertex; DFS over independent sets.
        const std::size_t lwords = (leaves.size() + 63) / 64;
        std::vector<Mask> vmask(H.nv, Mask(lwords, 0));
        for (std::size_t li = 0; li < leaves.size(); ++li)
            for (std::uint32_t v = 0; v < H.nv; ++v)
                if (unions[li][v / 64] >> (v % 64) & 1)
                    vmask[v][li / 64] |= 1ULL << (li % 64);
        Mask full(lwords, 0);
        for (std::size_t li = 0; li < leaves.size(); ++li)
            full[li / 64] |= 1ULL << (li % 64);

        std::vector<std::uint16_t> cnt(H.ecount(), 0);
        std::vector<std::uint32_t> cur;
        std::function<void(std::uint32_t, const Mask&)> rec =
            [&](std::uint32_t start, const Mask& mask) {
                if (chk.covering_witness) return;
                for (std::uint32_t v = start; v < H.nv; ++v) {
                    bool legal = true;
                    for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                        if (cnt[H.inc[t]] + 1u == H.r) {
                            legal = false;
                            break;
                        }
                    if (!legal) continue;
                    Mask m = mask;
                    for (std::size_t w = 0; w < lwords; ++w) m[w] &= vmask[v][w];
                    cur.push_back(v);
                    ++chk.sets_checked;
                    bool any = false;
                    for (std::uint64_t w : m) any = any || w != 0;
                    if (!any) {
                        chk.covering_witness = cur;
                        cur.pop_back();
                        return;
                    }
                    for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                        ++cnt[H.inc[t]];
                    rec(v + 1, m);
                    for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                        --cnt[H.inc[t]];
                    cur.pop_back();
                    if (chk.covering_witness) return;
                }
            };
        if (leaves.empty()) {
            chk.covering_ok = false;
            chk.covering_witness = std::vector<std::uint32_t>{};
        } else {
            rec(0, full);
            ++chk.sets_checked;  // the empty set, covered by any leaf
            chk.covering_ok = !chk.covering_witness.has_value();
        }
    } else {
        RandomStream rng(spec.seed);
        for (std::uint64_t t = 0; t < spec.samples; ++t) {
            const std::vector<std::uint32_t> I =
                random_maximal_independent_set(H, rng);
            ++chk.sets_checked;
            if (!covered(I)) {
                chk.covering_ok = false;
                chk.covering_witness = I;
                break;
            }
        }
    }
    return chk;
}

void SupersatParams::validate() const {
    if (k == 0 || r <= k) throw InvalidParams("need r > k >= 1");
    if (theta < 1.0) throw InvalidParams("theta must be >= 1");
    if (epsilon != 0.0 &&
        std::abs(epsilon - 1.0 / (2.0 * r)) > 1e-12)
        throw InvalidParams("epsilon must equal 1/(2r)");
    if (!(c > 0.0 && c < 1.0)) throw InvalidParams("c must lie in (0,1)");
    if (sparse_fraction < 0.0 || sparse_fraction >= 1.0)
        throw InvalidParams("sparse_fraction must lie in [0,1)");
}

double SupersatParams::effective_epsilon() const {
    return epsilon != 0.0 ? epsilon : 1.0 / (2.0 * r);
}

std::pair<Hypergraph, DeltaCertificate> supersat_hypergraph(
    const FieldCtx& ctx, const PointSet& P, const SupersatParams& sp,
    RandomStream& rng) {
    sp.validate();
    if (P.q != ctx.q()) throw DimensionMismatch("point set over a different field");
    if (sp.k >= P.n) throw DimensionMismatch("need k < ambient dimension");
    const std::uint32_t q = P.q, n = P.n, k = sp.k, r = sp.r;
    const std::uint64_t m = P.size();
    const std::uint64_t qnk = upow_u64(q, n - k);

    DeltaCertificate cert;
    cert.theta = sp.theta;

    if (static_cast<double>(m) < sp.theta * static_cast<double>(qnk))
        throw TooSmall("point set below theta * q^(n-k)");

    const std::uint64_t nflats = count_flats(n, k, q);
    if (m == 0 || nflats > sp.work_cap / m)
        throw TooLarge("flat scan exceeds the work cap");

    std::vector<std::vector<Fe>> pts(m);
    for (std::uint64_t i = 0; i < m; ++i)
        pts[i] = decode_point(P.pts[i], q, n);

    // Rich-flat precondition, and the flat membership lists reused below.
    std::vector<std::vector<std::uint32_t>> flat_members;
    flat_members.reserve(nflats);
    const double rich_limit = 2.0 * static_cast<double>(m) / std::sqrt(static_cast<double>(q));
    {
        std::int64_t rich_at = -1;
        std::uint64_t rich_count = 0;
        for_each_flat(ctx, n, k, [&](const Flat& f) {
            std::vector<std::uint32_t> mem;
            for (std::uint64_t i = 0; i < m; ++i)
                if (f.contains(ctx, pts[i]))
                    mem.push_back(static_cast<std::uint32_t>(i));
            if (rich_at < 0 && static_cast<double>(mem.size()) > rich_limit) {
                rich_at = static_cast<std::int64_t>(flat_members.size());
                rich_count = mem.size();
            }
            flat_members.push_back(std::move(mem));
        });
        if (rich_at >= 0)
            throw RichFlatPresent(
                "flat #" + std::to_string(rich_at) + " holds " +
                std::to_string(rich_count) + " points, above 2|P|/sqrt(q) = " +
                std::to_string(rich_limit));
    }

    // General-position k-sets.
    if (binom_u64(m, k) > sp.work_cap)
        throw TooLarge("too many k-subsets for the general-position scan");
    std::vector<std::vector<std::uint32_t>> gsets;
    {
        std::vector<std::uint32_t> comb(k);
        for (std::uint32_t j = 0; j < k; ++j) comb[j] = j;
        if (m >= k) {
            for (;;) {
                bool general = true;
                if (k >= 2) {
                    std::vector<std::vector<Fe>> sub;
                    for (std::uint32_t j = 0; j < k; ++j) sub.push_back(pts[comb[j]]);
                    general = span_points(ctx, sub).k == k - 1;
                }
                if (general) gsets.push_back(comb);
                std::int64_t j = k - 1;
                while (j >= 0 && comb[j] == m - k + static_cast<std::uint64_t>(j)) --j;
                if (j < 0) break;
                ++comb[j];
                for (std::uint32_t l = static_cast<std::uint32_t>(j) + 1; l < k; ++l)
                    comb[l] = comb[l - 1] + 1;
            }
        }
    }
    cert.gp_count = gsets.size();

    const double frac = sp.sparse_fraction != 0.0
                            ? sp.sparse_fraction
                            : 1.0 / (2.0 * std::pow(static_cast<double>(r),
                                                    static_cast<double>(k)));
    const double mk = std::pow(static_cast<double>(m), static_cast<double>(k));

    Hypergraph H;
    if (static_cast<double>(gsets.size()) < frac * mk) {
        // Dense fallback: all (k,r)-sets, deterministically.
        cert.dense_fallback = true;
        H = kflat_subset_hypergraph(ctx, P, k, r, sp.work_cap);
    } else {
        const double density = static_cast<double>(m) / static_cast<double>(qnk);
        const double member_limit = density / 3.0;
        std::vector<std::uint32_t> edges;
        std::vector<char> in_gk(m, 0);
        for (const auto& K : gsets) {
            std::vector<std::vector<Fe>> kpts;
            for (std::uint32_t i : K) kpts.push_back(pts[i]);
            const Flat gk = span_points(ctx, kpts);
            for (std::uint64_t i = 0; i < m; ++i)
                in_gk[i] = gk.contains(ctx, pts[i]) ? 1 : 0;
            for_each_flat_through(ctx, gk, [&](const Flat& F) {
                std::vector<std::uint32_t> avail;
                for (std::uint64_t i = 0; i < m; ++i)
                    if (!in_gk[i] && F.contains(ctx, pts[i]))
                        avail.push_back(static_cast<std::uint32_t>(i));
                const std::uint64_t mkf = avail.size();
                if (static_cast<double>(mkf) < member_limit) return;
                double p = std::pow(density / static_cast<double>(mkf),
                                    static_cast<double>(r - k - 1));
                if (p > 1.0) {
                    p = 1.0;
                    ++cert.clamped;
                }
                const std::uint32_t pick = r - k;
                if (mkf < pick) return;
                std::vector<std::uint32_t> comb(pick);
                for (std::uint32_t j = 0; j < pick; ++j) comb[j] = j;
                for (;;) {
                    if (rng.uniform01() < p) {
                        std::vector<std::uint32_t> e(K.begin(), K.end());
                        for (std::uint32_t j = 0; j < pick; ++j)
                            e.push_back(avail[comb[j]]);
                        std::sort(e.begin(), e.end());
                        edges.insert(edges.end(), e.begin(), e.end());
                    }
                    std::int64_t j = pick - 1;
                    while (j >= 0 && comb[j] == mkf - pick + static_cast<std::uint64_t>(j))
                        --j;
                    if (j < 0) break;
                    ++comb[j];
                    for (std::uint32_t l = static_cast<std::uint32_t>(j) + 1; l < pick; ++l)
                        comb[l] = comb[l - 1] + 1;
                }
            });
        }
        H = Hypergraph::make_flat(r, static_cast<std::uint32_t>(m),
                                  std::move(edges));
    }

    // Certificate.
    const double eps = sp.effective_epsilon();
    cert.tau = sp.theta * static_cast<double>(qnk) /
               (static_cast<double>(m) * std::pow(static_cast<double>(q), eps));
    const double ev = H.nv ? static_cast<double>(H.ecount()) / H.nv : 0.0;
    cert.holds = true;
    for (std::uint32_t i = 1; i <= r; ++i) {
        DeltaMargin dm;
        dm.i = i;
        dm.delta = max_codegree(H, i);
        dm.target = i == 1 ? sp.theta * ev
                           : sp.c * std::pow(cert.tau, static_cast<double>(i - 1)) * ev;
        dm.ok = static_cast<double>(dm.delta) <= dm.target;
        cert.holds = cert.holds && dm.ok;
        cert.margins.push_back(dm);
    }
    cert.theta_prime =
        H.ecount() ? static_cast<double>(cert.margins[0].delta) / ev : 0.0;
    return {std::move(H), cert};
}

namespace {

// Flat -> sorted member codes, and point code -> incident flats, for the
// ambient F_q^n.  Vertex ids coincide with point codes.
struct FlatTable {
    std::vector<std::vector<std::uint32_t>> members;      // per flat
    std::vector<std::vector<std::uint32_t>> point_flats;  // per point code
};

FlatTable build_flat_table(const FieldCtx& ctx, std::uint32_t n,
                           std::uint32_t k, std::uint64_t space) {
    FlatTable t;
    t.point_flats.assign(space, {});
    for_each_flat(ctx, n, k, [&](const Flat& f) {
        std::vector<std::uint32_t> mem;
        f.for_each_point(ctx, [&](PointCode c) {
            mem.push_back(static_cast<std::uint32_t>(c));
        });
        std::sort(mem.begin(), mem.end());
        const std::uint32_t fi = static_cast<std::uint32_t>(t.members.size());
        for (std::uint32_t c : mem) t.point_flats[c].push_back(fi);
        t.members.push_back(std::move(mem));
    });
    return t;
}

// Largest |C cap flat|; ties to the lowest flat index.
std::pair<std::uint64_t, std::uint32_t> max_flat_intersection(
    const FlatTable& t, const std::vector<std::uint32_t>& C) {
    std::vector<std::uint32_t> cnt(t.members.size(), 0);
    for (std::uint32_t v : C)
        for (std::uint32_t fi : t.point_flats[v]) ++cnt[fi];
    std::uint64_t best = 0;
    std::uint32_t arg = 0;
    for (std::uint32_t fi = 0; fi < cnt.size(); ++fi)
        if (cnt[fi] > best) {
            best = cnt[fi];
            arg = fi;
        }
    return {best, arg};
}

std::vector<std::uint32_t> intersect_sorted(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

std::vector<std::uint32_t> subtract_sorted(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
    return out;
}

// Shared tree-growing machinery: both builders differ only in the
// processing threshold, the deletion-loop floor, and the container step.
struct TreeGrower {
    CCTree tree;
    std::vector<NodeOpLog> log;
    std::deque<std::uint64_t> queue;
    std::uint64_t deletion_ops = 0, container_ops = 0, peel_ops = 0;

    std::uint64_t add_node(std::int64_t parent, const std::string& tag,
                           std::vector<std::uint32_t> c0,
                           std::vector<std::vector<std::uint32_t>> cliques,
                           double process_threshold) {
        CCNode x;
        x.id = tree.nodes.size();
        x.parent = parent;
        x.case_tag = tag;
        x.c0 = std::move(c0);
        x.cliques = std::move(cliques);
        if (parent >= 0)
            tree.nodes[static_cast<std::uint64_t>(parent)].children.push_back(x.id);
        const bool process =
            static_cast<double>(x.c0.size()) >= process_threshold;
        tree.nodes.push_back(std::move(x));
        if (process) queue.push_back(tree.nodes.back().id);
        return tree.nodes.back().id;
    }
};

}  // namespace

TreeBuildResult build_collinear_cctree(const FieldCtx& ctx,
                                       const CollinearTreeParams& p) {
    const std::uint32_t q = ctx.q();
    if (q < 9) throw InvalidParams("collinear tree needs q >= 9");
    if (!(p.eps > 0.0)) throw InvalidParams("eps must be positive");
    const std::uint64_t space = upow_u64(q, 2);
    if (space > (1ULL << 31)) throw TooLarge("plane too large to enumerate");

    std::vector<PointCode> all(space);
    for (std::uint64_t i = 0; i < space; ++i) all[i] = i;
    const PointSet plane = PointSet::make(ctx, 2, all);
    const Hypergraph Hfull = collinear_triple_hypergraph(ctx, plane);
    const FlatTable lines = build_flat_table(ctx, 2, 1, space);

    TreeGrower g;
    g.tree.r = 3;
    g.tree.nv = static_cast<std::uint32_t>(space);
    const double process_at = (1.0 + p.eps) * q;
    const double richness_div = std::pow(static_cast<double>(q), p.rich_exponent);

    std::vector<std::uint32_t> full(space);
    for (std::uint64_t i = 0; i < space; ++i)
        full[i] = static_cast<std::uint32_t>(i);
    g.add_node(-1, "root", std::move(full), {}, process_at);

    std::uint64_t ops = 0;
    std::uint64_t budget_left = p.container_budget;
    while (!g.queue.empty()) {
        if (++ops > p.op_cap)
            throw NonTermination(
                "collinear tree exceeded " + std::to_string(p.op_cap) +
                " node operations; " + std::to_string(g.queue.size()) +
                " nodes pending, " + std::to_string(g.tree.nodes.size()) +
                " nodes built");
        const std::uint64_t xid = g.queue.front();
        g.queue.pop_front();

        const std::vector<std::uint32_t> c0 = g.tree.nodes[xid].c0;
        const std::vector<std::vector<std::uint32_t>> inherited =
            g.tree.nodes[xid].cliques;
        std::vector<std::uint32_t> C = c0;
        std::vector<std::vector<std::uint32_t>> ks;
        const double rich_at = static_cast<double>(c0.size()) / richness_div;
        const double floor_size =
            std::max(static_cast<double>(c0.size()) / 2.0, process_at);

        NodeOpLog entry;
        entry.node = xid;
        entry.c0_size = c0.size();

        bool deletion_exit = false;
        for (;;) {
            if (static_cast<double>(C.size()) < floor_size) {
                deletion_exit = true;
                break;
            }
            const auto [best, fi] = max_flat_intersection(lines, C);
            if (static_cast<double>(best) < rich_at) break;  // no rich line
            std::vector<std::uint32_t> K = intersect_sorted(C, lines.members[fi]);
            C = subtract_sorted(C, K);
            ks.push_back(std::move(K));
        }
        entry.c_after = C.size();
        entry.cliques_appended = ks.size();

        auto child_cliques = [&]() {
            std::vector<std::vector<std::uint32_t>> out = inherited;
            out.insert(out.end(), ks.begin(), ks.end());
            return out;
        };

        if (deletion_exit) {
            ++g.deletion_ops;
            entry.case_tag = "deletion";
            entry.children = 1;
            g.add_node(static_cast<std::int64_t>(xid), "deletion", C,
                       child_cliques(), process_at);
            g.log.push_back(std::move(entry));
            continue;
        }

        // Container step, budget and progress guarded.
        bool placed = false;
        if (budget_left > 0) {
            const InducedHypergraph sub = induced(Hfull, C);
            entry.edges_before = sub.h.ecount();
            if (sub.h.ecount() > 0) {
                --budget_left;
                ContainerParams cp;
                cp.tau = std::min(p.c_prime * std::sqrt(static_cast<double>(q)) /
                                      static_cast<double>(C.size()),
                                  0.49);
                cp.c = p.c;
                cp.max_family = p.family_cap;
                try {
                    const ContainerFamily fam = build_containers(sub.h, cp);
                    bool progress = !fam.containers.empty() && !fam.truncated;
                    for (const auto& cont : fam.containers)
                        progress = progress && cont.size() < C.size();
                    if (progress) {
                        ++g.container_ops;
                        entry.case_tag = "container";
                        entry.children = fam.containers.size();
                        for (std::size_t ci = 0; ci < fam.containers.size(); ++ci) {
                            std::vector<std::uint32_t> child;
                            for (std::uint32_t v : fam.containers[ci])
                                child.push_back(sub.orig[v]);
                            entry.edges_after = std::max(entry.edges_after,
                                                         fam.induced_edges[ci]);
                            g.add_node(static_cast<std::int64_t>(xid), "container",
                                       std::move(child), child_cliques(),
                                       process_at);
                        }
                        placed = true;
                    }
                } catch (const TooLarge&) {
                    // family blew past the cap; fall through to the peel
                }
            }
        }
        if (!placed) {
            ++g.peel_ops;
            const auto [best, fi] = max_flat_intersection(lines, C);
            (void)best;
            std::vector<std::uint32_t> K = intersect_sorted(C, lines.members[fi]);
            std::vector<std::uint32_t> rest = subtract_sorted(C, K);
            auto cl = child_cliques();
            cl.push_back(std::move(K));
            entry.case_tag = "forced_peel";
            entry.children = 1;
            g.add_node(static_cast<std::int64_t>(xid), "forced_peel",
                       std::move(rest), std::move(cl), process_at);
        }
        g.log.push_back(std::move(entry));
    }

    TreeBuildResult res;
    res.tree = std::move(g.tree);
    res.stats = tree_stats(res.tree, 3);
    res.log = std::move(g.log);
    res.deletion_ops = g.deletion_ops;
    res.container_ops = g.container_ops;
    res.peel_ops = g.peel_ops;
    return res;
}

TreeBuildResult build_krset_cctree(const FieldCtx& ctx,
                                   const KrsetTreeParams& p) {
    const std::uint32_t q = ctx.q();
    if (p.k == 0 || p.r <= p.k) throw InvalidParams("need r > k >= 1");
    if (p.k >= p.n) throw InvalidParams("need k < n");
    if (p.theta < 1.0) throw InvalidParams("theta must be >= 1");
    const std::uint64_t space = upow_u64(q, p.n);
    if (space > (1ULL << 22)) throw TooLarge("ambient space too large");

    const FlatTable flats = build_flat_table(ctx, p.n, p.k, space);
    const std::uint64_t qnk = upow_u64(q, p.n - p.k);

    TreeGrower g;
    g.tree.r = p.r;
    g.tree.nv = static_cast<std::uint32_t>(space);
    const double process_at = 2.0 * p.theta * static_cast<double>(qnk);
    const double richness_div = std::pow(static_cast<double>(q), p.rich_exponent);

    std::vector<std::uint32_t> full(space);
    for (std::uint64_t i = 0; i < space; ++i)
        full[i] = static_cast<std::uint32_t>(i);
    g.add_node(-1, "root", std::move(full), {}, process_at);

    std::uint64_t ops = 0;
    std::uint64_t budget_left = p.container_budget;
    while (!g.queue.empty()) {
        if (++ops > p.op_cap)
            throw NonTermination(
                "(k,r) tree exceeded " + std::to_string(p.op_cap) +
                " node operations; " + std::to_string(g.queue.size()) +
                " nodes pending, " + std::to_string(g.tree.nodes.size()) +
                " nodes built");
        const std::uint64_t xid = g.queue.front();
        g.queue.pop_front();

        const std::vector<std::uint32_t> c0 = g.tree.nodes[xid].c0;
        const std::vector<std::vector<std::uint32_t>> inherited =
            g.tree.nodes[xid].cliques;
        std::vector<std::uint32_t> C = c0;
        std::vector<std::vector<std::uint32_t>> ks;
        const double rich_at = static_cast<double>(c0.size()) / richness_div;
        const double floor_size = static_cast<double>(c0.size()) / 2.0;

        NodeOpLog entry;
        entry.node = xid;
        entry.c0_size = c0.size();

        bool deletion_exit = false;
        for (;;) {
            if (static_cast<double>(C.size()) < floor_size) {
                deletion_exit = true;
                break;
            }
            const auto [best, fi] = max_flat_intersection(flats, C);
            if (static_cast<double>(best) < rich_at) break;
            std::vector<std::uint32_t> K = intersect_sorted(C, flats.members[fi]);
            C = subtract_sorted(C, K);
            ks.push_back(std::move(K));
        }
        entry.c_after = C.size();
        entry.cliques_appended = ks.size();

        auto child_cliques = [&]() {
            std::vector<std::vector<std::uint32_t>> out = inherited;
            out.insert(out.end(), ks.begin(), ks.end());
            return out;
        };

        if (deletion_exit) {
            ++g.deletion_ops;
            entry.case_tag = "deletion";
            entry.children = 1;
            g.add_node(static_cast<std::int64_t>(xid), "deletion", C,
                       child_cliques(), process_at);
            g.log.push_back(std::move(entry));
            continue;
        }

        bool placed = false;
        if (budget_left > 0 && C.size() >= p.r) {
            --budget_left;
            // The container step works on the randomized supersaturation
            // hypergraph of C; failed draws retry with a fresh stream.
            std::vector<PointCode> codes(C.begin(), C.end());
            const PointSet pc = PointSet::make(ctx, p.n, codes);
            SupersatParams sp;
            sp.k = p.k;
            sp.r = p.r;
            sp.theta = p.theta;
            sp.c = p.c;
            sp.work_cap = p.work_cap;
            for (std::uint32_t attempt = 0; attempt < 3 && !placed; ++attempt) {
                RandomStream node_rng =
                    RandomStream::derive(p.seed, xid * 16 + attempt);
                try {
                    auto [sh, cert] = supersat_hypergraph(ctx, pc, sp, node_rng);
                    entry.edges_before = sh.ecount();
                    if (sh.ecount() == 0) break;
                    ContainerParams cp;
                    cp.tau = std::min(cert.tau, 0.49);
                    cp.c = p.c;
                    cp.max_family = p.family_cap;
                    const ContainerFamily fam = build_containers(sh, cp);
                    bool progress = !fam.containers.empty() && !fam.truncated;
                    for (const auto& cont : fam.containers)
                        progress = progress && cont.size() < C.size();
                    if (!progress) break;
                    ++g.container_ops;
                    entry.case_tag = "container";
                    entry.children = fam.containers.size();
                    for (std::size_t ci = 0; ci < fam.containers.size(); ++ci) {
                        std::vector<std::uint32_t> child;
                        for (std::uint32_t v : fam.containers[ci])
                            child.push_back(C[v]);
                        entry.edges_after = std::max(entry.edges_after,
                                                     fam.induced_edges[ci]);
                        g.add_node(static_cast<std::int64_t>(xid), "container",
                                   std::move(child), child_cliques(), process_at);
                    }
                    placed = true;
                } catch (const TooLarge&) {
                    break;  // family cap or work cap; peel instead
                } catch (const Error&) {
                    continue;  // retry the draw with a fresh stream
                }
            }
        }
        if (!placed) {
            ++g.peel_ops;
            const auto [best, fi] = max_flat_intersection(flats, C);
            (void)best;
            std::vector<std::uint32_t> K = intersect_sorted(C, flats.members[fi]);
            std::vector<std::uint32_t> rest = subtract_sorted(C, K);
            auto cl = child_cliques();
            cl.push_back(std::move(K));
            entry.case_tag = "forced_peel";
            entry.children = 1;
            g.add_node(static_cast<std::int64_t>(xid), "forced_peel",
                       std::move(rest), std::move(cl), process_at);
        }
        g.log.push_back(std::move(entry));
    }

    TreeBuildResult res;
    res.tree = std::move(g.tree);
    res.stats = tree_stats(res.tree, p.r);
    res.log = std::move(g.log);
    res.deletion_ops = g.deletion_ops;
    res.container_ops = g.container_ops;
    res.peel_ops = g.peel_ops;
    return res;
}

}  // namespace evaset
