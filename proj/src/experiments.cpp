#include "evaset/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "evaset/geom.hpp"
#include "evaset/hypergraph.hpp"
#include "evaset/poly.hpp"

namespace evaset {

void run_trials(std::uint64_t trials, std::uint32_t workers,
                const std::function<void(std::uint64_t)>& fn) {
    if (workers <= 1 || trials <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errs(trials);
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                fn(t);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const std::uint32_t n = std::min<std::uint64_t>(workers, trials);
    pool.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errs)
        if (e) std::rethrow_exception(e);
}

namespace {

void set_common_defaults(Report& r) {
    r.set("c", 0.01);
    r.set("c_prime", 2.0);
}

}  // namespace

Report run_alpha(const FieldCtx& ctx, const AlphaParams& p) {
    if (p.probs.empty()) throw InvalidParams("need at least one density");
    for (double d : p.probs)
        if (!(d > 0.0 && d <= 1.0))
            throw InvalidParams("densities must lie in (0,1]");
    const std::uint32_t q = ctx.q();

    const PointSet moment = moment_curve(ctx, 2);

    struct Row {
        double prob;
        std::uint64_t trial, size, alpha, moment_in, upper;
        bool optimal, ok;
    };
    const std::uint64_t total = p.probs.size() * p.trials;
    std::vector<Row> rows(total);

    // Trials with the same sampled set recur (density 1.0 always does);
    // the search result is a pure function of the set, so cache it.
    std::map<std::vector<PointCode>, std::pair<std::uint64_t, bool>> cache;
    std::mutex cache_mu;

    run_trials(total, p.workers, [&](std::uint64_t t) {
        const std::uint64_t pi = t / p.trials, trial = t % p.trials;
        const double prob = p.probs[pi];
        RandomStream rng = RandomStream::derive(p.seed, t);
        const PointSet S = random_subset(ctx, 2, prob, rng);

        std::uint64_t alpha = 0;
        bool optimal = false;
        bool hit = false;
        {
            std::lock_guard<std::mutex> lk(cache_mu);
            auto it = cache.find(S.pts);
            if (it != cache.end()) {
                alpha = it->second.first;
                optimal = it->second.second;
                hit = true;
            }
        }
        if (!hit) {
            const Hypergraph H = collinear_triple_hypergraph(ctx, S);
            if (p.exact) {
                MisOptions mo;
                mo.vertex_cap = p.vertex_cap;
                const MisResult res = max_independent_set_exact(H, mo);
                alpha = res.size;
                optimal = res.optimal;
            } else {
                RandomStream hr = RandomStream::derive(p.seed, (1ULL << 40) + t);
                const MisResult res = greedy_independent_set(H, hr);
                alpha = res.size;
                optimal = res.optimal;
            }
            std::lock_guard<std::mutex> lk(cache_mu);
            cache.emplace(S.pts, std::make_pair(alpha, optimal));
        }

        std::uint64_t min = 0;
        for (PointCode c : moment.pts)
            if (S.contains(c)) ++min;
        Row& row = rows[t];
        row.prob = prob;
        row.trial = trial;
        row.size = S.size();
        row.alpha = alpha;
        row.optimal = optimal;
        row.moment_in = min;
        row.upper = std::min<std::uint64_t>(S.size(), 2ULL * q);
        row.ok = min <= alpha && alpha <= row.upper;
    });

    Report rep;
    rep.tool = "alpha";
    set_common_defaults(rep);
    rep.set("q", static_cast<std::uint64_t>(q));
    rep.set("trials", p.trials);
    rep.set("seed", p.seed);
    rep.set("exact", p.exact);
    rep.table("trials", {"prob", "trial", "size", "alpha", "optimal",
                         "moment_in", "upper", "ok"});
    rep.table("means", {"prob", "mean_alpha"});
    bool all_ok = true;
    for (std::size_t pi = 0; pi < p.probs.size(); ++pi) {
        double sum = 0;
        for (std::uint64_t trial = 0; trial < p.trials; ++trial) {
            const Row& row = rows[pi * p.trials + trial];
            rep.add_row("trials",
                        {row.prob, static_cast<std::int64_t>(row.trial),
                         static_cast<std::int64_t>(row.size),
                         static_cast<std::int64_t>(row.alpha), row.optimal,
                         static_cast<std::int64_t>(row.moment_in),
                         static_cast<std::int64_t>(row.upper), row.ok});
            sum += static_cast<double>(row.alpha);
            all_ok = all_ok && row.ok;
        }
        rep.add_row("means",
                    {p.probs[pi], sum / static_cast<double>(p.trials)});
    }
    rep.set("all_ok", all_ok);
    return rep;
}

namespace {

Hypergraph gp_violations(const FieldCtx& ctx, std::uint32_t n) {
    const std::uint32_t q = ctx.q();
    double space = 1;
    for (std::uint32_t i = 0; i < n; ++i) space *= q;
    if (space > (1 << 22))
        throw TooLarge("ambient space too large for general-position counting");
    std::vector<PointCode> all(static_cast<std::uint64_t>(space));
    for (std::uint64_t i = 0; i < all.size(); ++i) all[i] = i;
    const PointSet P = PointSet::make(ctx, n, all);
    return kflat_subset_hypergraph(ctx, P, n - 1, n + 1, 100000000ULL);
}

}  // namespace

std::uint64_t count_gp_direct(const FieldCtx& ctx, std::uint32_t n,
                              std::uint64_t node_cap) {
    if (n < 2) throw InvalidParams("need ambient dimension >= 2");
    const Hypergraph H = gp_violations(ctx, n);
    std::vector<std::uint16_t> cnt(H.ecount(), 0);
    std::uint64_t visited = 0;
    std::function<std::uint64_t(std::uint32_t)> rec =
        [&](std::uint32_t start) -> std::uint64_t {
        if (++visited > node_cap)
            throw TooLarge("general-position enumeration exceeded its cap");
        std::uint64_t total = 1;  // the current set itself
        for (std::uint32_t v = start; v < H.nv; ++v) {
            bool legal = true;
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                if (cnt[H.inc[t]] + 1u == H.r) {
                    legal = false;
                    break;
                }
            if (!legal) continue;
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                ++cnt[H.inc[t]];
            total += rec(v + 1);
            for (std::uint64_t t = H.inc_off[v]; t < H.inc_off[v + 1]; ++t)
                --cnt[H.inc[t]];
        }
        return total;
    };
    return rec(0);
}

std::uint64_t count_gp_oracle(const FieldCtx& ctx, std::uint32_t n,
                              std::uint64_t edge_cap) {
    if (n < 2) throw InvalidParams("need ambient dimension >= 2");
    const Hypergraph H = gp_violations(ctx, n);
    const std::uint64_t ne = H.ecount();
    if (ne > edge_cap || ne > 62)
        throw TooLarge("too many violating sets for inclusion-exclusion");
    std::int64_t total = 0;
    std::vector<char> mark(H.nv);
    for (std::uint64_t mask = 0; mask < (1ULL << ne); ++mask) {
        std::fill(mark.begin(), mark.end(), 0);
        std::uint32_t covered = 0;
        for (std::uint64_t e = 0; e < ne; ++e) {
            if (!(mask >> e & 1)) continue;
            const std::uint32_t* ev = H.edge(e);
            for (std::uint32_t j = 0; j < H.r; ++j)
                if (!mark[ev[j]]) {
                    mark[ev[j]] = 1;
                    ++covered;
                }
        }
        const std::uint64_t free_pts = H.nv - covered;
        if (free_pts > 62) throw TooLarge("space too large for exact counting");
        const std::int64_t term = static_cast<std::int64_t>(1ULL << free_pts);
        total += (std::popcount(mask) % 2 == 0) ? term : -term;
    }
    if (total < 0) throw Overflow("inclusion-exclusion produced a negative count");
    return static_cast<std::uint64_t>(total);
}

Report run_count_gp(const FieldCtx& ctx, const GpParams& p) {
    Report rep;
    rep.tool = "count-gp";
    set_common_defaults(rep);
    rep.set("q", static_cast<std::uint64_t>(ctx.q()));
    rep.set("n", static_cast<std::uint64_t>(p.n));
    const std::uint64_t direct = count_gp_direct(ctx, p.n, p.node_cap);
    rep.set("count", direct);
    if (p.oracle) {
        const std::uint64_t oracle = count_gp_oracle(ctx, p.n, p.oracle_edge_cap);
        rep.set("oracle_count", oracle);
        rep.set("oracle_agrees", oracle == direct);
    }
    return rep;
}

Report run_supersat(const FieldCtx& ctx, const SupersatRunParams& p) {
    const std::uint32_t q = ctx.q();
    if (p.k == 0 || p.r <= p.k || p.k >= p.n)
        throw InvalidParams("need r > k >= 1 and k < n");
    double qnk = 1;
    for (std::uint32_t i = 0; i < p.n - p.k; ++i) qnk *= q;
    double space = 1;
    for (std::uint32_t i = 0; i < p.n; ++i) space *= q;
    if (space > (1 << 22)) throw TooLarge("ambient space too large to sample");
    const std::uint64_t nspace = static_cast<std::uint64_t>(space);
    const std::uint64_t m =
        p.m ? p.m
            : static_cast<std::uint64_t>(std::ceil(2.0 * p.theta * qnk));
    if (m > nspace) throw InvalidParams("requested more points than the space holds");

    struct Row {
        std::uint64_t trial = 0, edges = 0, gp = 0;
        double tau = 0, theta_prime = 0;
        bool dense_fallback = false, holds = false;
        std::string status = "ok";
        std::vector<DeltaMargin> margins;
    };
    std::vector<Row> rows(p.trials);

    run_trials(p.trials, p.workers, [&](std::uint64_t t) {
        Row& row = rows[t];
        row.trial = t;
        RandomStream rng = RandomStream::derive(p.seed, t);
        std::vector<PointCode> all(nspace);
        for (std::uint64_t i = 0; i < nspace; ++i) all[i] = i;
        rng.shuffle(all);
        all.resize(m);
        const PointSet S = PointSet::make(ctx, p.n, all);
        SupersatParams sp;
        sp.k = p.k;
        sp.r = p.r;
        sp.theta = p.theta;
        sp.c = p.c;
        sp.work_cap = p.work_cap;
        try {
            const auto [H, cert] = supersat_hypergraph(ctx, S, sp, rng);
            row.edges = H.ecount();
            row.gp = cert.gp_count;
            row.tau = cert.tau;
            row.theta_prime = cert.theta_prime;
            row.dense_fallback = cert.dense_fallback;
            row.holds = cert.holds;
            row.margins = cert.margins;
        } catch (const Error& e) {
            row.status = e.what();
        }
    });

    Report rep;
    rep.tool = "supersat";
    set_common_defaults(rep);
    rep.set("q", static_cast<std::uint64_t>(q));
    rep.set("n", static_cast<std::uint64_t>(p.n));
    rep.set("k", static_cast<std::uint64_t>(p.k));
    rep.set("r", static_cast<std::uint64_t>(p.r));
    rep.set("m", m);
    rep.set("theta", p.theta);
    rep.set("trials", p.trials);
    rep.set("seed", p.seed);
    rep.table("trials", {"trial", "status", "edges", "gp_sets", "tau",
                         "theta_prime", "dense_fallback", "holds"});
    rep.table("margins", {"trial", "i", "delta", "target", "ok"});
    bool all_hold = true;
    for (const Row& row : rows) {
        rep.add_row("trials",
                    {static_cast<std::int64_t>(row.trial), row.status,
                     static_cast<std::int64_t>(row.edges),
                     static_cast<std::int64_t>(row.gp), row.tau,
                     row.theta_prime, row.dense_fallback, row.holds});
        for (const DeltaMargin& dm : row.margins)
            rep.add_row("margins",
                        {static_cast<std::int64_t>(row.trial),
                         static_cast<std::int64_t>(dm.i),
                         static_cast<std::int64_t>(dm.delta), dm.target, dm.ok});
        all_hold = all_hold && row.holds && row.status == "ok";
    }
    rep.set("all_hold", all_hold);
    return rep;
}

Report run_evasive_campaign(const FieldCtx& ctx,
                            const EvasiveCampaignParams& cp) {
    cp.p.validate();
    if (cp.attempts == 0) throw InvalidParams("need at least one attempt");
    const std::uint32_t q = ctx.q();

    struct Row {
        std::uint64_t trial = 0, size = 0, attempts_used = 0;
        std::uint64_t r_sched = 0, r_deg = 0, max_int = 0;
        bool evasive_sched = false, evasive_deg = false;
        bool success = false, slice_ok = false;
        std::string status = "ok";
    };
    std::vector<Row> rows(cp.trials);

    run_trials(cp.trials, cp.workers, [&](std::uint64_t t) {
        Row& row = rows[t];
        row.trial = t;
        RandomStream rng = RandomStream::derive(cp.seed, t);
        try {
            const ConstructResult res =
                construct_evasive(ctx, cp.p, rng, cp.attempts);
            row.size = res.candidate.size();
            row.attempts_used = res.trials_used;
            row.r_sched = res.schedule.r_value;
            row.r_deg = res.verdict_degree.r;
            row.max_int = res.verdict_degree.max_intersection;
            row.evasive_sched = res.verdict.evasive;
            row.evasive_deg = res.verdict_degree.evasive;
            row.success = res.verdict_degree.evasive &&
                          2 * res.candidate.size() >= q;
            if (res.verdict_degree.evasive) {
                EvasiveParams sliced = cp.p;
                sliced.r = static_cast<std::uint32_t>(res.verdict_degree.r);
                row.slice_ok =
                    check_slice_consistency(res.candidate, sliced,
                                            res.verdict_degree);
            }
        } catch (const Error& e) {
            row.status = e.what();
        }
    });

    Report rep;
    rep.tool = "evasive";
    set_common_defaults(rep);
    rep.set("q", static_cast<std::uint64_t>(q));
    rep.set("n", static_cast<std::uint64_t>(cp.p.n));
    rep.set("k", static_cast<std::uint64_t>(cp.p.k));
    rep.set("d", static_cast<std::uint64_t>(cp.p.d));
    rep.set("trials", cp.trials);
    rep.set("attempts", static_cast<std::uint64_t>(cp.attempts));
    rep.set("seed", cp.seed);
    rep.table("trials",
              {"trial", "status", "size", "attempts_used", "r_schedule",
               "r_degree", "max_intersection", "evasive_schedule",
               "evasive_degree", "success", "slice_ok"});
    std::uint64_t successes = 0, slice_ok = 0;
    for (const Row& row : rows) {
        rep.add_row("trials",
                    {static_cast<std::int64_t>(row.trial), row.status,
                     static_cast<std::int64_t>(row.size),
                     static_cast<std::int64_t>(row.attempts_used),
                     static_cast<std::int64_t>(row.r_sched),
                     static_cast<std::int64_t>(row.r_deg),
                     static_cast<std::int64_t>(row.max_int), row.evasive_sched,
                     row.evasive_deg, row.success, row.slice_ok});
        if (row.success) {
            ++successes;
            if (row.slice_ok) ++slice_ok;
        }
    }
    rep.set("successes", successes);
    rep.set("success_rate",
            cp.trials ? static_cast<double>(successes) / cp.trials : 0.0);
    rep.set("slice_consistent",
            successes == 0 || slice_ok == successes);
    return rep;
}

Report tree_report(const std::string& which, const TreeBuildResult& r) {
    Report rep;
    rep.tool = which;
    set_common_defaults(rep);
    rep.set("nodes", static_cast<std::uint64_t>(r.tree.nodes.size()));
    rep.set("leaves", r.stats.nu);
    rep.set("max_leaf_c0", r.stats.chi);
    rep.set("max_clique", r.stats.kappa);
    rep.set("max_labels", r.stats.lambda);
    rep.set("height", r.stats.height);
    rep.set("aleph_log2", r.stats.aleph_log2);
    rep.set("deletion_ops", r.deletion_ops);
    rep.set("container_ops", r.container_ops);
    rep.set("peel_ops", r.peel_ops);
    rep.table("ops", {"node", "case", "c0_size", "c_after", "cliques_appended",
                      "edges_before", "edges_after", "children"});
    for (const NodeOpLog& op : r.log)
        rep.add_row("ops",
                    {static_cast<std::int64_t>(op.node), op.case_tag,
                     static_cast<std::int64_t>(op.c0_size),
                     static_cast<std::int64_t>(op.c_after),
                     static_cast<std::int64_t>(op.cliques_appended),
                     static_cast<std::int64_t>(op.edges_before),
                     static_cast<std::int64_t>(op.edges_after),
                     static_cast<std::int64_t>(op.children)});
    return rep;
}

Report run_bounds(const EvasiveParams& p) {
    p.validate();
    Report rep;
    rep.tool = "bounds";
    set_common_defaults(rep);
    rep.set("q", static_cast<std::uint64_t>(p.q));
    rep.set("n", static_cast<std::uint64_t>(p.n));
    rep.set("k", static_cast<std::uint64_t>(p.k));
    rep.set("d", static_cast<std::uint64_t>(p.d));
    rep.set("r", static_cast<std::uint64_t>(p.r));
    rep.set("slice_bound", slice_bound(p));
    rep.set("chow_dim", chow_dim(p.d, p.k, p.n));
    const DegreeSchedule sch = degree_schedule(p.n, p.k, p.d);
    rep.set("chow_dim_schedule", sch.chow_dimension);
    rep.set("degree_product", sch.degree_product);
    rep.set("r_value", sch.r_value);
    rep.set("twisted_degree_bound", twisted_degree_bound(p.n, p.k, p.d));
    rep.table("schedule", {"i", "degree"});
    for (std::size_t i = 0; i < sch.degrees.size(); ++i)
        rep.add_row("schedule", {static_cast<std::int64_t>(i + 1),
                                 static_cast<std::int64_t>(sch.degrees[i])});
    return rep;
}

}  // namespace evaset
