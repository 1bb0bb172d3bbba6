// Command-line front end: every subcommand writes one deterministic report
// (JSON or sectioned CSV) to stdout or --out, plus optional artifact files.
// Exit codes: 0 = pass, 2 = a verification check failed, 1 = usage or
// runtime error.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "evaset/cctree.hpp"
#include "evaset/container.hpp"
#include "evaset/evasive.hpp"
#include "evaset/experiments.hpp"
#include "evaset/field.hpp"
#include "evaset/geom.hpp"
#include "evaset/hypergraph.hpp"
#include "evaset/io.hpp"
#include "evaset/report.hpp"

namespace {

using namespace evaset;

FieldCtx make_field(std::uint32_t q) {
    if (q < 2) throw InvalidParams("q must be at least 2");
    std::uint32_t p = q;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    std::uint32_t e = 0;
    std::uint64_t acc = 1;
    while (acc < q) {
        acc *= p;
        ++e;
    }
    if (acc != q)
        throw InvalidParams("q = " + std::to_string(q) + " is not a prime power");
    return FieldCtx::make(p, std::max<std::uint32_t>(e, 1));
}

void emit(const Report& rep, const std::string& out, const std::string& format) {
    const std::string text = format == "csv" ? rep.to_csv() : rep.to_json();
    if (out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text_file(out, text);
}

int run(int argc, char** argv) {
    CLI::App app{"flat-evasive sets, container families and clique trees over F_q"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file");

    std::string out, format = "json";
    app.add_option("--out", out, "write the report to this file instead of stdout")
        ->capture_default_str();
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    // --- bounds -----------------------------------------------------------
    EvasiveParams bp;
    bp.q = 5;
    bp.n = 2;
    bp.k = 1;
    bp.d = 1;
    bp.r = 3;
    CLI::App* bounds = app.add_subcommand(
        "bounds", "closed-form slice/dimension/degree bounds");
    bounds->add_option("--q", bp.q, "field size")->capture_default_str();
    bounds->add_option("--n", bp.n, "ambient dimension")->capture_default_str();
    bounds->add_option("--k", bp.k, "flat dimension")->capture_default_str();
    bounds->add_option("--d", bp.d, "variety degree")->capture_default_str();
    bounds->add_option("--r", bp.r, "intersection threshold")->capture_default_str();

    // --- alpha ------------------------------------------------------------
    AlphaParams ap;
    bool heuristic = false;
    CLI::App* alpha = app.add_subcommand(
        "alpha", "independence numbers of random planar subsets");
    alpha->add_option("--q", ap.q, "field size")->capture_default_str();
    alpha->add_option("--p", ap.probs, "sampling densities")
        ->capture_default_str();
    alpha->add_option("--trials", ap.trials, "trials per density")
        ->capture_default_str();
    alpha->add_option("--seed", ap.seed, "master seed")->capture_default_str();
    alpha->add_option("--workers", ap.workers, "worker threads")
        ->capture_default_str();
    alpha->add_flag("--heuristic", heuristic,
                    "use the exchange heuristic instead of exact search");
    alpha->add_option("--vertex-cap", ap.vertex_cap,
                      "exact-search vertex cap")
        ->capture_default_str();

    // --- supersat ---------------------------------------------------------
    SupersatRunParams sp;
    CLI::App* supersat = app.add_subcommand(
        "supersat", "randomized supersaturation hypergraphs with certificates");
    std::uint32_t sq = 11;
    supersat->add_option("--q", sq, "field size")->capture_default_str();
    supersat->add_option("--n", sp.n, "ambient dimension")->capture_default_str();
    supersat->add_option("--k", sp.k, "flat dimension")->capture_default_str();
    supersat->add_option("--r", sp.r, "edge uniformity")->capture_default_str();
    supersat->add_option("--m", sp.m, "points per sample (0 = 2*theta*q^(n-k))")
        ->capture_default_str();
    supersat->add_option("--theta", sp.theta, "density parameter")
        ->capture_default_str();
    supersat->add_option("--c", sp.c, "codegree constant")->capture_default_str();
    supersat->add_option("--trials", sp.trials, "number of samples")
        ->capture_default_str();
    supersat->add_option("--seed", sp.seed, "master seed")->capture_default_str();
    supersat->add_option("--workers", sp.workers, "worker threads")
        ->capture_default_str();

    // --- evasive ----------------------------------------------------------
    EvasiveCampaignParams ep;
    ep.p.q = 49;
    ep.p.n = 2;
    ep.p.k = 1;
    ep.p.d = 1;
    ep.p.r = 1;
    CLI::App* evasive = app.add_subcommand(
        "evasive", "randomized flat-evasive constructions with verification");
    evasive->add_option("--q", ep.p.q, "field size")->capture_default_str();
    evasive->add_option("--n", ep.p.n, "ambient dimension")->capture_default_str();
    evasive->add_option("--k", ep.p.k, "flat dimension")->capture_default_str();
    evasive->add_option("--d", ep.p.d, "variety degree")->capture_default_str();
    evasive->add_option("--trials", ep.trials, "independent constructions")
        ->capture_default_str();
    evasive->add_option("--attempts", ep.attempts, "samples per construction")
        ->capture_default_str();
    evasive->add_option("--seed", ep.seed, "master seed")->capture_default_str();
    evasive->add_option("--workers", ep.workers, "worker threads")
        ->capture_default_str();

    // --- count-gp ---------------------------------------------------------
    GpParams gp;
    std::uint32_t gq = 3;
    CLI::App* countgp = app.add_subcommand(
        "count-gp", "count subsets in general position");
    countgp->add_option("--q", gq, "field size")->capture_default_str();
    countgp->add_option("--n", gp.n, "ambient dimension")->capture_default_str();
    countgp->add_flag("--oracle", gp.oracle,
                      "also run the inclusion-exclusion oracle");
    countgp->add_option("--node-cap", gp.node_cap, "enumeration cap")
        ->capture_default_str();

    // --- cctree -----------------------------------------------------------
    std::string kind = "collinear";
    std::uint32_t tq = 9;
    CollinearTreeParams colp;
    KrsetTreeParams krp;
    std::string tree_out, hyper_out;
    CLI::App* cctree = app.add_subcommand(
        "cctree", "container-clique tree construction");
    cctree->add_option("--kind", kind, "tree flavour")
        ->check(CLI::IsMember({"collinear", "krset"}))
        ->capture_default_str();
    cctree->add_option("--q", tq, "field size")->capture_default_str();
    cctree->add_option("--eps", colp.eps, "leaf threshold factor (collinear)")
        ->capture_default_str();
    cctree->add_option("--c-prime", colp.c_prime, "container tau numerator")
        ->capture_default_str();
    cctree->add_option("--c", colp.c, "container shrinkage constant")
        ->capture_default_str();
    cctree->add_option("--rich-exponent", colp.rich_exponent,
                       "richness threshold exponent")
        ->capture_default_str();
    cctree->add_option("--op-cap", colp.op_cap, "node-operation cap")
        ->capture_default_str();
    cctree->add_option("--container-budget", colp.container_budget,
                       "container applications allowed")
        ->capture_default_str();
    cctree->add_option("--family-cap", colp.family_cap,
                       "max containers per application")
        ->capture_default_str();
    cctree->add_option("--n", krp.n, "ambient dimension (krset)")
        ->capture_default_str();
    cctree->add_option("--k", krp.k, "flat dimension (krset)")
        ->capture_default_str();
    cctree->add_option("--r", krp.r, "edge uniformity (krset)")
        ->capture_default_str();
    cctree->add_option("--theta", krp.theta, "density parameter (krset)")
        ->capture_default_str();
    cctree->add_option("--seed", krp.seed, "master seed (krset)")
        ->capture_default_str();
    cctree->add_option("--tree-out", tree_out, "write the tree artifact here");
    cctree->add_option("--hypergraph-out", hyper_out,
                       "write the ambient hypergraph artifact here");

    // --- verify -----------------------------------------------------------
    std::string v_hyper, v_containers, v_tree;
    ContainerParams vcp;
    VerifySpec vspec;
    bool v_sampled = false;
    CLI::App* verify = app.add_subcommand(
        "verify", "re-check container or tree artifacts against a hypergraph");
    verify->add_option("--hypergraph", v_hyper, "hypergraph artifact")
        ->required();
    verify->add_option("--containers", v_containers, "container artifact");
    verify->add_option("--tree", v_tree, "tree artifact");
    verify->add_option("--tau", vcp.tau, "fingerprint density bound")
        ->capture_default_str();
    verify->add_option("--c", vcp.c, "shrinkage constant")
        ->capture_default_str();
    verify->add_flag("--sampled", v_sampled,
                     "sampled covering check instead of exhaustive");
    verify->add_option("--samples", vspec.samples, "samples when --sampled")
        ->capture_default_str();
    verify->add_option("--seed", vspec.seed, "sampling seed")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    bool passed = true;
    Report rep;

    if (bounds->parsed()) {
        rep = run_bounds(bp);
    } else if (alpha->parsed()) {
        ap.exact = !heuristic;
        const FieldCtx ctx = make_field(ap.q);
        rep = run_alpha(ctx, ap);
        passed = std::get<bool>(rep.scalars.at("all_ok"));
    } else if (supersat->parsed()) {
        const FieldCtx ctx = make_field(sq);
        rep = run_supersat(ctx, sp);
        passed = std::get<bool>(rep.scalars.at("all_hold"));
    } else if (evasive->parsed()) {
        const FieldCtx ctx = make_field(ep.p.q);
        rep = run_evasive_campaign(ctx, ep);
        passed = std::get<bool>(rep.scalars.at("slice_consistent"));
    } else if (countgp->parsed()) {
        const FieldCtx ctx = make_field(gq);
        rep = run_count_gp(ctx, gp);
        if (gp.oracle)
            passed = std::get<bool>(rep.scalars.at("oracle_agrees"));
    } else if (cctree->parsed()) {
        const FieldCtx ctx = make_field(tq);
        TreeBuildResult res;
        if (kind == "collinear") {
            res = build_collinear_cctree(ctx, colp);
        } else {
            krp.c = colp.c;
            krp.rich_exponent = colp.rich_exponent;
            krp.op_cap = colp.op_cap;
            krp.container_budget = colp.container_budget;
            krp.family_cap = colp.family_cap;
            res = build_krset_cctree(ctx, krp);
        }
        rep = tree_report("cctree-" + kind, res);
        rep.set("q", static_cast<std::uint64_t>(tq));
        rep.set("kind", kind);
        if (!tree_out.empty())
            write_text_file(tree_out, cctree_to_string(res.tree, res.stats));
        if (!hyper_out.empty()) {
            std::vector<PointCode> all;
            const std::uint32_t n = kind == "collinear" ? 2 : krp.n;
            std::uint64_t space = 1;
            for (std::uint32_t i = 0; i < n; ++i) space *= tq;
            for (std::uint64_t c = 0; c < space; ++c) all.push_back(c);
            const PointSet P = PointSet::make(ctx, n, all);
            const Hypergraph H =
                kind == "collinear"
                    ? collinear_triple_hypergraph(ctx, P)
                    : kflat_subset_hypergraph(ctx, P, krp.k, krp.r,
                                              100000000ULL);
            write_text_file(hyper_out, hypergraph_to_string(H));
        }
    } else if (verify->parsed()) {
        if (v_containers.empty() == v_tree.empty())
            throw InvalidParams("verify needs exactly one of --containers/--tree");
        const Hypergraph H = hypergraph_from_string(read_text_file(v_hyper));
        vspec.exhaustive = !v_sampled;
        rep.tool = "verify";
        rep.set("c", vcp.c);
        rep.set("c_prime", 2.0);
        if (!v_containers.empty()) {
            const ParsedContainers pc =
                containers_from_string(read_text_file(v_containers));
            ContainerFamily fam;
            fam.fingerprints = pc.fingerprints;
            fam.containers = pc.containers;
            const ContainerCheck chk = verify_containers(H, fam, vcp, vspec);
            rep.set("covering_ok", chk.covering_ok);
            rep.set("shrinkage_ok", chk.shrinkage_ok);
            rep.set("log_family", chk.log_family);
            rep.set("log_family_target", chk.log_family_target);
            rep.set("max_edge_fraction", chk.max_edge_fraction);
            rep.set("sets_checked", chk.sets_checked);
            passed = chk.covering_ok && chk.shrinkage_ok;
        } else {
            const CCTree T = cctree_from_string(read_text_file(v_tree));
            const TreeCheck chk = verify_cctree(T, H, vspec);
            rep.set("structure_ok", chk.structure_ok);
            rep.set("cliques_ok", chk.cliques_ok);
            rep.set("covering_ok", chk.covering_ok);
            rep.set("sets_checked", chk.sets_checked);
            if (!chk.structure_error.empty())
                rep.set("structure_error", chk.structure_error);
            passed = chk.ok();
        }
    }

    emit(rep, out, format);
    return passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const evaset::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
