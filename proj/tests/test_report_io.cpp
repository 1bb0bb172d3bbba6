#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "evaset/container.hpp"
#include "evaset/io.hpp"
#include "evaset/report.hpp"

using namespace evaset;

namespace {

Report sample_report() {
    Report r;
    r.tool = "demo";
    r.set("passed", true);
    r.set("count", std::int64_t{-42});
    r.set("ratio", 1.0 / 3.0);
    r.set("label", "hello, \"world\"");
    r.table("rows", {"idx", "val", "name"});
    r.add_row("rows", {std::int64_t{1}, 0.5, std::string("a,b")});
    r.add_row("rows", {std::int64_t{2}, 0.25, std::string("")});
    return r;
}

}  // namespace

TEST_CASE("floating-point rendering is fixed at six significant digits") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333");
    CHECK(format_double(123456789.0) == "1.23457e+08");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-2.5) == "-2.5");
}

TEST_CASE("json serialization round-trips and is byte-stable") {
    const Report r = sample_report();
    const std::string a = r.to_json();
    const std::string b = r.to_json();
    CHECK(a == b);
    CHECK(a.back() == '\n');

    const Report back = Report::from_json(a);
    CHECK(back.tool == "demo");
    CHECK(std::get<bool>(back.scalars.at("passed")) == true);
    CHECK(std::get<std::int64_t>(back.scalars.at("count")) == -42);
    // doubles are rounded through the 6-digit form before emission
    CHECK(std::get<double>(back.scalars.at("ratio")) == doctest::Approx(0.333333));
    CHECK(std::get<std::string>(back.scalars.at("label")) == "hello, \"world\"");
    REQUIRE(back.tables.count("rows") == 1);
    CHECK(back.tables.at("rows").columns ==
          std::vector<std::string>{"idx", "val", "name"});
    CHECK(back.tables.at("rows").rows.size() == 2);
    CHECK(std::get<std::string>(back.tables.at("rows").rows[0][2]) == "a,b");

    // a second trip is the identity once doubles have been rounded
    CHECK(back.to_json() == a);
}

TEST_CASE("insertion order does not leak into the serialized form") {
    Report a;
    a.tool = "t";
    a.set("x", 1);
    a.set("y", 2.5);
    Report b;
    b.tool = "t";
    b.set("y", 2.5);
    b.set("x", 1);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a == b);
}

TEST_CASE("csv serialization round-trips with typed tokens") {
    const Report r = sample_report();
    const std::string text = r.to_csv();
    CHECK(text == r.to_csv());
    const Report back = Report::from_csv(text);
    CHECK(back.tool == r.tool);
    CHECK(std::get<bool>(back.scalars.at("passed")) == true);
    CHECK(std::get<std::int64_t>(back.scalars.at("count")) == -42);
    CHECK(std::get<double>(back.scalars.at("ratio")) == doctest::Approx(0.333333));
    CHECK(std::get<std::string>(back.scalars.at("label")) == "hello, \"world\"");
    CHECK(back.tables.at("rows").rows.size() == 2);
    CHECK(std::get<double>(back.tables.at("rows").rows[1][1]) ==
          doctest::Approx(0.25));
    CHECK(std::get<std::string>(back.tables.at("rows").rows[1][2]) == "");
    CHECK(back.to_csv() == text);
}

TEST_CASE("values containing newlines are refused rather than corrupted") {
    Report r;
    r.tool = "demo";
    r.set("bad", "line1\nline2");
    CHECK_THROWS_AS(r.to_csv(), ParseError);
}

TEST_CASE("malformed report text raises parse errors") {
    CHECK_THROWS_AS(Report::from_json("not json at all"), ParseError);
    CHECK_THROWS_AS(Report::from_json("[1,2,3]\n"), ParseError);
    CHECK_THROWS_AS(Report::from_csv("tool,x\nnonsense line\n"), ParseError);
    CHECK_THROWS_AS(Report::from_csv("[report]\ntool,x\n[table:t]\ncolumns,a\n"
                                     "[table:t]\ncolumns,a\n"),
                    ParseError);
}

TEST_CASE("table construction validates row widths") {
    Report r;
    r.table("t", {"a", "b"});
    CHECK_THROWS_AS(r.add_row("t", {std::int64_t{1}}), ParseError);
    CHECK_THROWS_AS(r.add_row("missing", {std::int64_t{1}}), ParseError);
    r.add_row("t", {std::int64_t{1}, std::int64_t{2}});
    CHECK(r.tables.at("t").rows.size() == 1);
}

TEST_CASE("point sets round-trip through their text form") {
    const FieldCtx ctx = FieldCtx::make(3, 2);
    const PointSet P = PointSet::make(ctx, 2, {0, 8, 17, 80});
    const std::string text = pointset_to_string(P);
    const PointSet back = pointset_from_string(ctx, text);
    CHECK(back.pts == P.pts);
    CHECK(back.n == 2);
    CHECK(back.q == 9);

    CHECK_THROWS_AS(pointset_from_string(ctx, ""), ParseError);
    CHECK_THROWS_AS(pointset_from_string(ctx, "9 2 1\n1\n"), ParseError);
    CHECK_THROWS_AS(pointset_from_string(ctx, "9 2 2\n1,2\n"), ParseError);
    CHECK_THROWS_AS(pointset_from_string(ctx, "9 2 1\n9,0\n"), ParseError);
    CHECK_THROWS_AS(pointset_from_string(ctx, "7 2 1\n1,2\n"), ParseError);
}

TEST_CASE("hypergraphs round-trip through their text form") {
    const Hypergraph H =
        Hypergraph::make(3, 7, {{0, 1, 2}, {0, 3, 4}, {2, 4, 5}});
    const std::string text = hypergraph_to_string(H);
    const Hypergraph back = hypergraph_from_string(text);
    CHECK(back.r == 3);
    CHECK(back.nv == 7);
    CHECK(back.edges == H.edges);

    CHECK_THROWS_AS(hypergraph_from_string(""), ParseError);
    CHECK_THROWS_AS(hypergraph_from_string("3 7 2\n0 1 2\n"), ParseError);
    CHECK_THROWS_AS(hypergraph_from_string("3 7 1\n0 1\n"), ParseError);
    CHECK_THROWS_AS(hypergraph_from_string("3 7 1\n0 1 7\n"), ParseError);
}

TEST_CASE("container families round-trip through their text form") {
    const Hypergraph H = Hypergraph::make(
        3, 7,
        {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6},
         {2, 4, 5}});
    ContainerParams p;
    p.tau = 0.3;
    p.c = 0.05;
    const ContainerFamily fam = build_containers(H, p);
    const std::string text = containers_to_string(fam);
    const ParsedContainers back = containers_from_string(text);
    CHECK(back.fingerprints == fam.fingerprints);
    CHECK(back.containers == fam.containers);

    CHECK_THROWS_AS(containers_from_string("1 2 3\n"), ParseError);
    CHECK_THROWS_AS(containers_from_string("1 x | 2\n"), ParseError);
}

TEST_CASE("trees round-trip through their text form") {
    CCTree T;
    T.r = 3;
    T.nv = 9;
    CCNode root;
    root.id = 0;
    root.parent = -1;
    root.case_tag = "root";
    root.c0 = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    root.children = {1};
    T.nodes.push_back(root);
    CCNode child;
    child.id = 1;
    child.parent = 0;
    child.case_tag = "deletion";
    child.c0 = {0, 2, 4};
    child.cliques = {{1, 3, 5}, {6, 7}};
    T.nodes.push_back(child);

    TreeStats stats = tree_stats(T, 3);
    const std::string text = cctree_to_string(T, stats);
    const CCTree back = cctree_from_string(text);
    REQUIRE(back.nodes.size() == 2);
    CHECK(back.r == 3);
    CHECK(back.nv == 9);
    CHECK(back.nodes[0].c0 == root.c0);
    CHECK(back.nodes[0].children == std::vector<std::uint64_t>{1});
    CHECK(back.nodes[1].parent == 0);
    CHECK(back.nodes[1].case_tag == "deletion");
    CHECK(back.nodes[1].cliques == child.cliques);

    CHECK_THROWS_AS(cctree_from_string(""), ParseError);
    CHECK_THROWS_AS(cctree_from_string("3 9 2\n0 -1 root {0}\n"), ParseError);
    CHECK_THROWS_AS(cctree_from_string("3 9 1\n0 -1 root 0 1\n"), ParseError);
}

TEST_CASE("text files round-trip and missing files raise") {
    const std::string path = "/tmp/evaset_io_test.txt";
    write_text_file(path, "alpha\nbeta\n");
    CHECK(read_text_file(path) == "alpha\nbeta\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file("/tmp/evaset_io_missing_file.txt"),
                    ParseError);
}
