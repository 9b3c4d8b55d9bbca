#include <doctest.h>

#include <random>

#include "archrec/ingest.hpp"
#include "archrec/layering.hpp"

using namespace archrec;

TEST_CASE("class-facts: single empty class") {
    ClassModel model = parse_class_facts("class a.B\n");
    REQUIRE(model.classes.size() == 1);
    CHECK(model.find("a.B")->methods.empty());
}

TEST_CASE("class-facts: duplicate id is an error naming the id") {
    CHECK_THROWS_WITH_AS(parse_class_facts("class A\nclass A\n"),
                         "line 2: duplicate class id A", ParseError);
}

TEST_CASE("class-facts: three-class fixture produces edges A->B, A->C") {
    const char* doc =
        "class A\n"
        "  extends B\n"
        "  method run() void public\n"
        "    invokes C m()\n"
        "class B\n"
        "class C\n"
        "  method m() void public\n";
    ClassModel model = parse_class_facts(doc);
    CHECK(validate_model(model).empty());
    DependencyGraph g = build_graph(model);
    CHECK(g.edges == std::set<std::pair<ClassId, ClassId>>{
                         {{"A"}, {"B"}}, {{"A"}, {"C"}}});
}

TEST_CASE("class-facts: schema violations carry line numbers") {
    CHECK_THROWS_AS(parse_class_facts("field x int private\n"), ParseError);
    CHECK_THROWS_AS(parse_class_facts("class A\n  field x int friendly\n"), ParseError);
    CHECK_THROWS_AS(parse_class_facts("class A\n  wobble\n"), ParseError);
    CHECK_THROWS_AS(parse_class_facts("class A\n  invokes B m()\n"), ParseError);
}

TEST_CASE("ckjm: direct field mapping") {
    MetricsTable t = parse_ckjm_metrics("a.B 7 2 0 4 23 12 3 5\n");
    const MetricVector& v = t.rows.at(ClassId{"a.B"});
    CHECK(v.wmc == 7);
    CHECK(v.dit == 2);
    CHECK(v.noc == 0);
    CHECK(v.cbo == 4);
    CHECK(v.rfc == 23);
    CHECK(v.lcom == 12);
    CHECK(v.ca == 3);
    CHECK(v.npm == 5);
}

TEST_CASE("ckjm: empty input, wrong token count, duplicates") {
    CHECK(parse_ckjm_metrics("").rows.empty());
    CHECK_THROWS_WITH_AS(parse_ckjm_metrics("a.B 7 2 0 4 23 12 3\n"),
                         "line 1: expected 9 tokens (class + 8 metrics), got 8",
                         ParseError);
    CHECK_THROWS_AS(parse_ckjm_metrics("A 1 1 0 0 0 0 0 1\nA 1 1 0 0 0 0 0 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_ckjm_metrics("A 1 x 0 0 0 0 0 1\n"), ParseError);
}

TEST_CASE("ckjm round-trip is byte-stable on random tables") {
    std::mt19937_64 rng(42);
    MetricsTable table;
    for (int i = 0; i < 50; ++i) {
        MetricVector v;
        v.wmc = static_cast<long long>(rng() % 400);
        v.dit = 1 + static_cast<long long>(rng() % 8);
        v.noc = static_cast<long long>(rng() % 40);
        v.cbo = static_cast<long long>(rng() % 100);
        v.rfc = static_cast<long long>(rng() % 450);
        v.lcom = static_cast<long long>(rng() % 50000);
        v.ca = static_cast<long long>(rng() % 440);
        v.npm = std::min(v.wmc, static_cast<long long>(rng() % 300));
        table.rows[ClassId{"pkg.Class" + std::to_string(i)}] = v;
    }
    std::string once = format_ckjm_metrics(table);
    std::string twice = format_ckjm_metrics(parse_ckjm_metrics(once));
    CHECK(once == twice);
}

TEST_CASE("edges: both syntaxes, self-edge tally, set semantics") {
    EdgeList e = parse_edges("A -> B\n");
    CHECK(e.edges == std::set<std::pair<ClassId, ClassId>>{{{"A"}, {"B"}}});

    e = parse_edges("A,A\n");
    CHECK(e.edges.empty());
    CHECK(e.selfEdgesDropped == 1);

    e = parse_edges("A -> B\nA -> B\nB,C\n");
    CHECK(e.edges.size() == 2);
}

TEST_CASE("edges: independent of line order; comments and CRLF accepted") {
    EdgeList a = parse_edges("A -> B\nC -> D\n# note\n\n");
    EdgeList b = parse_edges("C -> D\r\nA -> B\r\n");
    CHECK(a.edges == b.edges);
    CHECK_THROWS_AS(parse_edges("A B\n"), ParseError);
}

TEST_CASE("class-facts round-trips through its formatter") {
    const char* doc =
        "class a.A\n"
        "  extends a.B\n"
        "  implements a.I\n"
        "  field f int private\n"
        "  method go(int,a.B) a.C public\n"
        "    invokes a.B m()\n"
        "    accesses a.A f\n"
        "    references ext.T\n"
        "class a.B\n"
        "interface a.I\n";
    ClassModel model = parse_class_facts(doc);
    std::string once = format_class_facts(model);
    std::string twice = format_class_facts(parse_class_facts(once));
    CHECK(once == twice);
}
