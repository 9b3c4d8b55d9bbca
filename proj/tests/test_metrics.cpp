#include <doctest.h>

#include "archrec/metrics.hpp"
#include "test_helpers.hpp"

using namespace archrec;
using testutil::method;

namespace {

ClassFacts cls(std::string name) {
    ClassFacts c;
    c.id = ClassId{std::move(name)};
    return c;
}

ClassModel model_of(std::initializer_list<ClassFacts> classes) {
    ClassModel m;
    for (const auto& c : classes) m.classes[c.id] = c;
    return m;
}

}  // namespace

TEST_CASE("wmc counts declared methods; npm the public subset") {
    ClassFacts c = cls("A");
    CHECK(wmc(c) == 0);
    CHECK(npm(c) == 0);

    c.methods = {method("a"), method("b", Visibility::Private), method("c")};
    CHECK(wmc(c) == 3);
    CHECK(npm(c) == 2);

    ClassFacts p = cls("P");
    p.methods = {method("a", Visibility::Private), method("b", Visibility::Private),
                 method("c", Visibility::Private)};
    CHECK(npm(p) == 0);
    CHECK(npm(p) <= wmc(p));
}

TEST_CASE("constructors count by default, static initializers do not") {
    ClassFacts c = cls("A");
    c.methods = {method("<init>"), method("<clinit>"), method("go")};
    CHECK(wmc(c) == 2);
    MetricsOptions opts;
    opts.constructorsCount = false;
    opts.initializersCount = true;
    CHECK(wmc(c, opts) == 2);
}

TEST_CASE("dit: external root is depth 1, chains add one per in-model hop") {
    ClassFacts a = cls("A"), b = cls("B");
    a.superclass = "ext.Base";
    b.superclass = "A";
    ClassModel m = model_of({a, b});
    CHECK(dit(*m.find("A"), m) == 1);
    CHECK(dit(*m.find("B"), m) == 2);

    ClassModel chain;
    for (int i = 0; i < 8; ++i) {
        ClassFacts c = cls("C" + std::to_string(i));
        if (i > 0) c.superclass = "C" + std::to_string(i - 1);
        chain.classes[c.id] = c;
    }
    CHECK(dit(*chain.find("C7"), chain) == 8);
}

TEST_CASE("noc counts direct children only") {
    ClassFacts p = cls("P"), a = cls("A"), b = cls("B"), g = cls("G");
    a.superclass = "P";
    b.superclass = "P";
    g.superclass = "A";
    ClassModel m = model_of({p, a, b, g});
    CHECK(noc(*m.find("P"), m) == 2);
    CHECK(noc(*m.find("A"), m) == 1);
    CHECK(noc(*m.find("G"), m) == 0);
}

TEST_CASE("cbo: distinct referenced types; primitives, void and self excluded") {
    ClassFacts c = cls("A");
    CHECK(cbo(c) == 0);

    c.fields.push_back({"x", "X", Visibility::Private});
    MethodFacts m = method("go");
    m.invoked.insert({"Y", "m()"});
    c.methods.push_back(m);
    CHECK(cbo(c) == 2);

    // the same type through five different channels still counts once
    ClassFacts d = cls("D");
    d.superclass = "X";
    d.fields.push_back({"f", "X", Visibility::Private});
    MethodFacts dm = method("go");
    dm.paramTypes = {"X"};
    dm.returnType = "X";
    dm.referencedTypes.insert("X");
    d.methods.push_back(dm);
    CHECK(cbo(d) == 1);

    ClassFacts e = cls("E");
    e.fields.push_back({"i", "int", Visibility::Private});
    MethodFacts em = method("go");
    em.returnType = "void";
    em.paramTypes = {"boolean", "E"};
    e.methods.push_back(em);
    CHECK(cbo(e) == 0);
}

TEST_CASE("rfc: declared methods plus distinct remote calls; self-calls excluded") {
    ClassFacts c = cls("A");
    CHECK(rfc(c) == 0);

    MethodFacts m1 = method("m1"), m2 = method("m2");
    m1.invoked.insert({"X", "f()"});
    m2.invoked.insert({"X", "f()"});
    c.methods = {m1, m2};
    CHECK(rfc(c) == 3);

    // a call to a declared sibling adds nothing
    ClassFacts d = cls("D");
    MethodFacts dm1 = method("m1"), dm2 = method("m2");
    dm1.invoked.insert({"D", "m2()"});
    d.methods = {dm1, dm2};
    CHECK(rfc(d) == 2);

    // but a call to an undeclared method of self is remote
    ClassFacts e = cls("E");
    MethodFacts em = method("m1");
    em.invoked.insert({"E", "ghost()"});
    e.methods = {em};
    CHECK(rfc(e) == 2);
}

TEST_CASE("lcom: max(P - Q, 0) over own-field sharing") {
    ClassFacts shared = cls("A");
    for (int i = 0; i < 3; ++i) {
        MethodFacts m = method("m" + std::to_string(i));
        m.accessedFields.insert({"A", "f"});
        shared.methods.push_back(m);
    }
    CHECK(lcom(shared) == 0);  // P=0, Q=3, floored

    ClassFacts mixed = cls("B");
    MethodFacts m1 = method("m1"), m2 = method("m2"), m3 = method("m3");
    m1.accessedFields.insert({"B", "f1"});
    m2.accessedFields.insert({"B", "f1"});
    m3.accessedFields.insert({"B", "f2"});
    mixed.methods = {m1, m2, m3};
    CHECK(lcom(mixed) == 1);  // P=2, Q=1

    ClassFacts small = cls("C");
    CHECK(lcom(small) == 0);
    small.methods = {method("only")};
    CHECK(lcom(small) == 0);

    // accesses to another class's fields don't create cohesion
    ClassFacts foreign = cls("D");
    MethodFacts f1 = method("m1"), f2 = method("m2");
    f1.accessedFields.insert({"Other", "f"});
    f2.accessedFields.insert({"Other", "f"});
    foreign.methods = {f1, f2};
    CHECK(lcom(foreign) == 1);  // P=1, Q=0
}

TEST_CASE("ca counts in-model afferents; self-references ignored") {
    ClassFacts target = cls("T"), a = cls("A"), b = cls("B"), loner = cls("L");
    a.fields.push_back({"t", "T", Visibility::Private});
    MethodFacts bm = method("go");
    bm.invoked.insert({"T", "m()"});
    b.methods.push_back(bm);
    MethodFacts lm = method("go");
    lm.referencedTypes.insert("L");
    loner.methods.push_back(lm);

    ClassModel m = model_of({target, a, b, loner});
    CHECK(ca(*m.find("T"), m) == 2);
    CHECK(ca(*m.find("L"), m) == 0);
    CHECK(ca(*m.find("A"), m) == 0);
}

TEST_CASE("compute_metrics equals per-metric ops classwise") {
    ClassFacts a = cls("A"), b = cls("B"), c = cls("C");
    a.superclass = "B";
    MethodFacts am = method("run");
    am.invoked.insert({"C", "m()"});
    am.accessedFields.insert({"A", "f"});
    a.fields.push_back({"f", "int", Visibility::Private});
    a.methods = {am, method("helper", Visibility::Private)};
    MethodFacts cm = method("m");
    c.methods = {cm};
    ClassModel m = model_of({a, b, c});

    MetricsTable table = compute_metrics(m);
    REQUIRE(table.rows.size() == 3);
    for (const auto& [id, facts] : m.classes) {
        const MetricVector& row = table.rows.at(id);
        CHECK(row.wmc == wmc(facts));
        CHECK(row.dit == dit(facts, m));
        CHECK(row.noc == noc(facts, m));
        CHECK(row.cbo == cbo(facts));
        CHECK(row.rfc == rfc(facts));
        CHECK(row.lcom == lcom(facts));
        CHECK(row.ca == ca(facts, m));
        CHECK(row.npm == npm(facts));
    }
    CHECK(compute_metrics(ClassModel{}).rows.empty());
}

TEST_CASE("consistent renaming leaves every metric unchanged") {
    ClassFacts a = cls("A"), b = cls("B");
    a.superclass = "B";
    MethodFacts am = method("run");
    am.invoked.insert({"B", "m()"});
    am.accessedFields.insert({"A", "f"});
    am.paramTypes = {"B"};
    a.fields.push_back({"f", "B", Visibility::Private});
    a.methods = {am};
    b.methods = {method("m")};
    ClassModel m = model_of({a, b});

    auto rename = [](std::string s) { return "pkg.Renamed" + s; };
    ClassModel renamed;
    for (auto [id, facts] : m.classes) {
        facts.id = ClassId{rename(id.name)};
        if (facts.superclass && m.contains(*facts.superclass))
            facts.superclass = rename(*facts.superclass);
        for (auto& f : facts.fields)
            if (m.contains(f.type)) f.type = rename(f.type);
        for (auto& mm : facts.methods) {
            for (auto& p : mm.paramTypes)
                if (m.contains(p)) p = rename(p);
            std::set<std::pair<std::string, std::string>> inv, acc;
            for (auto [recv, sig] : mm.invoked)
                inv.insert({m.contains(recv) ? rename(recv) : recv, sig});
            for (auto [owner, field] : mm.accessedFields)
                acc.insert({m.contains(owner) ? rename(owner) : owner, field});
            mm.invoked = inv;
            mm.accessedFields = acc;
        }
        renamed.classes[facts.id] = facts;
    }

    MetricsTable before = compute_metrics(m);
    MetricsTable after = compute_metrics(renamed);
    for (const auto& [id, row] : before.rows)
        CHECK(after.rows.at(ClassId{rename(id.name)}) == row);
}

TEST_CASE("Ca/CBO duality: in-model reference totals balance") {
    ClassFacts a = cls("A"), b = cls("B"), c = cls("C");
    a.fields.push_back({"b", "B", Visibility::Private});
    a.fields.push_back({"x", "ext.X", Visibility::Private});
    MethodFacts bm = method("go");
    bm.invoked.insert({"C", "m()"});
    bm.invoked.insert({"A", "m()"});
    b.methods.push_back(bm);
    ClassModel m = model_of({a, b, c});

    long long inModelRefs = 0, caTotal = 0;
    for (const auto& [id, facts] : m.classes) {
        for (const auto& t : reference_set(facts))
            if (m.contains(t)) ++inModelRefs;
        caTotal += ca(facts, m);
    }
    CHECK(inModelRefs == caTotal);
}
