#include "ocs/io.hpp"

#include "ocs/fixtures.hpp"
#include "ocs/generate.hpp"

#include <doctest.h>

using namespace ocs;

namespace {

Rat q(long n, long d = 1) { return Rat(Int(n), Int(d)); }

}  // namespace

TEST_CASE("parsing the wedge instance") {
    Instance inst = parse_instance(R"({
      "format": 1,
      "dim": 2,
      "cone": {"generators": [["4","1"],["8","1"]]},
      "seminorms": [{"name": "sup", "rows": [["1","0"],["0","1"]]}],
      "functionals": {"f": ["1","1"]}
    })");
    CHECK(inst.space.dim() == 2);
    CHECK(inst.space.cone().generators().size() == 2);
    CHECK(inst.space.seminorm(0).name() == "sup");
    CHECK(inst.functionals.at("f") == RVec{q(1), q(1)});
}

TEST_CASE("serialize-parse round-trip is exact on the corpus") {
    for (const Fixture& f : fixtures()) {
        Instance a = parse_instance(f.text, f.name);
        std::string text = serialize_instance(a);
        Instance b = parse_instance(text, f.name);
        CHECK(a.space.dim() == b.space.dim());
        CHECK(a.space.cone().generators() == b.space.cone().generators());
        REQUIRE(a.space.family_size() == b.space.family_size());
        for (std::size_t k = 0; k < a.space.family_size(); ++k) {
            CHECK(a.space.seminorm(k).name() == b.space.seminorm(k).name());
            CHECK(a.space.seminorm(k).rows() == b.space.seminorm(k).rows());
        }
        CHECK(serialize_instance(b) == text);
        for (const auto& [label, f1] : a.functionals) CHECK(b.functionals.at(label) == f1);
        for (const auto& [label, e] : a.order_units) CHECK(b.order_units.at(label) == e);
        for (const auto& [label, sub] : a.subspaces)
            CHECK(b.subspaces.at(label).basis() == sub.basis());
    }
}

TEST_CASE("floats are parse errors everywhere") {
    CHECK_THROWS_WITH_AS(parse_instance(R"({"format":1,"dim":2,
        "cone":{"generators":[["1","0"]]},
        "seminorms":[{"name":"p","rows":[[0.5,"0"]]}]})"),
                         doctest::Contains("float"), parse_error);
}

TEST_CASE("malformed rationals carry their path") {
    CHECK_THROWS_WITH_AS(parse_instance(R"({"format":1,"dim":2,
        "cone":{"generators":[["1","0"],["1/0","1"]]},
        "seminorms":[{"name":"p","rows":[["1","0"],["0","1"]]}]})"),
                         doctest::Contains("zero denominator"), parse_error);
}

TEST_CASE("non-pointed cones are rejected with a witness") {
    CHECK_THROWS_WITH_AS(parse_instance(R"({"format":1,"dim":2,
        "cone":{"generators":[["1","0"],["-1","0"]]},
        "seminorms":[{"name":"sup","rows":[["1","0"],["0","1"]]}]})"),
                         doctest::Contains("not pointed"), space_error);
}

TEST_CASE("non-separating rows are rejected") {
    CHECK_THROWS_WITH_AS(parse_instance(R"({"format":1,"dim":2,
        "cone":{"generators":[["1","0"],["0","1"]]},
        "seminorms":[{"name":"p","rows":[["1","0"],["2","0"]]}]})"),
                         doctest::Contains("separate"), space_error);
}

TEST_CASE("structural errors are diagnosed") {
    CHECK_THROWS_WITH_AS(parse_instance("{\"dim\": 2}"), doctest::Contains("format"),
                         parse_error);
    CHECK_THROWS_WITH_AS(parse_instance("not json"), doctest::Contains("line 1"), parse_error);
    CHECK_THROWS_WITH_AS(parse_instance(R"({"format":1,"dim":2,
        "seminorms":[]})"),
                         doctest::Contains("seminorms"), parse_error);
}

TEST_CASE("vector literals") {
    CHECK(parse_vector("1,-2") == RVec{q(1), q(-2)});
    CHECK(parse_vector("1/2,3,-4/6") == RVec{q(1, 2), q(3), q(-2, 3)});
    CHECK_THROWS_AS(parse_vector("1,,2"), parse_error);
}

TEST_CASE("generator determinism and validity") {
    GenerateOptions opt;
    opt.dim = 2;
    CalibratedSpace a = generate_instance(0, opt);
    CalibratedSpace b = generate_instance(0, opt);
    Instance ia{"seed-0", a, {}, {}, {}}, ib{"seed-0", b, {}, {}, {}};
    CHECK(serialize_instance(ia) == serialize_instance(ib));

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GenerateOptions o;
        o.dim = 1 + seed % 3;
        CalibratedSpace s = generate_instance(seed, o);
        CHECK(s.cone().is_pointed());
        Instance inst{"seed", s, {}, {}, {}};
        Instance back = parse_instance(serialize_instance(inst), "seed");
        CHECK(back.space.cone().generators() == s.cone().generators());
        CHECK(serialize_instance(back) == serialize_instance(inst));
    }
}
