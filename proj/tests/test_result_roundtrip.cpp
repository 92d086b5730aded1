#include "vahlen/json_io.hpp"
#include "vahlen/verify.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vahlen;

namespace {
Json fresh_gamma4z_result() {
    ShellEnumerator en(GroupSpec::gamma4z());
    StabilizerData st = compute_stabilizer(en);
    Algorithm1Result a1 = algorithm1(en, 10);
    DomainRun run = algorithm2(en, st, a1, 10, 24);
    return result_to_json(en, run, assemble_output(en, run));
}
} // namespace

TEST_CASE("scalar and matrix json round trips") {
    oracle::Rng rng(15);
    SECTION("rational scalars") {
        for (int t = 0; t < 50; ++t) {
            ExactScalar s(rng.rational(100, 40));
            REQUIRE(scalar_from_json(to_json(s)) == s);
        }
    }
    SECTION("surd scalars") {
        FieldDesc f{2, 5};
        for (int t = 0; t < 50; ++t) {
            ExactScalar s = rng.scalar(f);
            REQUIRE(scalar_from_json(to_json(s), f) == s);
        }
    }
    SECTION("rational strings are canonical n/d") {
        REQUIRE(rat_to_string(Rat(3)) == "3/1");
        REQUIRE(rat_to_string(Rat(-6, 4)) == "-3/2");
        REQUIRE(rat_from_string("-3/2") == Rat(-3, 2));
        REQUIRE_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    }
    SECTION("clifford elements and matrices") {
        ShellEnumerator en(GroupSpec::gamma4z());
        for (const auto& pm : en.shell_pairs(3)) {
            VahlenMatrix m = en.to_matrix(pm);
            REQUIRE(vahlen_from_json(to_json(m)) == m);
        }
    }
    SECTION("half-spaces") {
        HalfSpace h = HalfSpace::sphere({ExactScalar(Rat(1)), ExactScalar(Rat(0)),
                                         ExactScalar(Rat(-2)), ExactScalar(Rat(1, 3))},
                                        ExactScalar(Rat(7, 4)), true);
        REQUIRE(halfspace_from_json(to_json(h)) == h);
        HalfSpace p = HalfSpace::plane({ExactScalar(Rat(1)), ExactScalar(Rat(0)),
                                        ExactScalar(Rat(0)), ExactScalar(Rat(0))},
                                       ExactScalar(Rat(1, 2)), false);
        REQUIRE(halfspace_from_json(to_json(p)) == p);
    }
    SECTION("group specs") {
        for (GroupSpec s : {GroupSpec::gamma4z(), GroupSpec::congruence(4),
                            GroupSpec::quat_order(-2, -5)})
            REQUIRE(spec_from_json(to_json(s)) == s);
    }
}

TEST_CASE("run and verify round trip") {
    Json doc = fresh_gamma4z_result();
    REQUIRE(doc.at("status") == "complete");
    REQUIRE(doc.at("N") == "3/1");
    REQUIRE(doc.at("stabilizer").size() == 4);
    REQUIRE(doc.at("generators").size() == 8);
    REQUIRE(verify_result(doc) == 12);

    SECTION("output is byte-deterministic") {
        Json again = fresh_gamma4z_result();
        REQUIRE(doc.dump() == again.dump());
    }

    SECTION("a flipped coefficient is detected") {
        Json bad = doc;
        // negate one blade coefficient of the first generator's beta entry
        auto& coeffs = bad["generators"][0]["clifford"]["beta"]["coeffs"];
        for (auto& [key, val] : coeffs.items()) {
            Rat v = rat_from_string(val.get<std::string>());
            val = rat_to_string(-v);
            break;
        }
        REQUIRE_THROWS_AS(verify_result(bad), VerifyError);
    }

    SECTION("a tampered wall is detected") {
        Json bad = doc;
        bad["generators"][0]["halfspace"]["offset"] = "3/2";
        REQUIRE_THROWS_AS(verify_result(bad), VerifyError);
    }

    SECTION("complete status requires generators") {
        Json bad = doc;
        bad["generators"] = Json::array();
        REQUIRE_THROWS_AS(verify_result(bad), VerifyError);
    }

    SECTION("a dropped emptiness leaf is detected") {
        Json bad = doc;
        bad["certificates"]["emptiness"]["leaves"] = Json::array();
        REQUIRE_THROWS_AS(verify_result(bad), VerifyError);
    }
}

TEST_CASE("slices") {
    Json doc = fresh_gamma4z_result();
    SECTION("fixing z2 = z3 = 0 keeps the four box walls and cuts spheres") {
        Json s = slice_result(doc, {{2, Rat(0)}, {3, Rat(0)}});
        int planes = 0, spheres = 0, all = 0;
        for (const auto& p : s.at("primitives")) {
            std::string kind = p.at("kind").get<std::string>();
            if (kind == "plane") ++planes;
            else if (kind == "sphere") ++spheres;
            else if (kind == "all") ++all;
        }
        // 4 of the 8 box walls survive as planes in (z0, z1), the other 4
        // become trivial; the stabilizer unit sphere slices to a circle
        REQUIRE(planes >= 4);
        REQUIRE(all >= 4);
        REQUIRE(spheres >= 1);
        for (const auto& p : s.at("primitives"))
            if (p.at("kind") == "sphere") {
                REQUIRE(p.at("center").size() == 2);
            }
    }
    SECTION("fixing a coordinate outside every sphere empties them") {
        Json s = slice_result(doc, {{0, Rat(50)}});
        bool saw_empty = false;
        for (const auto& p : s.at("primitives"))
            if (p.at("kind") == "empty") saw_empty = true;
        REQUIRE(saw_empty);
    }
}
