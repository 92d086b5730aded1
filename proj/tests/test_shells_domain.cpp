#include "vahlen/domain.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace vahlen;

TEST_CASE("shell enumeration over the integral group") {
    ShellEnumerator en(GroupSpec::gamma4z());
    SECTION("norm 2 is the stabilizer shell") {
        auto s2 = en.shell_pairs(2);
        REQUIRE(s2.size() == 16);
        for (const auto& m : s2) REQUIRE((en.is_su_pair(m) || en.is_su_pair(-m)));
    }
    SECTION("norm 3 translations are the eight unit vectors") {
        auto t3 = en.translation_pairs(3);
        REQUIRE(t3.size() == 8);
        for (const auto& m : t3) {
            REQUIRE(en.norm_sq(m) == 3);
            REQUIRE(en.column_norm(m) == 1);
        }
    }
    SECTION("fractional norms are empty") {
        REQUIRE(en.shell_pairs_fractional(Rat(5, 2)).empty());
    }
    SECTION("no pair M, -M appears") {
        for (const auto& m : en.shell_pairs(4))
            REQUIRE(m == m.canonical_sign());
    }
    SECTION("exact rebuild validates and matches the pair data") {
        for (const auto& pm : en.shell_pairs(3)) {
            VahlenMatrix m = en.to_matrix(pm);
            REQUIRE(m.is_valid());
            REQUIRE(ExactScalar(Rat(en.norm_sq(pm))) == m.norm_sq());
        }
    }
}

TEST_CASE("stabilizer computation") {
    SECTION("the integral stabilizer matches its four standard generators") {
        ShellEnumerator en(GroupSpec::gamma4z());
        StabilizerData st = compute_stabilizer(en);
        REQUIRE(st.group.size() == 16);
        REQUIRE(st.generators.size() == 4);
        // closure of the published generators equals the computed group
        std::set<PairMatrix> expected = projective_closure(en.spec().ctx(), st.generators);
        REQUIRE(expected == std::set<PairMatrix>(st.group.begin(), st.group.end()));
        REQUIRE(st.walls.size() == 15);
        int planes = 0, spheres = 0;
        for (const auto& w : st.walls)
            (w.kind == HalfSpace::Kind::Plane ? planes : spheres)++;
        REQUIRE(planes == 7);
        REQUIRE(spheres == 8);
        SECTION("walls really are Dirichlet walls about the base point") {
            for (std::size_t i = 0; i < st.walls.size(); ++i) {
                VahlenMatrix g = en.to_matrix(st.wall_elements[i]);
                REQUIRE(bisector_generic(st.base_point, g.act(st.base_point))
                            .same_wall(st.walls[i]));
            }
        }
    }
    SECTION("a congruence subgroup has trivial stabilizer and no walls") {
        ShellEnumerator en(GroupSpec::congruence(3));
        StabilizerData st = compute_stabilizer(en);
        REQUIRE(st.group.size() == 1);
        REQUIRE(st.generators.empty());
        REQUIRE(st.walls.empty());
    }
}

TEST_CASE("hyperplane sweep") {
    SECTION("integral group: the eight half-unit walls at norm 3") {
        ShellEnumerator en(GroupSpec::gamma4z());
        Algorithm1Result a1 = algorithm1(en, 10);
        REQUIRE(a1.stop_norm == 3);
        REQUIRE(a1.walls.size() == 8);
        REQUIRE(a1.members.size() == 8);
        for (const auto& w : a1.walls) {
            REQUIRE(w.kind == HalfSpace::Kind::Plane);
            REQUIRE(w.scalar == ExactScalar(Rat(1, 2)));
        }
        REQUIRE(a1.boundedness.bounded);
    }
    SECTION("level 2: translations double, walls at +-1") {
        ShellEnumerator en(GroupSpec::congruence(2));
        Algorithm1Result a1 = algorithm1(en, 10);
        REQUIRE(a1.stop_norm == 6);
        REQUIRE(a1.walls.size() == 8);
        for (const auto& w : a1.walls) {
            HalfSpace c = w.canonical();
            REQUIRE(abs(c.scalar) == ExactScalar(Rat(1)));
        }
    }
    SECTION("cap exhaustion is a clean error") {
        ShellEnumerator en(GroupSpec::congruence(2));
        REQUIRE_THROWS_AS(algorithm1(en, 4), std::runtime_error);
    }
}

TEST_CASE("hemisphere sweep on the integral group") {
    ShellEnumerator en(GroupSpec::gamma4z());
    StabilizerData st = compute_stabilizer(en);
    Algorithm1Result a1 = algorithm1(en, 10);
    DomainRun run = algorithm2(en, st, a1, 10, 24);
    REQUIRE(run.status == DomainRun::Status::Complete);
    REQUIRE(run.sphere_generators.empty());
    REQUIRE(run.emptiness.leaves.size() == 1);
    REQUIRE(run.emptiness.max_depth == 0);
    SECTION("assembled output validates and closes") {
        auto out = assemble_output(en, run);
        REQUIRE(out.size() == 12);
        oracle::Rng rng(7);
        const QuatOrder ord = en.spec().order();
        for (int t = 0; t < 40; ++t) {
            VahlenMatrix m = VahlenMatrix::identity();
            for (int k = 0; k < 3; ++k)
                m = m * out[rng.integer(0, long(out.size()) - 1)].clifford;
            REQUIRE(m.is_valid());
            REQUIRE(en.spec().member(m));
            REQUIRE(is_unit_matrix(chi(m), ord));
        }
    }
}

TEST_CASE("shell order and decreasing rho") {
    ShellEnumerator en(GroupSpec::gamma4z());
    ExactScalar prev{Rat(0)};
    bool first = true;
    for (std::int64_t n = 3; n <= 7; ++n) {
        auto shell = en.shell_pairs(n);
        REQUIRE_FALSE(shell.empty());
        ExactScalar norm{Rat(n)};
        if (!first) REQUIRE(rho_compare(prev, norm) > 0);
        first = false;
        prev = norm;
    }
}

TEST_CASE("order pullback spec round trip") {
    GroupSpec spec = GroupSpec::quat_order(-1, -3);
    ShellEnumerator en(spec);
    SECTION("shells respect the weighted norm form") {
        auto s5 = en.shell_pairs(5);
        REQUIRE_FALSE(s5.empty());
        for (const auto& pm : s5) {
            VahlenMatrix m = en.to_matrix(pm);
            REQUIRE(m.norm_sq() == ExactScalar::integer(5, en.field()));
            REQUIRE(spec.member(m));
        }
    }
    SECTION("hyperplane walls carry surd normals") {
        Algorithm1Result a1 = algorithm1(en, 20);
        REQUIRE(a1.stop_norm == 5);
        REQUIRE(a1.walls.size() == 12);
        bool found_surd = false;
        for (const auto& w : a1.walls)
            for (const auto& x : w.center)
                if (!x.is_rational()) found_surd = true;
        REQUIRE(found_surd);
    }
}
