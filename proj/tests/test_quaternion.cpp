#include "vahlen/quaternion.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <iostream>

using namespace vahlen;

namespace {
Quaternion qi(long a, long b, long c, long d) {
    return Quaternion{ExactScalar(Rat(a)), ExactScalar(Rat(b)), ExactScalar(Rat(c)),
                      ExactScalar(Rat(d))};
}
const Quaternion I = qi(0, 1, 0, 0), J = qi(0, 0, 1, 0), K = qi(0, 0, 0, 1);

QuatMatrix random_unit(oracle::Rng& rng, int len = 4) {
    // random word in the elementary generators, pseudo-determinant 1
    QuatMatrix m = QuatMatrix::identity();
    for (int t = 0; t < len; ++t) {
        QuatMatrix g;
        switch (rng.integer(0, 2)) {
            case 0: g = {qi(1, 0, 0, 0), rng.quaternion(), qi(0, 0, 0, 0), qi(1, 0, 0, 0)}; break;
            case 1: g = {qi(1, 0, 0, 0), qi(0, 0, 0, 0), rng.quaternion(), qi(1, 0, 0, 0)}; break;
            default: g = {qi(0, 0, 0, 0), qi(-1, 0, 0, 0), qi(1, 0, 0, 0), qi(0, 0, 0, 0)}; break;
        }
        m = m * g;
    }
    return m;
}

QuatMatrix random_matrix(oracle::Rng& rng) {
    return {rng.quaternion(), rng.quaternion(), rng.quaternion(), rng.quaternion()};
}
} // namespace

TEST_CASE("pseudo-determinant cases") {
    REQUIRE(sigma(QuatMatrix::identity()) == qi(1, 0, 0, 0));
    SECTION("diagonal case with a != d keeps |sigma| = |a||d|") {
        QuatMatrix m{I, Quaternion::zero(), Quaternion::zero(), J};
        Quaternion s = sigma(m);
        REQUIRE(s.norm_sq() == ExactScalar(Rat(1)));
        // (j - i) i (j - i)^{-1} j expanded
        Quaternion diff = J - I;
        REQUIRE(s == diff * I * diff.inverse() * J);
    }
    REQUIRE(sigma(QuatMatrix{qi(1, 0, 0, 0), qi(1, 0, 0, 0), Quaternion::zero(),
                             qi(1, 0, 0, 0)}) == qi(1, 0, 0, 0));
}

TEST_CASE("Dieudonne determinant squared") {
    REQUIRE(dieudonne_det_sq(QuatMatrix::identity()) == ExactScalar(Rat(1)));
    oracle::Rng rng(31);
    SECTION("unipotent has determinant 1 for any entry") {
        for (int t = 0; t < 20; ++t) {
            QuatMatrix m{qi(1, 0, 0, 0), rng.quaternion(), Quaternion::zero(), qi(1, 0, 0, 0)};
            REQUIRE(dieudonne_det_sq(m) == ExactScalar(Rat(1)));
        }
    }
    SECTION("diag(1+i, 1) has squared determinant 2") {
        QuatMatrix m{qi(1, 1, 0, 0), Quaternion::zero(), Quaternion::zero(), qi(1, 0, 0, 0)};
        REQUIRE(dieudonne_det_sq(m) == ExactScalar(Rat(2)));
    }
}

TEST_CASE("determinant formula artifact") {
    // |sigma|^2 equals |a|^2|d|^2 + |b|^2|c|^2 - 2 Re(a bar c d bar b); the
    // variant with |b|^2|d|^2 in the middle term is recorded, not assumed.
    oracle::Rng rng(57);
    int printed_variant_matches = 0, total = 400;
    for (int t = 0; t < total; ++t) {
        QuatMatrix m = (t % 2) ? random_matrix(rng) : random_unit(rng);
        ExactScalar lhs = dieudonne_det_sq(m);
        REQUIRE(lhs == dieudonne_det_sq_formula(m));
        ExactScalar two = ExactScalar::integer(2);
        ExactScalar variant = m.a.norm_sq() * m.d.norm_sq() + m.b.norm_sq() * m.d.norm_sq() -
                              two * (m.a * m.c.conj() * m.d * m.b.conj()).re();
        if (variant == lhs) ++printed_variant_matches;
    }
    std::cout << "[determinant artifact] |b|^2|d|^2 variant matched " << printed_variant_matches
              << "/" << total << " samples\n";
    REQUIRE(printed_variant_matches < total); // the variant is not an identity
}

TEST_CASE("matrix inverse") {
    REQUIRE(quat_matrix_inverse(QuatMatrix::identity()) == QuatMatrix::identity());
    SECTION("unipotent") {
        QuatMatrix m{qi(1, 0, 0, 0), qi(1, 0, 0, 0), Quaternion::zero(), qi(1, 0, 0, 0)};
        QuatMatrix inv = quat_matrix_inverse(m);
        REQUIRE(inv.b == qi(-1, 0, 0, 0));
    }
    SECTION("lower unipotent with quaternion entry") {
        QuatMatrix m{qi(1, 0, 0, 0), Quaternion::zero(), I, qi(1, 0, 0, 0)};
        QuatMatrix inv = quat_matrix_inverse(m);
        REQUIRE(inv.c == -I);
        REQUIRE(inv * m == QuatMatrix::identity());
    }
    SECTION("random matrices invert exactly") {
        oracle::Rng rng(11);
        int nonsingular = 0;
        while (nonsingular < 40) {
            QuatMatrix m = random_matrix(rng);
            if (dieudonne_det_sq(m).is_zero()) continue;
            ++nonsingular;
            QuatMatrix inv = quat_matrix_inverse(m);
            REQUIRE(m * inv == QuatMatrix::identity());
            REQUIRE(inv * m == QuatMatrix::identity());
        }
    }
    SECTION("singular matrix is rejected") {
        // rows left-proportional: (i, j), (k, 1) with k i^{-1} = -j
        QuatMatrix m{I, J, K, qi(1, 0, 0, 0)};
        REQUIRE(dieudonne_det_sq(m).is_zero());
        REQUIRE_THROWS_AS(quat_matrix_inverse(m), std::domain_error);
    }
}

TEST_CASE("unit criterion over the Hamilton order") {
    QuatOrder ord = QuatOrder::make(-1, -1);
    REQUIRE(is_unit_matrix(QuatMatrix{qi(1, 0, 0, 0), qi(1, 0, 0, 0), Quaternion::zero(),
                                      qi(1, 0, 0, 0)}, ord));
    REQUIRE_FALSE(is_unit_matrix(QuatMatrix{qi(2, 0, 0, 0), Quaternion::zero(),
                                            Quaternion::zero(), qi(1, 0, 0, 0)}, ord));
    REQUIRE(is_unit_matrix(QuatMatrix{Quaternion::zero(), qi(-1, 0, 0, 0), qi(1, 0, 0, 0),
                                      Quaternion::zero()}, ord));
    SECTION("units have integral inverses") {
        oracle::Rng rng(83);
        for (int t = 0; t < 60; ++t) {
            QuatMatrix m = random_unit(rng);
            // integral entries by construction only when the word uses
            // integral quaternions; restrict to those
            bool integral = ord.contains(m);
            if (!integral) continue;
            QuatMatrix inv = quat_matrix_inverse(m);
            REQUIRE(ord.contains(inv));
        }
    }
}

TEST_CASE("reduced norm via the 8x8 embedding") {
    QuatOrder ord = QuatOrder::make(-1, -1);
    REQUIRE(reduced_norm_via_embedding(QuatMatrix::identity(), ord) == Rat(1));
    SECTION("diag(1+i, 1) -> 4") {
        QuatMatrix m{qi(1, 1, 0, 0), Quaternion::zero(), Quaternion::zero(), qi(1, 0, 0, 0)};
        REQUIRE(reduced_norm_via_embedding(m, ord) == Rat(4));
    }
    SECTION("unipotent -> 1") {
        QuatMatrix m{qi(1, 0, 0, 0), qi(3, -1, 2, 5), Quaternion::zero(), qi(1, 0, 0, 0)};
        REQUIRE(reduced_norm_via_embedding(m, ord) == Rat(1));
    }
    SECTION("(Delta^2)^2 equals the embedding determinant on random matrices") {
        oracle::Rng rng(101);
        for (int t = 0; t < 60; ++t) {
            QuatMatrix m = random_matrix(rng);
            ExactScalar d2 = dieudonne_det_sq(m);
            REQUIRE(ExactScalar(reduced_norm_via_embedding(m, ord)) == d2 * d2);
        }
    }
}

TEST_CASE("Dieudonne multiplicativity") {
    oracle::Rng rng(2024);
    for (int t = 0; t < 80; ++t) {
        QuatMatrix m = random_matrix(rng), n = (t % 2) ? random_matrix(rng) : random_unit(rng);
        REQUIRE(dieudonne_det_sq(m * n) == dieudonne_det_sq(m) * dieudonne_det_sq(n));
    }
}

TEST_CASE("the order embedding Lambda") {
    QuatOrder ord = QuatOrder::make(-2, -5);
    SECTION("i maps to sqrt2 i") {
        Quaternion e = ord.embed(Rat(0), Rat(1), Rat(0), Rat(0));
        REQUIRE(e.c[1] == ExactScalar(ord.field, Rat(0), Rat(1), Rat(0), Rat(0)));
        REQUIRE(e.c[0].is_zero());
    }
    REQUIRE(ord.embed(Rat(1), Rat(0), Rat(0), Rat(0)) == Quaternion::integer(1, ord.field));
    SECTION("multiplicativity: (sqrt2 i)^2 = -2") {
        Quaternion e = ord.embed(Rat(0), Rat(1), Rat(0), Rat(0));
        REQUIRE(e * e == Quaternion::integer(-2, ord.field));
    }
    SECTION("Lambda is a ring isomorphism onto the weighted lattice") {
        oracle::Rng rng(5);
        for (int t = 0; t < 50; ++t) {
            std::array<Rat, 4> a, b;
            for (int i = 0; i < 4; ++i) { a[i] = rng.rational(); b[i] = rng.rational(); }
            Quaternion ea = ord.embed(a[0], a[1], a[2], a[3]), eb = ord.embed(b[0], b[1], b[2], b[3]);
            auto sum = ord.coords(ea + eb);
            REQUIRE(sum);
            for (int i = 0; i < 4; ++i) REQUIRE((*sum)[i] == a[i] + b[i]);
            auto prod = ord.coords(ea * eb);
            REQUIRE(prod); // the order is closed under multiplication
            REQUIRE(ea.norm_sq() == ExactScalar(ord.norm_form(a), ord.field));
            REQUIRE(ord.coords(ea));
        }
    }
    SECTION("round trip") {
        Quaternion e = ord.embed(Rat(3), Rat(-2), Rat(1), Rat(4));
        auto c = ord.coords(e);
        REQUIRE(c);
        REQUIRE((*c)[3] == Rat(4));
        REQUIRE(ord.contains(e));
        REQUIRE_FALSE(ord.contains(ord.embed(Rat(1, 2), Rat(0), Rat(0), Rat(0))));
    }
}
