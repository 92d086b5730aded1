#pragma once

// Independent oracles used by the tests: they deliberately avoid the code
// paths they are checking.

#include "vahlen/quaternion.hpp"
#include "vahlen/region.hpp"
#include "vahlen/vahlen_matrix.hpp"

#include <random>

namespace oracle {

using namespace vahlen;

// Sign of c0 + c1 sqrt(p) + c2 sqrt(q) + c3 sqrt(pq) by plain interval
// arithmetic with rational enclosures of the surds at denominator 10^k,
// refining k until the interval misses zero (caller guarantees nonzero).
inline int interval_sign(long p, long q, const Rat& c0, const Rat& c1, const Rat& c2,
                         const Rat& c3) {
    for (int digits = 6; digits <= 60; digits += 6) {
        Int den = 1;
        for (int i = 0; i < digits; ++i) den *= 10;
        auto enclose = [&](long n) {
            Int lo = isqrt_floor(Int(n) * den * den);
            return std::pair<Rat, Rat>{Rat(lo, den), Rat(lo + 1, den)};
        };
        auto [pl, ph] = enclose(p);
        auto [ql, qh] = enclose(q);
        auto [rl, rh] = enclose(p * q);
        auto lohi = [&](const Rat& c, const Rat& l, const Rat& h) {
            return c >= 0 ? std::pair<Rat, Rat>{c * l, c * h} : std::pair<Rat, Rat>{c * h, c * l};
        };
        auto [a1, b1] = lohi(c1, pl, ph);
        auto [a2, b2] = lohi(c2, ql, qh);
        auto [a3, b3] = lohi(c3, rl, rh);
        Rat lo = c0 + a1 + a2 + a3, hi = c0 + b1 + b2 + b3;
        if (lo > 0) return 1;
        if (hi < 0) return -1;
    }
    return 0;
}

// Recession-cone triviality by Fourier-Motzkin elimination: the cone
// {A d <= 0} is {0} iff for every coordinate the projection is {0}.
// Rows are the constraint normals.
inline bool fm_cone_is_trivial(std::vector<std::vector<Rat>> rows, int dim) {
    if (rows.empty()) return false;
    // does the cone admit a point with d_keep != 0? project out all other
    // variables, then inspect the 1-d cone.
    auto nontrivial_in = [&](int keep) {
        std::vector<std::vector<Rat>> sys = rows;
        for (int var = 0; var < dim; ++var) {
            if (var == keep) continue;
            std::vector<std::vector<Rat>> pos, neg, zero;
            for (auto& r : sys) {
                if (r[var] > 0) pos.push_back(r);
                else if (r[var] < 0) neg.push_back(r);
                else zero.push_back(r);
            }
            std::vector<std::vector<Rat>> next = zero;
            for (auto& rp : pos)
                for (auto& rn : neg) {
                    std::vector<Rat> comb(dim, Rat(0));
                    // rp[var] * rn - rn[var] * rp has a zero var-entry and
                    // keeps the "<= 0" orientation since rp[var] > 0 > rn[var]
                    for (int t = 0; t < dim; ++t)
                        comb[t] = rp[var] * rn[t] - rn[var] * rp[t];
                    next.push_back(std::move(comb));
                }
            sys = std::move(next);
        }
        // the projected cone in d_keep: constraints c * d_keep <= 0
        bool pos_allowed = true, neg_allowed = true;
        for (auto& r : sys) {
            if (r[keep] > 0) pos_allowed = false;
            if (r[keep] < 0) neg_allowed = false;
        }
        return pos_allowed || neg_allowed;
    };
    for (int k = 0; k < dim; ++k)
        if (nontrivial_in(k)) return false;
    return true;
}

// Dense grid scan (resolution 1/64 over each axis of the root box) for an
// interior region witness strictly outside every closed ball.
inline std::optional<std::vector<Rat>> grid_witness(const BoundaryRegion& rg, const Box& root,
                                                    int steps = 64) {
    int dim = rg.dim;
    std::vector<int> idx(dim, 0);
    std::vector<Rat> lo(dim), step(dim);
    for (int i = 0; i < dim; ++i) {
        lo[i] = root.lo[i].as_rational();
        step[i] = (root.hi[i].as_rational() - lo[i]) / steps;
    }
    for (;;) {
        std::vector<Rat> z(dim);
        std::vector<ExactScalar> ze(dim);
        for (int i = 0; i < dim; ++i) {
            z[i] = lo[i] + step[i] * idx[i];
            ze[i] = ExactScalar(z[i]);
        }
        if (rg.point_in_polytope_interior(ze) && rg.point_strictly_outside_balls(ze)) return z;
        int at = 0;
        while (at < dim && ++idx[at] > steps) idx[at++] = 0;
        if (at == dim) return std::nullopt;
    }
}

// Direct evaluation of the Moebius action in Cl_5: (alpha z + beta) times
// the exact inverse of (gamma z + delta), using only Clifford-algebra
// primitives.
inline UpperPoint act_in_cl5(const VahlenMatrix& m, const UpperPoint& z) {
    FieldDesc f = z.r.field();
    CliffordElement zc(5, f);
    for (int i = 0; i < 4; ++i) zc.set_coeff(i == 0 ? 0u : (1u << (i - 1)), z.y[i]);
    zc.set_coeff(1u << 3, z.r);
    CliffordElement num = m.alpha().embed(5) * zc + m.beta().embed(5);
    CliffordElement den = m.gamma().embed(5) * zc + m.delta().embed(5);
    if (!den.has_scalar_quasinorm()) throw std::logic_error("oracle: denominator not in the group");
    CliffordElement img = num * den.group_inverse();
    if (!img.is_vector()) throw std::logic_error("oracle: image is not a vector");
    UpperPoint out;
    for (int i = 0; i < 4; ++i)
        out.y.push_back(img.coeff(i == 0 ? 0u : (1u << (i - 1))));
    out.r = img.coeff(1u << 3);
    return out;
}

// Deterministic random rationals and quaternions for property tests.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    Rat rational(long max_num = 6, long max_den = 4) {
        return Rat(integer(-max_num, max_num), integer(1, max_den));
    }
    ExactScalar scalar(FieldDesc f, bool surds = true) {
        if (!surds || f.rational()) return ExactScalar(rational(), f);
        return ExactScalar(f, rational(), rational(3, 3), rational(3, 3), rational(2, 2));
    }
    Quaternion quaternion(FieldDesc f = {}) {
        return Quaternion{ExactScalar(rational(), f), ExactScalar(rational(), f),
                          ExactScalar(rational(), f), ExactScalar(rational(), f)};
    }
};

} // namespace oracle
