#pragma once

#include "vahlen/bisector.hpp"

#include <array>
#include <set>

namespace vahlen {

// Lagrange decompositions n = a^2 + b^2 + c^2 + d^2, a >= b >= c >= d >= 0.
inline std::vector<std::array<Int, 4>> four_squares_all(const Int& n) {
    std::vector<std::array<Int, 4>> out;
    if (n < 0) return out;
    Int ra = isqrt_floor(n);
    for (Int a = ra; a >= 0; --a) {
        Int n2 = n - a * a;
        Int rb = isqrt_floor(n2);
        for (Int b = rb; b >= 0; --b) {
            if (b > a) continue;
            Int n3 = n2 - b * b;
            Int rc = isqrt_floor(n3);
            for (Int c = rc; c >= 0; --c) {
                if (c > b) continue;
                Int d2 = n3 - c * c;
                Int d;
                if (is_square(d2, &d) && d <= c)
                    out.push_back(std::array<Int, 4>{a, b, c, d});
            }
        }
    }
    return out;
}

inline std::optional<std::array<Int, 4>> four_squares(const Int& n) {
    auto all = four_squares_all(n);
    if (all.empty()) return std::nullopt;
    return all.front();
}

// A point of the closed upper half-space: vector part + height >= 0.
struct WallPoint {
    std::vector<ExactScalar> y;
    ExactScalar t;
};

// Exact rational points on the wall (sphere |z - c|^2 + t^2 = r^2 or
// vertical plane <n, z> + off = 0) of a half-space with rational data.
// Spheres: r^2 = N/D and N*D*s^2 = a^2+b^2+c^2+d^2 by Lagrange; signed
// permutations spread the four squares over three coordinates plus the
// height. Planes: a base point plus integer steps along perpendiculars
// at various heights. May return fewer than asked (or none) when the
// wall data is irrational.
inline std::vector<WallPoint> wall_points(const HalfSpace& h, std::size_t count) {
    std::vector<WallPoint> out;
    const std::size_t n = h.center.size();
    for (const auto& v : h.center)
        if (!v.is_rational()) return out;
    if (!h.scalar.is_rational()) return out;
    FieldDesc f = h.scalar.field();

    std::set<std::vector<Rat>> seen;
    auto push = [&](const std::vector<Rat>& w, const Rat& height) {
        if (out.size() >= count) return;
        std::vector<Rat> key = w;
        key.push_back(height);
        if (!seen.insert(key).second) return;
        WallPoint pt;
        pt.y.resize(n);
        for (std::size_t i = 0; i < n; ++i) pt.y[i] = ExactScalar(w[i], f);
        pt.t = ExactScalar(height, f);
        // on-wall sanity, including the height term for spheres
        if (h.kind == HalfSpace::Kind::Sphere) {
            ExactScalar v = pt.t * pt.t - h.scalar;
            for (std::size_t i = 0; i < n; ++i) {
                ExactScalar d = pt.y[i] - h.center[i];
                v += d * d;
            }
            if (!v.is_zero()) throw std::logic_error("wall point off the sphere");
        } else {
            ExactScalar v = h.scalar;
            for (std::size_t i = 0; i < n; ++i) v += h.center[i] * pt.y[i];
            if (!v.is_zero()) throw std::logic_error("wall point off the plane");
        }
        out.push_back(std::move(pt));
    };

    if (h.kind == HalfSpace::Kind::Sphere) {
        Rat r2 = h.scalar.rational_part();
        std::vector<Rat> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = h.center[i].rational_part();
        Int N = numerator(r2), D = denominator(r2);
        for (Int s = 1; out.size() < count && s <= 64; ++s) {
            for (const auto& sq : four_squares_all(N * D * s * s)) {
                if (out.size() >= count) break;
                std::array<int, 4> perm{0, 1, 2, 3};
                do {
                    for (unsigned signs = 0; signs < 8 && out.size() < count; ++signs) {
                        // components 0..2 -> first three coordinates, 3 -> height
                        Rat height(sq[perm[3]], D * s);
                        std::vector<Rat> w = c;
                        for (std::size_t i = 0; i < 3 && i < n; ++i) {
                            Int comp = sq[perm[i]];
                            if (signs & (1u << i)) comp = -comp;
                            w[i] += Rat(comp, D * s);
                        }
                        push(w, height);
                        // all four squares in the coordinates, height zero
                        if (n >= 4) {
                            std::vector<Rat> w0 = c;
                            for (std::size_t i = 0; i < 4; ++i) {
                                Int comp = sq[perm[i]];
                                if (signs & (1u << (i % 3))) comp = -comp;
                                w0[i] += Rat(comp, D * s);
                            }
                            push(w0, Rat(0));
                        }
                    }
                } while (out.size() < count && std::next_permutation(perm.begin(), perm.end()));
            }
        }
    } else {
        std::vector<Rat> v(n);
        int pivot = -1;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = h.center[i].rational_part();
            if (pivot < 0 && v[i] != 0) pivot = int(i);
        }
        if (pivot < 0) return out;
        Rat vn(0);
        for (auto& x : v) vn += x * x;
        Rat off = h.scalar.rational_part();
        std::vector<Rat> base(n);
        for (std::size_t i = 0; i < n; ++i) base[i] = -off * v[i] / vn;
        push(base, Rat(1));
        for (long step = 1; out.size() < count && step <= 1024; ++step) {
            for (std::size_t i = 0; i < n && out.size() < count; ++i) {
                if (int(i) == pivot) continue;
                std::vector<Rat> w = base;
                w[i] += Rat(step) * v[pivot];
                w[pivot] -= Rat(step) * v[i];
                push(w, Rat(0));
                push(w, Rat(step));
            }
        }
    }
    return out;
}

// Zero-tolerance equidistance identity q_r |z-p|^2 = p_r |z-q|^2 at a
// point of the closed upper half-space.
inline bool equidistant_at(const WallPoint& z, const UpperPoint& p, const UpperPoint& q) {
    ExactScalar dp = (z.t - p.r) * (z.t - p.r), dq = (z.t - q.r) * (z.t - q.r);
    for (std::size_t i = 0; i < z.y.size(); ++i) {
        ExactScalar a = z.y[i] - p.y[i], b = z.y[i] - q.y[i];
        dp += a * a;
        dq += b * b;
    }
    return (q.r * dp - p.r * dq).is_zero();
}

// Polynomial-identity form of the same certificate: the half-space agrees,
// wall and orientation, with the one derived from the defining equidistance
// equation. Field-independent.
inline bool equidistance_polynomial_identity(const HalfSpace& h, const UpperPoint& p,
                                             const UpperPoint& q) {
    HalfSpace fromdef = bisector_generic(p, q);
    return h.same_wall(fromdef) && h.canonical().keep_positive == fromdef.canonical().keep_positive;
}

} // namespace vahlen
