#pragma once

#include "vahlen/vahlen_matrix.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace vahlen {

// A wall in the upper half-space model, restricted data in the boundary
// coordinates: either a Euclidean hemisphere |z - center|^2 = radius_sq
// (keep outside or inside) or a vertical hyperplane <normal, z> + offset = 0
// (keep the nonnegative or nonpositive side).
struct HalfSpace {
    enum class Kind { Sphere, Plane };
    Kind kind = Kind::Plane;
    std::vector<ExactScalar> center; // sphere center / plane normal
    ExactScalar scalar;              // radius_sq / offset
    bool keep_positive = true;       // sphere: keep outside; plane: keep >= 0

    static HalfSpace sphere(std::vector<ExactScalar> c, ExactScalar r2, bool outside) {
        HalfSpace h;
        h.kind = Kind::Sphere;
        h.center = std::move(c);
        h.scalar = std::move(r2);
        h.keep_positive = outside;
        return h;
    }

    static HalfSpace plane(std::vector<ExactScalar> n, ExactScalar off, bool nonneg) {
        HalfSpace h;
        h.kind = Kind::Plane;
        h.center = std::move(n);
        h.scalar = std::move(off);
        h.keep_positive = nonneg;
        return h;
    }

    // Planes are scale-invariant; normalize so the first nonzero normal
    // coordinate is +1. Spheres are already canonical.
    HalfSpace canonical() const {
        if (kind == Kind::Sphere) return *this;
        HalfSpace h(*this);
        for (const auto& v : h.center) {
            int s = v.sign();
            if (s == 0) continue;
            ExactScalar scale = v.inverse();
            if (s < 0) h.keep_positive = !h.keep_positive;
            for (auto& x : h.center) x *= scale;
            h.scalar *= scale;
            break;
        }
        return h;
    }

    friend bool operator==(const HalfSpace&, const HalfSpace&) = default;

    bool same_wall(const HalfSpace& o) const { return canonical() == o.canonical(); }

    // Signed evaluation at a boundary point (height 0): positive on the
    // kept side's interior, zero on the wall.
    ExactScalar eval_boundary(const std::vector<ExactScalar>& z) const {
        ExactScalar v(Rat(0), scalar.field());
        if (kind == Kind::Sphere) {
            for (std::size_t i = 0; i < center.size(); ++i) {
                ExactScalar d = z[i] - center[i];
                v += d * d;
            }
            v -= scalar;
        } else {
            for (std::size_t i = 0; i < center.size(); ++i) v += center[i] * z[i];
            v += scalar;
        }
        return keep_positive ? v : -v;
    }
};

// Psi(M) = bar(Lambda) M Lambda with the 1/2 included so that
// |A|^2 - |C|^2 = 1 holds exactly; returns the blocks (A, C) in Cl_{n+1}.
struct BallPair {
    CliffordElement A, C;
};

inline BallPair psi(const VahlenMatrix& m) {
    FieldDesc f = m.alpha().field();
    ExactScalar half(Rat(1, 2), f);
    CliffordElement a_part = (m.alpha() + m.delta().conj_prime()) * half;
    CliffordElement a_top = (m.beta() - m.gamma().conj_prime()) * half;
    CliffordElement c_part = (m.gamma() + m.beta().conj_prime()) * half;
    CliffordElement c_top = (m.delta() - m.alpha().conj_prime()) * half;
    return {CliffordElement::join_with_top(a_part, a_top),
            CliffordElement::join_with_top(c_part, c_top)};
}

// Isometric sphere of Psi(M) in the ball model: S(C^{-1}A', 1/|C|).
// Returns the center as n+1 coordinates plus the squared radius.
inline std::pair<std::vector<ExactScalar>, ExactScalar>
isometric_sphere_ball(const VahlenMatrix& m) {
    BallPair p = psi(m);
    if (p.C.is_zero()) throw std::domain_error("no isometric sphere: matrix fixes the base point");
    if (!p.C.has_scalar_quasinorm()) throw std::logic_error("Psi block C not in the Clifford group");
    CliffordElement center = p.C.group_inverse() * p.A.conj_prime();
    if (!center.is_vector()) throw std::logic_error("isometric sphere center not a vector");
    int n1 = center.degree();
    std::vector<ExactScalar> coords;
    coords.reserve(n1);
    for (int i = 0; i < n1; ++i)
        coords.push_back(center.coeff(i == 0 ? 0u : (1u << (i - 1))));
    return {std::move(coords), p.C.norm_sq().inverse()};
}

// Closed forms |P|^2 = (2 + |M|^2) / (|M|^2 - 2), R^2 = 4 / (|M|^2 - 2)
// for the isometric sphere of Psi(M); defined off the stabilizer.
struct RhoData {
    ExactScalar center_norm_sq;
    ExactScalar radius_sq;
};

inline RhoData rho(const VahlenMatrix& m) {
    ExactScalar msq = m.norm_sq();
    FieldDesc f = msq.field();
    ExactScalar two = ExactScalar::integer(2, f);
    ExactScalar den = msq - two;
    if (den.is_zero()) throw std::domain_error("rho undefined on the stabilizer of i_n");
    ExactScalar deni = den.inverse();
    return {(msq + two) * deni, ExactScalar::integer(4, f) * deni};
}

// sign of (1 + sqrt(r1) - sqrt(p1)) - (1 + sqrt(r2) - sqrt(p2)),
// all radicands nonnegative field elements.
inline int rho_compare_raw(const ExactScalar& r1, const ExactScalar& p1,
                           const ExactScalar& r2, const ExactScalar& p2) {
    // A = sqrt r1 - sqrt r2, B = sqrt p2 - sqrt p1; want sign(A + B)
    int sa = (r1 - r2).sign();
    int sb = (p2 - p1).sign();
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    // opposite signs: |A| vs |B| via squares
    // A^2 - B^2 = (r1 + r2 - p1 - p2) + 2(sqrt(p1 p2) - sqrt(r1 r2))
    ExactScalar e = r1 + r2 - p1 - p2;
    ExactScalar u = p1 * p2, v = r1 * r2;
    int suv = (u - v).sign();
    int se = e.sign();
    int cmp; // sign of A^2 - B^2
    if (se == 0) cmp = suv;
    else if (suv == 0 || se == suv) cmp = se;
    else {
        // e vs 2(sqrt v - sqrt u): square once more
        // e^2 - 4(u + v) + 8 sqrt(u v)
        ExactScalar four = ExactScalar::integer(4, e.field());
        ExactScalar eight = ExactScalar::integer(8, e.field());
        int inner = sign_a_plus_b_sqrt(e * e - four * (u + v), eight, u * v);
        cmp = inner == 0 ? 0 : (inner > 0 ? se : -se);
    }
    if (cmp == 0) return 0;
    return cmp > 0 ? sa : sb;
}

// sign of rho(m1) - rho(m2) for matrix norms msq1, msq2 > 2.
inline int rho_compare(const ExactScalar& msq1, const ExactScalar& msq2) {
    FieldDesc f = msq1.field();
    ExactScalar two = ExactScalar::integer(2, f), four = ExactScalar::integer(4, f);
    ExactScalar d1 = (msq1 - two).inverse(), d2 = (msq2 - two).inverse();
    return rho_compare_raw(four * d1, (msq1 + two) * d1, four * d2, (msq2 + two) * d2);
}

// Bisector of p and q in the upper half-space: the set
// q_r |z - p|^2 = p_r |z - q|^2, a sphere or a vertical hyperplane,
// returned with the side containing p.
inline HalfSpace bisector_generic(const UpperPoint& p, const UpperPoint& q) {
    if (p == q) throw std::invalid_argument("bisector of equal points");
    const int n = p.dim();
    FieldDesc f = p.r.field();
    ExactScalar D = q.r - p.r;
    std::vector<ExactScalar> w(n, ExactScalar(Rat(0), f));
    ExactScalar pn(Rat(0), f), qn(Rat(0), f);
    for (int i = 0; i < n; ++i) {
        w[i] = q.r * p.y[i] - p.r * q.y[i];
        pn += p.y[i] * p.y[i];
        qn += q.y[i] * q.y[i];
    }
    ExactScalar k = q.r * pn - p.r * qn + p.r * q.r * (p.r - q.r);

    if (D.is_zero()) {
        // q_r|z-p|^2 - p_r|z-q|^2 = -2<z,w> + k; keep the side <= 0.
        std::vector<ExactScalar> normal(n);
        ExactScalar two = ExactScalar::integer(2, f);
        for (int i = 0; i < n; ++i) normal[i] = two * w[i];
        return HalfSpace::plane(std::move(normal), -k, true);
    }
    ExactScalar Di = D.inverse();
    std::vector<ExactScalar> c(n);
    ExactScalar wn(Rat(0), f);
    for (int i = 0; i < n; ++i) {
        c[i] = w[i] * Di;
        wn += w[i] * w[i];
    }
    ExactScalar r2 = wn * Di * Di - k * Di;
    if (r2.sign() <= 0) throw std::logic_error("bisector sphere with nonpositive radius");
    return HalfSpace::sphere(std::move(c), std::move(r2), D.sign() < 0);
}

// The wall D_{M^{-1}}(i_n) about the base point i_n, from the closed forms:
// hemisphere with center -(beta* alpha' + delta* gamma') / (g - 1) and
// squared radius (1 + |P|^2) / g when g = |alpha|^2 + |gamma|^2 != 1,
// otherwise the hyperplane <v, z> + |v|^2/2 = 0 with v = beta* alpha' + delta* gamma'.
inline HalfSpace bisector_at_basepoint(const VahlenMatrix& m) {
    if (m.is_su()) throw std::domain_error("no bisector: matrix fixes i_n");
    FieldDesc f = m.alpha().field();
    const int n = m.degree();
    CliffordElement vel = m.beta().conj_star() * m.alpha().conj_prime()
                        + m.delta().conj_star() * m.gamma().conj_prime();
    if (!vel.is_vector()) throw std::logic_error("wall datum not a vector");
    std::vector<ExactScalar> v(n);
    ExactScalar vn(Rat(0), f);
    for (int i = 0; i < n; ++i) {
        v[i] = vel.coeff(i == 0 ? 0u : (1u << (i - 1)));
        vn += v[i] * v[i];
    }
    ExactScalar g = m.first_column_norm_sq();
    ExactScalar one = ExactScalar::integer(1, f);
    if (g == one)
        return HalfSpace::plane(std::move(v), vn * ExactScalar(Rat(1, 2), f), true);
    ExactScalar gm1 = (g - one).inverse();
    std::vector<ExactScalar> center(n);
    ExactScalar pn(Rat(0), f);
    for (int i = 0; i < n; ++i) {
        center[i] = -v[i] * gm1;
        pn += center[i] * center[i];
    }
    ExactScalar r2 = (one + pn) * g.inverse();
    return HalfSpace::sphere(std::move(center), std::move(r2), (g - one).sign() > 0);
}

} // namespace vahlen
