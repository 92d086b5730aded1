#pragma once

#include "vahlen/quaternion.hpp"
#include "vahlen/vahlen_matrix.hpp"

namespace vahlen {

// Cl_4 splits as a direct sum over the central orthogonal idempotents
// eps1 = (1 + i1 i2 i3)/2, eps2 = (1 - i1 i2 i3)/2. Each component is a
// copy of Cl_3 ~ H via 1,i1,i2,i1i2 -> 1,i,j,k, giving the two algebra
// maps chi1, chi2 : Cl_4 -> H.
namespace idem {

inline CliffordElement eps1(FieldDesc f = {}) {
    CliffordElement e(4, f);
    ExactScalar half(Rat(1, 2), f);
    e.set_coeff(0, half);
    e.set_coeff(7, half); // i1 i2 i3
    return e;
}

inline CliffordElement eps2(FieldDesc f = {}) {
    CliffordElement e(4, f);
    ExactScalar half(Rat(1, 2), f);
    e.set_coeff(0, half);
    e.set_coeff(7, -half);
    return e;
}

} // namespace idem

struct IdempotentPair {
    Quaternion a1, a2; // alpha = eps1 * omega^{-1}(a1) + eps2 * omega^{-1}(a2)
};

// Blade masks in Cl_4: 0:1, 1:i1, 2:i2, 4:i3, 3:i1i2, 5:i1i3, 6:i2i3, 7:i1i2i3.
inline IdempotentPair split_idempotent(const CliffordElement& alpha) {
    if (alpha.degree() != 4) throw std::invalid_argument("split needs degree 4");
    const ExactScalar &a0 = alpha.coeff(0), &a1 = alpha.coeff(1), &a2 = alpha.coeff(2),
                      &a3 = alpha.coeff(4), &a4 = alpha.coeff(3), &a5 = alpha.coeff(5),
                      &a6 = alpha.coeff(6), &a7 = alpha.coeff(7);
    IdempotentPair p;
    p.a1 = Quaternion{a0 + a7, a1 - a6, a2 + a5, a4 - a3};
    p.a2 = Quaternion{a0 - a7, a1 + a6, a2 - a5, a4 + a3};
    return p;
}

inline CliffordElement join_idempotent(const Quaternion& q1, const Quaternion& q2,
                                       FieldDesc f = {}) {
    const ExactScalar &x0 = q1.c[0], &x1 = q1.c[1], &x2 = q1.c[2], &x3 = q1.c[3];
    const ExactScalar &y0 = q2.c[0], &y1 = q2.c[1], &y2 = q2.c[2], &y3 = q2.c[3];
    ExactScalar half(Rat(1, 2), f);
    CliffordElement e(4, f);
    e.set_coeff(0, (x0 + y0) * half);
    e.set_coeff(1, (x1 + y1) * half);
    e.set_coeff(2, (x2 + y2) * half);
    e.set_coeff(4, (y3 - x3) * half);
    e.set_coeff(3, (x3 + y3) * half);
    e.set_coeff(5, (x2 - y2) * half);
    e.set_coeff(6, (y1 - x1) * half);
    e.set_coeff(7, (x0 - y0) * half);
    return e;
}

inline CliffordElement join_idempotent(const IdempotentPair& p, FieldDesc f = {}) {
    return join_idempotent(p.a1, p.a2, f);
}

inline Quaternion chi1(const CliffordElement& alpha) { return split_idempotent(alpha).a1; }
inline Quaternion chi2(const CliffordElement& alpha) { return split_idempotent(alpha).a2; }

// The unique vector of V^4 with chi1-image q.
inline CliffordElement vector_lift(const Quaternion& q, FieldDesc f = {}) {
    CliffordElement v(4, f);
    v.set_coeff(0, q.c[0]);
    v.set_coeff(1, q.c[1]);
    v.set_coeff(2, q.c[2]);
    v.set_coeff(4, -q.c[3]);
    return v;
}

inline QuatMatrix chi(const VahlenMatrix& m) {
    return {chi1(m.alpha()), chi1(m.beta()), chi1(m.gamma()), chi1(m.delta())};
}

inline QuatMatrix chi_second(const VahlenMatrix& m) {
    return {chi2(m.alpha()), chi2(m.beta()), chi2(m.gamma()), chi2(m.delta())};
}

// Inverse of the isomorphism chi on matrices with Delta^2 = 1, by the
// explicit preimages of the three entry patterns.
inline VahlenMatrix chi_inv(const QuatMatrix& q, FieldDesc f = {}) {
    ExactScalar one = ExactScalar::integer(1, f);
    if (!(dieudonne_det_sq(q) == one))
        throw std::invalid_argument("chi_inv requires Dieudonne determinant 1");

    const CliffordElement e1 = idem::eps1(f), e2 = idem::eps2(f);
    CliffordElement zero(4, f);
    VahlenMatrix out;

    if (q.c.is_zero() && q.b.is_zero()) {
        CliffordElement alpha = vector_lift(q.a, f);
        CliffordElement tau = vector_lift(q.a * q.d, f);
        CliffordElement ai = alpha.vector_inverse();
        out = VahlenMatrix(e1 * alpha + e2 * alpha * tau.conj_bar(), zero,
                           zero, e1 * ai * tau + e2 * ai);
    } else if (q.c.is_zero()) {
        // with Delta = 1 and b != 0, both a and d are nonzero here
        CliffordElement alpha = vector_lift(q.a, f);
        CliffordElement tau = vector_lift(q.a * q.d, f);
        CliffordElement eta = vector_lift(q.a.inverse() * q.b, f);
        CliffordElement ai = alpha.vector_inverse();
        out = VahlenMatrix(e1 * alpha + e2 * alpha * tau.conj_bar(),
                           e1 * alpha * eta + e2 * alpha * eta * tau.conj_bar(),
                           zero, e1 * ai * tau + e2 * ai);
    } else {
        Quaternion s = sigma(q);
        CliffordElement tau = vector_lift(q.a * q.c.inverse(), f);
        CliffordElement eta = vector_lift(q.c.inverse() * q.d, f);
        CliffordElement mu = vector_lift(s, f);
        CliffordElement gam = vector_lift(q.c, f);
        CliffordElement gi = gam.vector_inverse();
        CliffordElement mub = mu.conj_bar();
        out = VahlenMatrix(e1 * tau * gam + e2 * tau * gam * mub,
                           e1 * (tau * gam * eta - gi * mu) + e2 * (tau * gam * eta * mub - gi),
                           e1 * gam + e2 * gam * mub,
                           e1 * gam * eta + e2 * gam * eta * mub);
    }

    if (!(chi(out) == q)) throw std::logic_error("chi_inv round trip failed");
    if (auto why = out.validity_failure())
        throw std::logic_error("chi_inv produced an invalid matrix: " + *why);
    return out;
}

// H(Z)-side integrality: every entry splits with integer quaternion pairs.
inline bool in_tilde_gamma4z(const VahlenMatrix& m) {
    for (const CliffordElement* e : {&m.alpha(), &m.beta(), &m.gamma(), &m.delta()}) {
        IdempotentPair p = split_idempotent(*e);
        for (int i = 0; i < 4; ++i)
            if (!p.a1.c[i].is_integer() || !p.a2.c[i].is_integer()) return false;
    }
    return true;
}

// Integer blade coefficients.
inline bool in_gamma4z(const VahlenMatrix& m) {
    for (const CliffordElement* e : {&m.alpha(), &m.beta(), &m.gamma(), &m.delta()})
        for (unsigned mask = 0; mask < e->blade_count(); ++mask)
            if (!e->coeff(mask).is_integer()) return false;
    return true;
}

} // namespace vahlen
