#pragma once

#include "vahlen/exact_scalar.hpp"

#include <array>
#include <optional>
#include <vector>

namespace vahlen {

// Hamilton quaternions over ExactScalar: i^2 = j^2 = -1, ij = -ji = k.
// Elements of the orders H_{x,y}(Z) live here with sqrt(|x|), sqrt(|y|)
// factors inside the coordinates.
struct Quaternion {
    std::array<ExactScalar, 4> c; // 1, i, j, k

    Quaternion() = default;
    Quaternion(ExactScalar a0, ExactScalar a1, ExactScalar a2, ExactScalar a3)
        : c{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {}

    static Quaternion zero(FieldDesc f = {}) {
        ExactScalar z(Rat(0), f);
        return {z, z, z, z};
    }
    static Quaternion scalar(const ExactScalar& s) {
        ExactScalar z(Rat(0), s.field());
        return {s, z, z, z};
    }
    static Quaternion integer(long n, FieldDesc f = {}) {
        return scalar(ExactScalar::integer(n, f));
    }

    bool is_zero() const {
        return c[0].is_zero() && c[1].is_zero() && c[2].is_zero() && c[3].is_zero();
    }

    friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c == b.c; }

    Quaternion operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
    }
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.c[0]*b.c[0] - a.c[1]*b.c[1] - a.c[2]*b.c[2] - a.c[3]*b.c[3],
                a.c[0]*b.c[1] + a.c[1]*b.c[0] + a.c[2]*b.c[3] - a.c[3]*b.c[2],
                a.c[0]*b.c[2] - a.c[1]*b.c[3] + a.c[2]*b.c[0] + a.c[3]*b.c[1],
                a.c[0]*b.c[3] + a.c[1]*b.c[2] - a.c[2]*b.c[1] + a.c[3]*b.c[0]};
    }

    // a' = a0 - a1 i - a2 j + a3 k
    Quaternion prime() const { return {c[0], -c[1], -c[2], c[3]}; }
    // a* = a0 + a1 i + a2 j - a3 k
    Quaternion star() const { return {c[0], c[1], c[2], -c[3]}; }
    // bar a = a0 - a1 i - a2 j - a3 k
    Quaternion conj() const { return {c[0], -c[1], -c[2], -c[3]}; }

    ExactScalar norm_sq() const {
        return c[0]*c[0] + c[1]*c[1] + c[2]*c[2] + c[3]*c[3];
    }

    ExactScalar re() const { return c[0]; }

    Quaternion inverse() const {
        ExactScalar n = norm_sq();
        if (n.is_zero()) throw std::domain_error("quaternion division by zero");
        ExactScalar inv = n.inverse();
        Quaternion q = conj();
        return {q.c[0]*inv, q.c[1]*inv, q.c[2]*inv, q.c[3]*inv};
    }
};

struct QuatMatrix {
    Quaternion a, b, c, d;

    static QuatMatrix identity(FieldDesc f = {}) {
        return {Quaternion::integer(1, f), Quaternion::zero(f),
                Quaternion::zero(f), Quaternion::integer(1, f)};
    }

    friend bool operator==(const QuatMatrix&, const QuatMatrix&) = default;

    QuatMatrix operator-() const { return {-a, -b, -c, -d}; }

    friend QuatMatrix operator*(const QuatMatrix& m, const QuatMatrix& n) {
        return {m.a*n.a + m.b*n.c, m.a*n.b + m.b*n.d,
                m.c*n.a + m.d*n.c, m.c*n.b + m.d*n.d};
    }

    ExactScalar norm_sq() const {
        return a.norm_sq() + b.norm_sq() + c.norm_sq() + d.norm_sq();
    }
};

// Pseudo-determinant, case split on the entries.
inline Quaternion sigma(const QuatMatrix& m) {
    if (!m.c.is_zero()) return m.c * m.a * m.c.inverse() * m.d - m.c * m.b;
    if (!m.b.is_zero()) return m.b * m.d * m.b.inverse() * m.a;
    Quaternion diff = m.d - m.a;
    if (!diff.is_zero()) return diff * m.a * diff.inverse() * m.d;
    return m.a * m.a.conj();
}

// Delta^2 = |sigma|^2, kept squared to stay inside the field. Agrees with
// |a|^2|d|^2 + |b|^2|c|^2 - 2 Re(a bar(c) d bar(b)); see the unit tests.
inline ExactScalar dieudonne_det_sq(const QuatMatrix& m) {
    return sigma(m).norm_sq();
}

inline ExactScalar dieudonne_det_sq_formula(const QuatMatrix& m) {
    ExactScalar two = ExactScalar::integer(2, m.a.c[0].field());
    return m.a.norm_sq() * m.d.norm_sq() + m.b.norm_sq() * m.c.norm_sq()
         - two * (m.a * m.c.conj() * m.d * m.b.conj()).re();
}

inline QuatMatrix quat_matrix_inverse(const QuatMatrix& m) {
    ExactScalar det2 = dieudonne_det_sq(m);
    if (det2.is_zero()) throw std::domain_error("singular quaternion matrix");
    QuatMatrix inv;
    if (m.c.is_zero()) {
        Quaternion ai = m.a.inverse(), di = m.d.inverse();
        inv = {ai, -(ai * m.b * di), Quaternion::zero(m.a.c[0].field()), di};
    } else {
        Quaternion s = sigma(m);
        Quaternion si = s.inverse(), ci = m.c.inverse();
        Quaternion w = si * m.c * m.a * ci;
        inv = {ci * m.d * si * m.c, ci * (Quaternion::integer(1, m.a.c[0].field()) - m.d * w),
               -(si * m.c), w};
    }
    QuatMatrix id = QuatMatrix::identity(m.a.c[0].field());
    if (!(m * inv == id) || !(inv * m == id))
        throw std::logic_error("quaternion matrix inverse verification failed");
    return inv;
}

// The order H_{x,y}(Z) inside H(R): integer coordinates on the basis
// {1, sqrt|x| i, sqrt|y| j, sqrt|xy| k}.
struct QuatOrder {
    long x = -1, y = -1; // negative integers
    FieldDesc field;     // Q(sqrt|x|, sqrt|y|) with square parts stripped

    static QuatOrder make(long x, long y) {
        if (x >= 0 || y >= 0) throw std::invalid_argument("order requires x, y < 0");
        QuatOrder o;
        o.x = x;
        o.y = y;
        o.field = FieldDesc::of_radicands(-x, -y);
        return o;
    }

    ExactScalar basis_factor(int i) const {
        ExactScalar one = ExactScalar::integer(1, field);
        auto surd = [&](long n) {
            long s, fpart;
            squarefree_decompose(n, s, fpart);
            ExactScalar r = ExactScalar::integer(s, field);
            if (fpart == 1) return r;
            if (fpart == field.p) return r * ExactScalar(field, Rat(0), Rat(1), Rat(0), Rat(0));
            if (fpart == field.q) return r * ExactScalar(field, Rat(0), Rat(0), Rat(1), Rat(0));
            if (fpart == field.p * field.q)
                return r * ExactScalar(field, Rat(0), Rat(0), Rat(0), Rat(1));
            throw std::logic_error("surd outside field");
        };
        switch (i) {
            case 0: return one;
            case 1: return surd(-x);
            case 2: return surd(-y);
            case 3: return surd(long(-x) * long(-y));
        }
        throw std::out_of_range("basis index");
    }

    // Lambda^{-1}: (x,y)-coordinates -> element of H_{x,y}(Q) in H(R)
    Quaternion embed(const Rat& a0, const Rat& a1, const Rat& a2, const Rat& a3) const {
        return {ExactScalar(a0, field) * basis_factor(0), ExactScalar(a1, field) * basis_factor(1),
                ExactScalar(a2, field) * basis_factor(2), ExactScalar(a3, field) * basis_factor(3)};
    }

    // Lambda: read the (x,y)-coordinates back; nullopt if q is not in
    // H_{x,y}(Q), including scalars from a different surd field.
    std::optional<std::array<Rat, 4>> coords(const Quaternion& q) const {
        std::array<Rat, 4> out;
        for (int i = 0; i < 4; ++i) {
            const ExactScalar& v = q.c[i];
            if (!v.is_rational() && !(v.field() == field)) return std::nullopt;
            ExactScalar t = v / basis_factor(i);
            if (!t.is_rational()) return std::nullopt;
            out[i] = t.rational_part();
        }
        return out;
    }

    bool contains(const Quaternion& q) const {
        auto cs = coords(q);
        if (!cs) return false;
        for (const Rat& r : *cs)
            if (denominator(r) != 1) return false;
        return true;
    }

    bool contains(const QuatMatrix& m) const {
        return contains(m.a) && contains(m.b) && contains(m.c) && contains(m.d);
    }

    // Norm form a0^2 + |x| a1^2 + |y| a2^2 + |xy| a3^2 evaluated on coordinates;
    // equals the Hamilton norm of the embedded element.
    Rat norm_form(const std::array<Rat, 4>& a) const {
        return a[0]*a[0] + Rat(-x)*a[1]*a[1] + Rat(-y)*a[2]*a[2] + Rat(long(-x)*long(-y))*a[3]*a[3];
    }
};

inline bool is_unit_matrix(const QuatMatrix& m, const QuatOrder& o) {
    if (!o.contains(m)) return false;
    ExactScalar one = ExactScalar::integer(1, m.a.c[0].field());
    return dieudonne_det_sq(m) == one;
}

// det of the image of M under the regular representation of the quaternion
// part: M = A0 + A1 i + A2 j + A3 k with Ai in M_2(Q) becomes an 8x8
// rational matrix. Equals (Delta^2)^2.
inline Rat reduced_norm_via_embedding(const QuatMatrix& m, const QuatOrder& o) {
    std::array<std::array<Rat, 4>, 4> A[4]; // A[t] = 2x2 block, flattened rows
    auto put = [&](const Quaternion& q, int row, int col) {
        auto cs = o.coords(q);
        if (!cs) throw std::invalid_argument("entries not rational in the (x,y) basis");
        for (int t = 0; t < 4; ++t) A[t][row][col] = (*cs)[t];
    };
    put(m.a, 0, 0); put(m.b, 0, 1); put(m.c, 1, 0); put(m.d, 1, 1);

    const Rat X(o.x), Y(o.y), XY(Rat(o.x) * o.y);
    // left multiplication by 1, i, j, k on the basis (1, i, j, k):
    //   [ A0   xA1   yA2  -xyA3 ]
    //   [ A1   A0    yA3  -yA2  ]
    //   [ A2  -xA3   A0    xA1  ]
    //   [ A3  -A2    A1    A0   ]
    auto coef = [&](int r, int c_) -> std::pair<int, Rat> {
        static const int idx[4][4] = {{0,1,2,3},{1,0,3,2},{2,3,0,1},{3,2,1,0}};
        Rat scale(1);
        int t = idx[r][c_];
        if (r == 0 && c_ == 1) scale = X;
        if (r == 0 && c_ == 2) scale = Y;
        if (r == 0 && c_ == 3) scale = -XY;
        if (r == 1 && c_ == 2) scale = Y;
        if (r == 1 && c_ == 3) scale = -Y;
        if (r == 2 && c_ == 1) scale = -X;
        if (r == 2 && c_ == 3) scale = X;
        if (r == 3 && c_ == 1) scale = Rat(-1);
        return {t, scale};
    };

    std::vector<std::vector<Rat>> big(8, std::vector<Rat>(8, Rat(0)));
    for (int br = 0; br < 4; ++br)
        for (int bc = 0; bc < 4; ++bc) {
            auto [t, scale] = coef(br, bc);
            for (int r = 0; r < 2; ++r)
                for (int c_ = 0; c_ < 2; ++c_)
                    big[2*br + r][2*bc + c_] = scale * A[t][r][c_];
        }

    // exact Gaussian elimination
    Rat det(1);
    for (int col = 0; col < 8; ++col) {
        int piv = -1;
        for (int r = col; r < 8; ++r)
            if (big[r][col] != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) { std::swap(big[piv], big[col]); det = -det; }
        det *= big[col][col];
        Rat inv = Rat(1) / big[col][col];
        for (int r = col + 1; r < 8; ++r) {
            if (big[r][col] == 0) continue;
            Rat f = big[r][col] * inv;
            for (int c_ = col; c_ < 8; ++c_) big[r][c_] -= f * big[col][c_];
        }
    }
    return det;
}

} // namespace vahlen
